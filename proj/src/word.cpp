#include "sigstat/word.hpp"

#include <charconv>

#include "sigstat/errors.hpp"

namespace sigstat {

std::string to_string(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w.letters[i]);
    }
    return s;
}

Word parse_word(const std::string& s) {
    Word w;
    if (s.empty()) return w;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        int letter = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), letter);
        if (ec != std::errc{} || p != tok.data() + tok.size() || letter < 1)
            throw ValidationError("invalid word token '" + tok + "' in '" + s + "'");
        w.letters.push_back(letter);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return w;
}

std::vector<Word> all_words(int dim, int max_len) {
    std::vector<Word> out;
    std::vector<Word> level{Word{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : level)
            for (int a = 1; a <= dim; ++a) {
                Word e = w;
                e.letters.push_back(a);
                next.push_back(std::move(e));
            }
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

} // namespace sigstat
