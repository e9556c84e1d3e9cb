#ifndef SIGSTAT_WORD_HPP
#define SIGSTAT_WORD_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace sigstat {

/// A word over the alphabet [d] = {1,...,d}; the empty word is the level-0
/// basis element. Canonical order is length-then-lexicographic so that
/// serialized tensors are deterministic.
struct Word {
    std::vector<int> letters;

    Word() = default;
    Word(std::initializer_list<int> ls) : letters(ls) {}
    explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    int operator[](std::size_t i) const { return letters[i]; }

    bool operator==(const Word& o) const { return letters == o.letters; }

    // length first, then lexicographic
    std::strong_ordering operator<=>(const Word& o) const {
        if (letters.size() != o.letters.size())
            return letters.size() <=> o.letters.size();
        return letters <=> o.letters;
    }

    Word concat(const Word& o) const {
        Word r = *this;
        r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
        return r;
    }
};

/// "1,2,1"; the empty word renders as "".
std::string to_string(const Word& w);

/// Inverse of to_string. Throws ValidationError on junk.
Word parse_word(const std::string& s);

/// All words of length 1..max_len over [dim], in canonical order.
std::vector<Word> all_words(int dim, int max_len);

} // namespace sigstat

#endif
