#include "sigstat/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "sigstat/errors.hpp"

namespace sigstat {

FreeTensor::FreeTensor(int dim, int depth) : dim_(dim), depth_(depth) {
    if (dim < 1) throw ValidationError("tensor dim must be >= 1");
    if (depth < 0) throw ValidationError("tensor depth must be >= 0");
}

FreeTensor FreeTensor::unit(int dim, int depth) {
    FreeTensor t(dim, depth);
    t.set(Word{}, 1.0);
    return t;
}

FreeTensor FreeTensor::basis(int dim, int depth, const Word& w) {
    FreeTensor t(dim, depth);
    t.set(w, 1.0);
    return t;
}

void FreeTensor::check_word(const Word& w) const {
    if (static_cast<int>(w.size()) > depth_)
        throw ValidationError("word '" + to_string(w) + "' exceeds depth " + std::to_string(depth_));
    for (int a : w.letters)
        if (a < 1 || a > dim_)
            throw ValidationError("letter " + std::to_string(a) + " outside alphabet [" + std::to_string(dim_) + "]");
}

double FreeTensor::coeff(const Word& w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? 0.0 : it->second;
}

void FreeTensor::set(const Word& w, double value) {
    check_word(w);
    if (value == 0.0)
        coeffs_.erase(w);
    else
        coeffs_[w] = value;
}

void FreeTensor::add(const Word& w, double value) {
    check_word(w);
    auto it = coeffs_.find(w);
    if (it == coeffs_.end()) {
        if (value != 0.0) coeffs_[w] = value;
        return;
    }
    it->second += value;
    if (it->second == 0.0) coeffs_.erase(it);
}

bool FreeTensor::approx_equal(const FreeTensor& other, double tol) const {
    if (dim_ != other.dim_ || depth_ != other.depth_) return false;
    for (const auto& [w, c] : coeffs_)
        if (std::abs(c - other.coeff(w)) > tol) return false;
    for (const auto& [w, c] : other.coeffs_)
        if (std::abs(c - coeff(w)) > tol) return false;
    return true;
}

FreeTensor FreeTensor::truncated(int new_depth) const {
    FreeTensor r(dim_, new_depth);
    for (const auto& [w, c] : coeffs_)
        if (static_cast<int>(w.size()) <= new_depth) r.set(w, c);
    return r;
}

FreeTensor operator+(const FreeTensor& a, const FreeTensor& b) {
    if (a.dim() != b.dim()) throw ValidationError("dimension mismatch in tensor sum");
    FreeTensor r(a.dim(), std::min(a.depth(), b.depth()));
    for (const auto& [w, c] : a.coeffs())
        if (static_cast<int>(w.size()) <= r.depth()) r.add(w, c);
    for (const auto& [w, c] : b.coeffs())
        if (static_cast<int>(w.size()) <= r.depth()) r.add(w, c);
    return r;
}

FreeTensor operator-(const FreeTensor& a, const FreeTensor& b) {
    return a + (-1.0 * b);
}

FreeTensor operator*(double s, const FreeTensor& t) {
    FreeTensor r(t.dim(), t.depth());
    for (const auto& [w, c] : t.coeffs()) r.set(w, s * c);
    return r;
}

FreeTensor concat_product(const FreeTensor& a, const FreeTensor& b) {
    if (a.dim() != b.dim()) throw ValidationError("dimension mismatch in concat_product");
    FreeTensor r(a.dim(), std::min(a.depth(), b.depth()));
    for (const auto& [u, cu] : a.coeffs()) {
        if (static_cast<int>(u.size()) > r.depth()) continue;
        for (const auto& [v, cv] : b.coeffs()) {
            if (static_cast<int>(u.size() + v.size()) > r.depth()) continue;
            r.add(u.concat(v), cu * cv);
        }
    }
    return r;
}

namespace {

void shuffle_rec(const Word& u, std::size_t iu, const Word& v, std::size_t iv,
                 std::vector<int>& prefix, std::map<Word, long long>& out) {
    if (iu == u.size() && iv == v.size()) {
        ++out[Word(prefix)];
        return;
    }
    if (iu < u.size()) {
        prefix.push_back(u[iu]);
        shuffle_rec(u, iu + 1, v, iv, prefix, out);
        prefix.pop_back();
    }
    if (iv < v.size()) {
        prefix.push_back(v[iv]);
        shuffle_rec(u, iu, v, iv + 1, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::map<Word, long long> shuffle_words(const Word& u, const Word& v) {
    std::map<Word, long long> out;
    std::vector<int> prefix;
    prefix.reserve(u.size() + v.size());
    shuffle_rec(u, 0, v, 0, prefix, out);
    return out;
}

FreeTensor shuffle_product(const FreeTensor& f, const FreeTensor& g) {
    if (f.dim() != g.dim()) throw ValidationError("dimension mismatch in shuffle_product");
    FreeTensor r(f.dim(), std::min(f.depth(), g.depth()));
    for (const auto& [u, cu] : f.coeffs()) {
        if (static_cast<int>(u.size()) > r.depth()) continue;
        for (const auto& [v, cv] : g.coeffs()) {
            if (static_cast<int>(u.size() + v.size()) > r.depth()) continue;
            for (const auto& [w, mult] : shuffle_words(u, v))
                r.add(w, cu * cv * static_cast<double>(mult));
        }
    }
    return r;
}

FreeTensor exp(const FreeTensor& t) {
    if (t.coeff(Word{}) != 0.0)
        throw ValidationError("exp requires zero level-0 coefficient");
    // Horner: 1 + t(1 + t/2 (1 + t/3 (...))); t has no level-0 part, so the
    // series terminates at the truncation depth.
    FreeTensor r = FreeTensor::unit(t.dim(), t.depth());
    for (int k = t.depth(); k >= 1; --k)
        r = FreeTensor::unit(t.dim(), t.depth()) + concat_product((1.0 / k) * t, r);
    return r;
}

FreeTensor log(const FreeTensor& t) {
    if (t.coeff(Word{}) != 1.0)
        throw ValidationError("log requires level-0 coefficient exactly 1");
    FreeTensor x = t - FreeTensor::unit(t.dim(), t.depth());
    FreeTensor acc(t.dim(), t.depth());
    FreeTensor power = x;
    for (int m = 1; m <= t.depth(); ++m) {
        double w = (m % 2 == 1 ? 1.0 : -1.0) / m;
        acc = acc + w * power;
        if (m < t.depth()) power = concat_product(power, x);
    }
    return acc;
}

double pair(const FreeTensor& a, const FreeTensor& b) {
    if (a.dim() != b.dim()) throw ValidationError("dimension mismatch in pair");
    const FreeTensor& small = a.coeffs().size() <= b.coeffs().size() ? a : b;
    const FreeTensor& big = a.coeffs().size() <= b.coeffs().size() ? b : a;
    int dep = std::min(a.depth(), b.depth());
    double s = 0.0;
    for (const auto& [w, c] : small.coeffs())
        if (static_cast<int>(w.size()) <= dep) s += c * big.coeff(w);
    return s;
}

double pair_with_shuffle(const FreeTensor& t, const std::vector<Word>& words) {
    if (words.empty()) return t.coeff(Word{});
    std::map<Word, long long> sh{{words[0], 1}};
    for (std::size_t i = 1; i < words.size(); ++i) {
        std::map<Word, long long> next;
        for (const auto& [w, m] : sh)
            for (const auto& [w2, m2] : shuffle_words(w, words[i]))
                next[w2] += m * m2;
        sh = std::move(next);
    }
    double s = 0.0;
    for (const auto& [w, m] : sh) s += static_cast<double>(m) * t.coeff(w);
    return s;
}

FreeTensor symmetrize(const FreeTensor& t) {
    FreeTensor r(t.dim(), t.depth());
    for (const auto& [w, c] : t.coeffs()) {
        if (w.empty()) {
            r.add(w, c);
            continue;
        }
        std::vector<int> idx(w.size());
        std::iota(idx.begin(), idx.end(), 0);
        // all |w|! permutations; repeated letters accumulate multiplicity
        do {
            Word p;
            p.letters.reserve(w.size());
            for (int i : idx) p.letters.push_back(w[i]);
            r.add(p, c);
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
    return r;
}

} // namespace sigstat
