#ifndef SIGSTAT_TENSOR_HPP
#define SIGSTAT_TENSOR_HPP

#include <map>
#include <vector>

#include "sigstat/word.hpp"

namespace sigstat {

/// Element of the truncated free tensor algebra over R^d: a sparse
/// word -> coefficient table. Words longer than the truncation depth are
/// never stored; absent words are zero. Values are immutable in spirit —
/// all operations below are pure and return fresh tensors.
class FreeTensor {
public:
    FreeTensor(int dim, int depth);

    /// The unit 1 (empty word -> 1).
    static FreeTensor unit(int dim, int depth);

    /// Basis element e_w.
    static FreeTensor basis(int dim, int depth, const Word& w);

    int dim() const { return dim_; }
    int depth() const { return depth_; }

    double coeff(const Word& w) const;
    /// Validates letters and length; exact zeros are erased.
    void set(const Word& w, double value);
    void add(const Word& w, double value);

    const std::map<Word, double>& coeffs() const { return coeffs_; }

    /// Same dim/depth and all coefficients within tol of each other.
    bool approx_equal(const FreeTensor& other, double tol) const;

    FreeTensor truncated(int new_depth) const;

private:
    int dim_;
    int depth_;
    std::map<Word, double> coeffs_;

    void check_word(const Word& w) const;
};

FreeTensor operator+(const FreeTensor& a, const FreeTensor& b);
FreeTensor operator-(const FreeTensor& a, const FreeTensor& b);
FreeTensor operator*(double s, const FreeTensor& t);

/// Concatenation (algebra) product; result depth = min of the two.
FreeTensor concat_product(const FreeTensor& a, const FreeTensor& b);

/// Shuffle product, bilinear over e_u ⧢ e_v = sum of interleavings with
/// multiplicity.
FreeTensor shuffle_product(const FreeTensor& f, const FreeTensor& g);

/// Interleavings of u and v with multiplicities (the bilinear kernel of
/// shuffle_product, also used for pairing against shuffled basis words).
std::map<Word, long long> shuffle_words(const Word& u, const Word& v);

/// exp(t) = sum t^{⊗m}/m!; requires zero level-0 coefficient. The series
/// terminates exactly at the truncation depth.
FreeTensor exp(const FreeTensor& t);

/// log(t) for t with level-0 coefficient 1; series in (t - 1).
FreeTensor log(const FreeTensor& t);

/// <s, t> = sum over common words of coefficient products.
double pair(const FreeTensor& a, const FreeTensor& b);

/// <t, e_{u1} ⧢ e_{u2} ⧢ ... >; pairs t against the shuffle of basis words.
double pair_with_shuffle(const FreeTensor& t, const std::vector<Word>& words);

/// Unnormalized projection onto symmetric tensors: e_w -> sum over all
/// permutations of w's letters (multiplicities kept).
FreeTensor symmetrize(const FreeTensor& t);

} // namespace sigstat

#endif
