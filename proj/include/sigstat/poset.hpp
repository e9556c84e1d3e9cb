#ifndef SIGSTAT_POSET_HPP
#define SIGSTAT_POSET_HPP

#include <string>
#include <vector>

namespace sigstat {

/// Finite poset over elements 0..n-1 with printable labels. The relation is
/// validated (reflexive, antisymmetric, transitive) on construction.
class LabeledPoset {
public:
    LabeledPoset(std::vector<std::vector<bool>> leq, std::vector<std::string> labels);

    int size() const { return static_cast<int>(leq_.size()); }
    bool leq(int x, int y) const { return leq_[x][y]; }
    bool less(int x, int y) const { return x != y && leq_[x][y]; }
    bool comparable(int x, int y) const { return leq_[x][y] || leq_[y][x]; }
    const std::string& label(int x) const { return labels_[x]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// An antichain of n unlabeled-order elements (labels "1".."n").
    static LabeledPoset antichain(int n);
    /// A single chain 1 < 2 < ... < n.
    static LabeledPoset chain(int n);

private:
    std::vector<std::vector<bool>> leq_;
    std::vector<std::string> labels_;
};

/// Disjoint union of k mutually non-comparable chains of lengths n_1..n_k.
/// Element (i, p) — 1-based chain i, position p — is labeled "c<i>.<p>" and
/// has global index offset(i) + p - 1; (i,p) <= (j,q) iff i == j and p <= q.
class ChainFamily {
public:
    explicit ChainFamily(std::vector<int> chain_lengths);

    const std::vector<int>& chain_lengths() const { return lengths_; }
    int total_size() const { return total_; }
    const LabeledPoset& poset() const { return poset_; }

    int chain_of(int elem) const { return chain_of_[elem]; }       // 0-based
    int position_of(int elem) const { return position_of_[elem]; } // 0-based
    int element(int chain, int position) const { return offsets_[chain] + position; }

    /// Element indices of each maximal chain, in order.
    const std::vector<std::vector<int>>& chains() const { return chains_; }

private:
    std::vector<int> lengths_;
    int total_;
    std::vector<int> offsets_;
    std::vector<int> chain_of_;
    std::vector<int> position_of_;
    std::vector<std::vector<int>> chains_;
    LabeledPoset poset_;

    static LabeledPoset build_poset(const std::vector<int>& lengths);
};

} // namespace sigstat

#endif
