#ifndef SIGSTAT_PARTITION_HPP
#define SIGSTAT_PARTITION_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "sigstat/poset.hpp"

namespace sigstat {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::rational<BigInt>;

double to_double(const BigRat& r);

inline int default_enumeration_cap() { return 12; }

/// Partition of {0..n-1} into disjoint nonempty blocks covering the ground
/// set. Canonical form: elements sorted within blocks, blocks sorted by
/// minimal element. Total order (for maps and determinism) is lexicographic
/// on the restricted-growth string.
class SetPartition {
public:
    SetPartition(int ground_size, std::vector<std::vector<int>> blocks);

    /// From a restricted growth string: rgs[i] = block index of element i,
    /// with rgs[0] == 0 and rgs[i] <= max(rgs[0..i-1]) + 1.
    static SetPartition from_rgs(const std::vector<int>& rgs);

    static SetPartition singletons(int n);
    static SetPartition one_block(int n);

    int ground_size() const { return ground_size_; }
    int size() const { return static_cast<int>(blocks_.size()); } // |a|
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_of(int elem) const { return block_of_[elem]; }
    bool same_block(int x, int y) const { return block_of_[x] == block_of_[y]; }

    const std::vector<int>& rgs() const { return rgs_; }

    bool operator==(const SetPartition& o) const { return rgs_ == o.rgs_; }
    bool operator<(const SetPartition& o) const { return rgs_ < o.rgs_; }

    /// Restriction a ∩ U: the nonempty intersections of blocks with U,
    /// as a partition of U (elements keep their global indices).
    std::vector<std::vector<int>> restrict_to(const std::vector<int>& subset) const;

    /// Blocks rendered with labels: elements ",", blocks "|".
    std::string to_text(const std::vector<std::string>& labels) const;

private:
    int ground_size_;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_;
    std::vector<int> rgs_;
};

/// Parse the "|/," block text back into a partition over the given labels.
SetPartition partition_from_text(const std::string& text, const std::vector<std::string>& labels);

/// A partition together with the poset it is ordered against; construction
/// checks is_ordered.
struct OrderedPartition {
    SetPartition partition;
    std::shared_ptr<const LabeledPoset> poset;

    OrderedPartition(SetPartition p, std::shared_ptr<const LabeledPoset> ps);
    int size() const { return partition.size(); }
};

/// All partitions of an n-set, each exactly once, in restricted-growth
/// lexicographic order. Throws ResourceError beyond the cap.
std::vector<SetPartition> enumerate_partitions(int n, int cap = default_enumeration_cap());

/// Kernel-of-order-preserving-map test, decided via acyclicity of the block
/// digraph (edge A -> B when some x in A is strictly below some y in B).
bool is_ordered(const SetPartition& a, const LabeledPoset& poset);

/// Ordered partitions of the poset: enumerate_partitions filtered by
/// is_ordered.
std::vector<OrderedPartition> enumerate_orp(std::shared_ptr<const LabeledPoset> poset,
                                            int cap = default_enumeration_cap());

/// Every block of a contained in some block of b.
bool refinement_leq(const SetPartition& a, const SetPartition& b);

/// b ⊴ a: b <= a in refinement AND a ∩ C == b ∩ C for every chain C, i.e.
/// a merges blocks of b only across mutually incomparable elements.
/// Equivalent form used here: comparable x != y in one block of a are
/// already in one block of b. The same relation as "a is an antichain
/// ancestor of b" minus the orderedness requirement; equals plain
/// refinement on antichains.
bool crossmerge_leq(const SetPartition& b, const SetPartition& a, const LabeledPoset& poset);

/// Möbius function of the partition lattice interval [a, b], by the
/// recursive definition with memoization (thread-safe cache).
BigInt moebius(const SetPartition& a, const SetPartition& b);

/// Möbius function of the ⊴ order (crossmerge_leq), memoized per instance.
class CrossMergeMoebius {
public:
    explicit CrossMergeMoebius(const LabeledPoset& poset) : poset_(&poset) {}
    BigInt operator()(const SetPartition& b, const SetPartition& a);

private:
    const LabeledPoset* poset_;
    std::map<std::pair<std::vector<int>, std::vector<int>>, BigInt> cache_;
};

/// a! — the number of order-preserving maps onto [|a|] with kernel a
/// (= linear extensions of the block digraph), by backtracking enumeration.
BigInt orp_factorial(const OrderedPartition& a);
BigInt orp_factorial(const SetPartition& a, const LabeledPoset& poset);

/// A(a): ordered coarsenings b >= a with b ∩ C == a ∩ C for every chain.
std::vector<OrderedPartition> antichain_ancestry(const OrderedPartition& a);

/// ∂(a) = Σ_{b ∈ A(a)} (-1)^{|b|-1} b!/|b|, exact.
BigRat boundary_weight(const OrderedPartition& a);

struct OrderPolynomials {
    BigInt omega;        // #Hom(P, [n])
    BigInt omega_strict; // #{f in Hom(P, [n]) surjective onto [n]}
};

/// Both order polynomials by direct enumeration (backtracking count).
OrderPolynomials order_polynomial(const LabeledPoset& poset, int n,
                                  int cap = default_enumeration_cap());

} // namespace sigstat

#endif
