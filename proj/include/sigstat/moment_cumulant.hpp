#ifndef SIGSTAT_MOMENT_CUMULANT_HPP
#define SIGSTAT_MOMENT_CUMULANT_HPP

#include <memory>
#include <set>
#include <vector>

#include "sigstat/model.hpp"
#include "sigstat/partition.hpp"
#include "sigstat/tensor.hpp"

namespace sigstat {

/// A family of nonempty words (tau_1, ..., tau_k) with its position poset
/// P_(|tau_1|,...,|tau_k|). Positions are always treated as distinct, even
/// when letters repeat; partitions/weights act on positions, features on
/// letters.
class TupleFamily {
public:
    explicit TupleFamily(std::vector<Word> tuples);

    const std::vector<Word>& tuples() const { return tuples_; }
    int total_positions() const { return chains_.total_size(); }
    const ChainFamily& position_poset() const { return chains_; }
    std::shared_ptr<const LabeledPoset> poset_ptr() const { return poset_; }

    /// Letter carried by a global position index.
    int letter_at(int position) const;

    /// a_i^j = tau_j ∩ a_i for one block: the nonempty per-tuple sub-words,
    /// letters read in position order.
    std::vector<Word> block_subwords(const std::vector<int>& block) const;

    /// Concatenated family (this tuples then other's), positions of the
    /// second family offset by total_positions().
    TupleFamily concatenated(const TupleFamily& other) const;

private:
    std::vector<Word> tuples_;
    ChainFamily chains_;
    std::shared_ptr<const LabeledPoset> poset_;
};

/// mu_X at the given depth: coefficient of w is mixed_moment({w}).
FreeTensor signature_moments(const DistributionModel& model, int depth);

/// kappa_X = log mu_X.
FreeTensor signature_cumulants(const FreeTensor& mu);

/// Generalised a-moment: product over blocks of the mixed moment of the
/// block's per-tuple sub-words.
double generalized_moment(const DistributionModel& model, const TupleFamily& family,
                          const SetPartition& a);

/// Classical joint cumulant of (<T,e_w1>, ..., <T,e_wm>) via the partition
/// lattice sum with (-1)^{|a|-1}(|a|-1)! weights.
double joint_cumulant(const DistributionModel& model, const std::vector<Word>& words);

/// Generalised a-cumulant: product over blocks of the joint cumulant of the
/// block's sub-word coordinates.
double generalized_cumulant(const DistributionModel& model, const TupleFamily& family,
                            const SetPartition& a);

/// Right side of the moment/cumulant relation: sum of generalized cumulants
/// over b ⊴ a. Equals generalized_moment(a).
double moment_from_gen_cumulants(const DistributionModel& model, const TupleFamily& family,
                                 const SetPartition& a);

enum class KappaWeights {
    orp_factorial, // sum of (-1)^{|a|-1} (a!/|a|) mu(a) over ordered partitions
    boundary,      // sum of del(a) kappa(a) over ordered partitions
};

/// <kappa_X, e_tau1 ⧢ ... ⧢ e_tauk> computed through the ordered-partition
/// expansion (either weight system gives the same value).
double kappa_shuffle_via_moments(const DistributionModel& model, const TupleFamily& family,
                                 KappaWeights weights);

/// pi_Sym(log E[exp(X)]) for a vector-valued X described by its level-1
/// mixed moments.
FreeTensor classical_cumulant_tensor(const DistributionModel& model, int depth);

struct DefectRow {
    Word tau1;
    Word tau2;
    double value;
};

/// <log mu, e_tau1 ⧢ e_tau2> for all nonempty tau1 over I, tau2 over J, with
/// |tau1|+|tau2| <= depth; rows sorted by (|tau1|+|tau2|, tau1, tau2).
/// All-zero defects imply independence of the coordinate groups only when
/// the joint law is characterised by these mixed moments (true e.g. when
/// the moment sequence decays fast enough); the table itself is computed
/// from whatever moment data it is given.
std::vector<DefectRow> independence_defect(const FreeTensor& mu, const std::set<int>& I,
                                           const std::set<int>& J, int depth);

} // namespace sigstat

#endif
