#include "sigstat/moment_cumulant.hpp"

#include <algorithm>

#include "sigstat/errors.hpp"

namespace sigstat {

namespace {

std::vector<int> chain_lengths_of(const std::vector<Word>& tuples) {
    std::vector<int> lens;
    lens.reserve(tuples.size());
    for (const Word& t : tuples) {
        if (t.empty()) throw ValidationError("tuple families require nonempty words");
        lens.push_back(static_cast<int>(t.size()));
    }
    return lens;
}

} // namespace

TupleFamily::TupleFamily(std::vector<Word> tuples)
    : tuples_(std::move(tuples)), chains_(chain_lengths_of(tuples_)),
      poset_(std::make_shared<LabeledPoset>(chains_.poset())) {}

int TupleFamily::letter_at(int position) const {
    return tuples_[chains_.chain_of(position)][chains_.position_of(position)];
}

std::vector<Word> TupleFamily::block_subwords(const std::vector<int>& block) const {
    std::vector<Word> sub(tuples_.size());
    std::vector<int> sorted = block;
    std::sort(sorted.begin(), sorted.end()); // position order within each chain
    for (int pos : sorted) sub[chains_.chain_of(pos)].letters.push_back(letter_at(pos));
    std::vector<Word> out;
    for (Word& w : sub)
        if (!w.empty()) out.push_back(std::move(w));
    return out;
}

TupleFamily TupleFamily::concatenated(const TupleFamily& other) const {
    std::vector<Word> tuples = tuples_;
    tuples.insert(tuples.end(), other.tuples_.begin(), other.tuples_.end());
    return TupleFamily(std::move(tuples));
}

FreeTensor signature_moments(const DistributionModel& model, int depth) {
    if (depth > model.max_depth())
        throw ResourceError("requested depth exceeds the model's usable depth");
    FreeTensor mu = FreeTensor::unit(model.dim(), depth);
    for (const Word& w : all_words(model.dim(), depth))
        mu.set(w, model.mixed_moment({w}));
    return mu;
}

FreeTensor signature_cumulants(const FreeTensor& mu) {
    if (mu.coeff(Word{}) != 1.0)
        throw ValidationError("signature moments must have level-0 coefficient 1");
    return log(mu);
}

double generalized_moment(const DistributionModel& model, const TupleFamily& family,
                          const SetPartition& a) {
    if (a.ground_size() != family.total_positions())
        throw ValidationError("partition does not match the family's position set");
    double prod = 1.0;
    for (const auto& block : a.blocks())
        prod *= model.mixed_moment(family.block_subwords(block));
    return prod;
}

double joint_cumulant(const DistributionModel& model, const std::vector<Word>& words) {
    const int m = static_cast<int>(words.size());
    if (m == 0) throw ValidationError("joint cumulant of an empty variable list");
    if (m == 1) return model.mixed_moment(words);
    double total = 0.0;
    for (const SetPartition& p : enumerate_partitions(m)) {
        double prod = 1.0;
        for (const auto& blk : p.blocks()) {
            std::vector<Word> sub;
            sub.reserve(blk.size());
            for (int i : blk) sub.push_back(words[i]);
            prod *= model.mixed_moment(sub);
        }
        // (-1)^{|p|-1} (|p|-1)!
        double w = (p.size() % 2 == 1) ? 1.0 : -1.0;
        for (int f = 2; f < p.size(); ++f) w *= f;
        total += w * prod;
    }
    return total;
}

double generalized_cumulant(const DistributionModel& model, const TupleFamily& family,
                            const SetPartition& a) {
    if (a.ground_size() != family.total_positions())
        throw ValidationError("partition does not match the family's position set");
    double prod = 1.0;
    for (const auto& block : a.blocks())
        prod *= joint_cumulant(model, family.block_subwords(block));
    return prod;
}

double moment_from_gen_cumulants(const DistributionModel& model, const TupleFamily& family,
                                 const SetPartition& a) {
    const LabeledPoset& poset = family.position_poset().poset();
    double total = 0.0;
    for (const SetPartition& b : enumerate_partitions(a.ground_size()))
        if (crossmerge_leq(b, a, poset)) total += generalized_cumulant(model, family, b);
    return total;
}

double kappa_shuffle_via_moments(const DistributionModel& model, const TupleFamily& family,
                                 KappaWeights weights) {
    int total_len = 0;
    for (const Word& t : family.tuples()) total_len += static_cast<int>(t.size());
    if (total_len > model.max_depth())
        throw ResourceError("tuple family exceeds the model's usable depth");

    double total = 0.0;
    for (const OrderedPartition& a : enumerate_orp(family.poset_ptr())) {
        if (weights == KappaWeights::orp_factorial) {
            double w = to_double(BigRat((a.size() % 2 == 1 ? 1 : -1) * orp_factorial(a),
                                        BigInt(a.size())));
            total += w * generalized_moment(model, family, a.partition);
        } else {
            total += to_double(boundary_weight(a)) *
                     generalized_cumulant(model, family, a.partition);
        }
    }
    return total;
}

FreeTensor classical_cumulant_tensor(const DistributionModel& model, int depth) {
    if (depth > model.max_depth())
        throw ResourceError("requested depth exceeds the model's usable depth");
    // E[exp(X)]: coefficient of a length-m word w is E[X_{w_1}...X_{w_m}]/m!
    FreeTensor mgf = FreeTensor::unit(model.dim(), depth);
    for (const Word& w : all_words(model.dim(), depth)) {
        std::vector<Word> singles;
        singles.reserve(w.size());
        for (int letter : w.letters) singles.push_back(Word{letter});
        double fact = 1.0;
        for (std::size_t f = 2; f <= w.size(); ++f) fact *= static_cast<double>(f);
        mgf.set(w, model.mixed_moment(singles) / fact);
    }
    return symmetrize(log(mgf));
}

std::vector<DefectRow> independence_defect(const FreeTensor& mu, const std::set<int>& I,
                                           const std::set<int>& J, int depth) {
    for (int i : I)
        if (J.count(i)) throw ValidationError("independence letter sets overlap");
    for (int s : I)
        if (s < 1 || s > mu.dim()) throw ValidationError("letter outside alphabet in I");
    for (int s : J)
        if (s < 1 || s > mu.dim()) throw ValidationError("letter outside alphabet in J");

    FreeTensor kappa = signature_cumulants(mu);
    auto words_over = [&](const std::set<int>& letters, int max_len) {
        std::vector<Word> out;
        std::vector<Word> level{Word{}};
        for (int len = 1; len <= max_len; ++len) {
            std::vector<Word> next;
            for (const Word& w : level)
                for (int a : letters) {
                    Word e = w;
                    e.letters.push_back(a);
                    next.push_back(std::move(e));
                }
            out.insert(out.end(), next.begin(), next.end());
            level = std::move(next);
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    std::vector<DefectRow> rows;
    for (const Word& t1 : words_over(I, depth - 1))
        for (const Word& t2 : words_over(J, depth - static_cast<int>(t1.size()))) {
            if (static_cast<int>(t1.size() + t2.size()) > depth) continue;
            rows.push_back({t1, t2, pair_with_shuffle(kappa, {t1, t2})});
        }
    std::sort(rows.begin(), rows.end(), [](const DefectRow& a, const DefectRow& b) {
        auto ka = a.tau1.size() + a.tau2.size();
        auto kb = b.tau1.size() + b.tau2.size();
        if (ka != kb) return ka < kb;
        if (!(a.tau1 == b.tau1)) return a.tau1 < b.tau1;
        return a.tau2 < b.tau2;
    });
    return rows;
}

} // namespace sigstat
