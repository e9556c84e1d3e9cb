#include "sigstat/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "sigstat/errors.hpp"

namespace sigstat {

SampleFeatures::SampleFeatures(const std::vector<FreeTensor>& samples) {
    if (samples.empty()) throw ValidationError("sample set is empty");
    n_ = static_cast<int>(samples.size());
    dim_ = samples.front().dim();
    depth_ = samples.front().depth();
    for (const FreeTensor& t : samples) {
        if (t.dim() != dim_) throw ValidationError("samples have mixed dimensions");
        depth_ = std::min(depth_, t.depth());
    }
    ones_.assign(n_, 1.0);
    for (const Word& w : all_words(dim_, depth_)) {
        std::vector<double> col(n_);
        for (int l = 0; l < n_; ++l) col[l] = samples[l].coeff(w);
        columns_.emplace(w, std::move(col));
    }
}

double SampleFeatures::feature(int sample, const Word& w) const {
    return column(w)[sample];
}

const std::vector<double>& SampleFeatures::column(const Word& w) const {
    if (w.empty()) return ones_;
    auto it = columns_.find(w);
    if (it == columns_.end())
        throw ResourceError("word '" + to_string(w) + "' exceeds the sample depth " +
                            std::to_string(depth_));
    return it->second;
}

namespace {

/// Per-sample block features g_i(l) = prod over the block's per-tuple
/// sub-words of <X_l, e_w>.
std::vector<std::vector<double>> block_feature_columns(const SampleFeatures& samples,
                                                       const TupleFamily& family,
                                                       const SetPartition& a) {
    std::vector<std::vector<double>> g;
    g.reserve(a.size());
    for (const auto& block : a.blocks()) {
        std::vector<double> col(samples.n(), 1.0);
        for (const Word& w : family.block_subwords(block)) {
            const std::vector<double>& c = samples.column(w);
            for (int l = 0; l < samples.n(); ++l) col[l] *= c[l];
        }
        g.push_back(std::move(col));
    }
    return g;
}

double falling_factorial(long long n, int k) {
    double f = 1.0;
    for (int t = 0; t < k; ++t) f *= static_cast<double>(n - t);
    return f;
}

/// Coincidence patterns of k index slots with their Moebius weights
/// m(0_hat, q), built once per k.
struct PatternTable {
    std::vector<std::vector<std::vector<int>>> classes;
    std::vector<double> weight;
};

const PatternTable& pattern_table(int k) {
    static std::mutex mutex;
    static std::map<int, PatternTable> tables;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = tables.find(k);
    if (it != tables.end()) return it->second;
    PatternTable t;
    SetPartition bottom = SetPartition::singletons(k);
    for (const SetPartition& q : enumerate_partitions(k)) {
        t.classes.push_back(q.blocks());
        t.weight.push_back(moebius(bottom, q).convert_to<double>());
    }
    return tables.emplace(k, std::move(t)).first->second;
}

/// All partitions b <= c (refinement): per-block partition products.
std::vector<SetPartition> refinements_of(const SetPartition& c) {
    std::vector<std::vector<std::vector<std::vector<int>>>> per_block;
    for (const auto& blk : c.blocks()) {
        std::vector<std::vector<std::vector<int>>> opts;
        for (const SetPartition& q : enumerate_partitions(static_cast<int>(blk.size()))) {
            std::vector<std::vector<int>> mapped;
            for (const auto& cls : q.blocks()) {
                std::vector<int> piece;
                piece.reserve(cls.size());
                for (int i : cls) piece.push_back(blk[i]);
                mapped.push_back(std::move(piece));
            }
            opts.push_back(std::move(mapped));
        }
        per_block.push_back(std::move(opts));
    }
    std::vector<SetPartition> out;
    std::vector<std::size_t> choice(per_block.size(), 0);
    while (true) {
        std::vector<std::vector<int>> blocks;
        for (std::size_t i = 0; i < per_block.size(); ++i)
            for (const auto& piece : per_block[i][choice[i]]) blocks.push_back(piece);
        out.emplace_back(c.ground_size(), std::move(blocks));
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == per_block[i].size()) choice[i++] = 0;
        if (i == choice.size()) break;
    }
    return out;
}

BigInt falling_factorial_big(long long n, int k) {
    BigInt f = 1;
    for (int t = 0; t < k; ++t) f *= BigInt(n - t);
    return f;
}

/// Extend a1 on S1 = {0..m1-1} and a2 on {0..m2-1} to the concatenated
/// ground set, and their disjoint union.
struct CombinedPartitions {
    SetPartition split; // a1 ⊔ a2
    std::vector<std::vector<int>> a1_blocks;
    std::vector<std::vector<int>> a2_blocks;
};

CombinedPartitions combine(const SetPartition& a1, const SetPartition& a2, int m1, int m2) {
    std::vector<std::vector<int>> blocks = a1.blocks();
    std::vector<std::vector<int>> b2 = a2.blocks();
    for (auto& blk : b2) {
        for (int& e : blk) e += m1;
        blocks.push_back(blk);
    }
    SetPartition split(m1 + m2, blocks);
    std::vector<std::vector<int>> a2_shift = a2.blocks();
    for (auto& blk : a2_shift)
        for (int& e : blk) e += m1;
    return {std::move(split), a1.blocks(), std::move(a2_shift)};
}

/// No block of b is a proper subset of any of the given blocks.
bool no_proper_subset(const SetPartition& b, const std::vector<std::vector<int>>& blocks) {
    for (const auto& bb : b.blocks())
        for (const auto& ab : blocks) {
            if (bb.size() >= ab.size()) continue;
            if (std::includes(ab.begin(), ab.end(), bb.begin(), bb.end())) return false;
        }
    return true;
}

/// c ∩ S for S a contiguous index range [lo, lo+len), reindexed to 0..len-1.
SetPartition restrict_contiguous(const SetPartition& c, int lo, int len) {
    std::vector<int> subset(len);
    for (int i = 0; i < len; ++i) subset[i] = lo + i;
    std::vector<std::vector<int>> pieces = c.restrict_to(subset);
    for (auto& p : pieces)
        for (int& e : p) e -= lo;
    return SetPartition(len, std::move(pieces));
}

} // namespace

double symmetric_mean(const SampleFeatures& samples, const TupleFamily& family,
                      const SetPartition& a) {
    const int k = a.size();
    const int n = samples.n();
    if (n < k)
        throw ResourceError("symmetric mean needs n >= " + std::to_string(k) + " samples");
    auto g = block_feature_columns(samples, family, a);

    const PatternTable& table = pattern_table(k);
    double total = 0.0;
    for (std::size_t qi = 0; qi < table.classes.size(); ++qi) {
        double s = 1.0;
        for (const auto& cls : table.classes[qi]) {
            double acc = 0.0;
            for (int l = 0; l < n; ++l) {
                double p = g[cls[0]][l];
                for (std::size_t ii = 1; ii < cls.size(); ++ii) p *= g[cls[ii]][l];
                acc += p;
            }
            s *= acc;
        }
        total += table.weight[qi] * s;
    }
    return total / falling_factorial(n, k);
}

double symmetric_mean_naive(const SampleFeatures& samples, const TupleFamily& family,
                            const SetPartition& a) {
    const int k = a.size();
    const int n = samples.n();
    if (n < k)
        throw ResourceError("symmetric mean needs n >= " + std::to_string(k) + " samples");
    auto g = block_feature_columns(samples, family, a);
    std::vector<int> idx(k, -1);
    std::vector<bool> used(n, false);
    double total = 0.0;
    auto rec = [&](auto&& self, int slot, double prod) -> void {
        if (slot == k) {
            total += prod;
            return;
        }
        for (int l = 0; l < n; ++l) {
            if (used[l]) continue;
            used[l] = true;
            self(self, slot + 1, prod * g[slot][l]);
            used[l] = false;
        }
    };
    rec(rec, 0, 1.0);
    return total / falling_factorial(n, k);
}

double polykay(const SampleFeatures& samples, const TupleFamily& family, const SetPartition& a) {
    const LabeledPoset& poset = family.position_poset().poset();
    if (samples.n() < a.ground_size())
        throw ResourceError("polykay needs at least as many samples as positions");
    CrossMergeMoebius moeb(poset);
    double total = 0.0;
    for (const SetPartition& b : enumerate_partitions(a.ground_size()))
        if (crossmerge_leq(b, a, poset))
            total += moeb(b, a).convert_to<double>() * symmetric_mean(samples, family, b);
    return total;
}

double signature_polykay(const SampleFeatures& samples, const TupleFamily& family,
                         PolykayForm form) {
    if (samples.n() < family.total_positions())
        throw ResourceError("signature polykay needs at least as many samples as positions");
    double total = 0.0;
    for (const OrderedPartition& a : enumerate_orp(family.poset_ptr())) {
        if (form == PolykayForm::symmetric_means) {
            double w = to_double(BigRat((a.size() % 2 == 1 ? 1 : -1) * orp_factorial(a),
                                        BigInt(a.size())));
            total += w * symmetric_mean(samples, family, a.partition);
        } else {
            total += to_double(boundary_weight(a)) * polykay(samples, family, a.partition);
        }
    }
    return total;
}

double polykay_cov_exact(const TupleFamily& fam1, const SetPartition& a1,
                         const TupleFamily& fam2, const SetPartition& a2, long long n,
                         const DistributionModel& model) {
    const int m1 = fam1.total_positions();
    const int m2 = fam2.total_positions();
    if (a1.ground_size() != m1 || a2.ground_size() != m2)
        throw ValidationError("partition/family mismatch in polykay_cov_exact");
    if (n < m1 + m2)
        throw ResourceError("polykay_cov_exact needs n >= total position count");

    TupleFamily combined = fam1.concatenated(fam2);
    const LabeledPoset& poset = combined.position_poset().poset();
    const LabeledPoset& poset1 = fam1.position_poset().poset();
    const LabeledPoset& poset2 = fam2.position_poset().poset();
    CrossMergeMoebius moeb(poset);
    CrossMergeMoebius moeb1(poset1);
    CrossMergeMoebius moeb2(poset2);

    // weight(c) = (n)_{|c|} / ((n)_{|c1|} (n)_{|c2|}) * m(c1,a1) m(c2,a2),
    // nonzero only when c1 ⊴ a1 and c2 ⊴ a2
    std::vector<SetPartition> parts = enumerate_partitions(m1 + m2);
    std::vector<BigRat> weight(parts.size(), BigRat(0));
    for (std::size_t ci = 0; ci < parts.size(); ++ci) {
        const SetPartition& c = parts[ci];
        SetPartition c1 = restrict_contiguous(c, 0, m1);
        SetPartition c2 = restrict_contiguous(c, m1, m2);
        if (!crossmerge_leq(c1, a1, poset1) || !crossmerge_leq(c2, a2, poset2)) continue;
        BigRat w(falling_factorial_big(n, c.size()),
                 falling_factorial_big(n, c1.size()) * falling_factorial_big(n, c2.size()));
        weight[ci] = w * BigRat(moeb1(c1, a1) * moeb2(c2, a2), BigInt(1));
    }

    double total = 0.0;
    for (const SetPartition& b : parts) {
        BigRat coeff(0);
        for (std::size_t ci = 0; ci < parts.size(); ++ci) {
            if (weight[ci] == BigRat(0)) continue;
            if (crossmerge_leq(b, parts[ci], poset)) coeff += weight[ci];
        }
        if (coeff != BigRat(0))
            total += to_double(coeff) * generalized_cumulant(model, combined, b);
    }
    double k1 = generalized_cumulant(model, fam1, a1);
    double k2 = generalized_cumulant(model, fam2, a2);
    return total - k1 * k2;
}

double polykay_cov_asymptotic_with(
    const TupleFamily& fam1, const SetPartition& a1, const TupleFamily& fam2,
    const SetPartition& a2,
    const std::function<double(const TupleFamily&, const SetPartition&)>& kappa) {
    const int m1 = fam1.total_positions();
    const int m2 = fam2.total_positions();
    if (a1.ground_size() != m1 || a2.ground_size() != m2)
        throw ValidationError("partition/family mismatch in polykay_cov_asymptotic");

    TupleFamily combined = fam1.concatenated(fam2);
    const LabeledPoset& poset = combined.position_poset().poset();
    CombinedPartitions cp = combine(a1, a2, m1, m2);

    double total = 0.0;
    // V(a1,a2): exactly one block of a1 merged with one block of a2
    for (std::size_t i = 0; i < cp.a1_blocks.size(); ++i) {
        for (std::size_t j = 0; j < cp.a2_blocks.size(); ++j) {
            std::vector<std::vector<int>> blocks;
            std::vector<int> merged = cp.a1_blocks[i];
            merged.insert(merged.end(), cp.a2_blocks[j].begin(), cp.a2_blocks[j].end());
            blocks.push_back(std::move(merged));
            for (std::size_t t = 0; t < cp.a1_blocks.size(); ++t)
                if (t != i) blocks.push_back(cp.a1_blocks[t]);
            for (std::size_t t = 0; t < cp.a2_blocks.size(); ++t)
                if (t != j) blocks.push_back(cp.a2_blocks[t]);
            SetPartition c(m1 + m2, std::move(blocks));

            for (const SetPartition& b : refinements_of(c)) {
                if (!crossmerge_leq(b, c, poset)) continue;
                if (b == cp.split) continue;
                if (!no_proper_subset(b, cp.a1_blocks) || !no_proper_subset(b, cp.a2_blocks))
                    continue;
                total += kappa(combined, b);
            }
        }
    }
    return total;
}

double polykay_cov_asymptotic(const TupleFamily& fam1, const SetPartition& a1,
                              const TupleFamily& fam2, const SetPartition& a2,
                              const DistributionModel& model) {
    return polykay_cov_asymptotic_with(
        fam1, a1, fam2, a2,
        [&model](const TupleFamily& fam, const SetPartition& b) {
            return generalized_cumulant(model, fam, b);
        });
}

namespace {

double signature_polykay_asymptotic_cov_impl(
    const TupleFamily& fam1, const TupleFamily& fam2,
    const std::function<double(const TupleFamily&, const SetPartition&)>& kappa) {
    double total = 0.0;
    for (const OrderedPartition& a1 : enumerate_orp(fam1.poset_ptr())) {
        double d1 = to_double(boundary_weight(a1));
        if (d1 == 0.0) continue;
        for (const OrderedPartition& a2 : enumerate_orp(fam2.poset_ptr())) {
            double d2 = to_double(boundary_weight(a2));
            if (d2 == 0.0) continue;
            total += d1 * d2 *
                     polykay_cov_asymptotic_with(fam1, a1.partition, fam2, a2.partition, kappa);
        }
    }
    return total;
}

} // namespace

double signature_polykay_asymptotic_cov(const TupleFamily& fam1, const TupleFamily& fam2,
                                        const DistributionModel& model) {
    return signature_polykay_asymptotic_cov_impl(
        fam1, fam2, [&model](const TupleFamily& fam, const SetPartition& b) {
            return generalized_cumulant(model, fam, b);
        });
}

double signature_polykay_asymptotic_cov(const TupleFamily& fam1, const TupleFamily& fam2,
                                        const SampleFeatures& samples) {
    // polykay plug-ins for the generalized cumulants, cached per partition
    auto cache = std::make_shared<std::map<std::vector<int>, double>>();
    auto mu_cache = std::make_shared<std::map<std::vector<int>, double>>();
    auto kappa = [&samples, cache, mu_cache](const TupleFamily& fam,
                                             const SetPartition& a) -> double {
        if (auto it = cache->find(a.rgs()); it != cache->end()) return it->second;
        const LabeledPoset& poset = fam.position_poset().poset();
        CrossMergeMoebius moeb(poset);
        double total = 0.0;
        for (const SetPartition& b : enumerate_partitions(a.ground_size())) {
            if (!crossmerge_leq(b, a, poset)) continue;
            double mu;
            if (auto it = mu_cache->find(b.rgs()); it != mu_cache->end())
                mu = it->second;
            else {
                mu = symmetric_mean(samples, fam, b);
                mu_cache->emplace(b.rgs(), mu);
            }
            total += moeb(b, a).convert_to<double>() * mu;
        }
        cache->emplace(a.rgs(), total);
        return total;
    };
    return signature_polykay_asymptotic_cov_impl(fam1, fam2, kappa);
}

double driftbm_variance_gap(int i, int j, const std::vector<double>& b,
                            const std::vector<std::vector<double>>& sigma, long long N) {
    const int d = static_cast<int>(b.size());
    if (i < 1 || i > d || j < 1 || j > d)
        throw ValidationError("entry indices outside the alphabet");
    if (N < 2) throw ValidationError("variance gap needs N >= 2");
    if (static_cast<int>(sigma.size()) != d)
        throw ValidationError("sigma dimension mismatch");
    for (const auto& row : sigma)
        if (static_cast<int>(row.size()) != d) throw ValidationError("sigma not square");
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            if (std::abs(sigma[x][y] - sigma[y][x]) > 1e-12)
                throw ValidationError("sigma must be symmetric");

    const double bi = b[i - 1], bj = b[j - 1];
    const double sii = sigma[i - 1][i - 1], sjj = sigma[j - 1][j - 1];
    const double sij = sigma[i - 1][j - 1], sji = sigma[j - 1][i - 1];
    const double Nd = static_cast<double>(N);
    return (2.0 * bi * bi * bj * bj + bi * bj * (sij + sji) + bi * bi * sjj + bj * bj * sii +
            4.0 * bi * bj * sij) /
               (4.0 * Nd) -
           (sii * sjj + sij * sij) / (4.0 * Nd * (Nd - 1.0));
}

} // namespace sigstat
