#include "sigstat/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sigstat/errors.hpp"
#include "sigstat/moment_cumulant.hpp"

namespace sigstat {

bool is_symmetric_psd(const Matrix& sigma, double tol) {
    const std::size_t d = sigma.size();
    for (const auto& row : sigma)
        if (row.size() != d) return false;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (std::abs(sigma[i][j] - sigma[j][i]) > tol) return false;
    // PSD via Cholesky with semidefinite pivots
    Matrix L(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = sigma[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            if (i == j) {
                if (s < -tol) return false;
                L[i][i] = s > 0.0 ? std::sqrt(s) : 0.0;
            } else {
                L[i][j] = L[j][j] > 0.0 ? s / L[j][j] : 0.0;
                if (L[j][j] == 0.0 && std::abs(s) > tol) return false;
            }
        }
    }
    return true;
}

Matrix cholesky_psd(const Matrix& sigma) {
    if (!is_symmetric_psd(sigma))
        throw ValidationError("sigma must be symmetric positive semidefinite");
    const std::size_t d = sigma.size();
    Matrix L(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double s = sigma[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            if (i == j)
                L[i][i] = s > 0.0 ? std::sqrt(s) : 0.0;
            else
                L[i][j] = L[j][j] > 0.0 ? s / L[j][j] : 0.0;
        }
    return L;
}

DiscreteMixtureModel::DiscreteMixtureModel(std::vector<std::pair<FreeTensor, double>> atoms)
    : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw ValidationError("mixture needs at least one atom");
    dim_ = atoms_.front().first.dim();
    depth_ = atoms_.front().first.depth();
    double psum = 0.0;
    for (const auto& [tensor, p] : atoms_) {
        if (tensor.dim() != dim_) throw ValidationError("mixture atoms have mixed dimensions");
        depth_ = std::min(depth_, tensor.depth());
        if (!(p > 0.0)) throw ValidationError("mixture probabilities must be positive");
        psum += p;
        if (!is_grouplike(tensor, 1e-9))
            throw ValidationError("mixture atom is not group-like at tolerance 1e-9");
    }
    if (std::abs(psum - 1.0) > 1e-12)
        throw ValidationError("mixture probabilities must sum to 1");
}

double DiscreteMixtureModel::mixed_moment(const std::vector<Word>& words) const {
    for (const Word& w : words)
        if (static_cast<int>(w.size()) > depth_)
            throw ResourceError("word exceeds mixture atom depth");
    double total = 0.0;
    for (const auto& [tensor, p] : atoms_) {
        double prod = 1.0;
        for (const Word& w : words) prod *= tensor.coeff(w);
        total += p * prod;
    }
    return total;
}

DriftVolModel::DriftVolModel(std::vector<double> b, Matrix sigma, int steps_per_unit,
                             double horizon, int model_depth)
    : b_(std::move(b)), sigma_(std::move(sigma)), steps_per_unit_(steps_per_unit),
      horizon_(horizon), model_depth_(model_depth), chol_(cholesky_psd(sigma_)),
      mu_(driftbm_expected_signature(b_, sigma_, model_depth)) {
    if (b_.empty()) throw ValidationError("drift vector must be nonempty");
    if (sigma_.size() != b_.size()) throw ValidationError("sigma dimension mismatch");
    if (steps_per_unit_ < 1) throw ValidationError("steps_per_unit must be >= 1");
    if (!(horizon_ > 0.0)) throw ValidationError("horizon must be positive");
}

double DriftVolModel::mixed_moment(const std::vector<Word>& words) const {
    int total_len = 0;
    for (const Word& w : words) total_len += static_cast<int>(w.size());
    if (total_len > model_depth_)
        throw ResourceError("mixed moment exceeds the model's precomputed depth");
    // group-like samples: products of coordinates are shuffle coordinates
    return pair_with_shuffle(mu_, words);
}

DiscreteVectorModel::DiscreteVectorModel(
    std::vector<std::pair<std::vector<double>, double>> atoms)
    : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw ValidationError("vector model needs at least one atom");
    dim_ = static_cast<int>(atoms_.front().first.size());
    double psum = 0.0;
    for (const auto& [v, p] : atoms_) {
        if (static_cast<int>(v.size()) != dim_)
            throw ValidationError("vector atoms have mixed dimensions");
        if (!(p > 0.0)) throw ValidationError("atom probabilities must be positive");
        psum += p;
    }
    if (std::abs(psum - 1.0) > 1e-12) throw ValidationError("atom probabilities must sum to 1");
}

double DiscreteVectorModel::mixed_moment(const std::vector<Word>& words) const {
    for (const Word& w : words)
        if (w.size() != 1)
            throw ResourceError("vector model serves level-1 words only");
    double total = 0.0;
    for (const auto& [v, p] : atoms_) {
        double prod = 1.0;
        for (const Word& w : words) prod *= v[w[0] - 1];
        total += p * prod;
    }
    return total;
}

FreeTensor driftbm_expected_signature(const std::vector<double>& b, const Matrix& sigma,
                                      int depth) {
    const int d = static_cast<int>(b.size());
    FreeTensor u(d, depth);
    if (depth >= 1)
        for (int i = 0; i < d; ++i) u.set(Word{i + 1}, b[i]);
    if (depth >= 2)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) u.set(Word{i + 1, j + 1}, 0.5 * sigma[i][j]);
    return exp(u);
}

Signature simulate_driftbm_signature(const DriftVolModel& model, int depth, Rng& rng) {
    const int d = model.dim();
    const int steps = std::max(1, static_cast<int>(std::llround(
                                      model.steps_per_unit() * model.horizon())));
    const double h = model.horizon() / steps;
    const double sqrt_h = std::sqrt(h);
    const Matrix& L = model.noise_factor();
    std::vector<double> incr(static_cast<std::size_t>(steps) * d);
    std::vector<double> z(d);
    for (int s = 0; s < steps; ++s) {
        for (int i = 0; i < d; ++i) z[i] = rng.gaussian();
        for (int i = 0; i < d; ++i) {
            double noise = 0.0;
            for (int k = 0; k <= i; ++k) noise += L[i][k] * z[k];
            incr[static_cast<std::size_t>(s) * d + i] = model.drift()[i] * h + sqrt_h * noise;
        }
    }
    return signature_of_increments(incr, d, depth);
}

double exact_estimator_expectation(const DiscreteMixtureModel& model,
                                   const std::function<double(const SampleFeatures&)>& estimator,
                                   int n) {
    const std::size_t k = model.atoms().size();
    double combos = std::pow(static_cast<double>(k), n);
    if (combos > 2e5)
        throw ResourceError("exact expectation enumeration too large (support^n > 2e5)");
    std::vector<int> assign(n, 0);
    double total = 0.0;
    while (true) {
        double weight = 1.0;
        std::vector<FreeTensor> tensors;
        tensors.reserve(n);
        for (int i = 0; i < n; ++i) {
            weight *= model.atoms()[assign[i]].second;
            tensors.push_back(model.atoms()[assign[i]].first);
        }
        total += weight * estimator(SampleFeatures(tensors));
        int i = 0;
        while (i < n && ++assign[i] == static_cast<int>(k)) assign[i++] = 0;
        if (i == n) break;
    }
    return total;
}

// ---------------------------------------------------------------------------

namespace {

double sample_variance(const std::vector<double>& xs) {
    const std::size_t r = xs.size();
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(r);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(r - 1);
}

/// Paired variance-gap statistics for two per-replicate series: the gap
/// Var(u) - Var(v) and the standard error of the per-replicate squared
/// deviations' differences.
struct VarGap {
    double gap;
    double stderr_;
};

VarGap paired_variance_gap(const std::vector<double>& u, const std::vector<double>& v) {
    const std::size_t r = u.size();
    double mu = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        mu += u[i];
        mv += v[i];
    }
    mu /= static_cast<double>(r);
    mv /= static_cast<double>(r);
    std::vector<double> g(r);
    double mg = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        g[i] = (u[i] - mu) * (u[i] - mu) - (v[i] - mv) * (v[i] - mv);
        mg += g[i];
    }
    mg /= static_cast<double>(r);
    double ss = 0.0;
    for (std::size_t i = 0; i < r; ++i) ss += (g[i] - mg) * (g[i] - mg);
    double sd = std::sqrt(ss / static_cast<double>(r - 1));
    // n/(n-1)-corrected sample variances differ from the plain mean of
    // squared deviations by a common factor; use the corrected gap.
    double corr = static_cast<double>(r) / static_cast<double>(r - 1);
    return {corr * mg, corr * sd / std::sqrt(static_cast<double>(r))};
}

} // namespace

Figure2Report run_figure2(const Figure2Config& config) {
    const int d = static_cast<int>(config.b.size());
    if (d < 1) throw ValidationError("figure2 needs a drift vector");
    if (config.depth < 2) throw ValidationError("figure2 needs depth >= 2");
    if (config.replicates < 2) throw ValidationError("figure2 needs >= 2 replicates");
    if (config.Ns.empty()) throw ValidationError("figure2 needs a sample-size grid");
    for (long long N : config.Ns)
        if (N < 2) throw ValidationError("figure2 sample sizes must be >= 2");
    DriftVolModel model(config.b, config.sigma, config.steps_per_unit, 1.0,
                        std::max(config.depth, 2));

    // closed-form targets
    std::vector<double> mu1(d);
    Matrix mu2(d, std::vector<double>(d));
    Matrix kappa2(d, std::vector<double>(d));
    for (int i = 0; i < d; ++i) {
        mu1[i] = config.b[i];
        for (int j = 0; j < d; ++j) {
            mu2[i][j] = 0.5 * (config.b[i] * config.b[j] + config.sigma[i][j]);
            kappa2[i][j] = 0.5 * config.sigma[i][j];
        }
    }

    Figure2Report report;
    report.config = config;

    for (std::size_t ni = 0; ni < config.Ns.size(); ++ni) {
        const long long N = config.Ns[ni];
        // per-replicate estimator values at this N, per level-2 entry
        std::vector<Matrix> mu2_hats(config.replicates);
        std::vector<Matrix> kappa2_hats(config.replicates);

        for (int r = 0; r < config.replicates; ++r) {
            const std::uint64_t seed = child_seed(child_seed(config.seed, ni), r);
            Rng rng(seed);
            std::vector<double> s1(d, 0.0);
            Matrix s2(d, std::vector<double>(d, 0.0));
            Matrix souter(d, std::vector<double>(d, 0.0)); // sum of X1 ⊗ X1 per window
            for (long long w = 0; w < N; ++w) {
                Signature sig = simulate_driftbm_signature(model, config.depth, rng);
                std::vector<double> x1(d);
                for (int i = 0; i < d; ++i) x1[i] = sig.tensor.coeff(Word{i + 1});
                for (int i = 0; i < d; ++i) {
                    s1[i] += x1[i];
                    for (int j = 0; j < d; ++j) {
                        s2[i][j] += sig.tensor.coeff(Word{i + 1, j + 1});
                        souter[i][j] += x1[i] * x1[j];
                    }
                }
            }
            const double Nd = static_cast<double>(N);
            Matrix mu2h(d, std::vector<double>(d));
            Matrix kap2h(d, std::vector<double>(d));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    mu2h[i][j] = s2[i][j] / Nd;
                    double cross = s1[i] * s1[j] - souter[i][j]; // sum over l != m
                    kap2h[i][j] = mu2h[i][j] - cross / (2.0 * Nd * (Nd - 1.0));
                }
            std::vector<double> mu1h(d);
            for (int i = 0; i < d; ++i) mu1h[i] = s1[i] / Nd;

            // detail rows: Frobenius (0,0), level-1 (i,0), level-2 (i,j)
            double frob_m = 0.0, frob_k = 0.0;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    frob_m += (mu2h[i][j] - mu2[i][j]) * (mu2h[i][j] - mu2[i][j]);
                    frob_k += (kap2h[i][j] - kappa2[i][j]) * (kap2h[i][j] - kappa2[i][j]);
                }
            report.detail.push_back(
                {N, r, seed, 0, 0, std::sqrt(frob_m), std::sqrt(frob_k)});
            for (int i = 0; i < d; ++i) {
                double err1 = std::abs(mu1h[i] - mu1[i]);
                report.detail.push_back({N, r, seed, i + 1, 0, err1, err1});
            }
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    report.detail.push_back({N, r, seed, i + 1, j + 1,
                                             std::abs(mu2h[i][j] - mu2[i][j]),
                                             std::abs(kap2h[i][j] - kappa2[i][j])});
            mu2_hats[r] = std::move(mu2h);
            kappa2_hats[r] = std::move(kap2h);
        }

        // summary rows (level-1 and level-2 entries)
        for (int i = 0; i < d; ++i) {
            double mean_err = 0.0;
            for (const Figure2DetailRow& row : report.detail)
                if (row.N == N && row.entry_i == i + 1 && row.entry_j == 0)
                    mean_err += row.abs_err_moment;
            mean_err /= config.replicates;
            report.summary.push_back({N, i + 1, 0, mean_err, mean_err, 0.0, 0.0, 0.0});
        }
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                std::vector<double> us(config.replicates), vs(config.replicates);
                double mean_m = 0.0, mean_k = 0.0;
                for (int r = 0; r < config.replicates; ++r) {
                    us[r] = mu2_hats[r][i][j];
                    vs[r] = kappa2_hats[r][i][j];
                    mean_m += std::abs(us[r] - mu2[i][j]);
                    mean_k += std::abs(vs[r] - kappa2[i][j]);
                }
                mean_m /= config.replicates;
                mean_k /= config.replicates;
                VarGap gap = paired_variance_gap(us, vs);
                double theory = driftbm_variance_gap(i + 1, j + 1, config.b, config.sigma, N);
                report.summary.push_back(
                    {N, i + 1, j + 1, mean_m, mean_k, gap.gap, theory, gap.stderr_});
            }
    }
    return report;
}

// ---------------------------------------------------------------------------

WarmupOracle gaussian_warmup_oracle(double mu, double sigma2, long long N) {
    if (!(sigma2 > 0.0)) throw ValidationError("sigma2 must be positive");
    if (N < 2) throw ValidationError("warmup needs N >= 2");
    const double Nd = static_cast<double>(N);
    // Gaussian raw moments m1..m4
    const double m1 = mu;
    const double m2 = mu * mu + sigma2;
    const double m3 = mu * mu * mu + 3.0 * mu * sigma2;
    const double m4 = mu * mu * mu * mu + 6.0 * mu * mu * sigma2 + 3.0 * sigma2 * sigma2;
    // kappa2_hat = A - B with A = (1/N) sum X^2, B = (1/(N(N-1))) sum_{i!=j} X_i X_j
    const double varA = (m4 - m2 * m2) / Nd;
    const double covAB = 2.0 * (m3 * m1 - m2 * m1 * m1) / Nd;
    const double varB =
        (2.0 * m2 * m2 + 4.0 * (Nd - 2.0) * m2 * m1 * m1 +
         (Nd - 2.0) * (Nd - 3.0) * m1 * m1 * m1 * m1) /
            (Nd * (Nd - 1.0)) -
        m1 * m1 * m1 * m1;
    return {varA, varA + varB - 2.0 * covAB};
}

WarmupReport gaussian_warmup(const WarmupConfig& config) {
    if (!(config.sigma2 > 0.0)) throw ValidationError("sigma2 must be positive");
    if (config.N < 2) throw ValidationError("warmup needs N >= 2");
    if (config.replicates < 2) throw ValidationError("warmup needs >= 2 replicates");
    const double sd = std::sqrt(config.sigma2);

    std::vector<double> mu2s(config.replicates), kap2s(config.replicates);
    for (long long r = 0; r < config.replicates; ++r) {
        Rng rng(child_seed(config.seed, static_cast<std::uint64_t>(r)));
        double sx = 0.0, sxx = 0.0;
        for (long long i = 0; i < config.N; ++i) {
            double x = config.mu + sd * rng.gaussian();
            sx += x;
            sxx += x * x;
        }
        const double Nd = static_cast<double>(config.N);
        mu2s[r] = sxx / Nd;
        kap2s[r] = (sxx - sx * sx / Nd) / (Nd - 1.0);
    }
    WarmupReport rep;
    rep.config = config;
    rep.mean_mu2 = 0.0;
    rep.mean_kappa2 = 0.0;
    for (long long r = 0; r < config.replicates; ++r) {
        rep.mean_mu2 += mu2s[r];
        rep.mean_kappa2 += kap2s[r];
    }
    rep.mean_mu2 /= config.replicates;
    rep.mean_kappa2 /= config.replicates;
    rep.target_mu2 = config.mu * config.mu + config.sigma2;
    rep.target_kappa2 = config.sigma2;
    rep.var_mu2 = sample_variance(mu2s);
    rep.var_kappa2 = sample_variance(kap2s);
    VarGap gap = paired_variance_gap(mu2s, kap2s);
    rep.gap_empirical = gap.gap;
    rep.gap_stderr = gap.stderr_;
    WarmupOracle oracle = gaussian_warmup_oracle(config.mu, config.sigma2, config.N);
    rep.gap_analytic = oracle.var_mu2 - oracle.var_kappa2;
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Word> words_over(const std::set<int>& letters, int max_len) {
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
}

} // namespace

IndependenceReport independence_experiment(const IndependenceConfig& config) {
    const int d = static_cast<int>(config.b.size());
    if (config.left.empty() || config.right.empty())
        throw ValidationError("independence experiment needs nonempty letter sets");
    for (int i : config.left)
        if (config.right.count(i)) throw ValidationError("letter sets overlap");
    for (int s : config.left)
        if (s < 1 || s > d) throw ValidationError("left letters outside alphabet");
    for (int s : config.right)
        if (s < 1 || s > d) throw ValidationError("right letters outside alphabet");
    if (config.depth < 2) throw ValidationError("independence depth must be >= 2");
    if (config.replicates < 1) throw ValidationError("needs >= 1 replicate");
    if (static_cast<int>(config.left.size() + config.right.size()) != d)
        throw ValidationError("left and right letter sets must split the alphabet");

    // cross pairs up to depth
    std::vector<std::pair<Word, Word>> pairs;
    for (const Word& t1 : words_over(config.left, config.depth - 1))
        for (const Word& t2 : words_over(config.right, config.depth - static_cast<int>(t1.size())))
            if (static_cast<int>(t1.size() + t2.size()) <= config.depth)
                pairs.emplace_back(t1, t2);
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        auto ka = a.first.size() + a.second.size();
        auto kb = b.first.size() + b.second.size();
        if (ka != kb) return ka < kb;
        if (!(a.first == b.first)) return a.first < b.first;
        return a.second < b.second;
    });

    int max_positions = 0;
    for (const auto& [t1, t2] : pairs)
        max_positions = std::max(max_positions, static_cast<int>(t1.size() + t2.size()));
    if (config.N < max_positions)
        throw ValidationError("sample count below the total position count of the deepest pair");

    if (config.coupling == Coupling::identical &&
        config.left.size() != config.right.size())
        throw ValidationError("identical coupling needs equally sized letter sets");
    if (config.coupling == Coupling::independent) {
        for (int i : config.left)
            for (int j : config.right)
                if (std::abs(config.sigma[i - 1][j - 1]) > 1e-12)
                    throw ValidationError(
                        "independent coupling needs zero cross-covariance between the groups");
    }

    std::vector<int> left(config.left.begin(), config.left.end());
    std::vector<int> right(config.right.begin(), config.right.end());

    // identical coupling simulates the left block and copies it to the right
    DriftVolModel model(config.b, config.sigma, config.steps_per_unit, 1.0,
                        std::max(config.depth, 2));
    std::vector<double> b_left(left.size());
    Matrix sigma_left(left.size(), std::vector<double>(left.size()));
    for (std::size_t i = 0; i < left.size(); ++i) {
        b_left[i] = config.b[left[i] - 1];
        for (std::size_t j = 0; j < left.size(); ++j)
            sigma_left[i][j] = config.sigma[left[i] - 1][left[j] - 1];
    }
    Matrix chol_left = cholesky_psd(sigma_left);

    IndependenceReport report;
    report.config = config;
    std::vector<std::vector<int>> rejects2(pairs.size(), std::vector<int>(config.replicates, 0));
    std::vector<std::vector<int>> rejects3(pairs.size(), std::vector<int>(config.replicates, 0));
    int max_gt5 = 0;

    const int steps = std::max(1, config.steps_per_unit);
    const double h = 1.0 / steps;
    const double sqrt_h = std::sqrt(h);
    std::vector<TupleFamily> families;
    families.reserve(pairs.size());
    for (const auto& [t1, t2] : pairs) families.emplace_back(std::vector<Word>{t1, t2});

    for (int r = 0; r < config.replicates; ++r) {
        const std::uint64_t seed = child_seed(config.seed, static_cast<std::uint64_t>(r));
        Rng rng(seed);
        std::vector<FreeTensor> tensors;
        tensors.reserve(config.N);
        std::vector<double> incr(static_cast<std::size_t>(steps) * d);
        std::vector<double> z(d);
        for (long long w = 0; w < config.N; ++w) {
            if (config.coupling == Coupling::independent) {
                Signature sig = simulate_driftbm_signature(model, config.depth, rng);
                tensors.push_back(sig.tensor);
            } else {
                for (int s = 0; s < steps; ++s) {
                    for (std::size_t i = 0; i < left.size(); ++i) z[i] = rng.gaussian();
                    for (std::size_t i = 0; i < left.size(); ++i) {
                        double noise = 0.0;
                        for (std::size_t k = 0; k <= i; ++k) noise += chol_left[i][k] * z[k];
                        double di = b_left[i] * h + sqrt_h * noise;
                        incr[static_cast<std::size_t>(s) * d + (left[i] - 1)] = di;
                        incr[static_cast<std::size_t>(s) * d + (right[i] - 1)] = di;
                    }
                }
                tensors.push_back(signature_of_increments(incr, d, config.depth).tensor);
            }
        }
        SampleFeatures samples(tensors);

        double max_z = 0.0;
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            const TupleFamily& fam = families[pi];
            double khat = signature_polykay(samples, fam);
            double vhat = signature_polykay_asymptotic_cov(fam, fam, samples);
            double z_score;
            if (vhat > 0.0)
                z_score = khat / std::sqrt(vhat / static_cast<double>(config.N));
            else
                z_score = khat == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            report.detail.push_back(
                {r, seed, pairs[pi].first, pairs[pi].second, khat, vhat, z_score});
            double az = std::abs(z_score);
            if (az > 2.0) rejects2[pi][r] = 1;
            if (az > 3.0) rejects3[pi][r] = 1;
            max_z = std::max(max_z, az);
        }
        if (max_z > 5.0) ++max_gt5;
    }

    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        double r2 = 0.0, r3 = 0.0;
        for (int r = 0; r < config.replicates; ++r) {
            r2 += rejects2[pi][r];
            r3 += rejects3[pi][r];
        }
        report.pairs.push_back({pairs[pi].first, pairs[pi].second,
                                r2 / config.replicates, r3 / config.replicates});
    }
    report.frac_max_z_gt5 = static_cast<double>(max_gt5) / config.replicates;
    return report;
}

} // namespace sigstat
