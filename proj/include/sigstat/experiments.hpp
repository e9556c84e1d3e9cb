#ifndef SIGSTAT_EXPERIMENTS_HPP
#define SIGSTAT_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "sigstat/estimators.hpp"
#include "sigstat/model.hpp"
#include "sigstat/path.hpp"
#include "sigstat/rng.hpp"
#include "sigstat/tensor.hpp"

namespace sigstat {

using Matrix = std::vector<std::vector<double>>;

bool is_symmetric_psd(const Matrix& sigma, double tol = 1e-10);
/// Lower-triangular factor L with L Lᵀ = sigma; tolerates semidefinite
/// pivots. Throws ValidationError when sigma is not symmetric PSD.
Matrix cholesky_psd(const Matrix& sigma);

/// Finite mixture of group-like tensors: an exact-expectation oracle.
/// Atoms are checked group-like (tol 1e-9); probabilities positive and
/// summing to 1 within 1e-12.
class DiscreteMixtureModel : public DistributionModel {
public:
    explicit DiscreteMixtureModel(std::vector<std::pair<FreeTensor, double>> atoms);

    int dim() const override { return dim_; }
    int max_depth() const override { return depth_; }
    double mixed_moment(const std::vector<Word>& words) const override;

    const std::vector<std::pair<FreeTensor, double>>& atoms() const { return atoms_; }

private:
    std::vector<std::pair<FreeTensor, double>> atoms_;
    int dim_;
    int depth_;
};

/// X_t = b t + Λ B_t with Λ Λᵀ = sigma (sigma is the covariance of X_1).
/// Mixed moments come from the closed-form expected signature
/// exp(b + sigma/2) through the shuffle identity, exact at any depth up to
/// the precomputed bound; simulation interpolates the grid points
/// piecewise-linearly.
class DriftVolModel : public DistributionModel {
public:
    DriftVolModel(std::vector<double> b, Matrix sigma, int steps_per_unit = 1000,
                  double horizon = 1.0, int model_depth = 8);

    int dim() const override { return static_cast<int>(b_.size()); }
    int max_depth() const override { return model_depth_; }
    double mixed_moment(const std::vector<Word>& words) const override;

    const std::vector<double>& drift() const { return b_; }
    const Matrix& covariance() const { return sigma_; }
    const Matrix& noise_factor() const { return chol_; }
    int steps_per_unit() const { return steps_per_unit_; }
    double horizon() const { return horizon_; }
    const FreeTensor& expected_signature() const { return mu_; }

private:
    std::vector<double> b_;
    Matrix sigma_;
    int steps_per_unit_;
    double horizon_;
    int model_depth_;
    Matrix chol_;
    FreeTensor mu_;
};

/// Discrete R^d-valued random vector (level-1 words only); the classical
/// cumulant test bench.
class DiscreteVectorModel : public DistributionModel {
public:
    explicit DiscreteVectorModel(std::vector<std::pair<std::vector<double>, double>> atoms);

    int dim() const override { return dim_; }
    int max_depth() const override { return 1 << 20; }
    double mixed_moment(const std::vector<Word>& words) const override;

private:
    std::vector<std::pair<std::vector<double>, double>> atoms_;
    int dim_;
};

/// exp(b + sigma/2) truncated at the given depth.
FreeTensor driftbm_expected_signature(const std::vector<double>& b, const Matrix& sigma,
                                      int depth);

/// Signature of the piecewise-linear interpolation of one simulated window
/// [0, horizon].
Signature simulate_driftbm_signature(const DriftVolModel& model, int depth, Rng& rng);

/// Exact E[estimator] by enumerating all |atoms|^n sample assignments with
/// product weights.
double exact_estimator_expectation(const DiscreteMixtureModel& model,
                                   const std::function<double(const SampleFeatures&)>& estimator,
                                   int n);

// ---------------------------------------------------------------------------
// Figure-2 style drift/volatility estimator comparison
// ---------------------------------------------------------------------------

struct Figure2Config {
    std::vector<double> b;
    Matrix sigma;
    std::vector<long long> Ns;
    int replicates = 100;
    int depth = 2;
    std::uint64_t seed = 0;
    int steps_per_unit = 1000;
};

/// Detail keys: (entry_i, entry_j) with i,j >= 1 are level-2 entries;
/// (i, 0) are level-1 entries (where the moment and cumulant estimators
/// coincide); (0, 0) is the Frobenius error over level 2.
struct Figure2DetailRow {
    long long N;
    int replicate;
    std::uint64_t child_seed;
    int entry_i;
    int entry_j;
    double abs_err_moment;
    double abs_err_cumulant;
};

struct Figure2SummaryRow {
    long long N;
    int entry_i;
    int entry_j;
    double mean_abs_err_moment;
    double mean_abs_err_cumulant;
    double var_gap_empirical; // Var(mu2_hat entry) - Var(kappa2_hat entry) over replicates
    double var_gap_theory;    // driftbm_variance_gap for level-2 entries, 0 for level-1
    double mc_stderr;         // paired standard error of var_gap_empirical
};

struct Figure2Report {
    Figure2Config config;
    std::vector<Figure2DetailRow> detail;
    std::vector<Figure2SummaryRow> summary;
};

Figure2Report run_figure2(const Figure2Config& config);

// ---------------------------------------------------------------------------
// Scalar Gaussian warm-up
// ---------------------------------------------------------------------------

struct WarmupConfig {
    double mu = 0.0;
    double sigma2 = 1.0;
    long long N = 50;
    long long replicates = 1000;
    std::uint64_t seed = 0;
};

/// Exact Var(mu2_hat) and Var(kappa2_hat) for i.i.d. N(mu, sigma2) samples,
/// from the Gaussian raw moments via the index-pattern expansion. This is
/// the analytic oracle the empirical gap is tested against.
struct WarmupOracle {
    double var_mu2;
    double var_kappa2;
};
WarmupOracle gaussian_warmup_oracle(double mu, double sigma2, long long N);

struct WarmupReport {
    WarmupConfig config;
    double mean_mu2;
    double mean_kappa2;
    double target_mu2;    // mu^2 + sigma^2
    double target_kappa2; // sigma^2
    double var_mu2;
    double var_kappa2;
    double gap_empirical;
    double gap_analytic;
    double gap_stderr;
};

WarmupReport gaussian_warmup(const WarmupConfig& config);

// ---------------------------------------------------------------------------
// Independence testing experiment
// ---------------------------------------------------------------------------

enum class Coupling { independent, identical };

struct IndependenceConfig {
    std::vector<double> b;
    Matrix sigma;
    std::set<int> left;  // I
    std::set<int> right; // J
    long long N = 500;
    int replicates = 500;
    int depth = 3;
    std::uint64_t seed = 0;
    int steps_per_unit = 100;
    Coupling coupling = Coupling::independent;
};

struct IndependenceDetailRow {
    int replicate;
    std::uint64_t child_seed;
    Word tau1;
    Word tau2;
    double kappa_hat;
    double vhat; // plug-in asymptotic variance
    double z;
};

struct IndependencePairSummary {
    Word tau1;
    Word tau2;
    double reject_rate_2; // fraction of replicates with |z| > 2
    double reject_rate_3;
};

struct IndependenceReport {
    IndependenceConfig config;
    std::vector<IndependenceDetailRow> detail;
    std::vector<IndependencePairSummary> pairs;
    double frac_max_z_gt5; // fraction of replicates whose max |z| over pairs > 5
};

IndependenceReport independence_experiment(const IndependenceConfig& config);

} // namespace sigstat

#endif
