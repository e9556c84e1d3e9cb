// Acceptance suite: one pass/fail line per criterion, pinned tolerances.
// Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sigstat/estimators.hpp"
#include "sigstat/experiments.hpp"
#include "sigstat/io.hpp"
#include "sigstat/moment_cumulant.hpp"
#include "sigstat/partition.hpp"
#include "sigstat/path.hpp"
#include "test_support.hpp"

using namespace sigstat;

namespace {

int g_failures = 0;

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)), ok_(true) {
        start_ = std::chrono::steady_clock::now();
    }
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok_ = false;
            details_.push_back(what);
        }
    }
    void note(const std::string& text) { notes_.push_back(text); }
    ~Criterion() {
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
        std::printf("[%s] %s (%.1fs)\n", ok_ ? "PASS" : "FAIL", name_.c_str(), secs.count());
        for (const std::string& d : details_) std::printf("       failed: %s\n", d.c_str());
        for (const std::string& n : notes_) std::printf("       note: %s\n", n.c_str());
        std::fflush(stdout);
        if (!ok_) ++g_failures;
    }

private:
    std::string name_;
    bool ok_;
    std::vector<std::string> details_;
    std::vector<std::string> notes_;
    std::chrono::steady_clock::time_point start_;
};

std::shared_ptr<const LabeledPoset> shared_poset(const LabeledPoset& p) {
    return std::make_shared<LabeledPoset>(p);
}

std::vector<std::vector<int>> chain_shapes_up_to(int max_total) {
    std::vector<std::vector<int>> shapes;
    auto rec = [&](auto&& self, std::vector<int>& cur, int remaining, int min_part) -> void {
        if (!cur.empty()) shapes.push_back(cur);
        for (int p = min_part; p <= remaining; ++p) {
            cur.push_back(p);
            self(self, cur, remaining - p, p);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    rec(rec, cur, max_total, 1);
    return shapes;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int t = 0; t < k; ++t) {
        r *= (n - t);
        r /= (t + 1);
    }
    return r;
}

bool is_degenerate_two_chain(const SetPartition& a, const ChainFamily& cf) {
    for (const auto& blk : a.blocks()) {
        bool c1 = false, c2 = false;
        for (int e : blk) (cf.chain_of(e) == 0 ? c1 : c2) = true;
        if (c1 && c2) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

void criterion1() {
    Criterion c("criterion 1: combinatorics exact suite");

    // factorial vs ancestry count, and degenerate boundary weights,
    // over all two-chain families with m1,m2 <= 4
    for (int m1 = 1; m1 <= 4; ++m1)
        for (int m2 = 1; m2 <= 4; ++m2) {
            ChainFamily cf({m1, m2});
            auto poset = shared_poset(cf.poset());
            for (const OrderedPartition& a : enumerate_orp(poset)) {
                c.require(orp_factorial(a) ==
                              BigInt(static_cast<long long>(antichain_ancestry(a).size())),
                          "a! == #A(a) on P_(" + std::to_string(m1) + "," + std::to_string(m2) +
                              ")");
                if (is_degenerate_two_chain(a.partition, cf))
                    c.require(boundary_weight(a) == BigRat(0),
                              "boundary of degenerate partition is 0");
            }
        }

    // antichain boundary weights collapse to the indicator of the
    // one-block partition
    for (int n = 1; n <= 5; ++n) {
        auto anti = shared_poset(LabeledPoset::antichain(n));
        for (const OrderedPartition& a : enumerate_orp(anti)) {
            BigRat expect = (a.size() == 1) ? BigRat(1) : BigRat(0);
            c.require(boundary_weight(a) == expect, "antichain boundary weight");
        }
    }

    // order-polynomial sums for all chain families of total size <= 7,
    // n <= 7.
    // The weak identity needs the binomial factor C(n,|a|) (kernel classes of
    // maps with image size |a|); the strict identity holds as stated.
    for (const auto& shape : chain_shapes_up_to(7)) {
        ChainFamily cf(shape);
        auto orp = enumerate_orp(shared_poset(cf.poset()));
        for (int n = 1; n <= 7; ++n) {
            OrderPolynomials op = order_polynomial(cf.poset(), n);
            BigInt weak = 0, strict = 0;
            for (const OrderedPartition& a : orp) {
                weak += binomial(n, a.size()) * orp_factorial(a);
                if (a.size() == n) strict += orp_factorial(a);
            }
            c.require(op.omega == weak, "sum C(n,|a|) a! == Omega(n,P)");
            c.require(op.omega_strict == strict, "sum_{|a|=n} a! == Omega_strict(n,P)");
        }
    }

    // Moebius recursion vs closed form on intervals [a, 1] of P(n), n <= 6
    for (int n = 2; n <= 6; ++n) {
        SetPartition top = SetPartition::one_block(n);
        for (const SetPartition& a : enumerate_partitions(n)) {
            BigInt expect = (a.size() % 2 == 1 ? 1 : -1);
            for (int f = 2; f < a.size(); ++f) expect *= f;
            c.require(moebius(a, top) == expect, "moebius vs (-1)^{k-1}(k-1)! on P(n)");
        }
    }

    // Orp(P_(2,2)) has exactly 14 elements; the crossing partition is out
    ChainFamily cf22({2, 2});
    auto orp22 = enumerate_orp(shared_poset(cf22.poset()));
    c.require(orp22.size() == 14, "Orp(P_(2,2)) has 14 elements");
    SetPartition crossing(4, {{0, 3}, {1, 2}});
    bool found = false;
    for (const OrderedPartition& a : orp22)
        if (a.partition == crossing) found = true;
    c.require(!found, "crossing partition excluded");
}

void criterion2() {
    Criterion c("criterion 2: tensor/signature suite");
    Rng rng(1001);

    for (int rep = 0; rep < 40; ++rep) {
        int dim = 1 + static_cast<int>(rng.next_u64() % 3);
        int depth = 1 + static_cast<int>(rng.next_u64() % 4);
        FreeTensor x = test::random_nilpotent(rng, dim, depth);
        c.require(log(exp(x)).approx_equal(x, 1e-12), "log(exp(x)) == x at 1e-12");
        FreeTensor y = FreeTensor::unit(dim, depth) + x;
        c.require(exp(log(y)).approx_equal(y, 1e-12), "exp(log(1+x)) == 1+x at 1e-12");
    }

    for (int rep = 0; rep < 100; ++rep) {
        int dim = 1 + static_cast<int>(rng.next_u64() % 3);
        int depth = 2 + static_cast<int>(rng.next_u64() % 3);
        PiecewiseLinearPath path = test::random_path(rng, dim, 4 + rep % 5);
        Signature whole = signature(path, depth);

        std::size_t split = 1 + rng.next_u64() % (path.points.size() - 2);
        std::vector<std::vector<double>> first(path.points.begin(),
                                               path.points.begin() + split + 1);
        std::vector<std::vector<double>> second(path.points.begin() + split, path.points.end());
        Signature s1 = signature(PiecewiseLinearPath(first), depth);
        Signature s2 = signature(PiecewiseLinearPath(second), depth);
        c.require(chen_concat(s1, s2).tensor.approx_equal(whole.tensor, 1e-10),
                  "Chen split identity at 1e-10");

        Signature rev = signature(path.reversed(), depth);
        c.require(chen_concat(whole, rev).tensor.approx_equal(
                      FreeTensor::unit(dim, depth), 1e-10),
                  "reversal inverse at 1e-10");

        std::vector<double> times;
        double t = 0.0;
        for (std::size_t i = 0; i < path.points.size(); ++i) {
            times.push_back(t);
            t += 0.01 + rng.uniform01();
        }
        PiecewiseLinearPath timed(path.points, times);
        c.require(signature(timed, depth).tensor.approx_equal(whole.tensor, 0.0),
                  "reparametrization invariance (exact)");

        c.require(is_grouplike(whole.tensor, 1e-10), "group-likeness at 1e-10");
    }
}

void criterion3() {
    Criterion c("criterion 3: moment/cumulant expansion identities");
    Rng rng(1003);
    const double tol = 1e-10;

    for (int m = 0; m < 21; ++m) {
        int dim = 1 + m % 3;
        int atoms = 2 + static_cast<int>(rng.next_u64() % 3);
        DiscreteMixtureModel model = test::random_mixture(rng, dim, 5, atoms);
        FreeTensor mu = signature_moments(model, 5);
        FreeTensor kappa = signature_cumulants(mu);

        for (const auto& tuples : test::all_tuple_families(dim, 4)) {
            TupleFamily fam(tuples);
            // three-way agreement
            double target = pair_with_shuffle(kappa, tuples);
            double via_mu = kappa_shuffle_via_moments(model, fam, KappaWeights::orp_factorial);
            double via_del = kappa_shuffle_via_moments(model, fam, KappaWeights::boundary);
            if (std::abs(via_mu - target) > tol)
                c.require(false, "factorial-weight expansion vs <log mu, shuffle>");
            if (std::abs(via_del - target) > tol)
                c.require(false, "boundary-weight expansion vs <log mu, shuffle>");

            // moment = cumulant sum over the crossmerge order, every partition
            for (const SetPartition& a : enumerate_partitions(fam.total_positions())) {
                double lhs = generalized_moment(model, fam, a);
                double rhs = moment_from_gen_cumulants(model, fam, a);
                if (std::abs(lhs - rhs) > tol) c.require(false, "moment/cumulant sum identity");
            }

            // classical joint cumulants from single-letter families
            bool all_single = true;
            for (const Word& w : tuples) all_single = all_single && w.size() == 1;
            if (all_single) {
                double classical = joint_cumulant(model, tuples);
                if (std::abs(via_mu - classical) > tol)
                    c.require(false, "single-letter families give classical joint cumulants");
            }
        }

        // moment reconstruction over ordered partitions (deconcatenations);
        // block weights are the log-mu coordinates
        for (const Word& tau : all_words(dim, 4)) {
            TupleFamily fam({tau});
            double sum = 0.0;
            for (const OrderedPartition& a : enumerate_orp(fam.poset_ptr())) {
                double fact = 1.0;
                for (int f = 2; f <= a.size(); ++f) fact *= f;
                double prod = 1.0;
                for (const auto& block : a.partition.blocks())
                    for (const Word& w : fam.block_subwords(block)) prod *= kappa.coeff(w);
                sum += prod / fact;
            }
            if (std::abs(sum - mu.coeff(tau)) > tol)
                c.require(false, "moment reconstruction from ordered partitions");
        }

        // the same identity on 5-position families
        std::vector<std::vector<Word>> five;
        if (dim == 1)
            five = {{Word{1, 1, 1, 1, 1}},
                    {Word{1, 1}, Word{1, 1, 1}},
                    {Word{1}, Word{1}, Word{1, 1, 1}}};
        else
            five = {{Word{1, 2, 1, 2, 1}},
                    {Word{1, 2}, Word{2, 1, 1}},
                    {Word{1}, Word{2}, Word{1, 2, 1}},
                    {Word{1}, Word{2}, Word{1}, Word{2, 2}}};
        for (const auto& tuples : five) {
            TupleFamily fam(tuples);
            for (const SetPartition& a : enumerate_partitions(5)) {
                double lhs = generalized_moment(model, fam, a);
                double rhs = moment_from_gen_cumulants(model, fam, a);
                if (std::abs(lhs - rhs) > tol)
                    c.require(false, "moment/cumulant sum identity on 5 positions");
            }
        }
    }

    // classical route comparison on random discrete vectors
    for (int rep = 0; rep < 9; ++rep) {
        int dim = 1 + rep % 3;
        std::vector<std::pair<std::vector<double>, double>> atoms;
        int k = 2 + rep % 2;
        double remaining = 1.0;
        for (int a = 0; a < k; ++a) {
            std::vector<double> v(dim);
            for (double& x : v) x = 2.0 * rng.uniform01() - 1.0;
            double p = (a + 1 == k) ? remaining : remaining * (0.3 + 0.4 * rng.uniform01());
            if (a + 1 < k) remaining -= p;
            atoms.emplace_back(v, p);
        }
        DiscreteVectorModel model(atoms);
        FreeTensor kappa = classical_cumulant_tensor(model, 4);
        for (const Word& tau : all_words(dim, 4)) {
            std::vector<Word> singles;
            for (int a : tau.letters) singles.push_back(Word{a});
            if (std::abs(kappa.coeff(tau) - joint_cumulant(model, singles)) > tol)
                c.require(false, "symmetrized log-mgf route vs compensated-moment route");
        }
    }
}

void criterion4() {
    Criterion c("criterion 4: estimator unbiasedness oracle");
    Rng rng(1004);
    const double tol = 1e-10;

    std::vector<DiscreteMixtureModel> models;
    models.push_back(test::random_mixture(rng, 2, 4, 2));
    models.push_back(test::random_mixture(rng, 2, 4, 3));

    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        const DiscreteMixtureModel& model = models[mi];
        FreeTensor kappa = signature_cumulants(signature_moments(model, 4));
        int max_total = (model.atoms().size() == 2) ? 4 : 3;
        for (const auto& tuples : test::all_tuple_families(2, max_total)) {
            TupleFamily fam(tuples);
            const int total = fam.total_positions();
            const int n = std::max(total, 3);
            if (std::pow(static_cast<double>(model.atoms().size()), n) > 100) continue;

            for (const SetPartition& a : enumerate_partitions(total)) {
                double e_mu = exact_estimator_expectation(
                    model, [&](const SampleFeatures& s) { return symmetric_mean(s, fam, a); },
                    n);
                if (std::abs(e_mu - generalized_moment(model, fam, a)) > tol)
                    c.require(false, "E mu_hat(a) == mu(a)");
                double e_k = exact_estimator_expectation(
                    model, [&](const SampleFeatures& s) { return polykay(s, fam, a); }, n);
                if (std::abs(e_k - generalized_cumulant(model, fam, a)) > tol)
                    c.require(false, "E k_hat(a) == kappa(a)");
            }
            double e_sig = exact_estimator_expectation(
                model, [&](const SampleFeatures& s) { return signature_polykay(s, fam); }, n);
            double target = pair_with_shuffle(kappa, tuples);
            if (std::abs(e_sig - target) > tol)
                c.require(false, "E kappa_hat(tau) == <kappa, shuffle>");
        }
    }

    // exact covariance vs brute force, and its 1/n coefficient
    DiscreteMixtureModel model = test::random_mixture(rng, 2, 4, 2);
    std::vector<std::vector<Word>> fams{{Word{1}}, {Word{2}}, {Word{1, 2}}, {Word{1}, Word{2}}};
    for (const auto& t1 : fams)
        for (const auto& t2 : fams) {
            TupleFamily fam1(t1), fam2(t2);
            for (const SetPartition& a1 : enumerate_partitions(fam1.total_positions()))
                for (const SetPartition& a2 : enumerate_partitions(fam2.total_positions())) {
                    const int m = fam1.total_positions() + fam2.total_positions();
                    for (long long n : {4LL, 5LL}) {
                        if (n < m) continue;
                        double formula = polykay_cov_exact(fam1, a1, fam2, a2, n, model);
                        double e12 = exact_estimator_expectation(
                            model,
                            [&](const SampleFeatures& s) {
                                return polykay(s, fam1, a1) * polykay(s, fam2, a2);
                            },
                            static_cast<int>(n));
                        double prod = generalized_cumulant(model, fam1, a1) *
                                      generalized_cumulant(model, fam2, a2);
                        if (std::abs(formula - (e12 - prod)) > tol)
                            c.require(false, "exact covariance vs brute-force enumeration");
                    }
                    double lead = polykay_cov_asymptotic(fam1, a1, fam2, a2, model);
                    double c3 = polykay_cov_exact(fam1, a1, fam2, a2, 1000, model);
                    double c4 = polykay_cov_exact(fam1, a1, fam2, a2, 10000, model);
                    double fd = (c3 - c4) / (1.0 / 1000 - 1.0 / 10000);
                    if (std::abs(lead) > 1e-9) {
                        if (std::abs(fd / lead - 1.0) > 1e-2) {
                            // the coarse probe carries an O(1/n) remainder of
                            // its own; re-measure the same coefficient with a
                            // refined probe at the same tolerance
                            double c6 = polykay_cov_exact(fam1, a1, fam2, a2, 1000000, model);
                            double c7 = polykay_cov_exact(fam1, a1, fam2, a2, 10000000, model);
                            double fd_hi = (c6 - c7) / (1e-6 - 1e-7);
                            if (std::abs(fd_hi / lead - 1.0) > 1e-2)
                                c.require(false, "leading 1/n coefficient vs finite difference");
                            else
                                c.note("1/n coefficient " + fmt17(lead) +
                                       ": coarse probe (n=1e3/1e4) off by " +
                                       fmt17(std::abs(fd / lead - 1.0)) +
                                       " from its own n^-2 remainder; refined probe "
                                       "(n=1e6/1e7) agrees to " +
                                       fmt17(std::abs(fd_hi / lead - 1.0)));
                        }
                    } else if (std::abs(fd) > 1e-6) {
                        c.require(false, "vanishing leading coefficient vs finite difference");
                    }
                }
        }
}

void criterion5() {
    std::vector<double> b{1.0, 0.0};
    Matrix sigma{{1.0, 0.0}, {0.0, 1.0}};
    const int steps = 1000;

    {
        Criterion c("criterion 5a: mean signature over 1e4 windows vs exp(b + sigma/2)");
        DriftVolModel model(b, sigma, steps, 1.0, 2);
        FreeTensor target = driftbm_expected_signature(b, sigma, 2);
        const int n = 10000;
        Rng rng(child_seed(55, 0));
        std::map<Word, std::pair<double, double>> acc;
        for (const Word& w : all_words(2, 2)) acc[w] = {0.0, 0.0};
        for (int l = 0; l < n; ++l) {
            Signature s = simulate_driftbm_signature(model, 2, rng);
            for (auto& [w, sums] : acc) {
                double v = s.tensor.coeff(w);
                sums.first += v;
                sums.second += v * v;
            }
        }
        for (const auto& [w, sums] : acc) {
            double mean = sums.first / n;
            double var = (sums.second - n * mean * mean) / (n - 1);
            double se = std::sqrt(var / n);
            if (!(std::abs(mean - target.coeff(w)) < 4.0 * se))
                c.require(false, "coordinate '" + to_string(w) + "' beyond 4 MC stderr");
        }
    }

    Figure2Config cfgb;
    cfgb.b = b;
    cfgb.sigma = sigma;
    cfgb.Ns = {100};
    cfgb.replicates = 2000;
    cfgb.seed = 56;
    cfgb.steps_per_unit = steps;
    {
        Criterion c("criterion 5b: var gap at (1,1), N=100, R=2000 vs c11=(2.5-1/198)/100");
        Figure2Report report = run_figure2(cfgb);
        const double c11 = (2.5 - 1.0 / 198.0) / 100.0;
        for (const Figure2SummaryRow& row : report.summary)
            if (row.entry_i == 1 && row.entry_j == 1) {
                double gap = row.var_gap_empirical;
                double se = row.mc_stderr;
                if (!(std::abs(gap - c11) < 3.0 * se))
                    c.require(false, "gap " + fmt17(gap) + " vs c11 " + fmt17(c11) + " (|z| = " +
                                         fmt17(std::abs(gap - c11) / se) + ")");
                const double c11_rederived = 1.0 / 100.0 - 1.0 / (2.0 * 100.0 * 99.0);
                c.note("re-derived constant (1/N)(b1^2 - 1/(2(N-1))) = " + fmt17(c11_rederived) +
                       ", |z| = " + fmt17(std::abs(gap - c11_rederived) / se) +
                       "; the printed c11 does not match the estimator pair it describes");
            }
    }

    {
        Criterion c("criterion 5c: cumulant beats moment at (1,1) for every N in 25..2000");
        Figure2Config cfg;
        cfg.b = b;
        cfg.sigma = sigma;
        cfg.Ns = {25, 47, 87, 164, 306, 572, 1069, 2000};
        cfg.replicates = 100;
        cfg.seed = 57;
        cfg.steps_per_unit = steps;
        Figure2Report report = run_figure2(cfg);
        for (const Figure2SummaryRow& row : report.summary)
            if (row.entry_i == 1 && row.entry_j == 1)
                if (!(row.mean_abs_err_cumulant < row.mean_abs_err_moment))
                    c.require(false, "mean |kappa2 err| >= mean |mu2 err| at N = " +
                                         std::to_string(row.N));
    }
}

void criterion6() {
    Criterion c("criterion 6: Gaussian warm-up, mu=3 sigma=1 N=50 R=1e5");
    WarmupConfig config;
    config.mu = 3.0;
    config.sigma2 = 1.0;
    config.N = 50;
    config.replicates = 100000;
    config.seed = 66;
    WarmupReport r = gaussian_warmup(config);
    c.require(std::abs(r.gap_empirical - r.gap_analytic) < 3.0 * r.gap_stderr,
              "empirical gap " + fmt17(r.gap_empirical) + " vs analytic " +
                  fmt17(r.gap_analytic) + " beyond 3 SE (" + fmt17(r.gap_stderr) + ")");
    c.require(r.gap_analytic > 0.0, "analytic gap positive");
    c.require(r.gap_empirical > 0.0, "empirical gap positive");
}

void criterion7() {
    IndependenceConfig config;
    config.b = {1.0, 0.0};
    config.sigma = {{1.0, 0.0}, {0.0, 1.0}};
    config.left = {1};
    config.right = {2};
    config.N = 500;
    config.replicates = 500;
    config.depth = 3;
    config.seed = 77;
    config.steps_per_unit = 100;

    {
        Criterion c("criterion 7a: independent coupling, |z|>2 rate within 3 SE of 5%");
        config.coupling = Coupling::independent;
        IndependenceReport rep = independence_experiment(config);
        const double se = std::sqrt(0.05 * 0.95 / config.replicates);
        for (const IndependencePairSummary& p : rep.pairs) {
            if (!(std::abs(p.reject_rate_2 - 0.05) < 3.0 * se))
                c.require(false, "pair (" + to_string(p.tau1) + ", " + to_string(p.tau2) +
                                     ") rate " + fmt17(p.reject_rate_2));
            c.note("pair (" + to_string(p.tau1) + ", " + to_string(p.tau2) +
                   "): rate2 = " + fmt17(p.reject_rate_2) +
                   ", rate3 = " + fmt17(p.reject_rate_3));
        }
    }
    {
        Criterion c("criterion 7b: identical coupling, max |z| > 5 in >= 95% of replicates");
        config.coupling = Coupling::identical;
        IndependenceReport rep = independence_experiment(config);
        c.require(rep.frac_max_z_gt5 >= 0.95,
                  "fraction with max |z| > 5 is " + fmt17(rep.frac_max_z_gt5));
    }
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
