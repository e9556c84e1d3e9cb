#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigstat/errors.hpp"
#include "sigstat/estimators.hpp"
#include "sigstat/experiments.hpp"
#include "sigstat/io.hpp"
#include "sigstat/moment_cumulant.hpp"
#include "sigstat/partition.hpp"
#include "sigstat/path.hpp"

namespace fs = std::filesystem;

namespace sigstat {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

std::vector<double> parse_vector(const std::string& s) {
    std::vector<double> out;
    for (const std::string& tok : split(s, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ValidationError("bad numeric entry '" + tok + "' in '" + s + "'");
        }
    }
    return out;
}

Matrix parse_sigma(const std::string& s, int dim) {
    if (s == "identity") {
        Matrix m(dim, std::vector<double>(dim, 0.0));
        for (int i = 0; i < dim; ++i) m[i][i] = 1.0;
        return m;
    }
    Matrix m;
    for (const std::string& row : split(s, ';')) m.push_back(parse_vector(row));
    if (static_cast<int>(m.size()) != dim)
        throw ValidationError("sigma must have " + std::to_string(dim) + " rows");
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != dim)
            throw ValidationError("sigma rows must have " + std::to_string(dim) + " entries");
    if (!is_symmetric_psd(m))
        throw ValidationError("sigma must be symmetric positive semidefinite");
    return m;
}

/// "a:b:logK" = K log-spaced integers from a to b; also accepts comma lists
/// and single values.
std::vector<long long> parse_grid(const std::string& s) {
    std::vector<std::string> colon = split(s, ':');
    if (colon.size() == 3) {
        if (colon[2].rfind("log", 0) != 0)
            throw ValidationError("grid spacing must be 'log<K>' in '" + s + "'");
        long long a, b;
        int k;
        try {
            a = std::stoll(colon[0]);
            b = std::stoll(colon[1]);
            k = std::stoi(colon[2].substr(3));
        } catch (const std::exception&) {
            throw ValidationError("bad grid '" + s + "'");
        }
        if (a < 1 || b < a || k < 1) throw ValidationError("bad grid '" + s + "'");
        std::vector<long long> out;
        if (k == 1) return {a};
        for (int t = 0; t < k; ++t) {
            double x = std::exp(std::log(static_cast<double>(a)) +
                                t * (std::log(static_cast<double>(b)) -
                                     std::log(static_cast<double>(a))) /
                                    (k - 1));
            long long v = std::llround(x);
            if (out.empty() || out.back() != v) out.push_back(v);
        }
        return out;
    }
    if (colon.size() != 1) throw ValidationError("bad grid '" + s + "'");
    std::vector<long long> out;
    for (const std::string& tok : split(s, ',')) {
        try {
            out.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw ValidationError("bad grid entry '" + tok + "'");
        }
    }
    return out;
}

std::vector<Word> parse_tuple_family(const std::string& s) {
    std::vector<Word> tuples;
    for (const std::string& tok : split(s, ';')) tuples.push_back(parse_word(tok));
    return tuples;
}

std::set<int> parse_letter_set(const std::string& s) {
    std::set<int> out;
    for (const std::string& tok : split(s, ',')) {
        Word w = parse_word(tok);
        if (w.size() != 1) throw ValidationError("letter sets are comma-joined letters");
        out.insert(w[0]);
    }
    return out;
}

std::string family_text(const std::vector<Word>& tuples) {
    std::string s;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        if (i) s += ';';
        s += to_string(tuples[i]);
    }
    return s;
}

std::vector<FreeTensor> load_sample_dir(const std::string& dir) {
    if (!fs::is_directory(dir)) throw ValidationError("'" + dir + "' is not a directory");
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ValidationError("no .json samples in '" + dir + "'");
    std::vector<FreeTensor> tensors;
    tensors.reserve(files.size());
    for (const std::string& f : files) {
        std::ifstream in(f);
        if (!in) throw ValidationError("cannot open '" + f + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        tensors.push_back(tensor_from_json(ss.str()));
    }
    return tensors;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << content;
}

std::unique_ptr<std::ofstream> open_or_stdout(const std::string& path, std::ostream*& out) {
    if (path.empty() || path == "-") {
        out = &std::cout;
        return nullptr;
    }
    auto file = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file) throw ValidationError("cannot write '" + path + "'");
    out = file.get();
    return file;
}

// ---------------------------------------------------------------------------

int cmd_signature(const std::vector<std::string>& inputs, int depth, bool augment,
                  const std::string& out_dir) {
    for (const std::string& input : inputs) {
        PiecewiseLinearPath path = read_path_csv_file(input);
        if (augment) path = time_augment(path);
        Signature s = signature(path, depth);
        fs::path out_path;
        if (out_dir.empty()) {
            out_path = fs::path(input);
            out_path.replace_extension(".sig.json");
        } else {
            out_path = fs::path(out_dir) / fs::path(input).filename().replace_extension(
                                               ".sig.json");
        }
        write_file(out_path.string(), tensor_to_json(s.tensor) + "\n");
        std::cout << out_path.string() << "\n";
    }
    return 0;
}

int cmd_estimate(const std::string& inputs, const std::vector<std::string>& tuple_specs,
                 const std::string& mode, const std::string& model_b,
                 const std::string& model_sigma, bool plugin_std, const std::string& out_path,
                 const std::string& format) {
    std::vector<FreeTensor> tensors = load_sample_dir(inputs);
    SampleFeatures samples(tensors);
    const long long n = samples.n();

    bool has_model = !model_b.empty();
    std::unique_ptr<DriftVolModel> model;
    if (has_model) {
        std::vector<double> b = parse_vector(model_b);
        Matrix sigma = parse_sigma(model_sigma.empty() ? "identity" : model_sigma,
                                   static_cast<int>(b.size()));
        model = std::make_unique<DriftVolModel>(b, sigma, 1, 1.0, 2 * samples.depth());
    }

    std::vector<EstimateRow> rows;
    for (const std::string& spec : tuple_specs) {
        TupleFamily fam(parse_tuple_family(spec));
        EstimateRow row;
        row.tuple_family = family_text(fam.tuples());
        row.n = n;
        row.has_std = false;
        row.asymptotic_std = 0.0;
        if (mode == "moment") {
            SetPartition one = SetPartition::one_block(fam.total_positions());
            row.estimate = symmetric_mean(samples, fam, one);
            // variance of a plain mean of the per-sample block product
            std::vector<double> prod(samples.n(), 1.0);
            for (const Word& w : fam.tuples()) {
                const auto& col = samples.column(w);
                for (int l = 0; l < samples.n(); ++l) prod[l] *= col[l];
            }
            if (has_model) {
                std::vector<Word> twice = fam.tuples();
                twice.insert(twice.end(), fam.tuples().begin(), fam.tuples().end());
                double second = model->mixed_moment(twice);
                double first = model->mixed_moment(fam.tuples());
                row.has_std = true;
                row.asymptotic_std = std::sqrt(std::max(0.0, second - first * first) / n);
            } else if (plugin_std) {
                double mean = 0.0, sq = 0.0;
                for (double v : prod) {
                    mean += v;
                    sq += v * v;
                }
                mean /= n;
                double var = (sq - n * mean * mean) / (n - 1);
                row.has_std = true;
                row.asymptotic_std = std::sqrt(std::max(0.0, var) / n);
            }
        } else if (mode == "cumulant") {
            row.estimate = signature_polykay(samples, fam);
            if (has_model) {
                double v = signature_polykay_asymptotic_cov(fam, fam, *model);
                row.has_std = true;
                row.asymptotic_std = std::sqrt(std::max(0.0, v) / n);
            } else if (plugin_std) {
                double v = signature_polykay_asymptotic_cov(fam, fam, samples);
                row.has_std = true;
                row.asymptotic_std = std::sqrt(std::max(0.0, v) / n);
            }
        } else {
            throw ValidationError("mode must be 'moment' or 'cumulant'");
        }
        rows.push_back(row);
    }

    std::ostream* out = nullptr;
    auto file = open_or_stdout(out_path, out);
    if (format == "json")
        write_estimate_json(*out, rows);
    else
        write_estimate_csv(*out, rows);
    return 0;
}

int cmd_independence(const std::string& inputs, const std::string& left_spec,
                     const std::string& right_spec, int depth, const std::string& out_path,
                     const std::string& format) {
    std::set<int> I = parse_letter_set(left_spec);
    std::set<int> J = parse_letter_set(right_spec);
    for (int i : I)
        if (J.count(i)) throw ValidationError("--left and --right overlap");

    std::vector<FreeTensor> tensors = load_sample_dir(inputs);
    SampleFeatures samples(tensors);

    struct Row {
        Word tau1, tau2;
        double value, z;
    };
    std::vector<Row> rows;
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
    for (const Word& t1 : words_over(I, depth - 1))
        for (const Word& t2 : words_over(J, depth - static_cast<int>(t1.size()))) {
            if (static_cast<int>(t1.size() + t2.size()) > depth) continue;
            TupleFamily fam({t1, t2});
            if (samples.n() < fam.total_positions())
                throw ResourceError("not enough samples for pair (" + to_string(t1) + ", " +
                                    to_string(t2) + ")");
            double khat = signature_polykay(samples, fam);
            double vhat = signature_polykay_asymptotic_cov(fam, fam, samples);
            double z = vhat > 0.0
                           ? khat / std::sqrt(vhat / static_cast<double>(samples.n()))
                           : (khat == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
            rows.push_back({t1, t2, khat, z});
        }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        auto ka = a.tau1.size() + a.tau2.size();
        auto kb = b.tau1.size() + b.tau2.size();
        if (ka != kb) return ka < kb;
        if (!(a.tau1 == b.tau1)) return a.tau1 < b.tau1;
        return a.tau2 < b.tau2;
    });

    std::ostream* out = nullptr;
    auto file = open_or_stdout(out_path, out);
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const Row& r : rows)
            arr.push_back({{"tau1", to_string(r.tau1)},
                           {"tau2", to_string(r.tau2)},
                           {"value", r.value},
                           {"z", r.z}});
        *out << arr.dump(2) << "\n";
    } else {
        *out << "tau1,tau2,value,z\n";
        for (const Row& r : rows)
            *out << csv_quote(to_string(r.tau1)) << ',' << csv_quote(to_string(r.tau2)) << ','
                 << fmt17(r.value) << ',' << fmt17(r.z) << "\n";
    }
    return 0;
}

int cmd_experiment_figure2(const std::string& b_spec, const std::string& sigma_spec,
                           const std::string& grid_spec, int replicates, int depth,
                           std::uint64_t seed, int steps, const std::string& out_prefix) {
    Figure2Config config;
    config.b = parse_vector(b_spec);
    config.sigma = parse_sigma(sigma_spec, static_cast<int>(config.b.size()));
    config.Ns = parse_grid(grid_spec);
    config.replicates = replicates;
    config.depth = depth;
    config.seed = seed;
    config.steps_per_unit = steps;
    Figure2Report report = run_figure2(config);
    {
        std::ostringstream os;
        write_figure2_detail_csv(os, report);
        write_file(out_prefix + "_detail.csv", os.str());
    }
    {
        std::ostringstream os;
        write_figure2_summary_csv(os, report);
        write_file(out_prefix + "_summary.csv", os.str());
    }
    std::cout << out_prefix << "_detail.csv\n" << out_prefix << "_summary.csv\n";
    return 0;
}

int cmd_experiment_warmup(double mu, double sigma2, long long N, long long replicates,
                          std::uint64_t seed, const std::string& out_prefix) {
    WarmupConfig config{mu, sigma2, N, replicates, seed};
    WarmupReport report = gaussian_warmup(config);
    std::ostringstream os;
    write_warmup_csv(os, report);
    write_file(out_prefix + "_warmup.csv", os.str());
    std::cout << out_prefix << "_warmup.csv\n";
    return 0;
}

int cmd_experiment_independence(const std::string& b_spec, const std::string& sigma_spec,
                                const std::string& left_spec, const std::string& right_spec,
                                long long N, int replicates, int depth, std::uint64_t seed,
                                int steps, const std::string& coupling,
                                const std::string& out_prefix) {
    IndependenceConfig config;
    config.b = parse_vector(b_spec);
    config.sigma = parse_sigma(sigma_spec, static_cast<int>(config.b.size()));
    config.left = parse_letter_set(left_spec);
    config.right = parse_letter_set(right_spec);
    config.N = N;
    config.replicates = replicates;
    config.depth = depth;
    config.seed = seed;
    config.steps_per_unit = steps;

    std::vector<Coupling> couplings;
    if (coupling == "independent")
        couplings = {Coupling::independent};
    else if (coupling == "identical")
        couplings = {Coupling::identical};
    else if (coupling == "both")
        couplings = {Coupling::independent, Coupling::identical};
    else
        throw ValidationError("--coupling must be independent, identical or both");

    for (Coupling c : couplings) {
        config.coupling = c;
        IndependenceReport report = independence_experiment(config);
        std::string tag = (c == Coupling::independent) ? "independent" : "identical";
        {
            std::ostringstream os;
            write_independence_detail_csv(os, report);
            write_file(out_prefix + "_" + tag + "_detail.csv", os.str());
        }
        {
            std::ostringstream os;
            write_independence_summary_csv(os, report);
            write_file(out_prefix + "_" + tag + "_summary.csv", os.str());
        }
        std::cout << out_prefix << "_" << tag << "_detail.csv\n"
                  << out_prefix << "_" << tag << "_summary.csv\n";
    }
    return 0;
}

int cmd_orp(const std::string& chains_spec, const std::string& mode,
            const std::string& out_path, const std::string& format) {
    std::vector<int> lengths;
    for (const std::string& tok : split(chains_spec, ',')) {
        try {
            lengths.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ValidationError("bad chain length '" + tok + "'");
        }
    }
    ChainFamily cf(lengths);
    auto poset = std::make_shared<LabeledPoset>(cf.poset());
    std::vector<OrderedPartition> orp = enumerate_orp(poset);
    const auto& labels = poset->labels();

    std::ostream* out = nullptr;
    auto file = open_or_stdout(out_path, out);

    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const OrderedPartition& a : orp) {
            nlohmann::json j{{"partition", a.partition.to_text(labels)}};
            if (mode == "factorial") j["factorial"] = orp_factorial(a).convert_to<long long>();
            if (mode == "ancestry")
                j["ancestry"] = static_cast<long long>(antichain_ancestry(a).size());
            if (mode == "boundary") {
                BigRat d = boundary_weight(a);
                j["boundary"] = d.numerator().convert_to<long long>();
                j["boundary_den"] = d.denominator().convert_to<long long>();
            }
            arr.push_back(j);
        }
        *out << arr.dump(2) << "\n";
        return 0;
    }

    if (mode == "enumerate") {
        *out << "partition\n";
        for (const OrderedPartition& a : orp)
            *out << csv_quote(a.partition.to_text(labels)) << "\n";
    } else if (mode == "factorial") {
        *out << "partition,factorial\n";
        for (const OrderedPartition& a : orp)
            *out << csv_quote(a.partition.to_text(labels)) << ',' << orp_factorial(a) << "\n";
    } else if (mode == "ancestry") {
        *out << "partition,ancestry\n";
        for (const OrderedPartition& a : orp)
            *out << csv_quote(a.partition.to_text(labels)) << ','
                 << antichain_ancestry(a).size() << "\n";
    } else if (mode == "boundary") {
        *out << "partition,boundary\n";
        for (const OrderedPartition& a : orp) {
            BigRat d = boundary_weight(a);
            *out << csv_quote(a.partition.to_text(labels)) << ',' << d.numerator();
            if (d.denominator() != 1) *out << '/' << d.denominator();
            *out << "\n";
        }
    } else {
        throw ValidationError("orp mode must be enumerate, factorial, ancestry or boundary");
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"signature moments, cumulants and their estimators"};
    app.require_subcommand(1);

    // signature
    auto* sig = app.add_subcommand("signature", "truncated signatures of path CSVs");
    std::vector<std::string> sig_inputs;
    int sig_depth = 2;
    bool sig_augment = false;
    std::string sig_out_dir;
    sig->add_option("inputs", sig_inputs, "path CSV files")->required()->expected(-1);
    sig->add_option("--depth", sig_depth, "truncation depth")->required();
    sig->add_flag("--time-augment", sig_augment, "append the time coordinate first");
    sig->add_option("--out-dir", sig_out_dir, "output directory (default: next to inputs)");

    // estimate
    auto* est = app.add_subcommand("estimate", "signature polykays / symmetric means");
    std::string est_inputs, est_mode = "cumulant", est_b, est_sigma, est_out, est_format = "csv";
    std::vector<std::string> est_tuples;
    bool est_plugin = false;
    est->add_option("--inputs", est_inputs, "directory of signature JSONs")->required();
    est->add_option("--tuples", est_tuples, "tuple family, tuples ';', letters ','")
        ->required();
    est->add_option("--mode", est_mode, "moment|cumulant");
    est->add_option("--model-b", est_b, "drift vector for model-based std errors");
    est->add_option("--model-sigma", est_sigma, "covariance for model-based std errors");
    est->add_flag("--plugin-std", est_plugin, "plug-in std errors from the samples");
    est->add_option("--out", est_out, "output file (default stdout)");
    est->add_option("--format", est_format, "csv|json");

    // independence
    auto* ind = app.add_subcommand("independence", "cross-defect table with z-scores");
    std::string ind_inputs, ind_left, ind_right, ind_out, ind_format = "csv";
    int ind_depth = 3;
    ind->add_option("--inputs", ind_inputs, "directory of signature JSONs")->required();
    ind->add_option("--left", ind_left, "letters of the first group")->required();
    ind->add_option("--right", ind_right, "letters of the second group")->required();
    ind->add_option("--depth", ind_depth, "max |tau1|+|tau2|");
    ind->add_option("--out", ind_out, "output file (default stdout)");
    ind->add_option("--format", ind_format, "csv|json");

    // experiment
    auto* expc = app.add_subcommand("experiment", "reproductions at desk scale");
    expc->require_subcommand(1);

    auto* fig = expc->add_subcommand("figure2", "moment vs cumulant estimator errors");
    std::string fig_b = "1,0", fig_sigma = "identity", fig_grid = "25:2000:log8",
                fig_out = "figure2";
    int fig_reps = 100, fig_depth = 2, fig_steps = 1000;
    std::uint64_t fig_seed = 0;
    fig->add_option("--b", fig_b, "drift vector");
    fig->add_option("--sigma", fig_sigma, "covariance ('identity' or rows 'a,b;c,d')");
    fig->add_option("--N", fig_grid, "sample-size grid (a:b:logK, list, or single)");
    fig->add_option("--replicates", fig_reps, "replicates per N");
    fig->add_option("--depth", fig_depth, "signature depth");
    fig->add_option("--steps", fig_steps, "grid steps per unit time");
    fig->add_option("--seed", fig_seed, "master seed");
    fig->add_option("--out", fig_out, "output prefix");

    auto* warm = expc->add_subcommand("warmup", "scalar Gaussian moment vs cumulant");
    double warm_mu = 3.0, warm_sigma2 = 1.0;
    long long warm_N = 50, warm_reps = 100000;
    std::uint64_t warm_seed = 0;
    std::string warm_out = "gaussian";
    warm->add_option("--mu", warm_mu, "mean");
    warm->add_option("--sigma2", warm_sigma2, "variance");
    warm->add_option("--N", warm_N, "samples per replicate");
    warm->add_option("--replicates", warm_reps, "replicates");
    warm->add_option("--seed", warm_seed, "master seed");
    warm->add_option("--out", warm_out, "output prefix");

    auto* indep = expc->add_subcommand("independence", "coupled-process rejection rates");
    std::string indep_b = "1,0", indep_sigma = "identity", indep_left = "1", indep_right = "2",
                indep_coupling = "both", indep_out = "independence";
    long long indep_N = 500;
    int indep_reps = 500, indep_depth = 3, indep_steps = 100;
    std::uint64_t indep_seed = 0;
    indep->add_option("--b", indep_b, "drift vector");
    indep->add_option("--sigma", indep_sigma, "covariance");
    indep->add_option("--left", indep_left, "letters of group I");
    indep->add_option("--right", indep_right, "letters of group J");
    indep->add_option("--N", indep_N, "samples per replicate");
    indep->add_option("--replicates", indep_reps, "replicates");
    indep->add_option("--depth", indep_depth, "max |tau1|+|tau2|");
    indep->add_option("--steps", indep_steps, "grid steps per unit time");
    indep->add_option("--seed", indep_seed, "master seed");
    indep->add_option("--coupling", indep_coupling, "independent|identical|both");
    indep->add_option("--out", indep_out, "output prefix");

    // orp
    auto* orp = app.add_subcommand("orp", "ordered partitions of a chain family");
    std::string orp_chains, orp_mode = "enumerate", orp_out, orp_format = "csv";
    orp->add_option("--chains", orp_chains, "chain lengths, e.g. 2,2")->required();
    orp->add_option("--mode", orp_mode, "enumerate|factorial|ancestry|boundary");
    orp->add_option("--out", orp_out, "output file (default stdout)");
    orp->add_option("--format", orp_format, "csv|json");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sig->parsed()) return cmd_signature(sig_inputs, sig_depth, sig_augment, sig_out_dir);
        if (est->parsed())
            return cmd_estimate(est_inputs, est_tuples, est_mode, est_b, est_sigma, est_plugin,
                                est_out, est_format);
        if (ind->parsed())
            return cmd_independence(ind_inputs, ind_left, ind_right, ind_depth, ind_out,
                                    ind_format);
        if (expc->parsed()) {
            if (fig->parsed())
                return cmd_experiment_figure2(fig_b, fig_sigma, fig_grid, fig_reps, fig_depth,
                                              fig_seed, fig_steps, fig_out);
            if (warm->parsed())
                return cmd_experiment_warmup(warm_mu, warm_sigma2, warm_N, warm_reps, warm_seed,
                                             warm_out);
            if (indep->parsed())
                return cmd_experiment_independence(indep_b, indep_sigma, indep_left, indep_right,
                                                   indep_N, indep_reps, indep_depth, indep_seed,
                                                   indep_steps, indep_coupling, indep_out);
        }
        if (orp->parsed()) return cmd_orp(orp_chains, orp_mode, orp_out, orp_format);
        std::cerr << "no subcommand given\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace sigstat
