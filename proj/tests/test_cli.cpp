#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "sigstat/estimators.hpp"
#include "sigstat/io.hpp"
#include "sigstat/partition.hpp"
#include "sigstat/path.hpp"

using namespace sigstat;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("sigstat_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(out);
    out << content;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("signature subcommand") {
    fs::path dir = fresh_dir("signature");
    fs::path csv = dir / "path.csv";
    spit(csv, "x1,x2\n0,0\n1,0\n1,1\n");

    CHECK(run_cli({"signature", "--depth", "3", "--out-dir", dir.string(), csv.string()}) == 0);
    fs::path out = dir / "path.sig.json";
    REQUIRE(fs::exists(out));
    FreeTensor t = tensor_from_json(slurp(out));
    CHECK(t.dim() == 2);
    CHECK(t.depth() == 3);
    CHECK(t.coeff(Word{1, 2}) == doctest::Approx(1.0));

    // timestamps do not matter, only the point order
    fs::path csv2 = dir / "timed.csv";
    spit(csv2, "t,x1,x2\n5,0,0\n9,1,0\n22,1,1\n");
    CHECK(run_cli({"signature", "--depth", "3", "--out-dir", dir.string(), csv2.string()}) == 0);
    CHECK(tensor_from_json(slurp(dir / "timed.sig.json")).approx_equal(t, 0.0));

    // malformed row: validation exit code
    fs::path bad = dir / "bad.csv";
    spit(bad, "x1,x2\n0,0\n1\n");
    CHECK(run_cli({"signature", "--depth", "2", "--out-dir", dir.string(), bad.string()}) == 2);

    // time augmentation changes the dimension
    CHECK(run_cli({"signature", "--depth", "2", "--time-augment", "--out-dir", dir.string(),
                   csv.string()}) == 0);
    CHECK(tensor_from_json(slurp(dir / "path.sig.json")).dim() == 3);
}

TEST_CASE("estimate subcommand") {
    fs::path dir = fresh_dir("estimate");
    fs::path samples = dir / "samples";
    fs::create_directories(samples);

    // N identical samples: the polykay collapses to a known expression
    PiecewiseLinearPath path({{0, 0}, {1, 0}, {1, 1}});
    FreeTensor s = signature(path, 3).tensor;
    for (int i = 0; i < 5; ++i)
        spit(samples / ("s" + std::to_string(i) + ".json"), tensor_to_json(s));

    fs::path out = dir / "est.csv";
    CHECK(run_cli({"estimate", "--inputs", samples.string(), "--tuples", "1,2", "--mode",
                   "cumulant", "--out", out.string()}) == 0);
    auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "tuple_family,estimate,asymptotic_std,n");
    double expect = s.coeff(Word{1, 2}) - 0.5 * s.coeff(Word{1}) * s.coeff(Word{2});
    std::string row = lines[1];
    // row looks like "1,2",<estimate>,,5
    REQUIRE(row.rfind("\"1,2\",", 0) == 0);
    double got = std::stod(row.substr(6));
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    CHECK(row.substr(row.size() - 2) == ",5");

    // moment mode: the plain mean of <X, e_12>
    CHECK(run_cli({"estimate", "--inputs", samples.string(), "--tuples", "1,2", "--mode",
                   "moment", "--out", out.string()}) == 0);
    auto mlines = lines_of(slurp(out));
    CHECK(std::stod(mlines[1].substr(6)) == doctest::Approx(s.coeff(Word{1, 2})));

    // insufficient samples: resource exit code
    CHECK(run_cli({"estimate", "--inputs", samples.string(), "--tuples", "1;2;1;2;1;2",
                   "--out", out.string()}) == 3);
}

TEST_CASE("estimate matches the library on mixed samples") {
    fs::path dir = fresh_dir("estimate2");
    fs::path sdir = dir / "samples";
    fs::create_directories(sdir);
    Rng rng(8);
    std::vector<FreeTensor> tensors;
    for (int i = 0; i < 8; ++i) {
        std::vector<std::vector<double>> pts(4, std::vector<double>(2, 0.0));
        for (int p = 1; p < 4; ++p)
            for (int j = 0; j < 2; ++j)
                pts[p][j] = pts[p - 1][j] + rng.uniform01() - 0.5;
        tensors.push_back(signature(PiecewiseLinearPath(pts), 3).tensor);
        char name[16];
        std::snprintf(name, sizeof(name), "s%02d.json", i);
        spit(sdir / name, tensor_to_json(tensors.back()));
    }
    fs::path out = dir / "est.csv";
    CHECK(run_cli({"estimate", "--inputs", sdir.string(), "--tuples", "1;2", "--plugin-std",
                   "--out", out.string()}) == 0);
    auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 2);
    SampleFeatures samples(tensors);
    TupleFamily fam({Word{1}, Word{2}});
    double expect = signature_polykay(samples, fam);
    // row: "1;2",<estimate>,<std>,8
    REQUIRE(lines[1].rfind("1;2,", 0) == 0);
    CHECK(std::stod(lines[1].substr(4)) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("independence subcommand") {
    fs::path dir = fresh_dir("independence");
    fs::path sdir = dir / "samples";
    fs::create_directories(sdir);
    Rng rng(9);
    for (int i = 0; i < 12; ++i) {
        std::vector<std::vector<double>> pts(5, std::vector<double>(2, 0.0));
        for (int p = 1; p < 5; ++p)
            for (int j = 0; j < 2; ++j)
                pts[p][j] = pts[p - 1][j] + rng.uniform01() - 0.4;
        char name[16];
        std::snprintf(name, sizeof(name), "s%02d.json", i);
        spit(sdir / name, tensor_to_json(signature(PiecewiseLinearPath(pts), 3).tensor));
    }
    fs::path out = dir / "defects.csv";
    CHECK(run_cli({"independence", "--inputs", sdir.string(), "--left", "1", "--right", "2",
                   "--depth", "2", "--out", out.string()}) == 0);
    auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 2); // header + |I| * |J| singleton pairs
    CHECK(lines[0] == "tau1,tau2,value,z");

    CHECK(run_cli({"independence", "--inputs", sdir.string(), "--left", "1", "--right", "1",
                   "--out", out.string()}) == 2);
}

TEST_CASE("experiment subcommands are deterministic") {
    fs::path dir = fresh_dir("experiment");
    std::string prefix = (dir / "fig").string();
    std::vector<std::string> args{"experiment", "figure2",      "--b",     "1,0",
                                  "--sigma",    "identity",     "--N",     "4,8",
                                  "--replicates", "4",          "--seed",  "7",
                                  "--steps",    "3",            "--out",   prefix};
    CHECK(run_cli(args) == 0);
    std::string detail1 = slurp(prefix + "_detail.csv");
    std::string summary1 = slurp(prefix + "_summary.csv");
    CHECK(run_cli(args) == 0);
    CHECK(slurp(prefix + "_detail.csv") == detail1);
    CHECK(slurp(prefix + "_summary.csv") == summary1);
    CHECK(lines_of(detail1).size() == 1 + 2 * 4 * 7);

    // non-PSD sigma rejected
    std::vector<std::string> bad = args;
    bad[5] = "1,2;2,1";
    CHECK(run_cli(bad) == 2);

    std::string wprefix = (dir / "warm").string();
    CHECK(run_cli({"experiment", "warmup", "--mu", "1", "--sigma2", "1", "--N", "10",
                   "--replicates", "200", "--seed", "3", "--out", wprefix}) == 0);
    auto wlines = lines_of(slurp(wprefix + "_warmup.csv"));
    REQUIRE(wlines.size() == 2);

    std::string iprefix = (dir / "ind").string();
    CHECK(run_cli({"experiment", "independence", "--b", "1,0", "--sigma", "identity",
                   "--left", "1", "--right", "2", "--N", "30", "--replicates", "3",
                   "--depth", "2", "--steps", "2", "--seed", "5", "--coupling", "both",
                   "--out", iprefix}) == 0);
    CHECK(fs::exists(iprefix + "_independent_summary.csv"));
    CHECK(fs::exists(iprefix + "_identical_detail.csv"));
}

TEST_CASE("estimate converges on simulated diffusion windows") {
    fs::path dir = fresh_dir("estimate_bm");
    fs::path sdir = dir / "samples";
    fs::create_directories(sdir);
    DriftVolModel model({1.0, 0.0}, {{1.0, 0.0}, {0.0, 1.0}}, 20, 1.0, 2);
    Rng rng(child_seed(31, 0));
    const int N = 400;
    for (int i = 0; i < N; ++i) {
        char name[16];
        std::snprintf(name, sizeof(name), "w%04d.json", i);
        spit(sdir / name, tensor_to_json(simulate_driftbm_signature(model, 2, rng).tensor));
    }
    fs::path out = dir / "est.csv";
    // kappa for tuple (1,1) targets sigma_11 / 2 = 0.5 (exact at any step count)
    CHECK(run_cli({"estimate", "--inputs", sdir.string(), "--tuples", "1,1", "--plugin-std",
                   "--out", out.string()}) == 0);
    auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 2);
    // row: "1,1",<estimate>,<std>,400
    REQUIRE(lines[1].rfind("\"1,1\",", 0) == 0);
    std::string rest = lines[1].substr(6);
    double est = std::stod(rest);
    double sd = std::stod(rest.substr(rest.find(',') + 1));
    CHECK(std::abs(est - 0.5) < 3.0 * sd);

    // model-based std errors come out too
    CHECK(run_cli({"estimate", "--inputs", sdir.string(), "--tuples", "1,1", "--model-b",
                   "1,0", "--model-sigma", "identity", "--out", out.string()}) == 0);
    auto mlines = lines_of(slurp(out));
    REQUIRE(mlines.size() == 2);
    std::string mrest = mlines[1].substr(6);
    double msd = std::stod(mrest.substr(mrest.find(',') + 1));
    CHECK(msd > 0.0);
}

TEST_CASE("signature rejects a header without coordinates") {
    fs::path dir = fresh_dir("sig_header");
    fs::path csv = dir / "only_time.csv";
    spit(csv, "t\n0\n1\n");
    CHECK(run_cli({"signature", "--depth", "2", "--out-dir", dir.string(), csv.string()}) == 2);
}

TEST_CASE("orp subcommand") {
    fs::path dir = fresh_dir("orp");
    fs::path out = dir / "orp.csv";
    CHECK(run_cli({"orp", "--chains", "2,2", "--mode", "enumerate", "--out", out.string()}) ==
          0);
    auto lines = lines_of(slurp(out));
    CHECK(lines.size() == 1 + 14);

    CHECK(run_cli({"orp", "--chains", "2,2", "--mode", "boundary", "--out", out.string()}) ==
          0);
    auto blines = lines_of(slurp(out));
    REQUIRE(blines.size() == 1 + 14);
    // degenerate rows (no block meets both chains) show boundary 0
    for (std::size_t i = 1; i < blines.size(); ++i) {
        const std::string& row = blines[i];
        // a block mixes chains iff it contains both "c1." and "c2." labels
        bool crossing_block = false;
        std::string body = row.substr(0, row.rfind(','));
        if (!body.empty() && body.front() == '"') body = body.substr(1, body.size() - 2);
        std::stringstream ss(body);
        std::string block;
        while (std::getline(ss, block, '|')) {
            if (block.find("c1.") != std::string::npos &&
                block.find("c2.") != std::string::npos)
                crossing_block = true;
        }
        if (!crossing_block) CHECK(row.substr(row.rfind(',') + 1) == "0");
    }

    // factorial sums against the order polynomial
    CHECK(run_cli({"orp", "--chains", "2,2", "--mode", "factorial", "--out", out.string()}) ==
          0);
    auto flines = lines_of(slurp(out));
    ChainFamily cf({2, 2});
    auto poset = std::make_shared<LabeledPoset>(cf.poset());
    for (int n = 1; n <= 4; ++n) {
        BigInt weak = 0;
        for (const OrderedPartition& a : enumerate_orp(poset)) {
            BigInt binom = 1;
            for (int t = 0; t < a.size(); ++t) {
                binom *= (n - t);
                binom /= (t + 1);
            }
            if (a.size() <= n) weak += binom * orp_factorial(a);
        }
        CHECK(order_polynomial(cf.poset(), n).omega == weak);
    }
    (void)flines;

    // cap exceeded: resource exit code
    CHECK(run_cli({"orp", "--chains", "7,6", "--mode", "enumerate", "--out", out.string()}) ==
          3);
    // bad flags: validation exit code
    CHECK(run_cli({"orp", "--chains", "2,2", "--mode", "bogus", "--out", out.string()}) == 2);
    CHECK(run_cli({"bogus-subcommand"}) == 2);
}
