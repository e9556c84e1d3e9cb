#include "sigstat/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sigstat/errors.hpp"

namespace sigstat {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string tensor_to_json(const FreeTensor& t) {
    nlohmann::json j;
    j["dim"] = t.dim();
    j["depth"] = t.depth();
    nlohmann::json coeffs = nlohmann::json::object();
    for (const auto& [w, c] : t.coeffs()) coeffs[to_string(w)] = c;
    j["coeffs"] = coeffs;
    return j.dump();
}

FreeTensor tensor_from_json(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        if (!j.is_object() || !j.contains("dim") || !j.contains("depth"))
            throw ValidationError("tensor JSON needs dim and depth");
        FreeTensor t(j["dim"].get<int>(), j["depth"].get<int>());
        if (j.contains("coeffs")) {
            if (!j["coeffs"].is_object()) throw ValidationError("tensor coeffs must be an object");
            for (auto it = j["coeffs"].begin(); it != j["coeffs"].end(); ++it) {
                Word w = parse_word(it.key());
                if (!it.value().is_number())
                    throw ValidationError("tensor coefficient for '" + it.key() +
                                          "' is not a number");
                t.set(w, it.value().get<double>()); // set() validates letters/length
            }
        }
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad tensor JSON: ") + e.what());
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else
                    quoted = false;
            } else
                cur += c;
        } else if (c == '"')
            quoted = true;
        else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r')
            cur += c;
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_double(const std::string& tok, double& out) {
    const std::string t = trim(tok);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

} // namespace

PiecewiseLinearPath read_path_csv(std::istream& in, const std::string& name) {
    std::string line;
    std::vector<std::vector<double>> points;
    std::vector<double> times;
    bool has_time = false;
    bool saw_header = false;
    std::size_t ncols = 0;
    long lineno = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) {
            if (first_content_line) continue;
            throw ValidationError(name + ":" + std::to_string(lineno) + ": blank row inside data");
        }
        std::vector<std::string> toks = split_csv_line(line);
        if (first_content_line) {
            first_content_line = false;
            double dummy;
            bool all_numeric = true;
            for (const std::string& t : toks)
                if (!parse_double(t, dummy)) all_numeric = false;
            if (!all_numeric) {
                saw_header = true;
                std::string first = trim(toks.front());
                std::transform(first.begin(), first.end(), first.begin(),
                               [](unsigned char c) { return std::tolower(c); });
                has_time = (first == "t");
                ncols = toks.size();
                if (ncols < (has_time ? 2u : 1u))
                    throw ValidationError(name + ":1: header has no coordinate columns");
                continue;
            }
            ncols = toks.size();
        }
        if (toks.size() != ncols)
            throw ValidationError(name + ":" + std::to_string(lineno) + ": expected " +
                                  std::to_string(ncols) + " columns, got " +
                                  std::to_string(toks.size()));
        std::vector<double> vals(toks.size());
        for (std::size_t i = 0; i < toks.size(); ++i)
            if (!parse_double(toks[i], vals[i]))
                throw ValidationError(name + ":" + std::to_string(lineno) +
                                      ": non-numeric field '" + toks[i] + "'");
        if (has_time) {
            times.push_back(vals.front());
            vals.erase(vals.begin());
        }
        points.push_back(std::move(vals));
    }
    if (points.empty()) throw ValidationError(name + ": no data rows");
    (void)saw_header;
    return PiecewiseLinearPath(std::move(points), std::move(times));
}

PiecewiseLinearPath read_path_csv_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw ValidationError("cannot open '" + filename + "'");
    return read_path_csv(in, filename);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

void write_defect_csv(std::ostream& out, const std::vector<DefectRow>& rows) {
    out << "tau1,tau2,value\n";
    for (const DefectRow& r : rows)
        out << csv_quote(to_string(r.tau1)) << ',' << csv_quote(to_string(r.tau2)) << ','
            << fmt17(r.value) << '\n';
}

void write_defect_json(std::ostream& out, const std::vector<DefectRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const DefectRow& r : rows)
        arr.push_back({{"tau1", to_string(r.tau1)}, {"tau2", to_string(r.tau2)}, {"value", r.value}});
    out << arr.dump(2) << '\n';
}

void write_estimate_csv(std::ostream& out, const std::vector<EstimateRow>& rows) {
    out << "tuple_family,estimate,asymptotic_std,n\n";
    for (const EstimateRow& r : rows) {
        out << csv_quote(r.tuple_family) << ',' << fmt17(r.estimate) << ',';
        if (r.has_std) out << fmt17(r.asymptotic_std);
        out << ',' << r.n << '\n';
    }
}

void write_estimate_json(std::ostream& out, const std::vector<EstimateRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const EstimateRow& r : rows) {
        nlohmann::json j{{"tuple_family", r.tuple_family}, {"estimate", r.estimate}, {"n", r.n}};
        if (r.has_std) j["asymptotic_std"] = r.asymptotic_std;
        arr.push_back(j);
    }
    out << arr.dump(2) << '\n';
}

void write_figure2_detail_csv(std::ostream& out, const Figure2Report& report) {
    out << "N,replicate,child_seed,entry_i,entry_j,abs_err_moment,abs_err_cumulant\n";
    for (const Figure2DetailRow& r : report.detail)
        out << r.N << ',' << r.replicate << ',' << r.child_seed << ',' << r.entry_i << ','
            << r.entry_j << ',' << fmt17(r.abs_err_moment) << ',' << fmt17(r.abs_err_cumulant)
            << '\n';
}

void write_figure2_summary_csv(std::ostream& out, const Figure2Report& report) {
    out << "N,entry_i,entry_j,mean_abs_err_moment,mean_abs_err_cumulant,"
           "var_gap_empirical,var_gap_theory,mc_stderr\n";
    for (const Figure2SummaryRow& r : report.summary)
        out << r.N << ',' << r.entry_i << ',' << r.entry_j << ','
            << fmt17(r.mean_abs_err_moment) << ',' << fmt17(r.mean_abs_err_cumulant) << ','
            << fmt17(r.var_gap_empirical) << ',' << fmt17(r.var_gap_theory) << ','
            << fmt17(r.mc_stderr) << '\n';
}

void write_warmup_csv(std::ostream& out, const WarmupReport& r) {
    out << "mu,sigma2,N,replicates,mean_mu2,mean_kappa2,target_mu2,target_kappa2,"
           "var_mu2,var_kappa2,gap_empirical,gap_analytic,gap_stderr\n";
    out << fmt17(r.config.mu) << ',' << fmt17(r.config.sigma2) << ',' << r.config.N << ','
        << r.config.replicates << ',' << fmt17(r.mean_mu2) << ',' << fmt17(r.mean_kappa2) << ','
        << fmt17(r.target_mu2) << ',' << fmt17(r.target_kappa2) << ',' << fmt17(r.var_mu2) << ','
        << fmt17(r.var_kappa2) << ',' << fmt17(r.gap_empirical) << ',' << fmt17(r.gap_analytic)
        << ',' << fmt17(r.gap_stderr) << '\n';
}

void write_independence_detail_csv(std::ostream& out, const IndependenceReport& report) {
    out << "replicate,child_seed,tau1,tau2,kappa_hat,vhat,z\n";
    for (const IndependenceDetailRow& r : report.detail)
        out << r.replicate << ',' << r.child_seed << ',' << csv_quote(to_string(r.tau1)) << ','
            << csv_quote(to_string(r.tau2)) << ',' << fmt17(r.kappa_hat) << ',' << fmt17(r.vhat)
            << ',' << fmt17(r.z) << '\n';
}

void write_independence_summary_csv(std::ostream& out, const IndependenceReport& report) {
    out << "tau1,tau2,reject_rate_2,reject_rate_3,frac_max_z_gt5\n";
    for (const IndependencePairSummary& r : report.pairs)
        out << csv_quote(to_string(r.tau1)) << ',' << csv_quote(to_string(r.tau2)) << ','
            << fmt17(r.reject_rate_2) << ',' << fmt17(r.reject_rate_3) << ','
            << fmt17(report.frac_max_z_gt5) << '\n';
}

} // namespace sigstat
