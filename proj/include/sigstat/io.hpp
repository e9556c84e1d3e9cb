#ifndef SIGSTAT_IO_HPP
#define SIGSTAT_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sigstat/experiments.hpp"
#include "sigstat/moment_cumulant.hpp"
#include "sigstat/path.hpp"
#include "sigstat/tensor.hpp"

namespace sigstat {

/// 17-significant-digit rendering; round-trips all finite doubles.
std::string fmt17(double x);

/// {"dim": d, "depth": M, "coeffs": {"": 1.0, "1,2": -0.25}}; absent words
/// are zero. parse(emit(t)) reproduces t bit-exactly for finite values.
std::string tensor_to_json(const FreeTensor& t);
FreeTensor tensor_from_json(const std::string& text);

/// Path CSV: optional header ("x1,..,xd" or "t,x1,..,xd" — a leading "t"
/// column is detected from the header); one row per point, visit order =
/// row order. Malformed rows raise ValidationError with line numbers.
PiecewiseLinearPath read_path_csv(std::istream& in, const std::string& name);
PiecewiseLinearPath read_path_csv_file(const std::string& filename);

std::string csv_quote(const std::string& field);

void write_defect_csv(std::ostream& out, const std::vector<DefectRow>& rows);
void write_defect_json(std::ostream& out, const std::vector<DefectRow>& rows);

struct EstimateRow {
    std::string tuple_family; // tuples ";", letters ","
    double estimate;
    bool has_std;
    double asymptotic_std;
    long long n;
};
void write_estimate_csv(std::ostream& out, const std::vector<EstimateRow>& rows);
void write_estimate_json(std::ostream& out, const std::vector<EstimateRow>& rows);

void write_figure2_detail_csv(std::ostream& out, const Figure2Report& report);
void write_figure2_summary_csv(std::ostream& out, const Figure2Report& report);
void write_warmup_csv(std::ostream& out, const WarmupReport& report);
void write_independence_detail_csv(std::ostream& out, const IndependenceReport& report);
void write_independence_summary_csv(std::ostream& out, const IndependenceReport& report);

} // namespace sigstat

#endif
