#ifndef SIGSTAT_PATH_HPP
#define SIGSTAT_PATH_HPP

#include <vector>

#include "sigstat/tensor.hpp"

namespace sigstat {

/// Piecewise-linear path in R^d: ordered points, optionally timestamped
/// (strictly increasing, one per point). The signature depends only on the
/// point sequence.
struct PiecewiseLinearPath {
    std::vector<std::vector<double>> points;
    std::vector<double> times; // empty means no timestamps

    PiecewiseLinearPath(std::vector<std::vector<double>> pts,
                        std::vector<double> ts = {});

    int dim() const { return static_cast<int>(points.front().size()); }
    std::size_t size() const { return points.size(); }

    PiecewiseLinearPath reversed() const;
};

/// Truncated signature; the underlying tensor has level-0 coefficient 1 and
/// is group-like within numerical tolerance.
struct Signature {
    FreeTensor tensor;
};

/// Chen product over segments of exp(increment); zero increments are
/// skipped.
Signature signature(const PiecewiseLinearPath& path, int depth);

/// Same computation fed by a flat row-major (steps x dim) increment buffer;
/// the allocation-free kernel behind signature() used by simulation loops.
Signature signature_of_increments(const std::vector<double>& increments, int dim, int depth);

/// Chen identity: concatenation product of the underlying tensors.
Signature chen_concat(const Signature& s1, const Signature& s2);

/// Appends the time coordinate (timestamps, or a uniform 0..1 grid when
/// absent) as the last coordinate.
PiecewiseLinearPath time_augment(const PiecewiseLinearPath& path);

/// Shuffle identity <t, f ⧢ g> == <t,f><t,g> over all basis word pairs with
/// |f|+|g| <= depth; level-0 coefficient must be within tol of 1.
bool is_grouplike(const FreeTensor& t, double tol);

} // namespace sigstat

#endif
