#include "sigstat/path.hpp"

#include <cmath>

#include "sigstat/errors.hpp"

namespace sigstat {

PiecewiseLinearPath::PiecewiseLinearPath(std::vector<std::vector<double>> pts,
                                         std::vector<double> ts)
    : points(std::move(pts)), times(std::move(ts)) {
    if (points.empty()) throw ValidationError("path needs at least one point");
    const std::size_t d = points.front().size();
    if (d == 0) throw ValidationError("path points must have dimension >= 1");
    for (const auto& p : points)
        if (p.size() != d) throw ValidationError("path points have mixed dimensions");
    if (!times.empty()) {
        if (times.size() != points.size())
            throw ValidationError("timestamp count does not match point count");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw ValidationError("timestamps must be strictly increasing");
    }
}

PiecewiseLinearPath PiecewiseLinearPath::reversed() const {
    std::vector<std::vector<double>> pts(points.rbegin(), points.rend());
    return PiecewiseLinearPath(std::move(pts));
}

namespace {

/// Dense truncated-tensor accumulator: levels[m] is the d^m coefficient
/// array in row-major word order. Much faster than the sparse map in the
/// per-segment loop; converted to a FreeTensor once at the end.
struct DenseLevels {
    int dim;
    std::vector<std::vector<double>> levels;

    DenseLevels(int d, int depth) : dim(d), levels(depth + 1) {
        std::size_t sz = 1;
        for (int m = 0; m <= depth; ++m) {
            levels[m].assign(sz, 0.0);
            sz *= static_cast<std::size_t>(d);
        }
    }
};

/// acc <- acc ⊗ seg where seg holds exp(increment) levels.
void concat_inplace(DenseLevels& acc, const DenseLevels& seg) {
    const int depth = static_cast<int>(acc.levels.size()) - 1;
    for (int m = depth; m >= 0; --m) {
        std::vector<double>& out = acc.levels[m];
        const std::size_t out_sz = out.size();
        // k = 0 term of seg is 1 (exp of zero-level-0 increment), so the
        // a_m * seg_0 term leaves acc[m] in place; add k >= 1 terms.
        for (int k = 1; k <= m; ++k) {
            const std::vector<double>& a = acc.levels[m - k];
            const std::vector<double>& s = seg.levels[k];
            const std::size_t s_sz = s.size();
            for (std::size_t ia = 0; ia < a.size(); ++ia) {
                const double av = a[ia];
                if (av == 0.0) continue;
                const std::size_t base = ia * s_sz;
                for (std::size_t is = 0; is < s_sz; ++is) out[base + is] += av * s[is];
            }
        }
        (void)out_sz;
    }
}

/// Levels of exp(v) for a level-1 increment v: v^{⊗m}/m!.
void exp_increment(const std::vector<double>& v, DenseLevels& seg) {
    const int depth = static_cast<int>(seg.levels.size()) - 1;
    seg.levels[0][0] = 1.0;
    if (depth >= 1) seg.levels[1] = v;
    for (int m = 2; m <= depth; ++m) {
        const std::vector<double>& prev = seg.levels[m - 1];
        std::vector<double>& cur = seg.levels[m];
        const double inv = 1.0 / m;
        std::size_t idx = 0;
        for (std::size_t ip = 0; ip < prev.size(); ++ip)
            for (std::size_t j = 0; j < v.size(); ++j) cur[idx++] = prev[ip] * v[j] * inv;
    }
}

FreeTensor to_tensor(const DenseLevels& acc) {
    const int depth = static_cast<int>(acc.levels.size()) - 1;
    FreeTensor t(acc.dim, depth);
    for (int m = 0; m <= depth; ++m) {
        Word w;
        w.letters.assign(m, 1);
        for (std::size_t idx = 0; idx < acc.levels[m].size(); ++idx) {
            if (acc.levels[m][idx] != 0.0) t.set(w, acc.levels[m][idx]);
            // advance w through [dim]^m in row-major order
            for (int pos = m - 1; pos >= 0; --pos) {
                if (w.letters[pos] < acc.dim) {
                    ++w.letters[pos];
                    break;
                }
                w.letters[pos] = 1;
            }
        }
    }
    return t;
}

} // namespace

Signature signature_of_increments(const std::vector<double>& increments, int dim, int depth) {
    if (depth < 0) throw ValidationError("signature depth must be >= 0");
    if (increments.size() % dim != 0)
        throw ValidationError("increment buffer size is not a multiple of dim");
    DenseLevels acc(dim, depth);
    acc.levels[0][0] = 1.0;
    DenseLevels seg(dim, depth);
    std::vector<double> incr(dim);
    const std::size_t steps = increments.size() / dim;
    for (std::size_t i = 0; i < steps; ++i) {
        bool zero = true;
        for (int j = 0; j < dim; ++j) {
            incr[j] = increments[i * dim + j];
            if (incr[j] != 0.0) zero = false;
        }
        if (zero) continue; // exp(0) = 1 contributes nothing
        exp_increment(incr, seg);
        concat_inplace(acc, seg);
    }
    return Signature{to_tensor(acc)};
}

Signature signature(const PiecewiseLinearPath& path, int depth) {
    const int d = path.dim();
    std::vector<double> incr((path.points.size() - 1) * d);
    for (std::size_t i = 1; i < path.points.size(); ++i)
        for (int j = 0; j < d; ++j)
            incr[(i - 1) * d + j] = path.points[i][j] - path.points[i - 1][j];
    return signature_of_increments(incr, d, depth);
}

Signature chen_concat(const Signature& s1, const Signature& s2) {
    return Signature{concat_product(s1.tensor, s2.tensor)};
}

PiecewiseLinearPath time_augment(const PiecewiseLinearPath& path) {
    const std::size_t n = path.points.size();
    std::vector<std::vector<double>> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = path.points[i];
        double t;
        if (!path.times.empty())
            t = path.times[i];
        else
            t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        pts[i].push_back(t);
    }
    return PiecewiseLinearPath(std::move(pts), path.times);
}

bool is_grouplike(const FreeTensor& t, double tol) {
    if (std::abs(t.coeff(Word{}) - 1.0) > tol) return false;
    const int depth = t.depth();
    std::vector<Word> words = all_words(t.dim(), depth - 1);
    for (const Word& f : words) {
        for (const Word& g : words) {
            if (static_cast<int>(f.size() + g.size()) > depth) continue;
            double lhs = 0.0;
            for (const auto& [w, mult] : shuffle_words(f, g))
                lhs += static_cast<double>(mult) * t.coeff(w);
            double rhs = t.coeff(f) * t.coeff(g);
            if (std::abs(lhs - rhs) > tol) return false;
        }
    }
    return true;
}

} // namespace sigstat
