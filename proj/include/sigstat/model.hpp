#ifndef SIGSTAT_MODEL_HPP
#define SIGSTAT_MODEL_HPP

#include <vector>

#include "sigstat/word.hpp"

namespace sigstat {

/// Exact-expectation provider for a T((V))-valued random variable T:
/// mixed_moment(w1..wm) = E[<T,e_w1> ... <T,e_wm>]. Symmetric in its
/// arguments; the empty list yields 1. Implementations are immutable and
/// safe to share across threads.
class DistributionModel {
public:
    virtual ~DistributionModel() = default;
    virtual int dim() const = 0;
    /// Largest total word length the model can serve exactly.
    virtual int max_depth() const = 0;
    virtual double mixed_moment(const std::vector<Word>& words) const = 0;
};

} // namespace sigstat

#endif
