#include "sigstat/partition.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "sigstat/errors.hpp"

namespace sigstat {

double to_double(const BigRat& r) {
    return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

SetPartition::SetPartition(int ground_size, std::vector<std::vector<int>> blocks)
    : ground_size_(ground_size), blocks_(std::move(blocks)) {
    if (ground_size < 1) throw ValidationError("partition ground set must be nonempty");
    block_of_.assign(ground_size, -1);
    for (auto& blk : blocks_) {
        if (blk.empty()) throw ValidationError("partition block is empty");
        std::sort(blk.begin(), blk.end());
        for (int e : blk) {
            if (e < 0 || e >= ground_size) throw ValidationError("partition element out of range");
            if (block_of_[e] != -1) throw ValidationError("partition blocks are not disjoint");
            block_of_[e] = 0; // provisional; fixed below
        }
    }
    for (int e = 0; e < ground_size; ++e)
        if (block_of_[e] == -1) throw ValidationError("partition does not cover the ground set");
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (int e : blocks_[i]) block_of_[e] = static_cast<int>(i);
    // restricted growth string relative to canonical block numbering
    rgs_.resize(ground_size);
    for (int e = 0; e < ground_size; ++e) rgs_[e] = block_of_[e];
}

SetPartition SetPartition::from_rgs(const std::vector<int>& rgs) {
    if (rgs.empty()) throw ValidationError("empty restricted growth string");
    int k = 1 + *std::max_element(rgs.begin(), rgs.end());
    std::vector<std::vector<int>> blocks(k);
    for (std::size_t e = 0; e < rgs.size(); ++e) {
        if (rgs[e] < 0 || rgs[e] >= k) throw ValidationError("bad restricted growth string");
        blocks[rgs[e]].push_back(static_cast<int>(e));
    }
    return SetPartition(static_cast<int>(rgs.size()), std::move(blocks));
}

SetPartition SetPartition::singletons(int n) {
    std::vector<std::vector<int>> blocks(n);
    for (int e = 0; e < n; ++e) blocks[e] = {e};
    return SetPartition(n, std::move(blocks));
}

SetPartition SetPartition::one_block(int n) {
    std::vector<int> all(n);
    for (int e = 0; e < n; ++e) all[e] = e;
    return SetPartition(n, {all});
}

std::vector<std::vector<int>> SetPartition::restrict_to(const std::vector<int>& subset) const {
    std::map<int, std::vector<int>> pieces;
    for (int e : subset) pieces[block_of_[e]].push_back(e);
    std::vector<std::vector<int>> out;
    out.reserve(pieces.size());
    for (auto& [blk, piece] : pieces) {
        std::sort(piece.begin(), piece.end());
        out.push_back(std::move(piece));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return out;
}

std::string SetPartition::to_text(const std::vector<std::string>& labels) const {
    std::string s;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) s += '|';
        for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
            if (j) s += ',';
            s += labels[blocks_[i][j]];
        }
    }
    return s;
}

SetPartition partition_from_text(const std::string& text, const std::vector<std::string>& labels) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> blocks;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t bar = text.find('|', pos);
        std::string blk_text = text.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
        std::vector<int> blk;
        std::size_t p2 = 0;
        while (p2 <= blk_text.size()) {
            std::size_t comma = blk_text.find(',', p2);
            std::string tok =
                blk_text.substr(p2, comma == std::string::npos ? std::string::npos : comma - p2);
            auto it = index.find(tok);
            if (it == index.end()) throw ValidationError("unknown element label '" + tok + "'");
            blk.push_back(it->second);
            if (comma == std::string::npos) break;
            p2 = comma + 1;
        }
        blocks.push_back(std::move(blk));
        if (bar == std::string::npos) break;
        pos = bar + 1;
    }
    return SetPartition(static_cast<int>(labels.size()), std::move(blocks));
}

OrderedPartition::OrderedPartition(SetPartition p, std::shared_ptr<const LabeledPoset> ps)
    : partition(std::move(p)), poset(std::move(ps)) {
    if (partition.ground_size() != poset->size())
        throw ValidationError("partition does not match poset ground set");
    if (!is_ordered(partition, *poset))
        throw ValidationError("partition is not ordered with respect to the poset");
}

std::vector<SetPartition> enumerate_partitions(int n, int cap) {
    if (n > cap)
        throw ResourceError("partition enumeration for n=" + std::to_string(n) +
                            " exceeds cap " + std::to_string(cap));
    std::vector<SetPartition> out;
    std::vector<int> rgs(n, 0);
    std::vector<int> maxval(n, 0); // maxval[i] = max(rgs[0..i])
    // lexicographic successor over restricted growth strings
    while (true) {
        out.push_back(SetPartition::from_rgs(rgs));
        int i = n - 1;
        for (; i >= 1; --i) {
            if (rgs[i] <= maxval[i - 1]) break;
        }
        if (i < 1) break;
        ++rgs[i];
        maxval[i] = std::max(maxval[i - 1], rgs[i]);
        for (int j = i + 1; j < n; ++j) {
            rgs[j] = 0;
            maxval[j] = maxval[i];
        }
    }
    return out;
}

namespace {

/// Block digraph: vertices = blocks of a; edge A -> B (A != B) when some
/// x in A is strictly below some y in B.
std::vector<std::vector<bool>> block_digraph(const SetPartition& a, const LabeledPoset& poset) {
    const int k = a.size();
    std::vector<std::vector<bool>> edge(k, std::vector<bool>(k, false));
    const int n = poset.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (poset.less(x, y) && a.block_of(x) != a.block_of(y))
                edge[a.block_of(x)][a.block_of(y)] = true;
    return edge;
}

bool digraph_acyclic(const std::vector<std::vector<bool>>& edge) {
    const int k = static_cast<int>(edge.size());
    std::vector<int> state(k, 0); // 0 unseen, 1 on stack, 2 done
    std::vector<int> stack;
    for (int s = 0; s < k; ++s) {
        if (state[s]) continue;
        stack.push_back(s);
        std::vector<int> iter(k, 0);
        while (!stack.empty()) {
            int v = stack.back();
            if (state[v] == 0) state[v] = 1;
            bool advanced = false;
            for (int& w = iter[v]; w < k; ++w) {
                if (!edge[v][w]) continue;
                if (state[w] == 1) return false;
                if (state[w] == 0) {
                    stack.push_back(w);
                    ++w;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

} // namespace

bool is_ordered(const SetPartition& a, const LabeledPoset& poset) {
    if (a.ground_size() != poset.size())
        throw ValidationError("partition does not match poset ground set");
    return digraph_acyclic(block_digraph(a, poset));
}

std::vector<OrderedPartition> enumerate_orp(std::shared_ptr<const LabeledPoset> poset, int cap) {
    std::vector<OrderedPartition> out;
    for (SetPartition& p : enumerate_partitions(poset->size(), cap))
        if (is_ordered(p, *poset)) out.emplace_back(std::move(p), poset);
    return out;
}

bool refinement_leq(const SetPartition& a, const SetPartition& b) {
    if (a.ground_size() != b.ground_size())
        throw ValidationError("refinement comparison across different ground sets");
    for (const auto& blk : a.blocks()) {
        int target = b.block_of(blk.front());
        for (int e : blk)
            if (b.block_of(e) != target) return false;
    }
    return true;
}

bool crossmerge_leq(const SetPartition& b, const SetPartition& a, const LabeledPoset& poset) {
    if (!refinement_leq(b, a)) return false;
    const int n = poset.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (poset.comparable(x, y) && a.same_block(x, y) && !b.same_block(x, y))
                return false;
    return true;
}

namespace {

/// All c with a <= c <= b in refinement order: merge whole blocks of a
/// within each block-group of b.
std::vector<SetPartition> interval_partitions(const SetPartition& a, const SetPartition& b) {
    const int k = a.size();
    // group a-blocks by enclosing b-block
    std::vector<int> group(k);
    for (int i = 0; i < k; ++i) group[i] = b.block_of(a.blocks()[i].front());

    // enumerate partitions of a-blocks refining 'group', as RGS over [k]
    std::vector<SetPartition> out;
    std::vector<int> rgs(k, 0);
    std::vector<int> maxval(k, 0);
    while (true) {
        bool ok = true;
        // classes must stay within one group
        std::map<int, int> class_group;
        for (int i = 0; i < k && ok; ++i) {
            auto [it, inserted] = class_group.try_emplace(rgs[i], group[i]);
            if (!inserted && it->second != group[i]) ok = false;
        }
        if (ok) {
            std::map<int, std::vector<int>> merged;
            for (int i = 0; i < k; ++i)
                for (int e : a.blocks()[i]) merged[rgs[i]].push_back(e);
            std::vector<std::vector<int>> blocks;
            for (auto& [cls, blk] : merged) blocks.push_back(std::move(blk));
            out.emplace_back(a.ground_size(), std::move(blocks));
        }
        int i = k - 1;
        for (; i >= 1; --i)
            if (rgs[i] <= maxval[i - 1]) break;
        if (i < 1) break;
        ++rgs[i];
        maxval[i] = std::max(maxval[i - 1], rgs[i]);
        for (int j = i + 1; j < k; ++j) {
            rgs[j] = 0;
            maxval[j] = maxval[i];
        }
    }
    return out;
}

} // namespace

BigInt moebius(const SetPartition& a, const SetPartition& b) {
    if (!refinement_leq(a, b)) throw ValidationError("moebius requires a <= b in refinement order");
    static std::map<std::pair<std::vector<int>, std::vector<int>>, BigInt> cache;
    static std::mutex cache_mutex;
    auto key = std::make_pair(a.rgs(), b.rgs());
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    BigInt value;
    if (a == b) {
        value = 1;
    } else {
        value = 0;
        for (const SetPartition& c : interval_partitions(a, b))
            if (!(c == b)) value -= moebius(a, c);
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[key] = value;
    return value;
}

BigInt CrossMergeMoebius::operator()(const SetPartition& b, const SetPartition& a) {
    if (!crossmerge_leq(b, a, *poset_))
        throw ValidationError("crossmerge moebius requires b ⊴ a");
    auto key = std::make_pair(b.rgs(), a.rgs());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    BigInt value;
    if (b == a) {
        value = 1;
    } else {
        // m(b,a) = - sum over b ⊴-strict c ⊴ a of m(c,a)
        value = 0;
        for (const SetPartition& c : interval_partitions(b, a))
            if (!(c == b) && crossmerge_leq(b, c, *poset_) && crossmerge_leq(c, a, *poset_))
                value -= (*this)(c, a);
    }
    cache_.emplace(key, value);
    return value;
}

BigInt orp_factorial(const SetPartition& a, const LabeledPoset& poset) {
    auto edge = block_digraph(a, poset);
    if (!digraph_acyclic(edge)) throw ValidationError("orp_factorial requires an ordered partition");
    const int k = a.size();
    if (k > 30) throw ResourceError("orp_factorial block count too large");
    // count linear extensions of the block DAG: assign values 1..k bottom-up
    std::vector<unsigned> preds(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (edge[i][j]) preds[j] |= (1u << i);
    std::map<unsigned, BigInt> memo;
    const unsigned full = (k == 32) ? ~0u : ((1u << k) - 1u);
    auto count = [&](auto&& self, unsigned remaining) -> BigInt {
        if (remaining == 0) return 1;
        auto it = memo.find(remaining);
        if (it != memo.end()) return it->second;
        BigInt total = 0;
        for (int i = 0; i < k; ++i) {
            unsigned bit = 1u << i;
            if (!(remaining & bit)) continue;
            if (preds[i] & remaining) continue; // some predecessor still unassigned
            total += self(self, remaining & ~bit);
        }
        memo[remaining] = total;
        return total;
    };
    return count(count, full);
}

BigInt orp_factorial(const OrderedPartition& a) { return orp_factorial(a.partition, *a.poset); }

std::vector<OrderedPartition> antichain_ancestry(const OrderedPartition& a) {
    const SetPartition& part = a.partition;
    const LabeledPoset& poset = *a.poset;
    const int k = part.size();

    // comparable-block pairs may never merge (that would change some chain
    // restriction)
    std::vector<std::vector<bool>> clash(k, std::vector<bool>(k, false));
    for (int x = 0; x < poset.size(); ++x)
        for (int y = 0; y < poset.size(); ++y)
            if (x != y && poset.comparable(x, y) && part.block_of(x) != part.block_of(y))
                clash[part.block_of(x)][part.block_of(y)] = true;

    std::vector<OrderedPartition> out;
    for (const SetPartition& q : enumerate_partitions(k, 30)) {
        bool ok = true;
        for (const auto& cls : q.blocks())
            for (std::size_t i = 0; i < cls.size() && ok; ++i)
                for (std::size_t j = i + 1; j < cls.size() && ok; ++j)
                    if (clash[cls[i]][cls[j]] || clash[cls[j]][cls[i]]) ok = false;
        if (!ok) continue;
        std::vector<std::vector<int>> blocks;
        for (const auto& cls : q.blocks()) {
            std::vector<int> blk;
            for (int i : cls)
                blk.insert(blk.end(), part.blocks()[i].begin(), part.blocks()[i].end());
            blocks.push_back(std::move(blk));
        }
        SetPartition b(part.ground_size(), std::move(blocks));
        if (is_ordered(b, poset)) out.emplace_back(std::move(b), a.poset);
    }
    std::sort(out.begin(), out.end(),
              [](const OrderedPartition& x, const OrderedPartition& y) {
                  return x.partition < y.partition;
              });
    return out;
}

BigRat boundary_weight(const OrderedPartition& a) {
    BigRat total(0);
    for (const OrderedPartition& b : antichain_ancestry(a)) {
        BigInt fact = orp_factorial(b);
        BigInt sign = (b.size() % 2 == 1) ? 1 : -1;
        total += BigRat(sign * fact, BigInt(b.size()));
    }
    return total;
}

OrderPolynomials order_polynomial(const LabeledPoset& poset, int n, int cap) {
    const int sz = poset.size();
    if (sz > cap) throw ResourceError("order_polynomial poset exceeds cap");
    if (n < 1) throw ValidationError("order_polynomial needs n >= 1");

    // topological order of elements
    std::vector<int> topo;
    std::vector<bool> placed(sz, false);
    for (int round = 0; round < sz; ++round)
        for (int x = 0; x < sz; ++x) {
            if (placed[x]) continue;
            bool ready = true;
            for (int y = 0; y < sz; ++y)
                if (!placed[y] && poset.less(y, x)) ready = false;
            if (ready) {
                topo.push_back(x);
                placed[x] = true;
                break;
            }
        }

    std::vector<int> value(sz, 0);
    BigInt omega = 0, omega_strict = 0;
    auto dfs = [&](auto&& self, std::size_t idx, int used_distinct, unsigned used_mask) -> void {
        if (idx == topo.size()) {
            omega += 1;
            if (used_distinct == n) omega_strict += 1;
            return;
        }
        int x = topo[idx];
        int lb = 1;
        for (std::size_t j = 0; j < idx; ++j)
            if (poset.less(topo[j], x)) lb = std::max(lb, value[topo[j]]);
        for (int v = lb; v <= n; ++v) {
            value[x] = v;
            unsigned bit = 1u << (v - 1);
            self(self, idx + 1, used_distinct + ((used_mask & bit) ? 0 : 1), used_mask | bit);
        }
    };
    dfs(dfs, 0, 0, 0u);
    return {omega, omega_strict};
}

} // namespace sigstat
