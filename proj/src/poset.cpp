#include "sigstat/poset.hpp"

#include "sigstat/errors.hpp"

namespace sigstat {

LabeledPoset::LabeledPoset(std::vector<std::vector<bool>> leq, std::vector<std::string> labels)
    : leq_(std::move(leq)), labels_(std::move(labels)) {
    const int n = static_cast<int>(leq_.size());
    if (static_cast<int>(labels_.size()) != n)
        throw ValidationError("poset labels/relation size mismatch");
    for (const auto& row : leq_)
        if (static_cast<int>(row.size()) != n) throw ValidationError("poset relation not square");
    for (int x = 0; x < n; ++x)
        if (!leq_[x][x]) throw ValidationError("poset relation not reflexive");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x != y && leq_[x][y] && leq_[y][x])
                throw ValidationError("poset relation not antisymmetric");
            if (leq_[x][y])
                for (int z = 0; z < n; ++z)
                    if (leq_[y][z] && !leq_[x][z])
                        throw ValidationError("poset relation not transitive");
        }
}

LabeledPoset LabeledPoset::antichain(int n) {
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        leq[i][i] = true;
        labels[i] = std::to_string(i + 1);
    }
    return LabeledPoset(std::move(leq), std::move(labels));
}

LabeledPoset LabeledPoset::chain(int n) {
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        labels[i] = std::to_string(i + 1);
        for (int j = i; j < n; ++j) leq[i][j] = true;
    }
    return LabeledPoset(std::move(leq), std::move(labels));
}

LabeledPoset ChainFamily::build_poset(const std::vector<int>& lengths) {
    int total = 0;
    for (int len : lengths) {
        if (len < 1) throw ValidationError("chain lengths must be >= 1");
        total += len;
    }
    std::vector<std::vector<bool>> leq(total, std::vector<bool>(total, false));
    std::vector<std::string> labels(total);
    int base = 0;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        for (int p = 0; p < lengths[i]; ++p) {
            labels[base + p] = "c" + std::to_string(i + 1) + "." + std::to_string(p + 1);
            for (int q = p; q < lengths[i]; ++q) leq[base + p][base + q] = true;
        }
        base += lengths[i];
    }
    return LabeledPoset(std::move(leq), std::move(labels));
}

ChainFamily::ChainFamily(std::vector<int> chain_lengths)
    : lengths_(std::move(chain_lengths)), total_(0), poset_(build_poset(lengths_)) {
    if (lengths_.empty()) throw ValidationError("chain family needs at least one chain");
    offsets_.resize(lengths_.size());
    for (std::size_t i = 0; i < lengths_.size(); ++i) {
        offsets_[i] = total_;
        total_ += lengths_[i];
    }
    chain_of_.resize(total_);
    position_of_.resize(total_);
    chains_.resize(lengths_.size());
    for (std::size_t i = 0; i < lengths_.size(); ++i)
        for (int p = 0; p < lengths_[i]; ++p) {
            int e = offsets_[i] + p;
            chain_of_[e] = static_cast<int>(i);
            position_of_[e] = p;
            chains_[i].push_back(e);
        }
}

} // namespace sigstat
