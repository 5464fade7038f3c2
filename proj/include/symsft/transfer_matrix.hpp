#pragma once

// Exact C_n by slice decomposition along the last axis.
//
// A slice is an admissible (d-1)-cube of side n under the first d-1 forbidden
// sets. Slice s1 may be followed by s2 iff every cell pair (s1(x), s2(x)) is
// allowed along the last axis. C_n is the number of length-n walks, i.e.
// 1^T T^(n-1) 1 for the transfer relation T.
//
// Two evaluations of y = T x are provided:
//   - TransitionStructure::apply, over explicit adjacency lists;
//   - SweepPlan::apply, which factors T into one update per slice cell over
//     mixed configurations (cells < j already replaced by the new slice,
//     cells >= j still from the old one). This touches O(m |D| |Sigma|)
//     entries per product instead of one per edge, and is what the counter
//     uses.

#include "symsft/big.hpp"
#include "symsft/enumeration.hpp"
#include "symsft/errors.hpp"
#include "symsft/pattern.hpp"
#include "symsft/sft_model.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <functional>
#include <numeric>
#include <span>
#include <thread>
#include <vector>

namespace symsft {

/// All admissible slices of side n, in lexicographic order.
class SliceStateSpace {
public:
    SliceStateSpace(const SftModel& model, int n, const CountOptions& opts = {})
        : n_(n), d_(model.dimension()), slice_geom_(n, std::max(1, model.dimension() - 1)) {
        if (d_ < 2) throw std::invalid_argument("slice decomposition needs d >= 2");
        const SftModel sub = model.leading_axes(d_ - 1);
        const std::size_t m = slice_geom_.size();
        for_each_pattern(
            sub, n,
            [&](const CubePattern& p) {
                if ((cells_.size() + m) > opts.memory_budget / 2)
                    throw BudgetExceeded("slice space exceeds memory budget");
                cells_.insert(cells_.end(), p.values().begin(), p.values().end());
            },
            opts);
    }

    int side() const noexcept { return n_; }
    int dimension() const noexcept { return d_; }
    const CubeGeometry& slice_geometry() const noexcept { return slice_geom_; }
    std::size_t cells_per_slice() const noexcept { return slice_geom_.size(); }
    std::size_t size() const noexcept { return cells_.size() / cells_per_slice(); }

    std::span<const Symbol> slice(std::size_t id) const {
        return std::span<const Symbol>(cells_).subspan(id * cells_per_slice(), cells_per_slice());
    }

    CubePattern slice_pattern(std::size_t id) const {
        auto s = slice(id);
        return CubePattern(n_, slice_geom_.dimension(), std::vector<Symbol>(s.begin(), s.end()));
    }

    /// Id of an admissible slice, or size() if absent.
    std::size_t find(std::span<const Symbol> s) const {
        std::size_t lo = 0;
        std::size_t hi = size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            auto cand = slice(mid);
            if (std::lexicographical_compare(cand.begin(), cand.end(), s.begin(), s.end()))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo < size() && std::ranges::equal(slice(lo), s)) return lo;
        return size();
    }

private:
    int n_;
    int d_;
    CubeGeometry slice_geom_;
    std::vector<Symbol> cells_;
};

/// Explicit transfer relation: successors along the last axis per slice.
class TransitionStructure {
public:
    TransitionStructure(const SftModel& model, const SliceStateSpace& space, const CountOptions& opts = {}) {
        const std::size_t count = space.size();
        const std::size_t m = space.cells_per_slice();
        const std::size_t q = model.sigma_size();
        const int axis = model.dimension() - 1;

        // Prefix trie over the slice list; leaves carry slice ids.
        constexpr std::int32_t kNone = -1;
        std::vector<std::int32_t> child(q, kNone);
        std::vector<std::int32_t> leaf_id;
        std::size_t nodes = 1;
        for (std::size_t id = 0; id < count; ++id) {
            auto s = space.slice(id);
            std::size_t node = 0;
            for (std::size_t c = 0; c < m; ++c) {
                std::int32_t next = child[node * q + s[c]];
                if (next == kNone) {
                    next = static_cast<std::int32_t>(nodes++);
                    child[node * q + s[c]] = next;
                    child.resize(nodes * q, kNone);
                }
                node = static_cast<std::size_t>(next);
            }
            if (leaf_id.size() < nodes) leaf_id.resize(nodes, kNone);
            leaf_id[node] = static_cast<std::int32_t>(id);
        }
        leaf_id.resize(nodes, kNone);

        offsets_.assign(count + 1, 0);
        std::vector<std::size_t> node_stack(m + 1);
        std::vector<std::size_t> sym_stack(m + 1);
        for (std::size_t id = 0; id < count; ++id) {
            auto s = space.slice(id);
            // Iterative trie walk restricted to symbols allowed next to s along `axis`.
            std::size_t depth = 0;
            node_stack[0] = 0;
            sym_stack[0] = 0;
            while (true) {
                if (depth == m) {
                    targets_.push_back(static_cast<std::uint32_t>(leaf_id[node_stack[m]]));
                    if (targets_.size() * sizeof(std::uint32_t) > opts.memory_budget)
                        throw BudgetExceeded("transition structure exceeds memory budget");
                    --depth;
                    continue;
                }
                std::size_t& v = sym_stack[depth];
                if (v >= q) {
                    if (depth == 0) break;
                    --depth;
                    continue;
                }
                const std::size_t sym = v++;
                const std::int32_t next = child[node_stack[depth] * q + sym];
                if (next == kNone || !model.allowed(axis, s[depth], static_cast<Symbol>(sym))) continue;
                node_stack[depth + 1] = static_cast<std::size_t>(next);
                sym_stack[depth + 1] = 0;
                ++depth;
            }
            offsets_[id + 1] = targets_.size();
        }
    }

    std::size_t size() const noexcept { return offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size(); }

    std::span<const std::uint32_t> successors(std::size_t id) const {
        return std::span<const std::uint32_t>(targets_).subspan(offsets_[id], offsets_[id + 1] - offsets_[id]);
    }

    bool has_edge(std::size_t from, std::size_t to) const {
        auto succ = successors(from);
        return std::binary_search(succ.begin(), succ.end(), static_cast<std::uint32_t>(to));
    }

    /// (s1 -> s2) iff (s2 -> s1).
    bool is_symmetric() const {
        for (std::size_t a = 0; a < size(); ++a)
            for (std::uint32_t b : successors(a))
                if (!has_edge(b, a)) return false;
        return true;
    }

    /// y[s2] = sum over s1 -> s2 of x[s1].
    std::vector<BigCount> apply(const std::vector<BigCount>& x) const {
        if (x.size() != size()) throw std::invalid_argument("vector length does not match slice count");
        std::vector<BigCount> y(size(), 0);
        for (std::size_t a = 0; a < size(); ++a) {
            if (x[a] == 0) continue;
            for (std::uint32_t b : successors(a)) y[b] += x[a];
        }
        return y;
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> targets_;
};

/// Cell-by-cell factorization of the transfer relation (see file comment).
class SweepPlan {
public:
    SweepPlan(const SftModel& model, const SliceStateSpace& space, const CountOptions& opts = {})
        : slices_(space.size()) {
        const std::size_t m = space.cells_per_slice();
        const std::size_t q = model.sigma_size();
        const int axis = model.dimension() - 1;
        const CubeGeometry& sg = space.slice_geometry();

        std::vector<Symbol> domain(space.size() * m);
        for (std::size_t id = 0; id < space.size(); ++id) {
            auto s = space.slice(id);
            std::copy(s.begin(), s.end(), domain.begin() + static_cast<std::ptrdiff_t>(id * m));
        }
        std::size_t domain_size = space.size();
        std::uint64_t bytes = domain.size();

        struct Candidate {
            std::uint32_t key;  // offset of the row in `scratch`
            std::uint32_t source;
        };
        for (std::size_t j = 0; j < m; ++j) {
            // New-slice neighbors of cell j that are already placed.
            std::vector<std::pair<std::size_t, int>> preds;
            for (int k = 0; k < sg.dimension(); ++k)
                if (sg.coord(j, k) > 0) preds.push_back({j - sg.stride(k), k});

            std::vector<Symbol> scratch;
            std::vector<Candidate> cands;
            for (std::size_t i = 0; i < domain_size; ++i) {
                const Symbol* w = domain.data() + i * m;
                for (std::size_t v = 0; v < q; ++v) {
                    const auto sym = static_cast<Symbol>(v);
                    if (!model.allowed(axis, w[j], sym)) continue;
                    bool ok = true;
                    for (auto [c, k] : preds)
                        if (!model.allowed(k, w[c], sym)) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    const auto row = static_cast<std::uint32_t>(scratch.size() / m);
                    scratch.insert(scratch.end(), w, w + m);
                    scratch[static_cast<std::size_t>(row) * m + j] = sym;
                    cands.push_back({row, static_cast<std::uint32_t>(i)});
                }
            }
            bytes += scratch.size() + cands.size() * sizeof(Candidate);
            if (bytes > opts.memory_budget) throw BudgetExceeded("transfer sweep exceeds memory budget");

            auto row_less = [&](const Candidate& a, const Candidate& b) {
                const Symbol* ra = scratch.data() + static_cast<std::size_t>(a.key) * m;
                const Symbol* rb = scratch.data() + static_cast<std::size_t>(b.key) * m;
                const int c = std::memcmp(ra, rb, m);
                return c != 0 ? c < 0 : a.source < b.source;
            };
            std::sort(cands.begin(), cands.end(), row_less);

            Step step;
            std::vector<Symbol> next_domain;
            step.offsets.push_back(0);
            for (std::size_t c = 0; c < cands.size(); ++c) {
                const Symbol* row = scratch.data() + static_cast<std::size_t>(cands[c].key) * m;
                const bool fresh = c == 0 || std::memcmp(row, scratch.data() + static_cast<std::size_t>(cands[c - 1].key) * m, m) != 0;
                if (fresh && c != 0) step.offsets.push_back(step.sources.size());
                if (fresh) next_domain.insert(next_domain.end(), row, row + m);
                step.sources.push_back(cands[c].source);
            }
            if (!cands.empty()) step.offsets.push_back(step.sources.size());
            domain = std::move(next_domain);
            domain_size = domain.size() / m;
            bytes += step.sources.size() * sizeof(std::uint32_t) + step.offsets.size() * sizeof(std::size_t);
            if (bytes > opts.memory_budget) throw BudgetExceeded("transfer sweep exceeds memory budget");
            steps_.push_back(std::move(step));
        }

        // After the last cell the domain is a subset of the admissible slices.
        final_ids_.reserve(domain_size);
        for (std::size_t i = 0; i < domain_size; ++i) {
            const std::size_t id = space.find(std::span<const Symbol>(domain.data() + i * m, m));
            if (id == space.size()) throw std::logic_error("sweep produced an inadmissible slice");
            final_ids_.push_back(static_cast<std::uint32_t>(id));
        }
    }

    std::size_t slice_count() const noexcept { return slices_; }

    /// y = T x, exactly as TransitionStructure::apply.
    std::vector<BigCount> apply(const std::vector<BigCount>& x, unsigned jobs = 1) const {
        if (x.size() != slices_) throw std::invalid_argument("vector length does not match slice count");
        std::vector<BigCount> cur = x;
        std::vector<BigCount> next;
        for (const Step& step : steps_) {
            const std::size_t targets = step.offsets.empty() ? 0 : step.offsets.size() - 1;
            next.assign(targets, 0);
            auto run = [&](std::size_t lo, std::size_t hi) {
                for (std::size_t t = lo; t < hi; ++t) {
                    BigCount& acc = next[t];
                    for (std::size_t e = step.offsets[t]; e < step.offsets[t + 1]; ++e) acc += cur[step.sources[e]];
                }
            };
            parallel_ranges(targets, jobs, run);
            cur.swap(next);
        }
        std::vector<BigCount> y(slices_, 0);
        for (std::size_t i = 0; i < final_ids_.size(); ++i) y[final_ids_[i]] = std::move(cur[i]);
        return y;
    }

private:
    struct Step {
        std::vector<std::size_t> offsets;  // CSR over targets in the next domain
        std::vector<std::uint32_t> sources;
    };

    template <typename Fn>
    static void parallel_ranges(std::size_t total, unsigned jobs, Fn&& fn) {
        if (jobs <= 1 || total < 4096) {
            fn(0, total);
            return;
        }
        std::vector<std::jthread> pool;
        const std::size_t chunk = (total + jobs - 1) / jobs;
        for (std::size_t lo = 0; lo < total; lo += chunk) pool.emplace_back(fn, lo, std::min(total, lo + chunk));
    }

    std::size_t slices_;
    std::vector<Step> steps_;
    std::vector<std::uint32_t> final_ids_;
};

inline SliceStateSpace build_slice_space(const SftModel& model, int n, const CountOptions& opts = {}) {
    return SliceStateSpace(model, n, opts);
}

/// Exact C_n via n-1 transfer products starting from the all-ones vector.
/// d = 1 delegates to the DFS counter.
inline BigCount count_via_transfer(const SftModel& model, int n, const CountOptions& opts = {}) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (model.dimension() == 1) return count_patterns_dfs(model, n, opts);
    const SliceStateSpace space(model, n, opts);
    const SweepPlan plan(model, space, opts);
    std::vector<BigCount> x(space.size(), 1);
    for (int step = 1; step < n; ++step) x = plan.apply(x, opts.jobs);
    BigCount total = 0;
    for (const BigCount& v : x) total += v;
    return total;
}

/// (n, C_n) for n = 1..n_max, each emitted as soon as it is known.
inline void upper_bound_stream(const SftModel& model, int n_max,
                               const std::function<void(int, const BigCount&)>& emit,
                               const CountOptions& opts = {}) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    for (int n = 1; n <= n_max; ++n) emit(n, count_via_transfer(model, n, opts));
}

inline std::vector<std::pair<int, BigCount>> upper_bound_stream(const SftModel& model, int n_max,
                                                                const CountOptions& opts = {}) {
    std::vector<std::pair<int, BigCount>> out;
    upper_bound_stream(model, n_max, [&](int n, const BigCount& c) { out.emplace_back(n, c); }, opts);
    return out;
}

}  // namespace symsft
