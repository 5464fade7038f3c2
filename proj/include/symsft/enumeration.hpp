#pragma once

// Exact counting and enumeration of locally admissible cube patterns by
// depth-first search, plus the brute-force oracle used as ground truth.

#include "symsft/big.hpp"
#include "symsft/errors.hpp"
#include "symsft/pattern.hpp"
#include "symsft/sft_model.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace symsft {

struct CountOptions {
    /// Maximum number of search nodes (symbol placements) before giving up.
    std::uint64_t node_budget = 2'000'000'000ULL;
    /// Worker threads for counting. Results do not depend on this.
    unsigned jobs = 1;
    /// Approximate memory ceiling for the transfer backend's tables, in bytes.
    std::uint64_t memory_budget = 2ULL << 30;
};

namespace detail {

/// Cells are filled in linear-index order, so every already-placed neighbor of
/// cell i is a predecessor i - stride(k) along some axis k.
class CubeSearch {
public:
    CubeSearch(const SftModel& model, int n) : model_(model), geom_(n, model.dimension()) {
        preds_.resize(geom_.size());
        for (std::size_t i = 0; i < geom_.size(); ++i)
            for (int k = 0; k < geom_.dimension(); ++k)
                if (geom_.coord(i, k) > 0) preds_[i].push_back({i - geom_.stride(k), k});
    }

    const CubeGeometry& geometry() const noexcept { return geom_; }

    bool fits(const std::vector<Symbol>& values, std::size_t cell, Symbol v) const noexcept {
        for (const Pred& p : preds_[cell])
            if (!model_.allowed(p.axis, values[p.index], v)) return false;
        return true;
    }

    /// Visits every admissible completion of values[0, from) in lexicographic
    /// order. `budget` is decremented once per placement attempt that passes.
    template <typename Visit>
    void for_each_completion(std::vector<Symbol>& values, std::size_t from, std::atomic<std::int64_t>& budget,
                             Visit&& visit) const {
        const std::size_t size = geom_.size();
        if (from == size) {
            visit(values);
            return;
        }
        const auto q = static_cast<int>(model_.sigma_size());
        // next[i] = next symbol to try at cell i.
        std::vector<int> next(size + 1, 0);
        std::size_t cell = from;
        std::int64_t local = 0;
        auto charge = [&] {
            if (++local == 4096) {
                if (budget.fetch_sub(local) - local < 0) throw BudgetExceeded("DFS node budget exceeded");
                local = 0;
            }
        };
        while (true) {
            if (next[cell] >= q) {
                next[cell] = 0;
                if (cell == from) break;
                --cell;
                continue;
            }
            const auto v = static_cast<Symbol>(next[cell]++);
            if (!fits(values, cell, v)) continue;
            charge();
            values[cell] = v;
            if (cell + 1 == size) {
                visit(values);
            } else {
                ++cell;
            }
        }
        if (budget.fetch_sub(local) - local < 0) throw BudgetExceeded("DFS node budget exceeded");
    }

    /// Number of admissible completions; the last cell is tallied without
    /// descending into it.
    std::uint64_t count_completions(std::vector<Symbol>& values, std::size_t from,
                                    std::atomic<std::int64_t>& budget) const {
        const std::size_t size = geom_.size();
        if (from == size) return 1;
        const auto q = static_cast<Symbol>(model_.sigma_size() - 1);
        std::uint64_t total = 0;
        if (from + 1 == size) {
            for (int v = 0; v <= q; ++v) total += fits(values, from, static_cast<Symbol>(v)) ? 1 : 0;
            return total;
        }
        // Walk prefixes up to the penultimate cell, then count the last cell's options.
        const std::size_t last = size - 1;
        std::vector<int> next(size, 0);
        std::size_t cell = from;
        std::int64_t local = 0;
        const int qn = static_cast<int>(model_.sigma_size());
        while (true) {
            if (next[cell] >= qn) {
                next[cell] = 0;
                if (cell == from) break;
                --cell;
                continue;
            }
            const auto v = static_cast<Symbol>(next[cell]++);
            if (!fits(values, cell, v)) continue;
            values[cell] = v;
            if (++local == 4096) {
                if (budget.fetch_sub(local) - local < 0) throw BudgetExceeded("DFS node budget exceeded");
                local = 0;
            }
            if (cell + 1 == last) {
                for (int w = 0; w < qn; ++w) total += fits(values, last, static_cast<Symbol>(w)) ? 1 : 0;
            } else {
                ++cell;
            }
        }
        if (budget.fetch_sub(local) - local < 0) throw BudgetExceeded("DFS node budget exceeded");
        return total;
    }

private:
    struct Pred {
        std::size_t index;
        int axis;
    };
    const SftModel& model_;
    CubeGeometry geom_;
    std::vector<std::vector<Pred>> preds_;
};

}  // namespace detail

/// Exact C_n by DFS with pruning on the <= d already-placed neighbors.
///
/// With jobs > 1 the admissible assignments of a prefix of the first slice
/// are split across threads and the partial counts summed in prefix order.
inline BigCount count_patterns_dfs(const SftModel& model, int n, const CountOptions& opts = {}) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    detail::CubeSearch search(model, n);
    const std::size_t size = search.geometry().size();
    std::atomic<std::int64_t> budget(static_cast<std::int64_t>(std::min<std::uint64_t>(opts.node_budget, INT64_MAX)));
    std::vector<Symbol> values(size, 0);

    const unsigned jobs = std::max(1U, opts.jobs);
    if (jobs == 1 || size < 4) return BigCount(search.count_completions(values, 0, budget));

    // Prefix length: grow until there are enough tasks, capped at the first slice.
    const std::size_t slice = search.geometry().stride(0);
    std::vector<std::vector<Symbol>> prefixes;
    std::size_t depth = 1;
    for (; depth <= std::min(slice, size - 1); ++depth) {
        prefixes.clear();
        std::vector<Symbol> scratch(size, 0);
        // Enumerate admissible prefixes of length `depth`.
        std::vector<int> next(depth, 0);
        std::size_t cell = 0;
        const int q = static_cast<int>(model.sigma_size());
        while (true) {
            if (next[cell] >= q) {
                next[cell] = 0;
                if (cell == 0) break;
                --cell;
                continue;
            }
            const auto v = static_cast<Symbol>(next[cell]++);
            if (!search.fits(scratch, cell, v)) continue;
            scratch[cell] = v;
            if (cell + 1 == depth)
                prefixes.emplace_back(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(depth));
            else
                ++cell;
        }
        if (prefixes.size() >= 8 * jobs) break;
    }
    depth = prefixes.empty() ? 0 : prefixes.front().size();
    if (prefixes.empty()) return 0;

    std::vector<std::uint64_t> partial(prefixes.size(), 0);
    std::atomic<std::size_t> next_task{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        std::vector<Symbol> local(size, 0);
        try {
            for (std::size_t t; (t = next_task.fetch_add(1)) < prefixes.size();) {
                std::copy(prefixes[t].begin(), prefixes[t].end(), local.begin());
                partial[t] = search.count_completions(local, depth, budget);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next_task = prefixes.size();
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    BigCount total = 0;
    for (std::uint64_t c : partial) total += c;
    return total;
}

/// Calls `visit(const CubePattern&)` for every admissible pattern, in
/// lexicographic order of the value arrays.
template <typename Visit>
void for_each_pattern(const SftModel& model, int n, Visit&& visit, const CountOptions& opts = {}) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    detail::CubeSearch search(model, n);
    std::atomic<std::int64_t> budget(static_cast<std::int64_t>(std::min<std::uint64_t>(opts.node_budget, INT64_MAX)));
    std::vector<Symbol> values(search.geometry().size(), 0);
    search.for_each_completion(values, 0, budget, [&](const std::vector<Symbol>& v) {
        visit(CubePattern(n, model.dimension(), v));
    });
}

inline std::vector<CubePattern> enumerate_patterns(const SftModel& model, int n, const CountOptions& opts = {}) {
    std::vector<CubePattern> out;
    for_each_pattern(model, n, [&](const CubePattern& p) { out.push_back(p); }, opts);
    return out;
}

/// C_n^{(s)} for every state s that occurs. Zero-count states are absent.
class StateCountTable {
public:
    StateCountTable(int n, int d) : n_(n), d_(d) {}

    int side() const noexcept { return n_; }
    int dimension() const noexcept { return d_; }
    const std::map<SurfaceState, BigCount>& counts() const noexcept { return counts_; }
    std::size_t state_count() const noexcept { return counts_.size(); }

    void add(const SurfaceState& s, const BigCount& c) {
        if (s.n != n_ || s.d != d_) throw std::invalid_argument("state size does not match table");
        if (c != 0) counts_[s] += c;
    }

    BigCount total() const {
        BigCount sum = 0;
        for (const auto& [s, c] : counts_) sum += c;
        return sum;
    }

    /// sum_s (C^{(s)})^p
    BigCount power_sum(std::uint64_t p) const {
        BigCount sum = 0;
        for (const auto& [s, c] : counts_) sum += pow_big(c, p);
        return sum;
    }

private:
    int n_;
    int d_;
    std::map<SurfaceState, BigCount> counts_;
};

inline StateCountTable count_by_state(const SftModel& model, int n, const CountOptions& opts = {}) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    detail::CubeSearch search(model, n);
    const std::vector<std::size_t> surface = surface_cells(search.geometry());
    std::atomic<std::int64_t> budget(static_cast<std::int64_t>(std::min<std::uint64_t>(opts.node_budget, INT64_MAX)));
    std::vector<Symbol> values(search.geometry().size(), 0);
    std::map<std::vector<Symbol>, std::uint64_t> tally;
    std::vector<Symbol> key(surface.size());
    search.for_each_completion(values, 0, budget, [&](const std::vector<Symbol>& v) {
        for (std::size_t j = 0; j < surface.size(); ++j) key[j] = v[surface[j]];
        ++tally[key];
    });
    StateCountTable table(n, model.dimension());
    for (auto& [cells, c] : tally) table.add(SurfaceState{n, model.dimension(), cells}, BigCount(c));
    return table;
}

/// Ground truth: tests every assignment in Sigma^{[1,n]^d} with the full-scan
/// admissibility check. Refuses instances above `max_assignments`.
inline BigCount oracle_count_naive(const SftModel& model, int n, std::uint64_t max_assignments = 1ULL << 24) {
    CubeGeometry g(n, model.dimension());
    const std::uint64_t q = model.sigma_size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (total > max_assignments / q) throw BudgetExceeded("oracle cap exceeded: |Sigma|^(n^d) too large");
        total *= q;
    }
    std::vector<Symbol> values(g.size(), 0);
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < total; ++a) {
        if (is_locally_admissible(model, CubePattern(n, model.dimension(), values))) ++count;
        // Odometer increment, last cell fastest.
        for (std::size_t i = g.size(); i-- > 0;) {
            if (++values[i] < q) break;
            values[i] = 0;
        }
    }
    return BigCount(count);
}

}  // namespace symsft
