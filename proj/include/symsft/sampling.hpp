#pragma once

// Seeded sampling of admissible patterns and of same-state pattern tuples
// (inputs for the gluing demos and property tests). Samples are not uniform
// unless the instance is small enough to enumerate.

#include "symsft/enumeration.hpp"
#include "symsft/errors.hpp"
#include "symsft/pattern.hpp"
#include "symsft/sft_model.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace symsft {

using Rng = std::mt19937_64;

namespace detail {

// Plain modulo keeps output identical across standard library implementations.
inline std::size_t pick(Rng& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

/// Randomized backtracking over the cells that are not pre-fixed. Every
/// placement is checked against all already-assigned neighbors in both
/// directions, so fixed cells anywhere in the cube are respected.
inline std::optional<CubePattern> random_completion(const SftModel& model, int n, std::vector<Symbol> values,
                                                    const std::vector<std::uint8_t>& fixed, Rng& rng,
                                                    std::uint64_t node_budget) {
    const CubeGeometry g(n, model.dimension());
    const std::size_t q = model.sigma_size();
    std::vector<std::size_t> free_cells;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (!fixed[i]) free_cells.push_back(i);
    std::vector<std::uint8_t> assigned = fixed;

    auto fits = [&](std::size_t i, Symbol v) {
        for (int k = 0; k < g.dimension(); ++k) {
            const int x = g.coord(i, k);
            if (x > 0) {
                const std::size_t j = i - g.stride(k);
                if (assigned[j] && !model.allowed(k, values[j], v)) return false;
            }
            if (x + 1 < n) {
                const std::size_t j = i + g.stride(k);
                if (assigned[j] && !model.allowed(k, v, values[j])) return false;
            }
        }
        return true;
    };

    // Per free cell: a shuffled symbol order and a cursor into it.
    std::vector<std::vector<Symbol>> order(free_cells.size());
    std::vector<std::size_t> cursor(free_cells.size(), 0);
    auto reshuffle = [&](std::size_t depth) {
        auto& o = order[depth];
        o.resize(q);
        std::iota(o.begin(), o.end(), Symbol{0});
        for (std::size_t i = q; i > 1; --i) std::swap(o[i - 1], o[pick(rng, i)]);
        cursor[depth] = 0;
    };

    if (free_cells.empty()) return CubePattern(n, model.dimension(), std::move(values));
    std::size_t depth = 0;
    reshuffle(0);
    std::uint64_t nodes = 0;
    while (true) {
        const std::size_t cell = free_cells[depth];
        bool placed = false;
        while (cursor[depth] < q) {
            const Symbol v = order[depth][cursor[depth]++];
            if (++nodes > node_budget) return std::nullopt;
            if (fits(cell, v)) {
                values[cell] = v;
                assigned[cell] = 1;
                placed = true;
                break;
            }
        }
        if (placed) {
            if (depth + 1 == free_cells.size()) return CubePattern(n, model.dimension(), std::move(values));
            ++depth;
            reshuffle(depth);
            continue;
        }
        if (depth == 0) return std::nullopt;
        --depth;
        assigned[free_cells[depth]] = 0;
    }
}

}  // namespace detail

/// A random admissible pattern, or nullopt if none was found within budget.
inline std::optional<CubePattern> random_admissible_pattern(const SftModel& model, int n, Rng& rng,
                                                            std::uint64_t node_budget = 10'000'000) {
    const CubeGeometry g(n, model.dimension());
    return detail::random_completion(model, n, std::vector<Symbol>(g.size(), 0),
                                     std::vector<std::uint8_t>(g.size(), 0), rng, node_budget);
}

/// A random admissible pattern sharing the surface state of `like`.
inline std::optional<CubePattern> random_with_state(const SftModel& model, const CubePattern& like, Rng& rng,
                                                    std::uint64_t node_budget = 10'000'000) {
    const CubeGeometry& g = like.geometry();
    std::vector<Symbol> values(like.values().begin(), like.values().end());
    std::vector<std::uint8_t> fixed(g.size(), 0);
    for (std::size_t i : surface_cells(g)) fixed[i] = 1;
    return detail::random_completion(model, like.side(), std::move(values), fixed, rng, node_budget);
}

/// `count` admissible patterns sharing one state.
///
/// Small instances are enumerated and grouped by state: a pattern is drawn
/// uniformly, then the rest uniformly (with replacement) from its state class.
/// Larger ones draw one pattern by randomized search and complete the
/// interior for the others. Throws ConstructionError if nothing is found.
inline std::vector<CubePattern> sample_same_state(const SftModel& model, int n, std::size_t count, Rng& rng,
                                                  std::uint64_t enumerate_limit = 200'000) {
    CountOptions small;
    small.node_budget = enumerate_limit;
    std::optional<std::vector<CubePattern>> all;
    try {
        all = enumerate_patterns(model, n, small);
    } catch (const BudgetExceeded&) {
    }
    std::vector<CubePattern> out;
    if (all) {
        if (all->empty()) throw ConstructionError("model has no admissible pattern of side " + std::to_string(n));
        std::map<SurfaceState, std::vector<std::size_t>> classes;
        for (std::size_t i = 0; i < all->size(); ++i) classes[surface_state((*all)[i])].push_back(i);
        const CubePattern& first = (*all)[detail::pick(rng, all->size())];
        const auto& members = classes.at(surface_state(first));
        out.push_back(first);
        while (out.size() < count) out.push_back((*all)[members[detail::pick(rng, members.size())]]);
        return out;
    }
    auto first = random_admissible_pattern(model, n, rng);
    if (!first) throw ConstructionError("could not sample an admissible pattern of side " + std::to_string(n));
    out.push_back(*first);
    while (out.size() < count) {
        auto next = random_with_state(model, *first, rng);
        out.push_back(next ? *next : *first);
    }
    return out;
}

}  // namespace symsft
