#pragma once

// Reflection-gluing of 2^d same-state patterns into a pattern of side 2n-1,
// and the constructions built on it: the periodic core, the tiling witness
// and the one-step extension.
//
// Block t (0 <= t < 2^d) is compose_flips(P_t, t) translated by (n-1) * b,
// where b_k is bit k of t. Adjacent blocks overlap on one hyperplane; the
// shared surface state makes them agree there.

#include "symsft/big.hpp"
#include "symsft/counting.hpp"
#include "symsft/enumeration.hpp"
#include "symsft/errors.hpp"
#include "symsft/pattern.hpp"
#include "symsft/sft_model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symsft {

namespace detail {

inline void check_glue_inputs(const SftModel& model, std::span<const CubePattern> patterns) {
    const int d = model.dimension();
    if (d >= 24) throw ConstructionError("dimension too large for 2^d blocks");
    const std::size_t blocks = std::size_t{1} << d;
    if (patterns.size() != blocks)
        throw ConstructionError("gluing needs exactly " + std::to_string(blocks) + " patterns, got " +
                                std::to_string(patterns.size()));
    const int n = patterns[0].side();
    for (std::size_t t = 0; t < blocks; ++t) {
        const CubePattern& p = patterns[t];
        if (p.dimension() != d || p.side() != n) throw ConstructionError("glue inputs differ in size");
        if (!is_locally_admissible(model, p))
            throw ConstructionError("glue input " + std::to_string(t) + " is not locally admissible");
    }
    const SurfaceState s0 = surface_state(patterns[0]);
    for (std::size_t t = 1; t < blocks; ++t)
        if (surface_state(patterns[t]) != s0)
            throw ConstructionError("glue input " + std::to_string(t) + " has a different state than input 0");
}

}  // namespace detail

/// Glues P_0..P_{2^d-1} (all admissible, one shared state) into side 2n-1.
///
/// Every cell covered by more than one block is checked for agreement, and
/// the result is checked for admissibility; either failure throws.
inline CubePattern glue(const SftModel& model, std::span<const CubePattern> patterns) {
    detail::check_glue_inputs(model, patterns);
    const int d = model.dimension();
    const int n = patterns[0].side();
    const int side = 2 * n - 1;
    const CubeGeometry out_geom(side, d);
    const CubeGeometry& in_geom = patterns[0].geometry();

    std::vector<Symbol> values(out_geom.size(), 0);
    std::vector<std::uint8_t> written(out_geom.size(), 0);
    for (unsigned t = 0; t < patterns.size(); ++t) {
        const CubePattern block = compose_flips(patterns[t], t);
        std::size_t offset = 0;
        for (int k = 0; k < d; ++k)
            if (t & (1U << k)) offset += static_cast<std::size_t>(n - 1) * out_geom.stride(k);
        for (std::size_t i = 0; i < in_geom.size(); ++i) {
            std::size_t target = offset;
            for (int k = 0; k < d; ++k) target += static_cast<std::size_t>(in_geom.coord(i, k)) * out_geom.stride(k);
            if (written[target]) {
                if (values[target] != block[i])
                    throw ConstructionError("blocks disagree on an overlap cell (block " + std::to_string(t) + ")");
            } else {
                values[target] = block[i];
                written[target] = 1;
            }
        }
    }
    CubePattern out(side, d, std::move(values));
    if (!is_locally_admissible(model, out)) throw ConstructionError("glued pattern is not locally admissible");
    return out;
}

/// Glue of 2^d copies of one pattern.
inline CubePattern glue_copies(const SftModel& model, const CubePattern& p) {
    const std::vector<CubePattern> copies(std::size_t{1} << model.dimension(), p);
    return glue(model, copies);
}

/// Face x_k = 0 equals face x_k = side-1 for every axis k.
inline bool faces_coincide(const CubePattern& q) {
    const CubeGeometry& g = q.geometry();
    const auto far = static_cast<std::size_t>(g.side() - 1);
    for (int k = 0; k < g.dimension(); ++k) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g.coord(i, k) == 0 && q[i] != q[i + far * g.stride(k)]) return false;
        }
    }
    return true;
}

/// Whether the pattern, repeated periodically, stays admissible across the
/// seams: for each axis k, the face x_k = L-1 may sit next to the face x_k = 0.
inline bool wrap_admissible(const SftModel& model, const CubePattern& core) {
    const CubeGeometry& g = core.geometry();
    const auto far = static_cast<std::size_t>(g.side() - 1);
    for (int k = 0; k < g.dimension(); ++k) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g.coord(i, k) != 0) continue;
            if (!model.allowed(k, core[i + far * g.stride(k)], core[i])) return false;
        }
    }
    return true;
}

struct PeriodicCore {
    CubePattern core;
    bool wrap_admissible;
};

/// Drops the last layer along every axis of a glued pattern (side 2n-1 ->
/// 2n-2) and reports whether the result tiles the lattice.
inline PeriodicCore periodic_core(const SftModel& model, const CubePattern& glued) {
    if (glued.side() < 3 || glued.side() % 2 == 0)
        throw ConstructionError("periodic core needs a glued pattern of odd side >= 3 (n >= 2)");
    CubePattern core = restrict_to(glued, glued.side() - 1);
    const bool ok = wrap_admissible(model, core);
    return PeriodicCore{std::move(core), ok};
}

/// `copies`^d translated copies of `core` placed side by side.
inline CubePattern tile(const CubePattern& core, int copies) {
    if (copies < 1) throw std::invalid_argument("tile needs at least one copy per axis");
    const int L = core.side();
    const int d = core.dimension();
    const CubeGeometry big(L * copies, d);
    std::vector<Symbol> values(big.size());
    std::vector<int> x(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < big.size(); ++i) {
        for (int k = 0; k < d; ++k) x[static_cast<std::size_t>(k)] = big.coord(i, k) % L;
        values[i] = core.at(x);
    }
    return CubePattern(L * copies, d, std::move(values));
}

/// Admissible pattern of side n+1 whose restriction to side n is p (n >= 2).
inline CubePattern extend_to_plus_one(const SftModel& model, const CubePattern& p) {
    if (p.side() < 2) throw ConstructionError("extension needs n >= 2");
    if (!is_locally_admissible(model, p)) throw ConstructionError("pattern to extend is not locally admissible");
    return restrict_to(glue_copies(model, p), p.side() + 1);
}

/// Side-by-side placement without flips (blocks translated by n * b); side 2n.
/// Used only to contrast with glue(): this can produce forbidden pairs.
inline CubePattern naive_concatenation(std::span<const CubePattern> patterns) {
    const int d = patterns[0].dimension();
    const int n = patterns[0].side();
    const CubeGeometry out_geom(2 * n, d);
    const CubeGeometry& in_geom = patterns[0].geometry();
    std::vector<Symbol> values(out_geom.size(), 0);
    for (unsigned t = 0; t < patterns.size(); ++t) {
        std::size_t offset = 0;
        for (int k = 0; k < d; ++k)
            if (t & (1U << k)) offset += static_cast<std::size_t>(n) * out_geom.stride(k);
        for (std::size_t i = 0; i < in_geom.size(); ++i) {
            std::size_t target = offset;
            for (int k = 0; k < d; ++k) target += static_cast<std::size_t>(in_geom.coord(i, k)) * out_geom.stride(k);
            values[target] = patterns[t][i];
        }
    }
    return CubePattern(2 * n, d, std::move(values));
}

struct KeyInequality {
    BigCount lhs;  // C_{2n-1}
    BigCount rhs;  // sum over states of (C_n^{(s)})^(2^d)
    bool holds;
};

/// Exact check of C_{2n-1} >= sum_s (C_n^{(s)})^(2^d).
inline KeyInequality verify_key_inequality(const SftModel& model, int n, Backend backend = Backend::Auto,
                                           const CountOptions& opts = {}) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const BigCount lhs = count_cube(model, 2 * n - 1, backend, opts);
    const BigCount rhs = count_by_state(model, n, opts).power_sum(std::uint64_t{1} << model.dimension());
    return KeyInequality{lhs, rhs, lhs >= rhs};
}

}  // namespace symsft
