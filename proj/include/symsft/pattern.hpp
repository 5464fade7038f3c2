#pragma once

// Cube patterns on [0,n)^d: admissibility, coordinate flips, surface states,
// restriction, and the plain-text pattern format.
//
// Linear index of x = (x_0, ..., x_{d-1}) is sum_k x_k * n^(d-1-k), so axis 0
// is the most significant coordinate. Library axes are 0-based; the 1-based
// reflection x_k -> n+1-x_k becomes x_k -> n-1-x_k here.

#include "symsft/sft_model.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace symsft {

class CubeGeometry {
public:
    CubeGeometry(int n, int d) : n_(n), d_(d) {
        if (n < 1) throw std::invalid_argument("cube side must be >= 1");
        if (d < 1) throw std::invalid_argument("cube dimension must be >= 1");
        strides_.assign(static_cast<std::size_t>(d), 1);
        std::size_t total = 1;
        for (int k = d - 1; k >= 0; --k) {
            strides_[static_cast<std::size_t>(k)] = total;
            if (total > (std::size_t{1} << 40) / static_cast<std::size_t>(n))
                throw std::invalid_argument("cube too large: n^d exceeds 2^40 cells");
            total *= static_cast<std::size_t>(n);
        }
        size_ = total;
    }

    int side() const noexcept { return n_; }
    int dimension() const noexcept { return d_; }
    std::size_t size() const noexcept { return size_; }
    std::size_t stride(int axis) const noexcept { return strides_[static_cast<std::size_t>(axis)]; }

    /// Coordinate of `index` along `axis`.
    int coord(std::size_t index, int axis) const noexcept {
        return static_cast<int>((index / stride(axis)) % static_cast<std::size_t>(n_));
    }

    std::vector<int> decode(std::size_t index) const {
        std::vector<int> x(static_cast<std::size_t>(d_));
        for (int k = 0; k < d_; ++k) x[static_cast<std::size_t>(k)] = coord(index, k);
        return x;
    }

    std::size_t encode(std::span<const int> x) const {
        if (x.size() != static_cast<std::size_t>(d_)) throw std::invalid_argument("coordinate arity mismatch");
        std::size_t index = 0;
        for (int k = 0; k < d_; ++k) {
            const int xk = x[static_cast<std::size_t>(k)];
            if (xk < 0 || xk >= n_) throw std::out_of_range("coordinate outside the cube");
            index += static_cast<std::size_t>(xk) * stride(k);
        }
        return index;
    }

    /// Number of cells with some coordinate equal to n-1: n^d - (n-1)^d.
    std::size_t surface_size() const {
        std::size_t inner = 1;
        for (int k = 0; k < d_; ++k) inner *= static_cast<std::size_t>(n_ - 1);
        return size_ - inner;
    }

    bool operator==(const CubeGeometry& o) const noexcept { return n_ == o.n_ && d_ == o.d_; }

private:
    int n_;
    int d_;
    std::size_t size_ = 1;
    std::vector<std::size_t> strides_;
};

/// An assignment of symbol ids to the cells of [0,n)^d.
class CubePattern {
public:
    CubePattern(int n, int d, std::vector<Symbol> values) : geom_(n, d), values_(std::move(values)) {
        if (values_.size() != geom_.size())
            throw std::invalid_argument("pattern has " + std::to_string(values_.size()) + " values, cube needs " +
                                        std::to_string(geom_.size()));
    }

    /// Constant pattern.
    static CubePattern filled(int n, int d, Symbol s) {
        CubeGeometry g(n, d);
        return CubePattern(n, d, std::vector<Symbol>(g.size(), s));
    }

    int side() const noexcept { return geom_.side(); }
    int dimension() const noexcept { return geom_.dimension(); }
    const CubeGeometry& geometry() const noexcept { return geom_; }
    std::span<const Symbol> values() const noexcept { return values_; }
    Symbol operator[](std::size_t index) const { return values_[index]; }
    Symbol at(std::span<const int> x) const { return values_[geom_.encode(x)]; }

    bool operator==(const CubePattern& o) const { return geom_ == o.geom_ && values_ == o.values_; }
    auto operator<=>(const CubePattern& o) const {
        if (auto c = geom_.side() <=> o.geom_.side(); c != 0) return c;
        if (auto c = geom_.dimension() <=> o.geom_.dimension(); c != 0) return c;
        return values_ <=> o.values_;
    }

private:
    CubeGeometry geom_;
    std::vector<Symbol> values_;
};

/// Values on the cells where some coordinate equals n-1, in increasing
/// linear-index order. Only states of equal (n, d) are comparable.
struct SurfaceState {
    int n = 0;
    int d = 0;
    std::vector<Symbol> cells;

    /// Canonical bytes: side, dimension, then one byte per surface cell.
    std::string serialize() const {
        std::string out;
        out.reserve(8 + cells.size());
        for (int v : {n, d})
            for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<char>((v >> shift) & 0xFF));
        out.append(cells.begin(), cells.end());
        return out;
    }

    auto operator<=>(const SurfaceState&) const = default;
    bool operator==(const SurfaceState&) const = default;
};

/// Sorted linear indices of the surface cells of the cube.
inline std::vector<std::size_t> surface_cells(const CubeGeometry& g) {
    std::vector<std::size_t> out;
    out.reserve(g.surface_size());
    const int last = g.side() - 1;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (int k = 0; k < g.dimension(); ++k) {
            if (g.coord(i, k) == last) {
                out.push_back(i);
                break;
            }
        }
    }
    return out;
}

/// Full scan over every adjacent pair (x, x + e_k) inside the cube.
inline bool is_locally_admissible(const SftModel& model, const CubePattern& p) {
    if (p.dimension() != model.dimension())
        throw std::invalid_argument("pattern dimension " + std::to_string(p.dimension()) +
                                    " does not match model dimension " + std::to_string(model.dimension()));
    const CubeGeometry& g = p.geometry();
    const std::size_t q = model.sigma_size();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (p[i] >= q) return false;
        for (int k = 0; k < g.dimension(); ++k) {
            if (g.coord(i, k) + 1 < g.side() && !model.allowed(k, p[i], p[i + g.stride(k)])) return false;
        }
    }
    return true;
}

/// Reflection along `axis` (0-based): x_axis -> n-1-x_axis.
inline CubePattern flip(const CubePattern& p, int axis) {
    const CubeGeometry& g = p.geometry();
    if (axis < 0 || axis >= g.dimension())
        throw std::out_of_range("flip axis " + std::to_string(axis) + " outside [0," +
                                std::to_string(g.dimension()) + ")");
    std::vector<Symbol> out(g.size());
    const std::size_t stride = g.stride(axis);
    const int n = g.side();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const int x = g.coord(i, axis);
        const std::size_t mirrored = i - static_cast<std::size_t>(x) * stride + static_cast<std::size_t>(n - 1 - x) * stride;
        out[i] = p[mirrored];
    }
    return CubePattern(n, g.dimension(), std::move(out));
}

/// Applies the flip of every axis whose bit is set in t (bit k <-> axis k).
inline CubePattern compose_flips(const CubePattern& p, unsigned t) {
    const int d = p.dimension();
    if (d >= 32 || t >= (1U << d))
        throw std::out_of_range("flip mask " + std::to_string(t) + " outside [0, 2^" + std::to_string(d) + ")");
    // Single pass: each output cell reads its mirror image along all flipped axes.
    const CubeGeometry& g = p.geometry();
    std::vector<Symbol> out(g.size());
    const int n = g.side();
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::size_t src = 0;
        for (int k = 0; k < d; ++k) {
            int x = g.coord(i, k);
            if (t & (1U << k)) x = n - 1 - x;
            src += static_cast<std::size_t>(x) * g.stride(k);
        }
        out[i] = p[src];
    }
    return CubePattern(n, d, std::move(out));
}

inline SurfaceState surface_state(const CubePattern& p) {
    SurfaceState s{p.side(), p.dimension(), {}};
    for (std::size_t i : surface_cells(p.geometry())) s.cells.push_back(p[i]);
    return s;
}

/// Sub-pattern on [0,m)^d.
inline CubePattern restrict_to(const CubePattern& p, int m) {
    const CubeGeometry& g = p.geometry();
    if (m < 1 || m > g.side())
        throw std::out_of_range("restriction side " + std::to_string(m) + " outside [1," + std::to_string(g.side()) +
                                "]");
    CubeGeometry small(m, g.dimension());
    std::vector<Symbol> out(small.size());
    std::vector<int> x(static_cast<std::size_t>(g.dimension()));
    for (std::size_t j = 0; j < small.size(); ++j) {
        for (int k = 0; k < g.dimension(); ++k) x[static_cast<std::size_t>(k)] = small.coord(j, k);
        out[j] = p[g.encode(x)];
    }
    return CubePattern(m, g.dimension(), std::move(out));
}

// ---------------------------------------------------------------------------
// Text format: "d n" header, then n^d whitespace-separated symbol names in
// linear-index order. Output puts n names per line.

inline std::string format_pattern(const CubePattern& p, const Alphabet& alphabet) {
    std::ostringstream os;
    os << p.dimension() << ' ' << p.side() << '\n';
    const auto n = static_cast<std::size_t>(p.side());
    const std::size_t size = p.geometry().size();
    for (std::size_t i = 0; i < size; ++i) {
        os << alphabet.name(p[i]) << ((i + 1) % n == 0 ? '\n' : ' ');
        // Blank line between 2-d layers.
        if (p.dimension() >= 3 && (i + 1) % (n * n) == 0 && i + 1 < size) os << '\n';
    }
    return os.str();
}

inline CubePattern parse_pattern(std::istream& in, const Alphabet& alphabet) {
    int d = 0;
    int n = 0;
    if (!(in >> d >> n)) throw std::invalid_argument("pattern header must be \"d n\"");
    CubeGeometry g(n, d);
    std::vector<Symbol> values;
    values.reserve(g.size());
    std::string tok;
    while (values.size() < g.size() && in >> tok) {
        auto id = alphabet.id_of(tok);
        if (!id) throw std::invalid_argument("unknown symbol \"" + tok + "\" in pattern");
        values.push_back(*id);
    }
    if (values.size() != g.size())
        throw std::invalid_argument("pattern truncated: expected " + std::to_string(g.size()) + " symbols");
    return CubePattern(n, d, std::move(values));
}

inline CubePattern parse_pattern(const std::string& text, const Alphabet& alphabet) {
    std::istringstream in(text);
    return parse_pattern(in, alphabet);
}

}  // namespace symsft

template <>
struct std::hash<symsft::SurfaceState> {
    std::size_t operator()(const symsft::SurfaceState& s) const noexcept {
        return std::hash<std::string>{}(s.serialize());
    }
};
