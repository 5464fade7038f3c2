#pragma once

// Symmetric nearest-neighbor subshift models: alphabet, per-axis forbidden
// adjacent pairs, validation, symmetrization and the built-in families.

#include "symsft/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace symsft {

/// Dense symbol id. Inner loops never touch symbol names.
using Symbol = std::uint8_t;
inline constexpr std::size_t kMaxAlphabetSize = 256;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
        if (symbols_.empty()) throw ModelError("alphabet must contain at least one symbol");
        if (symbols_.size() > kMaxAlphabetSize)
            throw ModelError("alphabet has " + std::to_string(symbols_.size()) +
                             " symbols; at most 256 are supported");
        std::vector<std::string> sorted = symbols_;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) throw ModelError("duplicate symbol \"" + *dup + "\" in alphabet");
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    const std::string& name(Symbol id) const { return symbols_.at(id); }

    std::optional<Symbol> id_of(std::string_view name) const {
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i] == name) return static_cast<Symbol>(i);
        return std::nullopt;
    }

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> symbols_;
};

/// Ordered pair (value at x, value at x + e_axis).
using SymbolPair = std::pair<Symbol, Symbol>;
using ForbiddenSet = std::set<SymbolPair>;

/// A missing reversed pair: (a, b) is forbidden along `axis` but (b, a) is not.
/// Axis is 1-based here, as in model files.
struct SymmetryViolation {
    int axis;
    Symbol a;
    Symbol b;
    bool operator==(const SymmetryViolation&) const = default;
};

/// Immutable nearest-neighbor SFT model.
///
/// Axes are 0-based in this API. Construction does not require symmetry;
/// callers that need it check validate_symmetry() or go through parse_model().
class SftModel {
public:
    SftModel(int dimension, Alphabet alphabet, std::vector<ForbiddenSet> forbidden)
        : dimension_(dimension), alphabet_(std::move(alphabet)), forbidden_(std::move(forbidden)) {
        if (dimension_ < 1) throw ModelError("dimension must be >= 1, got " + std::to_string(dimension_));
        if (forbidden_.size() != static_cast<std::size_t>(dimension_))
            throw ModelError("expected " + std::to_string(dimension_) + " forbidden sets, got " +
                             std::to_string(forbidden_.size()));
        const std::size_t q = alphabet_.size();
        allowed_.assign(forbidden_.size(), std::vector<std::uint8_t>(q * q, 1));
        for (std::size_t axis = 0; axis < forbidden_.size(); ++axis) {
            for (auto [a, b] : forbidden_[axis]) {
                if (a >= q || b >= q) throw ModelError("forbidden pair references a symbol outside the alphabet");
                allowed_[axis][a * q + b] = 0;
            }
        }
    }

    int dimension() const noexcept { return dimension_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t sigma_size() const noexcept { return alphabet_.size(); }
    const ForbiddenSet& forbidden(int axis) const { return forbidden_.at(static_cast<std::size_t>(axis)); }
    const std::vector<ForbiddenSet>& forbidden_sets() const noexcept { return forbidden_; }

    /// O(1) compatibility lookup: may `a` at x sit next to `b` at x + e_axis?
    bool allowed(int axis, Symbol a, Symbol b) const noexcept {
        return allowed_[static_cast<std::size_t>(axis)][a * alphabet_.size() + b] != 0;
    }

    /// The model restricted to its first `dims` axes (used for slice spaces).
    SftModel leading_axes(int dims) const {
        if (dims < 1 || dims > dimension_) throw std::invalid_argument("leading_axes: bad dimension");
        return SftModel(dims, alphabet_, std::vector<ForbiddenSet>(forbidden_.begin(), forbidden_.begin() + dims));
    }

    bool operator==(const SftModel& other) const {
        return dimension_ == other.dimension_ && alphabet_ == other.alphabet_ && forbidden_ == other.forbidden_;
    }

private:
    int dimension_;
    Alphabet alphabet_;
    std::vector<ForbiddenSet> forbidden_;
    std::vector<std::vector<std::uint8_t>> allowed_;
};

inline std::vector<SymmetryViolation> validate_symmetry(const SftModel& model) {
    std::vector<SymmetryViolation> out;
    for (int axis = 0; axis < model.dimension(); ++axis) {
        const ForbiddenSet& f = model.forbidden(axis);
        for (auto [a, b] : f)
            if (!f.contains({b, a})) out.push_back({axis + 1, a, b});
    }
    return out;
}

inline SftModel symmetrize(const SftModel& model) {
    std::vector<ForbiddenSet> closed = model.forbidden_sets();
    for (ForbiddenSet& f : closed) {
        ForbiddenSet reversed;
        for (auto [a, b] : f) reversed.insert({b, a});
        f.insert(reversed.begin(), reversed.end());
    }
    return SftModel(model.dimension(), model.alphabet(), std::move(closed));
}

inline std::string describe(const SymmetryViolation& v, const Alphabet& alphabet) {
    return "axis " + std::to_string(v.axis) + ": (" + alphabet.name(v.a) + "," + alphabet.name(v.b) +
           ") is forbidden but (" + alphabet.name(v.b) + "," + alphabet.name(v.a) + ") is not";
}

// ---------------------------------------------------------------------------
// Model files

inline SftModel parse_model(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ModelError(std::string("model syntax error: ") + e.what());
    }
    if (!doc.is_object()) throw ModelError("model document must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        static const std::set<std::string> known{"dimension", "alphabet", "forbidden", "symmetrize", "name",
                                                 "description"};
        if (!known.contains(it.key())) throw ModelError("unknown key \"" + it.key() + "\" in model document");
    }
    for (const char* key : {"dimension", "alphabet", "forbidden"})
        if (!doc.contains(key)) throw ModelError(std::string("missing required key \"") + key + "\"");

    if (!doc["dimension"].is_number_integer()) throw ModelError("\"dimension\" must be an integer");
    const auto d = doc["dimension"].get<long long>();
    if (d < 1) throw ModelError("dimension must be >= 1, got " + std::to_string(d));

    if (!doc["alphabet"].is_array()) throw ModelError("\"alphabet\" must be an array of strings");
    std::vector<std::string> names;
    for (const json& s : doc["alphabet"]) {
        if (!s.is_string()) throw ModelError("\"alphabet\" entries must be strings");
        names.push_back(s.get<std::string>());
    }
    Alphabet alphabet(std::move(names));

    const json& fb = doc["forbidden"];
    if (!fb.is_array()) throw ModelError("\"forbidden\" must be an array of per-axis pair lists");
    if (fb.size() != static_cast<std::size_t>(d))
        throw ModelError("\"forbidden\" has " + std::to_string(fb.size()) + " axis entries but dimension is " +
                         std::to_string(d) + " (axis index out of range)");
    std::vector<ForbiddenSet> forbidden(static_cast<std::size_t>(d));
    for (std::size_t axis = 0; axis < fb.size(); ++axis) {
        if (!fb[axis].is_array()) throw ModelError("forbidden[" + std::to_string(axis) + "] must be an array");
        for (const json& pair : fb[axis]) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
                throw ModelError("axis " + std::to_string(axis + 1) + ": forbidden pairs must be 2-element string arrays");
            Symbol ids[2];
            for (int k = 0; k < 2; ++k) {
                const auto name = pair[k].get<std::string>();
                auto id = alphabet.id_of(name);
                if (!id) throw ModelError("axis " + std::to_string(axis + 1) + ": unknown symbol \"" + name + "\"");
                ids[k] = *id;
            }
            forbidden[axis].insert({ids[0], ids[1]});
        }
    }

    bool want_symmetrize = false;
    if (doc.contains("symmetrize")) {
        if (!doc["symmetrize"].is_boolean()) throw ModelError("\"symmetrize\" must be a boolean");
        want_symmetrize = doc["symmetrize"].get<bool>();
    }

    SftModel model(static_cast<int>(d), std::move(alphabet), std::move(forbidden));
    if (want_symmetrize) return symmetrize(model);
    auto violations = validate_symmetry(model);
    if (!violations.empty())
        throw ModelError("model is not symmetric: " + describe(violations.front(), model.alphabet()) +
                         " (set \"symmetrize\": true to close it)");
    return model;
}

inline nlohmann::json model_to_json(const SftModel& model) {
    nlohmann::json doc;
    doc["dimension"] = model.dimension();
    doc["alphabet"] = model.alphabet().symbols();
    nlohmann::json fb = nlohmann::json::array();
    for (int axis = 0; axis < model.dimension(); ++axis) {
        nlohmann::json pairs = nlohmann::json::array();
        for (auto [a, b] : model.forbidden(axis))
            pairs.push_back({model.alphabet().name(a), model.alphabet().name(b)});
        fb.push_back(std::move(pairs));
    }
    doc["forbidden"] = std::move(fb);
    return doc;
}

// ---------------------------------------------------------------------------
// Built-in families

/// Hard squares: alphabet {0,1}, no two adjacent 1s along any axis.
inline SftModel hard_square(int d) {
    if (d < 1) throw ModelError("dimension must be >= 1");
    return SftModel(d, Alphabet({"0", "1"}), std::vector<ForbiddenSet>(static_cast<std::size_t>(d), {{1, 1}}));
}

/// Proper q-colorings: adjacent sites never share a color.
inline SftModel coloring(int d, int q) {
    if (d < 1) throw ModelError("dimension must be >= 1");
    if (q < 1) throw ModelError("coloring needs at least one color, got " + std::to_string(q));
    if (static_cast<std::size_t>(q) > kMaxAlphabetSize) throw ModelError("too many colors");
    std::vector<std::string> names;
    ForbiddenSet diag;
    for (int c = 0; c < q; ++c) {
        names.push_back(std::to_string(c));
        diag.insert({static_cast<Symbol>(c), static_cast<Symbol>(c)});
    }
    return SftModel(d, Alphabet(std::move(names)), std::vector<ForbiddenSet>(static_cast<std::size_t>(d), diag));
}

/// Parses "hard-square" or "coloring:q".
inline SftModel builtin_model(std::string_view text, int d) {
    const auto colon = text.find(':');
    const std::string name(text.substr(0, colon));
    const std::string param = colon == std::string_view::npos ? "" : std::string(text.substr(colon + 1));
    if (name == "hard-square") {
        if (!param.empty()) throw ModelError("hard-square takes no parameter");
        return hard_square(d);
    }
    if (name == "coloring") {
        if (param.empty()) throw ModelError("coloring needs a color count, e.g. coloring:3");
        int q = 0;
        try {
            std::size_t used = 0;
            q = std::stoi(param, &used);
            if (used != param.size()) throw std::invalid_argument(param);
        } catch (const std::exception&) {
            throw ModelError("bad color count \"" + param + "\"");
        }
        return coloring(d, q);
    }
    throw ModelError("unknown builtin model \"" + name + "\" (expected hard-square or coloring:q)");
}

}  // namespace symsft
