#pragma once

#include "symsft/enumeration.hpp"
#include "symsft/transfer_matrix.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace symsft {

enum class Backend { Auto, Dfs, Transfer };

inline Backend parse_backend(std::string_view name) {
    if (name == "auto") return Backend::Auto;
    if (name == "dfs") return Backend::Dfs;
    if (name == "transfer") return Backend::Transfer;
    throw std::invalid_argument("unknown backend \"" + std::string(name) + "\" (expected auto, dfs or transfer)");
}

/// C_n with the requested backend. Auto uses the transfer backend for d >= 2
/// and falls back to DFS when the slice tables do not fit the memory budget.
inline BigCount count_cube(const SftModel& model, int n, Backend backend = Backend::Auto,
                           const CountOptions& opts = {}) {
    switch (backend) {
        case Backend::Dfs:
            return count_patterns_dfs(model, n, opts);
        case Backend::Transfer:
            return count_via_transfer(model, n, opts);
        case Backend::Auto:
            break;
    }
    if (model.dimension() == 1) return count_patterns_dfs(model, n, opts);
    try {
        return count_via_transfer(model, n, opts);
    } catch (const BudgetExceeded&) {
        return count_patterns_dfs(model, n, opts);
    }
}

}  // namespace symsft
