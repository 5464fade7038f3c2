#pragma once

#include <stdexcept>
#include <string>

namespace symsft {

/// Malformed or invalid model document.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A counting or enumeration backend ran past its configured node or memory
/// budget. Exact answers only: no partial result accompanies this error.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A reflection-gluing precondition failed (inadmissible input, mismatched
/// states) or a construction certificate did not hold.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace symsft
