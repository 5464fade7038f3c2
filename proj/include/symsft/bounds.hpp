#pragma once

// Entropy bounds from exact cube counts.
//
// For every n >= 1:
//   (ln C_{n+1} - q_d(n) ln|S|) / n^d  <=  h  <=  ln C_n / n^d
// with q_d(n) = (2^d - 1) * sum_{k<d} binom(d,k) / (2^d - 2^k) * n^k.
// q_d is kept exact; logs are taken only when a row is assembled.

#include "symsft/big.hpp"
#include "symsft/counting.hpp"
#include "symsft/reflection_glue.hpp"
#include "symsft/sft_model.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace symsft {

inline constexpr double kDoublingTolerance = 1e-12;
inline constexpr double kGapTolerance = 1e-12;

namespace detail {

inline BigCount binomial(int n, int k) {
    BigCount r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigCount pow2(int e) { return BigCount(1) << e; }

inline void check_dimension(int d) {
    if (d < 1 || d > 62) throw std::invalid_argument("dimension must be in [1, 62]");
}

}  // namespace detail

/// Coefficients c_k of q_d(n) = sum_k c_k n^k, k = 0..d-1.
inline std::vector<ExactRational> q_coefficients(int d) {
    detail::check_dimension(d);
    const BigCount full = detail::pow2(d);
    std::vector<ExactRational> c;
    for (int k = 0; k < d; ++k)
        c.emplace_back(ExactRational(detail::binomial(d, k) * (full - 1), full - detail::pow2(k)));
    return c;
}

inline ExactRational q_poly(int d, const BigCount& n) {
    if (n < 0) throw std::invalid_argument("q_poly needs n >= 0");
    ExactRational sum = 0;
    BigCount power = 1;
    for (const ExactRational& ck : q_coefficients(d)) {
        sum += ck * power;
        power *= n;
    }
    return sum;
}

inline ExactRational q_poly(int d, std::int64_t n) { return q_poly(d, BigCount(n)); }

/// q_d(2n) + (2^d - 1)((n+1)^d - n^d) == 2^d q_d(n), exactly.
inline bool verify_qd_recurrence(int d, std::int64_t n) {
    detail::check_dimension(d);
    const BigCount nn(n);
    const BigCount full = detail::pow2(d);
    const ExactRational lhs = q_poly(d, 2 * nn) + ExactRational((full - 1) * (pow_big(nn + 1, static_cast<unsigned>(d)) -
                                                                              pow_big(nn, static_cast<unsigned>(d))));
    const ExactRational rhs = ExactRational(full) * q_poly(d, nn);
    return lhs == rhs;
}

/// d (2 - 2^(1-d)): the coefficient of n^(d-1) in q_d(n).
inline ExactRational leading_gap_coefficient(int d) {
    detail::check_dimension(d);
    return ExactRational(d) * (ExactRational(2) - ExactRational(BigCount(1), detail::pow2(d - 1)));
}

/// (2^d - 1)((n+1)^d - n^d): the exponent of |Sigma| in the power-mean bound.
inline BigCount surface_exponent(int d, std::int64_t n) {
    const BigCount nn(n);
    return (detail::pow2(d) - 1) * (pow_big(nn + 1, static_cast<unsigned>(d)) - pow_big(nn, static_cast<unsigned>(d)));
}

// ---------------------------------------------------------------------------
// Rows

struct RowChecks {
    std::optional<bool> key_inequality;
    std::optional<bool> power_mean;
    std::optional<bool> doubling;
};

/// One n of the bracket. Log values are in nats; -inf follows the empty-
/// subshift convention ln 0 = -inf.
struct BoundsRow {
    int n = 0;
    std::optional<BigCount> c_n;
    std::optional<BigCount> c_n1;
    ExactRational q;
    std::optional<double> upper;
    std::optional<double> lower;
    double gap_bound = 0.0;
    RowChecks checks;
    std::string note;  // why a count is missing, if it is

    bool upper_is_neg_inf() const { return upper && std::isinf(*upper); }
    bool lower_is_neg_inf() const { return lower && std::isinf(*lower); }
};

inline double cube_volume(int n, int d) { return std::pow(static_cast<double>(n), d); }

inline BoundsRow entropy_bounds(const SftModel& model, int n, const std::optional<BigCount>& c_n,
                                const std::optional<BigCount>& c_n1) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const int d = model.dimension();
    BoundsRow row;
    row.n = n;
    row.c_n = c_n;
    row.c_n1 = c_n1;
    row.q = q_poly(d, n);
    const long double volume = std::pow(static_cast<long double>(n), d);
    const long double ln_sigma = std::log(static_cast<long double>(model.sigma_size()));
    const long double q = to_long_double(row.q);
    if (c_n) row.upper = static_cast<double>(ln_big(*c_n) / volume);
    if (c_n1) row.lower = static_cast<double>((ln_big(*c_n1) - q * ln_sigma) / volume);
    row.gap_bound = static_cast<double>(q * ln_sigma / volume);
    return row;
}

struct PowerMeanCheck {
    BigCount lhs;       // C_{2n+1} * |Sigma|^exponent
    BigCount rhs;       // C_{n+1}^(2^d)
    BigCount exponent;  // (2^d - 1)((n+1)^d - n^d)
    bool holds;
};

/// C_{2n+1} |Sigma|^((2^d-1)((n+1)^d-n^d)) >= C_{n+1}^(2^d), exactly.
inline PowerMeanCheck power_mean_check(const SftModel& model, int n, const BigCount& c_n1, const BigCount& c_2n1) {
    const int d = model.dimension();
    PowerMeanCheck r;
    r.exponent = surface_exponent(d, n);
    r.lhs = c_2n1 * pow_big(BigCount(model.sigma_size()), r.exponent.convert_to<std::uint64_t>());
    r.rhs = pow_big(c_n1, std::uint64_t{1} << d);
    r.holds = r.lhs >= r.rhs;
    return r;
}

inline PowerMeanCheck verify_power_mean_bound(const SftModel& model, int n, Backend backend = Backend::Auto,
                                              const CountOptions& opts = {}) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return power_mean_check(model, n, count_cube(model, n + 1, backend, opts),
                            count_cube(model, 2 * n + 1, backend, opts));
}

struct DoublingCheck {
    long double ln_v_n;    // (ln C_{n+1} - q_d(n) ln|S|) / n^d
    long double ln_v_2n;   // (ln C_{2n+1} - q_d(2n) ln|S|) / (2n)^d
    std::optional<bool> exact;  // integer comparison after clearing the roots
    bool holds;
};

/// v_{2n} >= v_n. The log comparison allows kDoublingTolerance; when the
/// integers are small enough the exact comparison decides.
inline DoublingCheck doubling_check(const SftModel& model, int n, const BigCount& c_n1, const BigCount& c_2n1,
                                    std::size_t exact_bit_cap = std::size_t{1} << 22) {
    const int d = model.dimension();
    const long double ln_sigma = std::log(static_cast<long double>(model.sigma_size()));
    const long double vol_n = std::pow(static_cast<long double>(n), d);
    const long double vol_2n = std::pow(static_cast<long double>(2 * n), d);
    DoublingCheck r;
    r.ln_v_n = (ln_big(c_n1) - to_long_double(q_poly(d, n)) * ln_sigma) / vol_n;
    r.ln_v_2n = (ln_big(c_2n1) - to_long_double(q_poly(d, 2 * n)) * ln_sigma) / vol_2n;

    if (c_n1 == 0) {
        r.holds = true;  // v_n = -inf
        r.exact = true;
        return r;
    }
    if (c_2n1 == 0) {
        r.holds = false;
        r.exact = false;
        return r;
    }
    // Raising both sides to the (2n)^d power leaves
    //   C_{2n+1} |Sigma|^(2^d q(n) - q(2n)) >= C_{n+1}^(2^d),
    // and 2^d q(n) - q(2n) is an integer.
    const ExactRational e = ExactRational(detail::pow2(d)) * q_poly(d, n) - q_poly(d, 2 * n);
    const std::size_t bits = (boost::multiprecision::msb(c_n1) + 1) << d;
    if (boost::multiprecision::denominator(e) == 1 && bits <= exact_bit_cap) {
        const BigCount exponent = boost::multiprecision::numerator(e);
        const BigCount lhs = c_2n1 * pow_big(BigCount(model.sigma_size()), exponent.convert_to<std::uint64_t>());
        r.exact = lhs >= pow_big(c_n1, std::uint64_t{1} << d);
    }
    const bool log_ok = static_cast<double>(r.ln_v_2n - r.ln_v_n) >= -kDoublingTolerance;
    r.holds = r.exact ? *r.exact : log_ok;
    return r;
}

inline DoublingCheck verify_doubling_monotonicity(const SftModel& model, int n, Backend backend = Backend::Auto,
                                                  const CountOptions& opts = {}) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return doubling_check(model, n, count_cube(model, n + 1, backend, opts), count_cube(model, 2 * n + 1, backend, opts));
}

// ---------------------------------------------------------------------------
// Reports

struct ReportOptions {
    Backend backend = Backend::Auto;
    CountOptions count;
    /// Node budget for the per-state enumeration behind the key inequality.
    std::uint64_t state_node_budget = 20'000'000;
};

struct DoublingEntry {
    int n;
    DoublingCheck check;
};

struct ConvergenceReport {
    nlohmann::json model;
    int d = 0;
    std::size_t sigma_size = 0;
    std::vector<BoundsRow> rows;
    std::vector<DoublingEntry> doubling;
};

/// Rows for n = 1..n_max. A count that exceeds its budget leaves the affected
/// fields empty instead of aborting the report.
inline ConvergenceReport build_report(const SftModel& model, int n_max, const ReportOptions& opts = {}) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    ConvergenceReport report;
    report.model = model_to_json(model);
    report.d = model.dimension();
    report.sigma_size = model.sigma_size();

    std::map<int, std::optional<BigCount>> counts;
    std::map<int, std::string> failures;
    for (int n = 1; n <= n_max + 1; ++n) {
        try {
            counts[n] = count_cube(model, n, opts.backend, opts.count);
        } catch (const BudgetExceeded& e) {
            counts[n] = std::nullopt;
            failures[n] = e.what();
        }
    }
    auto count = [&](int n) -> std::optional<BigCount> {
        auto it = counts.find(n);
        return it == counts.end() ? std::nullopt : it->second;
    };

    for (int n = 1; n <= n_max; ++n) {
        BoundsRow row = entropy_bounds(model, n, count(n), count(n + 1));
        for (int m : {n, n + 1})
            if (failures.contains(m)) row.note = "C_" + std::to_string(m) + ": " + failures[m];

        if (auto big = count(2 * n - 1)) {
            try {
                CountOptions state_opts = opts.count;
                state_opts.node_budget = opts.state_node_budget;
                const BigCount rhs = count_by_state(model, n, state_opts).power_sum(std::uint64_t{1} << report.d);
                row.checks.key_inequality = *big >= rhs;
            } catch (const BudgetExceeded&) {
            }
        }
        auto c_n1 = count(n + 1);
        auto c_2n1 = count(2 * n + 1);
        if (c_n1 && c_2n1) {
            row.checks.power_mean = power_mean_check(model, n, *c_n1, *c_2n1).holds;
            DoublingCheck dc = doubling_check(model, n, *c_n1, *c_2n1);
            row.checks.doubling = dc.holds;
            report.doubling.push_back({n, dc});
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Rendering. Values are stored in nats; base 2 rescales on output only.

enum class LogBase { E, Two };

inline double rescale(double nats, LogBase base) {
    return base == LogBase::Two ? nats / std::log(2.0) : nats;
}

inline nlohmann::json report_to_json(const ConvergenceReport& report, LogBase base = LogBase::E) {
    using nlohmann::json;
    auto number = [&](const std::optional<double>& v) -> json {
        if (!v) return nullptr;
        if (std::isinf(*v)) return *v < 0 ? "-inf" : "inf";
        return rescale(*v, base);
    };
    auto flag = [](const std::optional<bool>& b) -> json { return b ? json(*b) : json(nullptr); };
    json doc;
    doc["model"] = report.model;
    doc["d"] = report.d;
    doc["sigma_size"] = report.sigma_size;
    doc["log_base"] = base == LogBase::Two ? "2" : "e";
    json rows = json::array();
    for (const BoundsRow& r : report.rows) {
        json row;
        row["n"] = r.n;
        row["C_n"] = r.c_n ? json(to_decimal(*r.c_n)) : json(nullptr);
        row["C_n_plus_1"] = r.c_n1 ? json(to_decimal(*r.c_n1)) : json(nullptr);
        row["q_d_n"] = to_fraction_string(r.q);
        row["upper"] = number(r.upper);
        row["lower"] = number(r.lower);
        row["gap_bound"] = rescale(r.gap_bound, base);
        row["checks"] = {{"key_inequality", flag(r.checks.key_inequality)},
                         {"power_mean", flag(r.checks.power_mean)},
                         {"doubling", flag(r.checks.doubling)}};
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

namespace detail {

inline std::string fixed6(const std::optional<double>& v, LogBase base) {
    if (!v) return "n/a";
    if (std::isinf(*v)) return *v < 0 ? "-inf" : "inf";
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << rescale(*v, base);
    return os.str();
}

inline std::string full_precision(const std::optional<double>& v, LogBase base) {
    if (!v) return "";
    if (std::isinf(*v)) return *v < 0 ? "-inf" : "inf";
    std::ostringstream os;
    os << std::setprecision(17) << rescale(*v, base);
    return os.str();
}

inline std::string flag_text(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; }

}  // namespace detail

inline std::string report_to_csv(const ConvergenceReport& report, LogBase base = LogBase::E) {
    std::ostringstream os;
    os << "n,C_n,C_n_plus_1,q_d_n,upper,lower,gap_bound,key_inequality,power_mean,doubling\n";
    for (const BoundsRow& r : report.rows) {
        os << r.n << ',' << (r.c_n ? to_decimal(*r.c_n) : "") << ',' << (r.c_n1 ? to_decimal(*r.c_n1) : "") << ','
           << to_fraction_string(r.q) << ',' << detail::full_precision(r.upper, base) << ','
           << detail::full_precision(r.lower, base) << ',' << detail::full_precision(r.gap_bound, base) << ','
           << detail::flag_text(r.checks.key_inequality) << ',' << detail::flag_text(r.checks.power_mean) << ','
           << detail::flag_text(r.checks.doubling) << '\n';
    }
    return os.str();
}

inline std::string report_to_table(const ConvergenceReport& report, LogBase base = LogBase::E) {
    std::ostringstream os;
    os << "d = " << report.d << ", |Sigma| = " << report.sigma_size << ", log base "
       << (base == LogBase::Two ? "2" : "e") << '\n';
    os << std::setw(4) << "n" << "  " << std::setw(28) << "C_n" << "  " << std::setw(10) << "lower" << "  "
       << std::setw(10) << "upper" << "  " << std::setw(10) << "gap_bound" << '\n';
    for (const BoundsRow& r : report.rows) {
        std::string c = r.c_n ? to_decimal(*r.c_n) : "n/a";
        if (c.size() > 28) c = c.substr(0, 12) + "...(" + std::to_string(c.size()) + " digits)";
        os << std::setw(4) << r.n << "  " << std::setw(28) << c << "  " << std::setw(10)
           << detail::fixed6(r.lower, base) << "  " << std::setw(10) << detail::fixed6(r.upper, base) << "  "
           << std::setw(10) << detail::fixed6(r.gap_bound, base);
        if (!r.note.empty()) os << "  (" << r.note << ")";
        os << '\n';
    }
    return os.str();
}

}  // namespace symsft
