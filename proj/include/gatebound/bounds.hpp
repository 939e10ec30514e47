// Copyright 2026 The gatebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "gatebound/channels.hpp"
#include "gatebound/diamond.hpp"
#include "gatebound/metrics.hpp"
#include "gatebound/pauli.hpp"

namespace gatebound {

namespace detail {

inline void require_fidelity_args(double phi, size_t dim, const char *fn) {
    if (dim < 2) {
        throw std::invalid_argument(std::string(fn) + ": dimension must be at least 2");
    }
    if (!(phi >= 0 && phi <= 1 + kExactFidelityTol)) {
        std::stringstream ss;
        ss << fn << ": fidelity " << phi << " is outside [0, 1]";
        throw std::invalid_argument(ss.str());
    }
}

inline double infidelity(double phi) { return std::max(0.0, 1 - phi); }

}  // namespace detail

/// (1 + 1/d)(1 - phi). Attained exactly by Pauli channels.
inline double pauli_lower_bound(double phi, size_t dim) {
    detail::require_fidelity_args(phi, dim, "pauli_lower_bound");
    const double d = static_cast<double>(dim);
    return (1 + 1 / d) * detail::infidelity(phi);
}

/// sqrt(d (d + 1) (1 - phi)). Not capped at 1.
inline double generic_upper_bound(double phi, size_t dim) {
    detail::require_fidelity_args(phi, dim, "generic_upper_bound");
    const double d = static_cast<double>(dim);
    return std::sqrt(d * (d + 1) * detail::infidelity(phi));
}

struct Rational {
    int64_t num;
    int64_t den;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational &) const = default;
};

/// Fidelity 1 - 1/(d^2 + d) below which the generic upper bound exceeds 1.
inline Rational nontriviality_threshold_exact(size_t dim) {
    if (dim < 2) {
        throw std::invalid_argument("nontriviality_threshold: dimension must be at least 2");
    }
    const auto d = static_cast<int64_t>(dim);
    return {d * d + d - 1, d * d + d};
}

inline double nontriviality_threshold(size_t dim) { return nontriviality_threshold_exact(dim).value(); }

/// Smallest fidelity whose generic upper bound is at most target_error:
/// 1 - target^2 / (d (d + 1)).
inline double required_fidelity(double target_error, size_t dim) {
    if (dim < 2) {
        throw std::invalid_argument("required_fidelity: dimension must be at least 2");
    }
    if (!(target_error >= 0 && target_error <= 1)) {
        std::stringstream ss;
        ss << "required_fidelity: target error " << target_error << " is outside [0, 1]";
        throw std::invalid_argument(ss.str());
    }
    const double d = static_cast<double>(dim);
    return 1 - target_error * target_error / (d * (d + 1));
}

/// Exact form of 1 - required_fidelity for a rational target error.
inline Rational required_infidelity_exact(Rational target_error, size_t dim) {
    if (dim < 2 || target_error.den <= 0 || target_error.num < 0 || target_error.num > target_error.den) {
        throw std::invalid_argument("required_infidelity_exact: target error must be a fraction in [0, 1]");
    }
    const auto d = static_cast<int64_t>(dim);
    int64_t num = target_error.num * target_error.num;
    int64_t den = target_error.den * target_error.den * d * (d + 1);
    int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

struct Interval {
    double lo;
    double hi;
    bool contains(double x, double tol = 0) const { return lo - tol <= x && x <= hi + tol; }
};

/// Bracket on the error rate from the fidelity and the Pauli distance:
/// lo = max(pauli_lower, |delta - pauli_lower|) and
/// hi = min(1, delta + pauli_lower, generic_upper).
inline Interval pauli_refined_interval(double phi, size_t dim, double pauli_dist) {
    if (!(pauli_dist >= 0)) {
        throw std::invalid_argument("pauli_refined_interval: Pauli distance must be nonnegative");
    }
    const double lower = pauli_lower_bound(phi, dim);
    const double upper = generic_upper_bound(phi, dim);
    return {std::max(lower, std::abs(pauli_dist - lower)), std::min({1.0, pauli_dist + lower, upper})};
}

/// pauli_lower + sum of the weighted per-term Pauli distances.
inline double decomposition_upper_bound(double phi, size_t dim, const std::vector<double> &weighted_deltas) {
    double total = pauli_lower_bound(phi, dim);
    for (double delta : weighted_deltas) {
        if (!(delta >= 0)) {
            throw std::invalid_argument("decomposition_upper_bound: Pauli distances must be nonnegative");
        }
        total += delta;
    }
    return total;
}

/// The same bound for a discrepancy given as a convex mixture. Each term
/// contributes weight * pauli_distance(term).
inline double decomposition_upper_bound(const ChannelDecomposition &decomposition, const DiamondOptions &options = {}) {
    if (decomposition.terms.empty()) {
        throw std::invalid_argument("decomposition_upper_bound: empty decomposition");
    }
    std::vector<double> deltas;
    for (const auto &term : decomposition.terms) {
        deltas.push_back(term.weight * pauli_distance(term.channel, options).value);
    }
    Channel whole = mix(decomposition);
    return decomposition_upper_bound(average_gate_fidelity(whole), whole.dim(), deltas);
}

struct AuditOptions {
    /// Unset means: on for d <= 4.
    std::optional<bool> compute_eta;
    /// Unset means: on for d <= 4 when d is a power of two.
    std::optional<bool> compute_delta;
    DiamondOptions diamond;
};

struct BoundsReport {
    size_t dim = 0;
    double fidelity = 0;
    /// Unset for an exact gate.
    std::optional<double> inverse_infidelity;
    double pauli_lower = 0;
    double generic_upper = 0;
    /// Unset when generic_upper is zero.
    std::optional<double> inverse_upper_rate;
    std::optional<DiamondResult> error_rate;
    std::optional<double> inverse_error_rate;
    std::optional<DiamondResult> pauli_distance;
    std::optional<Interval> refined_interval;
    bool nontrivial = false;
};

/// Fidelity, bounds and (optionally) diamond-norm quantities of the
/// discrepancy between an implementation and its ideal unitary.
inline BoundsReport audit(const Channel &actual, const ComplexMatrix &ideal, const AuditOptions &options = {}) {
    Channel disc = discrepancy(actual, ideal);
    const size_t d = disc.dim();

    BoundsReport r;
    r.dim = d;
    r.fidelity = average_gate_fidelity(disc);
    r.inverse_infidelity = inverse_infidelity(r.fidelity);
    r.pauli_lower = pauli_lower_bound(r.fidelity, d);
    r.generic_upper = generic_upper_bound(r.fidelity, d);
    if (r.generic_upper > 0) {
        r.inverse_upper_rate = 1 / r.generic_upper;
    }
    r.nontrivial = r.generic_upper < 1;

    const bool eta = options.compute_eta.value_or(d <= 4);
    const bool delta = options.compute_delta.value_or(d <= 4 && is_power_of_two(d));
    if (delta && !is_power_of_two(d)) {
        std::stringstream ss;
        ss << "audit: Pauli distance needs a power-of-two dimension (got " << d << ")";
        throw std::invalid_argument(ss.str());
    }
    if (eta) {
        r.error_rate = diamond_distance(disc, identity_channel(d), options.diamond);
        r.inverse_error_rate = r.error_rate->inverse();
    }
    if (delta) {
        r.pauli_distance = pauli_distance(disc, options.diamond);
        r.refined_interval = pauli_refined_interval(r.fidelity, d, r.pauli_distance->value);
    }
    return r;
}

enum class Rounding { NearestEven, Up, Down };

/// Decimal rendering of x rounded to `digits` significant figures, after
/// scaling by 10^exponent_shift (2 gives percent). Works on the shortest
/// round-trip decimal form of x, so 0.0775 rounds as the decimal 0.0775 and
/// not as its binary neighbour. Up and Down round toward +inf and -inf.
/// digits = 0 keeps every digit of the shortest form. Directed modes treat
/// x as its 12-significant-digit decimal.
inline std::string format_significant(double x, int digits, Rounding mode, int exponent_shift = 0) {
    if (digits < 0) {
        throw std::invalid_argument("format_significant: digits must be nonnegative");
    }
    if (!std::isfinite(x)) {
        return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    }
    if (x == 0) {
        return "0";
    }
    const bool negative = x < 0;
    char buf[64];
    // Directed rounding starts from 12 significant digits so that binary
    // representation noise (0.1 + 1.4e-17) does not bump the last digit.
    auto res = mode == Rounding::NearestEven
                   ? std::to_chars(buf, buf + sizeof(buf), std::abs(x), std::chars_format::scientific)
                   : std::to_chars(buf, buf + sizeof(buf), std::abs(x), std::chars_format::scientific, 11);
    std::string s(buf, res.ptr);
    const size_t epos = s.find('e');
    std::string mantissa = s.substr(0, epos);
    int exponent = std::stoi(s.substr(epos + 1)) + exponent_shift;
    mantissa.erase(std::remove(mantissa.begin(), mantissa.end(), '.'), mantissa.end());
    if (digits == 0) {
        digits = static_cast<int>(mantissa.size());
    }

    std::string kept = mantissa.substr(0, std::min<size_t>(digits, mantissa.size()));
    std::string rest = mantissa.size() > static_cast<size_t>(digits) ? mantissa.substr(digits) : "";
    kept.append(static_cast<size_t>(digits) - kept.size(), '0');
    const bool rest_nonzero = rest.find_first_not_of('0') != std::string::npos;

    bool increment = false;
    switch (mode) {
        case Rounding::NearestEven:
            if (!rest.empty()) {
                if (rest[0] > '5') {
                    increment = true;
                } else if (rest[0] == '5') {
                    bool beyond = rest.find_first_not_of('0', 1) != std::string::npos;
                    increment = beyond || ((kept.back() - '0') % 2 == 1);
                }
            }
            break;
        case Rounding::Up:
            increment = rest_nonzero && !negative;
            break;
        case Rounding::Down:
            increment = rest_nonzero && negative;
            break;
    }
    if (increment) {
        int pos = digits - 1;
        while (pos >= 0 && kept[pos] == '9') {
            kept[pos] = '0';
            pos--;
        }
        if (pos >= 0) {
            kept[pos]++;
        } else {
            kept = "1" + kept.substr(0, digits - 1);
            exponent++;
        }
    }

    std::string out;
    const int point = exponent + 1;
    if (point <= 0) {
        out = "0." + std::string(static_cast<size_t>(-point), '0') + kept;
    } else if (point >= digits) {
        out = kept + std::string(static_cast<size_t>(point - digits), '0');
    } else {
        out = kept.substr(0, point) + "." + kept.substr(point);
    }
    return negative ? "-" + out : out;
}

/// Numeric value of format_significant.
inline double round_significant(double x, int digits, Rounding mode) {
    std::string s = format_significant(x, digits, mode);
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc()) {
        return x;
    }
    return v;
}

inline std::string format_percent(double x, int digits, Rounding mode = Rounding::NearestEven) {
    return format_significant(x, digits, mode, 2) + "%";
}

}  // namespace gatebound
