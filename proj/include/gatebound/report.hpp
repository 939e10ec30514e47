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

#include <charconv>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include "gatebound/bounds.hpp"
#include "gatebound/diamond.hpp"
#include "json.hpp"

namespace gatebound {

/// Placeholder for quantities that are infinite because the gate is exact.
inline constexpr const char *kExactSentinel = "exact";

/// Shortest decimal that round-trips, independent of the global locale.
inline std::string format_number(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

/// Scientific notation with 17 significant digits.
inline std::string format_scientific(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

inline nlohmann::json diamond_to_json(const DiamondResult &r) {
    nlohmann::json j = {{"value", r.value},
                        {"lower_certificate", r.lower_certificate},
                        {"upper_certificate", r.upper_certificate},
                        {"method", to_string(r.method)}};
    if (r.sdp) {
        j["sdp"] = {{"status", to_string(r.sdp->status)},   {"iterations", r.sdp->iterations},
                    {"gap", r.sdp->gap},                    {"primal_residual", r.sdp->primal_residual},
                    {"dual_residual", r.sdp->dual_residual}, {"min_eig_primal", r.sdp->min_eig_primal},
                    {"min_eig_dual", r.sdp->min_eig_dual}};
    }
    return j;
}

namespace detail {

inline nlohmann::json number_or_exact(const std::optional<double> &x) {
    return x ? nlohmann::json(*x) : nlohmann::json(kExactSentinel);
}

}  // namespace detail

/// Machine-readable report. Keys are the BoundsReport field names; fields
/// that were not computed are omitted.
inline nlohmann::json report_to_json(const BoundsReport &r) {
    nlohmann::json j;
    j["dim"] = r.dim;
    j["fidelity"] = r.fidelity;
    j["inverse_infidelity"] = detail::number_or_exact(r.inverse_infidelity);
    j["pauli_lower"] = r.pauli_lower;
    j["generic_upper"] = r.generic_upper;
    j["inverse_upper_rate"] = detail::number_or_exact(r.inverse_upper_rate);
    if (r.error_rate) {
        j["error_rate"] = diamond_to_json(*r.error_rate);
        j["inverse_error_rate"] = detail::number_or_exact(r.inverse_error_rate);
    }
    if (r.pauli_distance) {
        j["pauli_distance"] = diamond_to_json(*r.pauli_distance);
    }
    if (r.refined_interval) {
        j["refined_interval"] = {r.refined_interval->lo, r.refined_interval->hi};
    }
    j["nontrivial"] = r.nontrivial;
    return j;
}

/// Human-readable report. Raw values are printed in full; percentages are
/// rounded to three significant figures, upper bounds upward and lower
/// bounds downward so the rounded bracket still holds.
inline std::string render_report(const BoundsReport &r) {
    std::ostringstream out;
    auto row = [&](const std::string &label, const std::string &value) {
        out << std::left << std::setw(26) << label << value << "\n";
    };
    auto with_percent = [](double x, Rounding mode) {
        return format_number(x) + "  (" + format_percent(x, 3, mode) + ")";
    };
    auto or_exact = [](const std::optional<double> &x) { return x ? format_number(*x) : std::string(kExactSentinel); };

    row("dimension", std::to_string(r.dim));
    row("fidelity", with_percent(r.fidelity, Rounding::NearestEven));
    row("inverse infidelity", or_exact(r.inverse_infidelity));
    row("pauli lower bound", with_percent(r.pauli_lower, Rounding::Down));
    row("generic upper bound", with_percent(r.generic_upper, Rounding::Up));
    row("inverse upper rate", or_exact(r.inverse_upper_rate));
    row("nontrivial", r.nontrivial ? "yes" : "no (generic upper bound >= 1)");
    if (r.error_rate) {
        const auto &e = *r.error_rate;
        row("error rate", with_percent(e.value, Rounding::NearestEven));
        row("  certified bracket", "[" + format_number(e.lower_certificate) + ", " +
                                       format_number(e.upper_certificate) + "]");
        row("  method", to_string(e.method));
        row("inverse error rate", or_exact(r.inverse_error_rate));
    } else {
        row("error rate", "not computed");
    }
    if (r.pauli_distance) {
        row("pauli distance", with_percent(r.pauli_distance->value, Rounding::NearestEven));
        row("  method", to_string(r.pauli_distance->method));
    } else {
        row("pauli distance", "not computed");
    }
    if (r.refined_interval) {
        row("refined interval", "[" + format_number(r.refined_interval->lo) + ", " +
                                    format_number(r.refined_interval->hi) + "]  (" +
                                    format_percent(r.refined_interval->lo, 3, Rounding::Down) + " to " +
                                    format_percent(r.refined_interval->hi, 3, Rounding::Up) + ")");
    }
    return out.str();
}

}  // namespace gatebound
