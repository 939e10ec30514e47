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
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "gatebound/bounds.hpp"
#include "gatebound/channels.hpp"
#include "gatebound/diamond.hpp"
#include "gatebound/metrics.hpp"
#include "gatebound/report.hpp"

namespace gatebound {

enum class SweepModel { Unitary, AmplitudeDamping, Depolarizing };

inline const char *to_string(SweepModel m) {
    switch (m) {
        case SweepModel::Unitary:
            return "unitary";
        case SweepModel::AmplitudeDamping:
            return "amplitude-damping";
        case SweepModel::Depolarizing:
            return "depolarizing";
    }
    return "?";
}

inline SweepModel parse_sweep_model(const std::string &name) {
    for (SweepModel m : {SweepModel::Unitary, SweepModel::AmplitudeDamping, SweepModel::Depolarizing}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw std::invalid_argument("unknown sweep model '" + name +
                                "' (expected unitary, amplitude-damping or depolarizing)");
}

/// Fidelities a model can reach, as [lowest, 1].
inline double lowest_attainable_fidelity(SweepModel m) {
    switch (m) {
        case SweepModel::Unitary:
        case SweepModel::Depolarizing:
            return 1.0 / 3.0;
        case SweepModel::AmplitudeDamping:
            return 0.5;
    }
    return 1.0;
}

/// The model parameter (theta or r) whose channel has fidelity phi.
/// unitary: cos^2 theta = (3 phi - 1)/2. amplitude damping:
/// (2 + (1 + sqrt(1 - r))^2)/6 = phi. depolarizing: r = 2 (1 - phi).
inline double invert_fidelity(SweepModel m, double phi) {
    const double lowest = lowest_attainable_fidelity(m);
    if (!(phi >= lowest && phi <= 1)) {
        std::stringstream ss;
        ss << "fidelity " << phi << " is outside the range [" << lowest << ", 1] of the " << to_string(m) << " model";
        throw std::invalid_argument(ss.str());
    }
    switch (m) {
        case SweepModel::Unitary:
            return std::acos(std::sqrt(std::clamp((3 * phi - 1) / 2, 0.0, 1.0)));
        case SweepModel::AmplitudeDamping: {
            double s = std::sqrt(std::max(0.0, 6 * phi - 2)) - 1;
            return std::clamp(1 - s * s, 0.0, 1.0);
        }
        case SweepModel::Depolarizing:
            return std::clamp(2 * (1 - phi), 0.0, 4.0 / 3.0);
    }
    return 0;
}

inline Channel model_channel(SweepModel m, double param) {
    switch (m) {
        case SweepModel::Unitary:
            return unitary_error(param);
        case SweepModel::AmplitudeDamping:
            return amplitude_damping(param);
        case SweepModel::Depolarizing:
            return depolarizing(param);
    }
    throw std::logic_error("model_channel: unknown model");
}

struct SweepRecord {
    std::string model;
    double param;
    double fidelity;
    double eta;
    double eta_pauli_lb;
    double eta_generic_ub;
    double pauli_distance;
    double refined_lo;
    double refined_hi;
};

inline constexpr const char *kSweepHeader =
    "model,param,fidelity,eta,eta_pauli_lb,eta_generic_ub,pauli_distance,refined_lo,refined_hi";

struct SweepOptions {
    size_t points = 0;
    double phi_min = 0;
    double phi_max = 0;
    /// 0 picks the hardware concurrency.
    unsigned threads = 1;
    DiamondOptions diamond;
};

/// Evenly spaced fidelities from phi_min to phi_max inclusive.
inline std::vector<double> sweep_fidelities(const SweepOptions &o) {
    if (o.points == 0) {
        throw std::invalid_argument("sweep: at least one point is required");
    }
    if (!(o.phi_min < o.phi_max)) {
        std::stringstream ss;
        ss << "sweep: phi-min (" << o.phi_min << ") must be below phi-max (" << o.phi_max << ")";
        throw std::invalid_argument(ss.str());
    }
    std::vector<double> phis(o.points);
    for (size_t k = 0; k < o.points; k++) {
        phis[k] = o.points == 1 ? o.phi_min
                                : o.phi_min + (o.phi_max - o.phi_min) * static_cast<double>(k) /
                                                  static_cast<double>(o.points - 1);
    }
    phis.back() = o.points == 1 ? o.phi_min : o.phi_max;
    return phis;
}

inline SweepRecord sweep_point(SweepModel m, double phi_target, const DiamondOptions &options) {
    const double param = invert_fidelity(m, phi_target);
    Channel c = model_channel(m, param);
    SweepRecord r;
    r.model = to_string(m);
    r.param = param;
    r.fidelity = average_gate_fidelity(c);
    r.eta = diamond_distance(c, identity_channel(2), options).value;
    r.eta_pauli_lb = pauli_lower_bound(r.fidelity, 2);
    r.eta_generic_ub = generic_upper_bound(r.fidelity, 2);
    r.pauli_distance = pauli_distance(c, options).value;
    Interval refined = pauli_refined_interval(r.fidelity, 2, r.pauli_distance);
    r.refined_lo = refined.lo;
    r.refined_hi = refined.hi;
    return r;
}

/// One record per target fidelity, in increasing fidelity order. Points are
/// independent and may run on several threads.
inline std::vector<SweepRecord> run_sweep(SweepModel m, const SweepOptions &options) {
    std::vector<double> phis = sweep_fidelities(options);
    const double lowest = lowest_attainable_fidelity(m);
    if (phis.front() < lowest || phis.back() > 1) {
        std::stringstream ss;
        ss << "sweep: fidelity range [" << options.phi_min << ", " << options.phi_max << "] leaves [" << lowest
           << ", 1], the attainable range of the " << to_string(m) << " model";
        throw std::invalid_argument(ss.str());
    }
    std::vector<SweepRecord> records(phis.size());
    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<size_t>(threads, phis.size()));
    if (threads <= 1) {
        for (size_t k = 0; k < phis.size(); k++) {
            records[k] = sweep_point(m, phis[k], options.diamond);
        }
        return records;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; t++) {
        pool.emplace_back([&] {
            for (size_t k = next++; k < phis.size(); k = next++) {
                try {
                    records[k] = sweep_point(m, phis[k], options.diamond);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

inline void write_sweep_csv(std::ostream &out, const std::vector<SweepRecord> &records) {
    out << kSweepHeader << '\n';
    for (const auto &r : records) {
        out << r.model;
        for (double x : {r.param, r.fidelity, r.eta, r.eta_pauli_lb, r.eta_generic_ub, r.pauli_distance, r.refined_lo,
                         r.refined_hi}) {
            out << ',' << format_scientific(x);
        }
        out << '\n';
    }
}

inline std::vector<SweepRecord> read_sweep_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepHeader) {
        throw std::invalid_argument("sweep CSV: missing or unexpected header");
    }
    std::vector<SweepRecord> records;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 9) {
            throw std::invalid_argument("sweep CSV line " + std::to_string(line_no) + ": expected 9 fields");
        }
        double v[8];
        for (size_t k = 0; k < 8; k++) {
            const std::string &f = fields[k + 1];
            auto res = std::from_chars(f.data(), f.data() + f.size(), v[k]);
            if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
                throw std::invalid_argument("sweep CSV line " + std::to_string(line_no) + ": bad number '" + f + "'");
            }
        }
        records.push_back({fields[0], v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
    }
    return records;
}

}  // namespace gatebound
