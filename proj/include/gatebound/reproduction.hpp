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

// The reproduction suite: twelve numbered acceptance criteria, each a list
// of named checks. Shared by the command-line front end and the test
// binary so both run the same code with the same tolerances.

#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gatebound/bounds.hpp"
#include "gatebound/channels.hpp"
#include "gatebound/diamond.hpp"
#include "gatebound/metrics.hpp"
#include "gatebound/pauli.hpp"
#include "gatebound/random.hpp"
#include "gatebound/report.hpp"
#include "gatebound/sweep.hpp"

namespace gatebound {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct CriterionReport {
    int id = 0;
    std::string title;
    std::vector<CheckResult> checks;
    /// Set when the criterion aborted with an exception.
    std::string error;
    double seconds = 0;

    bool passed() const {
        if (!error.empty() || checks.empty()) {
            return false;
        }
        for (const auto &c : checks) {
            if (!c.pass) {
                return false;
            }
        }
        return true;
    }
};

struct CriterionInfo {
    int id;
    const char *title;
};

inline const std::vector<CriterionInfo> &reproduction_criteria() {
    static const std::vector<CriterionInfo> list = {
        {1, "depolarizing and unitary error combined (r = 1e-3, theta = 1e-2)"},
        {2, "controlled-phase error at d = 4, theta = 0.259"},
        {3, "generic upper bound tables at fidelity 99% and 99.9%"},
        {4, "required fidelity for target error 1% at d = 4"},
        {5, "nontriviality thresholds at d = 2 and d = 4"},
        {6, "Pauli channels saturate the lower bound"},
        {7, "Pauli-distance sandwich on random qubit channels"},
        {8, "witness families for the worst-case scalings"},
        {9, "single-qubit unitary errors sit at half the upper bound"},
        {10, "fidelity sweep relations for unitary and amplitude-damping noise"},
        {11, "SDP solver health on every solve of the suite"},
        {12, "randomized property suites"},
    };
    return list;
}

/// One logged SDP solve together with its inputs.
struct LoggedSolve {
    Channel e;
    Channel f;
    DiamondResult result;
};

class ReproductionSuite {
   public:
    explicit ReproductionSuite(SdpOptions sdp = {}) : sdp_(sdp) {}

    CriterionReport run(int id) {
        CriterionReport report;
        report.id = id;
        for (const auto &c : reproduction_criteria()) {
            if (c.id == id) {
                report.title = c.title;
            }
        }
        if (report.title.empty()) {
            report.error = "no criterion with id " + std::to_string(id);
            return report;
        }
        auto start = std::chrono::steady_clock::now();
        current_ = &report;
        try {
            dispatch(id);
        } catch (const std::exception &e) {
            report.error = e.what();
        }
        current_ = nullptr;
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        ran_.insert(id);
        return report;
    }

    const std::vector<LoggedSolve> &solve_log() const { return log_; }

   private:
    // Tolerances pinned by the acceptance criteria.
    static constexpr double kExample3Tol = 5e-4;
    static constexpr double kAgreeTol = 1e-6;
    static constexpr double kSandwichTol = 2e-7;
    static constexpr double kBoundTol = 1e-8;
    static constexpr double kHealthTol = 1e-8;
    static constexpr double kPsdTol = 1e-7;
    static constexpr double kChoiTol = 1e-10;
    static constexpr double kLinearityTol = 1e-12;
    static constexpr double kTriangleTol = 1e-7;
    static constexpr size_t kBruteForceSamples = 2000;

    void dispatch(int id) {
        switch (id) {
            case 1:
                combined_noise();
                break;
            case 2:
                controlled_phase();
                break;
            case 3:
                bound_tables();
                break;
            case 4:
                threshold();
                break;
            case 5:
                nontriviality();
                break;
            case 6:
                pauli_saturation();
                break;
            case 7:
                pauli_sandwich();
                break;
            case 8:
                witnesses();
                break;
            case 9:
                unitary_identity();
                break;
            case 10:
                sweeps();
                break;
            case 11:
                solver_health();
                break;
            case 12:
                properties();
                break;
        }
    }

    DiamondOptions options(bool force_sdp) {
        DiamondOptions o;
        o.force_sdp = force_sdp;
        o.sdp = sdp_;
        o.on_sdp_solve = [this](const Channel &e, const Channel &f, const DiamondResult &r) {
            log_.push_back({e, f, r});
        };
        return o;
    }

    DiamondResult sdp(const Channel &e, const Channel &f) { return diamond_distance(e, f, options(true)); }

    void check(const std::string &name, bool pass, const std::string &detail) {
        current_->checks.push_back({name, pass, detail});
    }

    static std::string num(double x) { return format_number(x); }

    void near(const std::string &name, double got, double want, double tol) {
        std::string detail = "got " + num(got) + ", expected " + num(want) + " +/- " + num(tol);
        check(name, std::abs(got - want) <= tol, detail);
    }

    void within(const std::string &name, double x, double lo, double hi) {
        check(name, lo <= x && x <= hi, num(x) + " in [" + num(lo) + ", " + num(hi) + "]");
    }

    void infidelity_to_2sf(const std::string &name, double phi, double want) {
        double rounded = round_significant(1 - phi, 2, Rounding::NearestEven);
        check(name, rounded == want,
              "1 - phi = " + num(1 - phi) + " rounds to " + num(rounded) + ", expected " + num(want));
    }

    // 1
    void combined_noise() {
        const double r = 1e-3;
        const double theta = 1e-2;
        Channel dep = depolarizing(r);
        Channel uni = unitary_error(theta);
        Channel total = compose(dep, uni);
        Channel id = identity_channel(2);

        infidelity_to_2sf("depolarizing fidelity 1 - 5.0e-4", average_gate_fidelity(dep), 5.0e-4);
        infidelity_to_2sf("unitary fidelity 1 - 6.7e-5", average_gate_fidelity(uni), 6.7e-5);
        infidelity_to_2sf("combined fidelity 1 - 5.3e-4", average_gate_fidelity(total), 5.3e-4);

        double eta_dep = diamond_distance(dep, id, options(false)).value;
        near("depolarizing error rate 7.5e-4", eta_dep, 7.5e-4, 1e-10);
        double eta_u = diamond_distance(uni, id, options(false)).value;
        within("unitary error rate in [0.99e-2, 1.0e-2]", eta_u, 0.99e-2, 1.0e-2);
        double eta_tot = sdp(total, id).value;
        within("combined error rate (SDP) in [0.92e-2, 1.08e-2]", eta_tot, 0.92e-2, 1.08e-2);
        within("combined error rate inside the triangle-inequality bracket", eta_tot, eta_u - eta_dep,
               eta_u + eta_dep);
    }

    // 2
    void controlled_phase() {
        const double theta = 0.259;
        Channel disc = discrepancy(identity_channel(4), generalized_cphase_unitary(4, theta));
        near("fidelity 0.990", average_gate_fidelity(disc), 0.990, kExample3Tol);
        double closed = diamond_distance(disc, identity_channel(4), options(false)).value;
        near("error rate 0.129 (closed form)", closed, 0.129, kExample3Tol);
        double via_sdp = sdp(disc, identity_channel(4)).value;
        near("SDP agrees with the closed form", via_sdp, closed, kAgreeTol);
    }

    // 3
    void bound_tables() {
        struct Row {
            double phi;
            size_t dim;
            int digits;
            const char *expected;
        };
        const Row rows[] = {{0.99, 2, 2, "25%"},    {0.99, 4, 2, "45%"},    {0.99, 8, 2, "85%"},
                            {0.999, 2, 3, "7.75%"}, {0.999, 4, 3, "14.2%"}, {0.999, 8, 3, "26.9%"}};
        for (const auto &row : rows) {
            double ub = generic_upper_bound(row.phi, row.dim);
            std::string shown = format_percent(ub, row.digits, Rounding::Up);
            std::stringstream name;
            name << "phi = " << num(row.phi) << ", d = " << row.dim << " -> " << row.expected;
            check(name.str(), shown == row.expected, "upper bound " + num(ub) + " displays as " + shown);
        }
    }

    // 4
    void threshold() {
        double got = required_fidelity(0.01, 4);
        check("required_fidelity(0.01, 4) == 1 - 5e-6", got == 1 - 5e-6, "got " + num(got));
        Rational exact = required_infidelity_exact({1, 100}, 4);
        check("required infidelity is exactly 1/200000", exact == Rational{1, 200000},
              std::to_string(exact.num) + "/" + std::to_string(exact.den));
    }

    // 5
    void nontriviality() {
        Rational t2 = nontriviality_threshold_exact(2);
        Rational t4 = nontriviality_threshold_exact(4);
        check("d = 2 threshold is 5/6", t2 == Rational{5, 6},
              std::to_string(t2.num) + "/" + std::to_string(t2.den));
        check("d = 2 threshold displays as 83%", format_percent(t2.value(), 2) == "83%",
              format_percent(t2.value(), 2));
        check("d = 4 threshold is 19/20", t4 == Rational{19, 20},
              std::to_string(t4.num) + "/" + std::to_string(t4.den));
        check("d = 4 threshold displays as 95%", format_percent(t4.value(), 2) == "95%",
              format_percent(t4.value(), 2));
        near("generic upper bound equals 1 at the d = 2 threshold", generic_upper_bound(t2.value(), 2), 1.0, 1e-12);
        near("generic upper bound equals 1 at the d = 4 threshold", generic_upper_bound(t4.value(), 4), 1.0, 1e-12);
    }

    // 6
    void pauli_saturation() {
        Rng rng(6001);
        double worst = 0;
        for (int k = 0; k < 20; k++) {
            Channel c = random_pauli_channel(1, rng).to_channel();
            double eta = sdp(c, identity_channel(2)).value;
            double lower = pauli_lower_bound(average_gate_fidelity(c), 2);
            worst = std::max(worst, std::abs(eta - lower));
        }
        check("SDP error rate equals (1 + 1/d)(1 - phi) on 20 random Pauli channels", worst <= kAgreeTol,
              "worst deviation " + num(worst));
    }

    // 7
    void pauli_sandwich() {
        Rng rng(7001);
        double worst_low = -1;
        double worst_high = -1;
        for (int k = 0; k < 20; k++) {
            Channel c = random_channel(2, 2 + k % 3, rng);
            double eta = sdp(c, identity_channel(2)).value;
            double delta = sdp(c, pauli_twirl(c)).value;
            double lower = pauli_lower_bound(average_gate_fidelity(c), 2);
            worst_low = std::max(worst_low, std::abs(delta - lower) - eta);
            worst_high = std::max(worst_high, eta - (delta + lower));
        }
        check("|delta - eta_pauli| <= eta on 20 random channels", worst_low <= kSandwichTol,
              "largest violation " + num(worst_low));
        check("eta <= delta + eta_pauli on 20 random channels", worst_high <= kSandwichTol,
              "largest violation " + num(worst_high));
    }

    // 8
    void witnesses() {
        for (size_t d : {2, 3, 4}) {
            for (double theta : {0.05, 0.2, 0.5}) {
                Channel disc = discrepancy(identity_channel(d), generalized_cphase_unitary(d, theta));
                double phi = average_gate_fidelity(disc);
                double upsilon = *inverse_infidelity(phi);
                DiamondResult closed = diamond_distance(disc, identity_channel(d), options(false));
                double zeta = *closed.inverse();
                const double dd = static_cast<double>(d);
                double want = std::sqrt(4 * (dd - 1) / (dd * (dd + 1)) * upsilon);
                std::stringstream name;
                name << "controlled phase d = " << d << ", theta = " << num(theta);
                near(name.str() + ": inverse error rate", zeta, want, kAgreeTol);
                near(name.str() + ": SDP agrees with the closed form", sdp(disc, identity_channel(d)).value,
                     closed.value, kAgreeTol);
            }
        }
        for (size_t d : {2, 4}) {
            for (double lambda : {0.05, 0.2}) {
                auto g = lambda_mixture(d, lambda);
                Channel disc = discrepancy(g.actual, g.ideal);
                const double dd = static_cast<double>(d);
                std::stringstream name;
                name << "lambda mixture d = " << d << ", lambda = " << num(lambda);
                near(name.str() + ": error rate equals lambda", sdp(disc, identity_channel(d)).value, lambda,
                     kAgreeTol);
                near(name.str() + ": fidelity", average_gate_fidelity(disc), 1 - 4 * (dd - 1) * lambda / (dd * (dd + 1)),
                     kAgreeTol);
            }
        }
    }

    // 9
    void unitary_identity() {
        double worst = 0;
        for (int k = 1; k <= 10; k++) {
            double theta = 0.15 * k;
            Channel c = unitary_error(theta);
            double eta = diamond_distance(c, identity_channel(2), options(false)).value;
            double half_ub = generic_upper_bound(average_gate_fidelity(c), 2) / 2;
            worst = std::max(worst, std::abs(eta - half_ub));
        }
        check("eta = generic upper bound / 2 for theta = 0.15, 0.30, ..., 1.50", worst <= kBoundTol,
              "worst deviation " + num(worst));
    }

    // 10
    void sweeps() {
        for (SweepModel m : {SweepModel::Unitary, SweepModel::AmplitudeDamping}) {
            SweepOptions so;
            so.points = 12;
            so.phi_min = 0.90;
            so.phi_max = 0.9999;
            so.diamond = options(false);
            auto rows = run_sweep(m, so);
            double refined = -1;
            double upper = -1;
            double lower = -1;
            double formula = 0;
            for (const auto &r : rows) {
                refined = std::max({refined, r.refined_lo - r.eta, r.eta - r.refined_hi});
                upper = std::max(upper, r.eta - r.eta_generic_ub);
                lower = std::max(lower, r.eta_pauli_lb - r.eta);
                formula = std::max(formula, std::abs(r.eta - std::sqrt(1.5 * (1 - r.fidelity))));
            }
            std::string model = to_string(m);
            check(model + ": refined_lo <= eta <= refined_hi on every row", refined <= kSandwichTol,
                  "largest violation " + num(refined) + " over " + std::to_string(rows.size()) + " rows");
            check(model + ": eta <= generic upper bound", upper <= kBoundTol, "largest violation " + num(upper));
            check(model + ": eta >= Pauli lower bound", lower <= kBoundTol, "largest violation " + num(lower));
            if (m == SweepModel::Unitary) {
                check(model + ": eta = sqrt(1.5 (1 - phi))", formula <= kAgreeTol, "worst deviation " + num(formula));
            }
        }
    }

    // 11
    void solver_health() {
        for (const auto &c : reproduction_criteria()) {
            if (c.id != 11 && !ran_.count(c.id)) {
                CriterionReport *saved = current_;
                run(c.id);
                current_ = saved;
            }
        }
        double gap = 0;
        double primal = 0;
        double dual = 0;
        double psd = 0;
        double brute = -1;
        size_t unconverged = 0;
        for (const auto &s : log_) {
            const auto &h = *s.result.sdp;
            gap = std::max(gap, h.gap);
            primal = std::max(primal, h.primal_residual);
            dual = std::max(dual, h.dual_residual);
            psd = std::max({psd, -h.min_eig_primal, -h.min_eig_dual});
            unconverged += h.status != SdpStatus::Converged;
            brute = std::max(brute, brute_force_lower_bound(s.e, s.f, kBruteForceSamples) - s.result.value);
        }
        std::string count = " over " + std::to_string(log_.size()) + " solves";
        check("suite performed SDP solves", !log_.empty(), std::to_string(log_.size()) + " solves logged");
        check("every solve converged", unconverged == 0, std::to_string(unconverged) + " did not" + count);
        check("normalized duality gap <= 1e-8", gap <= kHealthTol, "worst " + num(gap) + count);
        check("re-verified primal residual <= 1e-8", primal <= kHealthTol, "worst " + num(primal) + count);
        check("re-verified dual residual <= 1e-8", dual <= kHealthTol, "worst " + num(dual) + count);
        check("primal and dual slack PSD within 1e-7", psd <= kPsdTol, "most negative eigenvalue " + num(-psd));
        check("brute-force lower bound (2000 samples) <= SDP value + 1e-8", brute <= kHealthTol,
              "largest excess " + num(brute) + count);
    }

    // 12
    void properties() {
        Rng rng(12001);
        double idempotence = 0;
        double fidelity_twirl = 0;
        for (int k = 0; k < 10; k++) {
            size_t d = k < 7 ? 2 : 4;
            Channel c = random_channel(d, 1 + k % 4, rng);
            Channel t = pauli_twirl(c);
            idempotence = std::max(idempotence, max_abs_diff(pauli_twirl(t).choi(), t.choi()));
            fidelity_twirl = std::max(fidelity_twirl, std::abs(average_gate_fidelity(c) - average_gate_fidelity(t)));
        }
        check("twirl idempotence (Choi, 1e-10)", idempotence <= kChoiTol, "worst " + num(idempotence));
        check("fidelity invariant under twirl (1e-10)", fidelity_twirl <= kChoiTol, "worst " + num(fidelity_twirl));

        double fid_linear = 0;
        double choi_linear = 0;
        for (int k = 0; k < 10; k++) {
            size_t d = k < 7 ? 2 : 3;
            auto w = random_simplex_point(3, rng);
            ChannelDecomposition dec;
            double phi_sum = 0;
            ComplexMatrix choi_sum(d * d, d * d);
            for (size_t t = 0; t < 3; t++) {
                Channel c = random_channel(d, 1 + t, rng);
                phi_sum += w[t] * average_gate_fidelity(c);
                choi_sum += c.choi() * Complex(w[t]);
                dec.terms.push_back({w[t], c});
            }
            Channel mixed = mix(dec);
            fid_linear = std::max(fid_linear, std::abs(average_gate_fidelity(mixed) - phi_sum));
            choi_linear = std::max(choi_linear, max_abs_diff(mixed.choi(), choi_sum));
        }
        check("fidelity linear under mixing (1e-12)", fid_linear <= kLinearityTol, "worst " + num(fid_linear));
        check("Choi matrix linear under mixing (1e-12)", choi_linear <= kLinearityTol, "worst " + num(choi_linear));

        double triangle = -1;
        for (int k = 0; k < 5; k++) {
            Channel a = random_channel(2, 2, rng);
            Channel b = random_channel(2, 3, rng);
            Channel c = random_channel(2, 2, rng);
            triangle = std::max(triangle, sdp(a, c).value - sdp(a, b).value - sdp(b, c).value);
        }
        check("diamond triangle inequality on 5 random triples (1e-7)", triangle <= kTriangleTol,
              "largest violation " + num(triangle));
    }

    SdpOptions sdp_;
    std::vector<LoggedSolve> log_;
    std::set<int> ran_;
    CriterionReport *current_ = nullptr;
};

}  // namespace gatebound
