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

// Exit codes: 0 success, 1 bad input or a failed check, 2 solver failure.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gatebound/bounds.hpp"
#include "gatebound/channel_spec.hpp"
#include "gatebound/report.hpp"
#include "gatebound/reproduction.hpp"
#include "gatebound/sweep.hpp"

namespace {

using namespace gatebound;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;

struct AnalyzeArgs {
    std::string channel_file;
    std::string ideal_file;
    std::string json_path;
    bool eta = false;
    bool no_eta = false;
    bool delta = false;
    bool no_delta = false;
    bool large = false;
    int sdp_max_iter = SdpOptions{}.max_iter;
    double sdp_gap_tol = SdpOptions{}.gap_tol;
};

struct BoundsArgs {
    double fidelity = 0;
    size_t dim = 0;
    int digits = 3;
    bool json = false;
};

struct ThresholdArgs {
    double target_error = 0;
    size_t dim = 0;
    bool json = false;
};

struct SweepArgs {
    std::string model;
    size_t points = 0;
    double phi_min = 0;
    double phi_max = 0;
    std::string out;
    unsigned threads = 1;
};

struct CheckArgs {
    bool list = false;
    std::vector<int> only;
    double sdp_gap_tol = SdpOptions{}.gap_tol;
};

void write_output(const std::string &path, const std::string &text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument(path + ": cannot open for writing");
    }
    out << text;
    if (!out) {
        throw std::invalid_argument(path + ": write failed");
    }
}

int cmd_analyze(const AnalyzeArgs &a) {
    ChannelSpec spec = load_channel_spec(a.channel_file);
    ComplexMatrix ideal = ComplexMatrix::identity(spec.dim);
    if (!a.ideal_file.empty()) {
        ChannelSpec ideal_spec = load_channel_spec(a.ideal_file);
        if (ideal_spec.dim != spec.dim) {
            throw ChannelSpecError(a.ideal_file + ": field /dim: ideal gate dimension " +
                                   std::to_string(ideal_spec.dim) + " differs from the channel's " +
                                   std::to_string(spec.dim));
        }
        ideal = spec_unitary(ideal_spec, a.ideal_file);
    } else if (spec.ideal) {
        ideal = *spec.ideal;
    }
    AuditOptions options;
    if (a.eta || a.no_eta) {
        options.compute_eta = a.eta;
    }
    if (a.delta || a.no_delta) {
        options.compute_delta = a.delta;
    }
    options.diamond.allow_large = a.large;
    options.diamond.sdp.max_iter = a.sdp_max_iter;
    options.diamond.sdp.gap_tol = a.sdp_gap_tol;
    BoundsReport report = audit(spec.channel, ideal, options);
    if (a.json_path.empty()) {
        std::cout << render_report(report);
    } else {
        if (a.json_path != "-") {
            std::cout << render_report(report);
        }
        write_output(a.json_path, report_to_json(report).dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_bounds(const BoundsArgs &a) {
    double lower = pauli_lower_bound(a.fidelity, a.dim);
    double upper = generic_upper_bound(a.fidelity, a.dim);
    bool nontrivial = upper < 1;
    if (a.json) {
        nlohmann::json j = {{"dim", a.dim},
                            {"fidelity", a.fidelity},
                            {"pauli_lower", lower},
                            {"generic_upper", upper},
                            {"nontrivial", nontrivial}};
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    auto row = [](const std::string &label, const std::string &value) {
        std::cout << std::left << std::setw(22) << label << value << "\n";
    };
    row("dimension", std::to_string(a.dim));
    row("fidelity", format_number(a.fidelity));
    row("pauli lower bound", format_percent(lower, a.digits, Rounding::Down) + "  (" + format_number(lower) + ")");
    row("generic upper bound", format_percent(upper, a.digits, Rounding::Up) + "  (" + format_number(upper) + ")");
    row("nontrivial", nontrivial ? "yes" : "no (generic upper bound >= 1)");
    return kExitOk;
}

int cmd_threshold(const ThresholdArgs &a) {
    double phi = required_fidelity(a.target_error, a.dim);
    if (a.json) {
        nlohmann::json j = {{"dim", a.dim}, {"target_error", a.target_error}, {"required_fidelity", phi}};
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    const double d = static_cast<double>(a.dim);
    std::cout << "required fidelity   " << format_number(phi) << "  (" << format_percent(phi, 0) << ")\n";
    std::cout << "infidelity budget   " << format_number(a.target_error * a.target_error / (d * (d + 1))) << "\n";
    return kExitOk;
}

int cmd_sweep(const SweepArgs &a) {
    SweepModel model = parse_sweep_model(a.model);
    SweepOptions options;
    options.points = a.points;
    options.phi_min = a.phi_min;
    options.phi_max = a.phi_max;
    options.threads = a.threads;
    auto records = run_sweep(model, options);
    std::ostringstream csv;
    write_sweep_csv(csv, records);
    write_output(a.out, csv.str());
    return kExitOk;
}

int cmd_paper_check(const CheckArgs &a) {
    if (a.list) {
        for (const auto &c : reproduction_criteria()) {
            std::cout << std::setw(2) << c.id << "  " << c.title << "\n";
        }
        return kExitOk;
    }
    std::vector<int> ids = a.only;
    if (ids.empty()) {
        for (const auto &c : reproduction_criteria()) {
            ids.push_back(c.id);
        }
    }
    for (int id : ids) {
        if (id < 1 || id > static_cast<int>(reproduction_criteria().size())) {
            throw std::invalid_argument("--only: no criterion with id " + std::to_string(id));
        }
    }
    SdpOptions sdp;
    sdp.gap_tol = a.sdp_gap_tol;
    ReproductionSuite suite(sdp);
    bool all = true;
    for (int id : ids) {
        CriterionReport r = suite.run(id);
        all = all && r.passed();
        std::cout << (r.passed() ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.title << "\n";
        for (const auto &c : r.checks) {
            std::cout << "        " << (c.pass ? "ok  " : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
        }
        if (!r.error.empty()) {
            std::cout << "        error: " << r.error << "\n";
        }
    }
    std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
    return all ? kExitOk : kExitInput;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Error-rate bounds and diamond distances for quantum gates"};
    app.require_subcommand(1);

    AnalyzeArgs analyze;
    auto *sub_analyze = app.add_subcommand("analyze", "Fidelity, bounds and error rate of a channel file");
    sub_analyze->add_option("channel", analyze.channel_file, "Channel description (JSON)")->required();
    sub_analyze->add_option("--ideal", analyze.ideal_file, "Ideal unitary gate as a channel file (default: identity)");
    sub_analyze->add_option("--json", analyze.json_path, "Also write a JSON report to this path ('-' for stdout only)");
    sub_analyze->add_flag("--eta", analyze.eta, "Compute the error rate");
    sub_analyze->add_flag("--no-eta", analyze.no_eta, "Skip the error rate");
    sub_analyze->add_flag("--delta", analyze.delta, "Compute the Pauli distance");
    sub_analyze->add_flag("--no-delta", analyze.no_delta, "Skip the Pauli distance");
    sub_analyze->add_flag("--large", analyze.large, "Allow the SDP at d = 8 (slow)");
    sub_analyze->add_option("--sdp-max-iter", analyze.sdp_max_iter, "SDP iteration limit")
        ->check(CLI::Range(1, 10000));
    sub_analyze->add_option("--sdp-gap-tol", analyze.sdp_gap_tol, "SDP duality-gap tolerance")
        ->check(CLI::PositiveNumber);

    BoundsArgs bounds;
    auto *sub_bounds = app.add_subcommand("bounds", "Lower and upper error-rate bounds from a fidelity");
    sub_bounds->add_option("--fidelity", bounds.fidelity, "Average gate fidelity")->required();
    sub_bounds->add_option("--dim", bounds.dim, "Hilbert-space dimension")->required();
    sub_bounds->add_option("--digits", bounds.digits, "Significant figures of displayed percentages")
        ->check(CLI::Range(1, 17));
    sub_bounds->add_flag("--json", bounds.json, "Machine-readable output");

    ThresholdArgs threshold;
    auto *sub_threshold = app.add_subcommand("threshold", "Fidelity needed to certify a target error rate");
    sub_threshold->add_option("--target-error", threshold.target_error, "Target error rate")->required();
    sub_threshold->add_option("--dim", threshold.dim, "Hilbert-space dimension")->required();
    sub_threshold->add_flag("--json", threshold.json, "Machine-readable output");

    SweepArgs sweep;
    auto *sub_sweep = app.add_subcommand("sweep", "CSV of error rates and bounds across fidelities");
    sub_sweep->add_option("--model", sweep.model, "unitary, amplitude-damping or depolarizing")->required();
    sub_sweep->add_option("--points", sweep.points, "Number of fidelities")->required();
    sub_sweep->add_option("--phi-min", sweep.phi_min, "Lowest fidelity")->required();
    sub_sweep->add_option("--phi-max", sweep.phi_max, "Highest fidelity")->required();
    sub_sweep->add_option("--out", sweep.out, "Output path ('-' for stdout)")->required();
    sub_sweep->add_option("--threads", sweep.threads, "Worker threads (0: all cores)");

    CheckArgs check;
    auto *sub_check = app.add_subcommand("paper-check", "Run the reproduction suite");
    sub_check->add_flag("--list", check.list, "List the criteria without running them");
    sub_check->add_option("--only", check.only, "Run only these criteria");
    sub_check->add_option("--sdp-gap-tol", check.sdp_gap_tol, "SDP duality-gap tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*sub_analyze) {
            return cmd_analyze(analyze);
        }
        if (*sub_bounds) {
            return cmd_bounds(bounds);
        }
        if (*sub_threshold) {
            return cmd_threshold(threshold);
        }
        if (*sub_sweep) {
            return cmd_sweep(sweep);
        }
        if (*sub_check) {
            return cmd_paper_check(check);
        }
    } catch (const SolverError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const ConfigurationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitInput;
}
