/**
 * Copyright 2026 The qfti Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "CLI11.hpp"
#include "json.hpp"

#include "qfti/circuits.hpp"
#include "qfti/emulator.hpp"
#include "qfti/error.hpp"
#include "qfti/interference.hpp"
#include "qfti/io.hpp"
#include "qfti/metrology.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using namespace qfti;

constexpr int kExitOk = 0;
constexpr int kExitNotEquivalent = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Flat JSON object whose keys are long option names of the invoked subcommand.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(std::string subcommand) : subcommand_(std::move(subcommand)) {}

    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        try {
            j = json::parse(input);
        } catch (const json::parse_error& e) {
            throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
        std::vector<CLI::ConfigItem> items;
        for (const auto& [key, value] : j.items()) {
            CLI::ConfigItem item;
            if (!subcommand_.empty()) item.parents = {subcommand_};
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(scalar(v));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
        return items;
    }

private:
    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number() || v.is_null()) return v.dump();
        throw CLI::ConversionError("config values must be scalars or arrays of scalars");
    }

    std::string subcommand_;
};

std::string num(double x) { return io::format_probability(x); }

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

void write_json(const std::string& path, const json& j) { io::write_file_atomic(path, j.dump(2) + "\n"); }

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- scenario

struct Scenario {
    std::size_t modes = 0;
    std::string input;
    std::string model = "quantum";
    std::optional<double> mixture_x;
    std::string circuit = "ideal-qft";
    std::string phase = "delta";
    double phi_min = 0.0;
    double phi_max = std::numbers::pi;
    std::size_t points = 2000;
    double visibility = 1.0;
    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    bool weighted = false;
    std::string out;
    std::string summary;
};

void require_seed(const Scenario& s) {
    if (s.shots && !s.seed) throw ValidationError("--seed is required when --shots is given");
}

UnitaryMatrix scenario_unitary(const Scenario& s) {
    if (s.circuit == "ideal-qft") return fourier_matrix(s.modes);
    if (s.circuit == "butterfly") {
        if (s.modes % 2 != 0) throw ValidationError("butterfly circuit needs an even mode count");
        return compose(butterfly_factorization(s.modes / 2));
    }
    if (s.circuit == "paper-circuit") {
        if (s.modes < 2 || s.modes > 4) throw ValidationError("paper-circuit is available for 2, 3 or 4 modes");
        return compose(paper_circuit(s.modes));
    }
    throw ValidationError("unknown circuit '" + s.circuit + "'");
}

// ---------------------------------------------------------------- qft

struct QftArgs {
    std::size_t modes = 0;
    std::string construction = "ideal";
    std::string out;
    std::string report;
};

int run_qft(const QftArgs& a) {
    if (a.modes == 0) throw ValidationError("--modes must be positive");
    std::optional<UnitaryMatrix> u;
    if (a.construction == "ideal") {
        u = fourier_matrix(a.modes);
    } else if (a.construction == "butterfly") {
        if (a.modes % 2 != 0) throw ValidationError("butterfly construction needs an even mode count");
        u = compose(butterfly_factorization(a.modes / 2));
    } else if (a.construction == "paper") {
        if (a.modes < 2 || a.modes > 4) throw ValidationError("paper construction is available for 2, 3 or 4 modes");
        u = compose(paper_circuit(a.modes));
    } else {
        throw ValidationError("unknown construction '" + a.construction + "'");
    }

    const auto rep = is_fourier_equivalent(*u);
    json j;
    j["modes"] = a.modes;
    j["construction"] = a.construction;
    j["equivalent"] = rep.equivalent;
    j["magnitudes_ok"] = rep.magnitudes_ok;
    j["distribution_ok"] = rep.distribution_ok;
    j["output_permutation"] = rep.output_permutation ? json(*rep.output_permutation) : json(nullptr);
    j["max_abs_diff_from_ideal"] = max_abs_diff(u->matrix(), fourier_matrix(a.modes).matrix());
    j["unitarity_defect"] = unitarity_defect(u->matrix());
    j["failures"] = rep.failures;

    io::write_file_atomic(a.out, io::format_matrix(u->matrix()));
    if (!a.report.empty()) write_json(a.report, j);
    std::cout << "equivalent: " << (rep.equivalent ? "true" : "false") << "\n";
    for (const auto& f : rep.failures) std::cout << "  " << f << "\n";
    return rep.equivalent ? kExitOk : kExitNotEquivalent;
}

// ---------------------------------------------------------------- distribution

json witness_json(const WitnessReport& w) {
    return {{"g_bar", w.g_bar}, {"classical_bound", w.classical_bound}, {"violated", w.violated}};
}

int run_distribution(const Scenario& s) {
    if (s.modes == 0) throw ValidationError("--modes must be positive");
    if (s.out.empty()) throw ValidationError("--out is required");
    require_seed(s);
    if (s.model == "mixture") {
        if (!s.mixture_x) throw ValidationError("--mixture-x is required for the mixture model");
    } else if (s.mixture_x) {
        throw ValidationError("--mixture-x is only valid with --model mixture");
    }
    if (s.model != "quantum" && s.model != "classical" && s.model != "mixture") {
        throw ValidationError("unknown model '" + s.model + "'");
    }

    const OccupationState input = s.input.empty() ? OccupationState::ones(s.modes) : OccupationState::parse(s.input);
    if (input.modes() != s.modes) throw ValidationError("--input has a different number of modes than --modes");
    const auto u = scenario_unitary(s);

    const auto quantum = quantum_distribution(u, input);
    std::optional<OutputDistribution> dist;
    if (s.model == "quantum") {
        dist = quantum;
    } else {
        const auto classical = classical_distribution(u, input);
        dist = s.model == "classical" ? classical : mixture_distribution(quantum, classical, *s.mixture_x);
    }

    const bool square = input == OccupationState::ones(s.modes);
    json j;
    j["modes"] = s.modes;
    j["photons"] = input.total();
    j["input"] = input.to_string();
    j["circuit"] = s.circuit;
    j["model"] = dist->model().to_string();
    j["states"] = dist->size();
    j["fidelity_vs_quantum"] = bhattacharyya_fidelity(*dist, quantum);
    j["violation_ratio"] = square ? json(violation_ratio(*dist, s.modes)) : json(nullptr);
    j["witness"] = input.total() >= 2 ? witness_json(pair_correlation_witness(*dist)) : json(nullptr);
    json verdicts = json::array();
    if (square) {
        for (const auto& st : dist->states()) {
            const auto v = suppression_predicate(s.modes, st);
            verdicts.push_back({{"state", st.to_string()}, {"suppressed", v.suppressed}, {"weighted_sum", v.weighted_sum}});
        }
    }
    j["suppression"] = verdicts;

    std::string csv;
    if (s.shots) {
        const auto sample = sample_distribution(*dist, *s.shots, *s.seed);
        csv = "state,probability,counts,empirical\n";
        for (std::size_t i = 0; i < dist->size(); ++i) {
            csv += io::csv_field(dist->states()[i].to_string()) + ',' + num(dist->probabilities()[i]) + ',' +
                   std::to_string(sample.counts[i]) + ',' + num(sample.empirical.probabilities()[i]) + '\n';
        }
        json sj;
        sj["shots"] = *s.shots;
        sj["seed"] = *s.seed;
        sj["fidelity_vs_quantum"] = bhattacharyya_fidelity(sample.empirical, quantum);
        sj["fidelity_vs_model"] = bhattacharyya_fidelity(sample.empirical, *dist);
        sj["total_variation_vs_model"] = total_variation_distance(sample.empirical, *dist);
        sj["violation_ratio"] = square ? json(violation_ratio(sample.empirical, s.modes)) : json(nullptr);
        sj["witness"] = input.total() >= 2 ? witness_json(pair_correlation_witness(sample.empirical)) : json(nullptr);
        j["sampled"] = sj;
    } else {
        csv = io::distribution_csv(*dist);
    }

    io::write_file_atomic(s.out, csv);
    if (!s.summary.empty()) write_json(s.summary, j);
    return kExitOk;
}

// ---------------------------------------------------------------- fringe

int run_fringe(const Scenario& s) {
    if (s.modes < 2) throw ValidationError("--modes must be at least 2");
    if (s.out.empty()) throw ValidationError("--out is required");
    if (s.points == 0) throw ValidationError("--points must be positive");
    if (!(s.phi_max > s.phi_min)) throw ValidationError("--phi-max must exceed --phi-min");
    if (!(s.visibility >= 0.0 && s.visibility <= 1.0)) throw ValidationError("--visibility must lie in [0, 1]");
    require_seed(s);

    const auto f = PhaseDistribution::make(parse_phase_kind(s.phase), s.modes);
    std::vector<double> grid(s.points);
    for (std::size_t i = 0; i < s.points; ++i) {
        grid[i] = s.phi_min + (s.phi_max - s.phi_min) * static_cast<double>(i) / static_cast<double>(s.points);
    }
    const auto fringe = fringe_scan(f, grid);

    json j;
    j["modes"] = s.modes;
    j["phase"] = to_string(f.kind);
    j["weights"] = f.weights;
    j["phi_min"] = s.phi_min;
    j["phi_max"] = s.phi_max;
    j["points"] = s.points;
    j["visibility"] = s.visibility;
    j["oscillations"] = count_oscillations(fringe);
    if (s.visibility > 0.0) {
        const auto r = sensitivity_report(f, s.visibility);
        j["sensitivity"] = {{"delta_phi", r.delta_phi}, {"phi_star", r.phi_star}, {"snl", r.snl},
                            {"hl", r.hl},               {"beats_snl", r.beats_snl}};
    }

    std::string csv;
    if (s.shots) {
        if (*s.shots == 0) throw ValidationError("--shots must be positive");
        const auto a = static_cast<double>(*s.shots);
        const auto records = synthesize_counts(f, grid, a, s.visibility, *s.seed);
        csv = "phi,p_ideal,counts\n";
        for (std::size_t i = 0; i < fringe.size(); ++i) {
            csv += num(fringe[i].phi) + ',' + num(fringe[i].p) + ',' + std::to_string(records[i].counts) + '\n';
        }
        const auto fit = fit_fringe(records, f, FitOptions{s.weighted});
        json fj;
        fj["seed"] = *s.seed;
        fj["expected_max_counts"] = a;
        fj["weighted"] = s.weighted;
        fj["amplitude"] = fit.amplitude;
        fj["sigma_amplitude"] = fit.sigma_amplitude;
        fj["visibility"] = fit.visibility;
        fj["visibility_raw"] = fit.visibility_raw;
        fj["sigma_visibility"] = fit.sigma_visibility;
        fj["clamped"] = fit.clamped;
        fj["residual"] = fit.residual;
        fj["c0"] = fit.c0;
        fj["c1"] = fit.c1;
        if (fit.visibility > 0.0) {
            const auto est = estimate_sensitivity(fit, f);
            fj["delta_phi"] = est.report.delta_phi;
            fj["sigma_delta_phi"] = est.sigma_delta_phi;
            fj["beats_snl"] = est.report.beats_snl;
        }
        j["fit"] = fj;
    } else {
        csv = "phi,p_ideal\n";
        for (const auto& pt : fringe) csv += num(pt.phi) + ',' + num(pt.p) + '\n';
    }

    io::write_file_atomic(s.out, csv);
    if (!s.summary.empty()) write_json(s.summary, j);
    return kExitOk;
}

// ---------------------------------------------------------------- metrology-report

struct ReportArgs {
    std::size_t max_n = 4;
    double visibility = 1.0;
    std::string out;
    std::string csv;
};

int run_metrology_report(const ReportArgs& a) {
    if (a.max_n < 2) throw ValidationError("--max-n must be at least 2");
    if (!(a.visibility > 0.0 && a.visibility <= 1.0)) throw ValidationError("--visibility must lie in (0, 1]");
    const auto rows = metrology_table(a.max_n, a.visibility);

    json j;
    j["visibility"] = a.visibility;
    j["phase"] = "delta";
    json arr = json::array();
    std::string csv = "n,delta_phi_ideal,delta_phi_optimum,delta_phi,phi_star,snl,hl,threshold,beats_snl\n";
    for (const auto& r : rows) {
        arr.push_back({{"n", r.n},
                       {"delta_phi_ideal", r.delta_phi_ideal},
                       {"delta_phi_optimum", r.delta_phi_optimum},
                       {"delta_phi", r.delta_phi},
                       {"phi_star", r.phi_star},
                       {"snl", r.snl},
                       {"hl", r.hl},
                       {"threshold", optional_number(r.threshold)},
                       {"beats_snl", r.beats_snl}});
        csv += std::to_string(r.n) + ',' + num(r.delta_phi_ideal) + ',' + num(r.delta_phi_optimum) + ',' +
               num(r.delta_phi) + ',' + num(r.phi_star) + ',' + num(r.snl) + ',' + num(r.hl) + ',' +
               (r.threshold ? num(*r.threshold) : std::string()) + ',' + (r.beats_snl ? "true" : "false") + '\n';
    }
    j["rows"] = arr;

    if (a.out.empty()) {
        print_json(j);
    } else {
        write_json(a.out, j);
    }
    if (!a.csv.empty()) io::write_file_atomic(a.csv, csv);
    return kExitOk;
}

// ---------------------------------------------------------------- wiring

void add_scenario_common(CLI::App* cmd, Scenario& s) {
    cmd->add_option("--modes,-n", s.modes, "Number of modes n")->required();
    cmd->add_option("--out,-o", s.out, "Output CSV path")->required();
    cmd->add_option("--summary", s.summary, "Output JSON summary path");
    cmd->add_option("--shots", s.shots, "Sample size (distribution) or expected max counts A (fringe)");
    cmd->add_option("--seed", s.seed, "Generator seed; required with --shots");
}

std::string subcommand_name(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config") {
            ++i;
            continue;
        }
        if (!a.empty() && a[0] != '-') return a;
    }
    return {};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiphoton interference and phase-estimation toolkit for Fourier interferometers"};
    app.require_subcommand(1);
    app.set_config("--config", "", "JSON file with option values; command-line flags take precedence");
    app.config_formatter(std::make_shared<JsonConfig>(subcommand_name(argc, argv)));
    app.allow_config_extras(CLI::config_extras_mode::error);

    QftArgs qft;
    auto* cmd_qft = app.add_subcommand("qft", "Build an n-mode Fourier transform and check it against the ideal matrix");
    cmd_qft->add_option("--modes,-n", qft.modes, "Number of modes")->required();
    cmd_qft->add_option("--construction", qft.construction, "ideal | butterfly | paper")
        ->check(CLI::IsMember({"ideal", "butterfly", "paper"}));
    cmd_qft->add_option("--out,-o", qft.out, "Matrix output path")->required();
    cmd_qft->add_option("--report", qft.report, "Equivalence report JSON path");

    Scenario dist;
    auto* cmd_dist = app.add_subcommand("distribution", "Output distribution of a Fock input through a Fourier circuit");
    add_scenario_common(cmd_dist, dist);
    cmd_dist->add_option("--input", dist.input, "Input occupation, e.g. \"1,1,1\" (default all ones)");
    cmd_dist->add_option("--model", dist.model, "quantum | classical | mixture")
        ->check(CLI::IsMember({"quantum", "classical", "mixture"}));
    cmd_dist->add_option("--mixture-x", dist.mixture_x, "Quantum weight x of the mixture model")
        ->check(CLI::Range(0.0, 1.0));
    cmd_dist->add_option("--circuit", dist.circuit, "ideal-qft | butterfly | paper-circuit")
        ->check(CLI::IsMember({"ideal-qft", "butterfly", "paper-circuit"}));

    Scenario fr;
    auto* cmd_fringe = app.add_subcommand("fringe", "Coincidence fringe of the multimode Mach-Zehnder interferometer");
    add_scenario_common(cmd_fringe, fr);
    cmd_fringe->add_option("--phase", fr.phase, "linear | delta | normalized-linear | normalized-delta")
        ->check(CLI::IsMember({"linear", "delta", "normalized-linear", "normalized-delta"}));
    cmd_fringe->add_option("--phi-min", fr.phi_min, "Grid start (radians)");
    cmd_fringe->add_option("--phi-max", fr.phi_max, "Grid end, excluded (radians)");
    cmd_fringe->add_option("--points", fr.points, "Grid size");
    cmd_fringe->add_option("--visibility,-V", fr.visibility, "Fringe visibility V");
    cmd_fringe->add_flag("--weighted", fr.weighted, "Inverse-variance weights in the fit");

    ReportArgs rep;
    auto* cmd_rep = app.add_subcommand("metrology-report", "Delta-scheme phase sensitivity table");
    cmd_rep->add_option("--max-n", rep.max_n, "Largest photon number");
    cmd_rep->add_option("--visibility,-V", rep.visibility, "Fringe visibility V");
    cmd_rep->add_option("--out,-o", rep.out, "JSON output path (stdout when omitted)");
    cmd_rep->add_option("--csv", rep.csv, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*cmd_qft) return run_qft(qft);
        if (*cmd_dist) return run_distribution(dist);
        if (*cmd_fringe) return run_fringe(fr);
        if (*cmd_rep) return run_metrology_report(rep);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitInvalid;
}
