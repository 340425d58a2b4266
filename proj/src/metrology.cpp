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


#include "qfti/metrology.hpp"

#include "qfti/circuits.hpp"
#include "qfti/parallel.hpp"
#include "qfti/permanent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qfti {

// ---------------------------------------------------------------- phase distributions

std::string to_string(PhaseKind kind) {
    switch (kind) {
    case PhaseKind::Linear:
        return "linear";
    case PhaseKind::Delta:
        return "delta";
    case PhaseKind::NormalizedLinear:
        return "normalized-linear";
    case PhaseKind::NormalizedDelta:
        return "normalized-delta";
    case PhaseKind::Custom:
        return "custom";
    }
    return "custom";
}

PhaseKind parse_phase_kind(std::string_view text) {
    if (text == "linear") return PhaseKind::Linear;
    if (text == "delta") return PhaseKind::Delta;
    if (text == "normalized-linear") return PhaseKind::NormalizedLinear;
    if (text == "normalized-delta") return PhaseKind::NormalizedDelta;
    throw std::invalid_argument("unknown phase distribution '" + std::string(text) + "'");
}

PhaseDistribution PhaseDistribution::linear(std::size_t n) {
    if (n == 0) throw std::invalid_argument("PhaseDistribution: n must be positive");
    PhaseDistribution f{PhaseKind::Linear, std::vector<double>(n)};
    for (std::size_t j = 0; j < n; ++j) f.weights[j] = static_cast<double>(j);
    return f;
}

PhaseDistribution PhaseDistribution::delta(std::size_t n) {
    if (n == 0) throw std::invalid_argument("PhaseDistribution: n must be positive");
    PhaseDistribution f{PhaseKind::Delta, std::vector<double>(n, 0.0)};
    f.weights[0] = 1.0;
    return f;
}

PhaseDistribution PhaseDistribution::normalized_linear(std::size_t n) {
    if (n < 2) throw std::invalid_argument("PhaseDistribution: normalized linear needs n >= 2");
    PhaseDistribution f = linear(n);
    f.kind = PhaseKind::NormalizedLinear;
    const double total = static_cast<double>(n * (n - 1)) / 2.0;
    for (auto& w : f.weights) w /= total;
    return f;
}

PhaseDistribution PhaseDistribution::normalized_delta(std::size_t n) {
    PhaseDistribution f = delta(n);
    f.kind = PhaseKind::NormalizedDelta;
    return f;
}

PhaseDistribution PhaseDistribution::custom(std::vector<double> weights) {
    if (weights.empty()) throw std::invalid_argument("PhaseDistribution: empty weight vector");
    return {PhaseKind::Custom, std::move(weights)};
}

PhaseDistribution PhaseDistribution::make(PhaseKind kind, std::size_t n) {
    switch (kind) {
    case PhaseKind::Linear:
        return linear(n);
    case PhaseKind::Delta:
        return delta(n);
    case PhaseKind::NormalizedLinear:
        return normalized_linear(n);
    case PhaseKind::NormalizedDelta:
        return normalized_delta(n);
    case PhaseKind::Custom:
        break;
    }
    throw std::invalid_argument("PhaseDistribution::make: custom weights need explicit values");
}

// ---------------------------------------------------------------- MZI evaluation

namespace {

/// U(φ) = Σ_j e^{i f_j φ} P_j with P_j = F† e_j e_jᵀ F.
class MziEvaluator {
public:
    explicit MziEvaluator(const PhaseDistribution& f) : f_(f), fourier_(fourier_matrix(f.modes()).matrix()) {}

    ComplexMatrix unitary(double phi) const { return build(phi, false); }
    ComplexMatrix derivative(double phi) const { return build(phi, true); }

    std::pair<double, double> probability_and_derivative(double phi) const {
        const ComplexMatrix u = unitary(phi);
        const ComplexMatrix du = derivative(phi);
        const std::size_t n = u.rows();
        const Complex perm = permanent(u);
        Complex dperm{};
        ComplexMatrix work = u;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) work(a, b) = du(a, b);
            dperm += permanent(work);
            for (std::size_t b = 0; b < n; ++b) work(a, b) = u(a, b);
        }
        return {std::norm(perm), 2.0 * (std::conj(perm) * dperm).real()};
    }

private:
    ComplexMatrix build(double phi, bool derivative) const {
        const std::size_t n = f_.modes();
        std::vector<Complex> diag(n);
        for (std::size_t j = 0; j < n; ++j) {
            const Complex e = std::polar(1.0, f_.weights[j] * phi);
            diag[j] = derivative ? Complex{0.0, f_.weights[j]} * e : e;
        }
        ComplexMatrix out(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Complex acc{};
                for (std::size_t j = 0; j < n; ++j) acc += std::conj(fourier_(j, a)) * diag[j] * fourier_(j, b);
                out(a, b) = acc;
            }
        return out;
    }

    const PhaseDistribution& f_;
    ComplexMatrix fourier_;
};

void require_modes(const PhaseDistribution& f, const char* who) {
    if (f.modes() == 0) throw std::invalid_argument(std::string(who) + ": empty phase distribution");
}

// p depends only on phase differences; for commensurate weights the fringe
// repeats after 2π / (smallest positive difference).
double fringe_period(const PhaseDistribution& f) {
    double smallest = 0.0;
    for (std::size_t a = 0; a < f.modes(); ++a)
        for (std::size_t b = 0; b < f.modes(); ++b) {
            const double d = std::abs(f.weights[a] - f.weights[b]);
            if (d > 1e-12 && (smallest == 0.0 || d < smallest)) smallest = d;
        }
    if (smallest == 0.0) return 2.0 * std::numbers::pi;
    return 2.0 * std::numbers::pi / smallest;
}

// Clamped FI used inside the optimizers: 0 where the fringe is saturated.
// At V = 1, FI is 0/0 where p touches 0 or 1. Below the floor the
// denominator is rounding noise.
constexpr double kDenominatorFloor = 1e-10;

double fisher_or_zero(double p, double dp, double v) {
    p = std::clamp(p, 0.0, 1.0);
    const double denom = (1.0 - v * v) + 4.0 * v * v * p * (1.0 - p);
    if (!(denom > kDenominatorFloor)) return 0.0;
    return 4.0 * v * v * dp * dp / denom;
}

template <class Fn>
double golden_section_max(Fn&& fn, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

UnitaryMatrix mzi_unitary(const PhaseDistribution& f, double phi) {
    require_modes(f, "mzi_unitary");
    return UnitaryMatrix(MziEvaluator(f).unitary(phi), 1e-12);
}

Complex coincidence_amplitude(const PhaseDistribution& f, double phi) {
    require_modes(f, "coincidence_amplitude");
    return permanent(MziEvaluator(f).unitary(phi));
}

double coincidence_probability(const PhaseDistribution& f, double phi) {
    return std::norm(coincidence_amplitude(f, phi));
}

double coincidence_derivative(const PhaseDistribution& f, double phi) {
    require_modes(f, "coincidence_derivative");
    return MziEvaluator(f).probability_and_derivative(phi).second;
}

double coincidence_derivative_numeric(const PhaseDistribution& f, double phi, double step) {
    require_modes(f, "coincidence_derivative_numeric");
    if (!(step > 0.0)) throw std::invalid_argument("coincidence_derivative_numeric: step must be positive");
    const MziEvaluator eval(f);
    auto p = [&](double x) { return std::norm(permanent(eval.unitary(x))); };
    auto central = [&](double h) { return (p(phi + h) - p(phi - h)) / (2.0 * h); };
    const double coarse = central(step);
    const double fine = central(step / 2.0);
    return (4.0 * fine - coarse) / 3.0;
}

std::vector<FringePoint> fringe_scan(const PhaseDistribution& f, std::span<const double> phi_grid) {
    require_modes(f, "fringe_scan");
    if (phi_grid.empty()) throw std::invalid_argument("fringe_scan: empty phase grid");
    const MziEvaluator eval(f);
    std::vector<FringePoint> out(phi_grid.size());
    parallel_for(phi_grid.size(), [&](std::size_t i) {
        out[i] = {phi_grid[i], std::norm(permanent(eval.unitary(phi_grid[i])))};
    });
    return out;
}

double count_oscillations(std::span<const FringePoint> fringe) {
    if (fringe.size() < 3) return 0.0;
    std::size_t extrema = 0;
    // First point: extremum if p moves away from it in one direction.
    if (fringe[1].p != fringe[0].p) ++extrema;
    int last_sign = 0;
    for (std::size_t i = 1; i < fringe.size(); ++i) {
        const double d = fringe[i].p - fringe[i - 1].p;
        const int sign = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) ++extrema;
        last_sign = sign;
    }
    return static_cast<double>(extrema) / 2.0;
}

// ---------------------------------------------------------------- Fisher information

double fisher_information(double p, double dp_dphi, double visibility) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("fisher_information: p must lie in [0, 1]");
    if (!(visibility > 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("fisher_information: visibility must lie in (0, 1]");
    }
    const double v2 = visibility * visibility;
    // 1 − V²(2p − 1)² in cancellation-free form.
    const double denom = (1.0 - v2) + 4.0 * v2 * p * (1.0 - p);
    if (!(denom > 0.0)) throw std::invalid_argument("fisher_information: saturated fringe (1 - V^2 (2p-1)^2 <= 0)");
    return 4.0 * v2 * dp_dphi * dp_dphi / denom;
}

double phase_uncertainty(double fisher_info) {
    if (!(fisher_info > 0.0)) throw std::invalid_argument("phase_uncertainty: Fisher information must be positive");
    return 1.0 / std::sqrt(fisher_info);
}

double ideal_delta_sensitivity(std::size_t n) {
    if (n < 2) throw std::invalid_argument("ideal_delta_sensitivity: n must be at least 2");
    const auto x = static_cast<double>(n);
    return std::sqrt(x / (8.0 * (x - 1.0)));
}

// ---------------------------------------------------------------- optimization

FringeTable::FringeTable(PhaseDistribution f, const OptimizerOptions& options)
    : f_(std::move(f)), options_(options), period_(0.0) {
    require_modes(f_, "FringeTable");
    if (!(options_.grid_step > 0.0)) throw std::invalid_argument("FringeTable: grid step must be positive");
    period_ = fringe_period(f_);
    // φ = 0 and φ = period are excluded: p = 1 there and FI is 0/0 at V = 1.
    const auto points = static_cast<std::size_t>(std::floor(period_ / options_.grid_step));
    for (std::size_t i = 1; i < points; ++i) phi_.push_back(static_cast<double>(i) * options_.grid_step);
    p_.resize(phi_.size());
    dp_.resize(phi_.size());
    const MziEvaluator eval(f_);
    parallel_for(phi_.size(), [&](std::size_t i) {
        const auto [p, dp] = eval.probability_and_derivative(phi_[i]);
        p_[i] = p;
        dp_[i] = dp;
    }, 16);
}

FisherOptimum FringeTable::maximize(double visibility) const {
    if (!(visibility > 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("FringeTable::maximize: visibility must lie in (0, 1]");
    }
    if (phi_.empty()) throw std::invalid_argument("FringeTable::maximize: grid step too coarse for the period");
    std::size_t best = 0;
    double best_fi = -1.0;
    for (std::size_t i = 0; i < phi_.size(); ++i) {
        const double fi = fisher_or_zero(p_[i], dp_[i], visibility);
        if (fi > best_fi) {
            best_fi = fi;
            best = i;
        }
    }
    const MziEvaluator eval(f_);
    auto fi_at = [&](double phi) {
        const auto [p, dp] = eval.probability_and_derivative(phi);
        return fisher_or_zero(p, dp, visibility);
    };
    const double lo = phi_[best == 0 ? 0 : best - 1];
    const double hi = phi_[std::min(best + 1, phi_.size() - 1)];
    FisherOptimum out{phi_[best], best_fi, p_[best], dp_[best]};
    if (hi > lo) {
        const double phi = golden_section_max(fi_at, lo, hi, options_.refine_tolerance);
        const auto [p, dp] = eval.probability_and_derivative(phi);
        const double fi = fisher_or_zero(p, dp, visibility);
        if (fi >= best_fi) out = {phi, fi, p, dp};
    }
    return out;
}

SensitivityReport make_sensitivity_report(std::size_t n, double visibility, const FisherOptimum& optimum) {
    SensitivityReport r;
    r.n = n;
    r.visibility = visibility;
    r.fisher_info = optimum.fisher_info;
    r.phi_star = optimum.phi;
    r.delta_phi = optimum.fisher_info > 0.0 ? phase_uncertainty(optimum.fisher_info)
                                            : std::numeric_limits<double>::infinity();
    r.snl = 1.0 / std::sqrt(static_cast<double>(n));
    r.hl = 1.0 / static_cast<double>(n);
    r.beats_snl = r.delta_phi < r.snl;
    return r;
}

SensitivityReport sensitivity_report(const PhaseDistribution& f, double visibility, const OptimizerOptions& options) {
    const FringeTable table(f, options);
    return make_sensitivity_report(f.modes(), visibility, table.maximize(visibility));
}

namespace {

std::optional<double> threshold_from_table(const FringeTable& table) {
    const auto n = static_cast<double>(table.phases().modes());
    if (!(table.maximize(1.0).fisher_info > n)) return std::nullopt;
    // Bisection on the SNL crossing; max_φ FI is monotone in V.
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (table.maximize(mid).fisher_info > n) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

} // namespace

std::optional<double> visibility_threshold(const PhaseDistribution& f, const OptimizerOptions& options) {
    return threshold_from_table(FringeTable(f, options));
}

std::optional<double> visibility_threshold(std::size_t n, const OptimizerOptions& options) {
    if (n < 2) throw std::invalid_argument("visibility_threshold: n must be at least 2");
    return visibility_threshold(PhaseDistribution::delta(n), options);
}

std::vector<MetrologyRow> metrology_table(std::size_t max_n, double visibility, const OptimizerOptions& options) {
    if (max_n < 2) throw std::invalid_argument("metrology_table: max n must be at least 2");
    if (!(visibility > 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("metrology_table: visibility must lie in (0, 1]");
    }
    std::vector<MetrologyRow> rows;
    for (std::size_t n = 2; n <= max_n; ++n) {
        const FringeTable table(PhaseDistribution::delta(n), options);
        const auto ideal = make_sensitivity_report(n, 1.0, table.maximize(1.0));
        const auto at_v = make_sensitivity_report(n, visibility, table.maximize(visibility));
        MetrologyRow row;
        row.n = n;
        row.delta_phi_ideal = ideal_delta_sensitivity(n);
        row.delta_phi_optimum = ideal.delta_phi;
        row.delta_phi = at_v.delta_phi;
        row.phi_star = at_v.phi_star;
        row.snl = at_v.snl;
        row.hl = at_v.hl;
        row.beats_snl = at_v.beats_snl;
        row.ideal_beats_snl = ideal.beats_snl;
        row.threshold = threshold_from_table(table);
        rows.push_back(row);
    }
    return rows;
}

NormalizedComparison compare_normalized_schemes(std::size_t n, std::span<const double> phi_grid,
                                                double slope_window) {
    if (n < 2) throw std::invalid_argument("compare_normalized_schemes: n must be at least 2");
    auto diagnose = [&](PhaseDistribution f) {
        SchemeDiagnostics d;
        d.fringe = fringe_scan(f, phi_grid);
        const double h = 1e-4;
        const double p0 = coincidence_probability(f, 0.0);
        d.curvature_at_origin = -(coincidence_probability(f, h) - 2.0 * p0 + coincidence_probability(f, -h)) / (h * h);
        const int samples = 200;
        for (int i = 1; i <= samples; ++i) {
            const double phi = slope_window * i / samples;
            d.max_slope_near_origin = std::max(d.max_slope_near_origin, std::abs(coincidence_derivative(f, phi)));
        }
        d.delta_phi_ideal = sensitivity_report(f, 1.0).delta_phi;
        d.phases = std::move(f);
        return d;
    };
    NormalizedComparison out;
    out.normalized_linear = diagnose(PhaseDistribution::normalized_linear(n));
    out.delta = diagnose(PhaseDistribution::normalized_delta(n));
    out.delta_steeper = out.delta.max_slope_near_origin > out.normalized_linear.max_slope_near_origin;
    return out;
}

} // namespace qfti
