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


#include "qfti/emulator.hpp"

#include "qfti/parallel.hpp"
#include "qfti/random.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qfti {

double expected_counts(double p, double visibility, double amplitude) {
    return (visibility * (2.0 * p - 1.0) + 1.0) / 2.0 * amplitude;
}

std::vector<CountRecord> synthesize_counts(const PhaseDistribution& f, std::span<const double> phi_grid,
                                           double amplitude, double visibility, std::uint64_t seed) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw std::invalid_argument("synthesize_counts: A must be positive");
    }
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("synthesize_counts: V must lie in [0, 1]");
    }
    const auto fringe = fringe_scan(f, phi_grid);
    std::vector<CountRecord> out(fringe.size());
    for (std::size_t i = 0; i < fringe.size(); ++i) {
        CounterRng rng(seed, i);
        const double p = std::clamp(fringe[i].p, 0.0, 1.0);
        out[i] = {fringe[i].phi, sample_poisson(rng, expected_counts(p, visibility, amplitude)), amplitude};
    }
    return out;
}

FringeFit fit_fringe(std::span<const CountRecord> records, const PhaseDistribution& f, const FitOptions& options) {
    if (records.size() < 3) throw std::invalid_argument("fit_fringe: need at least 3 records");
    std::set<double> distinct;
    for (const auto& r : records) distinct.insert(r.phi);
    if (distinct.size() < 3) throw std::invalid_argument("fit_fringe: need at least 3 distinct phases");

    std::vector<double> phis;
    phis.reserve(records.size());
    for (const auto& r : records) phis.push_back(r.phi);
    const auto fringe = fringe_scan(f, phis);

    double sw = 0, sp = 0, spp = 0, sy = 0, spy = 0;
    std::vector<double> w(records.size(), 1.0);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto y = static_cast<double>(records[i].counts);
        if (options.inverse_variance_weights) w[i] = 1.0 / std::max(y, 1.0);
        const double p = fringe[i].p;
        sw += w[i];
        sp += w[i] * p;
        spp += w[i] * p * p;
        sy += w[i] * y;
        spy += w[i] * p * y;
    }
    const double det = spp * sw - sp * sp;
    // Weighted variance of p relative to the scale of the weights.
    if (!(det > 1e-14 * sw * sw)) {
        throw std::invalid_argument("fit_fringe: degenerate design, p(phi) is constant over the records");
    }

    FringeFit fit;
    fit.points = records.size();
    fit.c1 = (sw * spy - sp * sy) / det;
    fit.c0 = (spp * sy - sp * spy) / det;

    double rss = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const double r = static_cast<double>(records[i].counts) - (fit.c1 * fringe[i].p + fit.c0);
        rss += w[i] * r * r;
    }
    fit.residual = rss;

    // (XᵀWX)⁻¹ in (c1, c0) order.
    double scale = 1.0;
    if (!options.inverse_variance_weights) {
        scale = records.size() > 2 ? rss / static_cast<double>(records.size() - 2) : 0.0;
    }
    const double var_c1 = scale * sw / det;
    const double var_c0 = scale * spp / det;
    const double cov = -scale * sp / det;

    fit.amplitude = fit.c1 + 2.0 * fit.c0;
    if (!(fit.amplitude > 0.0)) throw std::invalid_argument("fit_fringe: fitted amplitude is not positive");
    const double a2 = fit.amplitude * fit.amplitude;
    fit.visibility_raw = fit.c1 / fit.amplitude;
    const double g1 = 2.0 * fit.c0 / a2;  // ∂V/∂c1
    const double g0 = -2.0 * fit.c1 / a2; // ∂V/∂c0
    fit.sigma_visibility = std::sqrt(std::max(0.0, g1 * g1 * var_c1 + g0 * g0 * var_c0 + 2.0 * g1 * g0 * cov));
    fit.sigma_amplitude = std::sqrt(std::max(0.0, var_c1 + 4.0 * var_c0 + 4.0 * cov));
    fit.visibility = std::clamp(fit.visibility_raw, 0.0, 1.0);
    fit.clamped = fit.visibility != fit.visibility_raw;
    return fit;
}

SensitivityEstimate estimate_sensitivity(const FringeFit& fit, const PhaseDistribution& f,
                                         const OptimizerOptions& options) {
    const double v = fit.visibility;
    if (!(v > 0.0)) throw std::invalid_argument("estimate_sensitivity: fitted visibility is zero, FI = 0");
    const FringeTable table(f, options);
    const FisherOptimum opt = table.maximize(v);
    if (!(opt.fisher_info > 0.0)) throw std::invalid_argument("estimate_sensitivity: Fisher information is not positive");

    SensitivityEstimate est;
    est.report = make_sensitivity_report(f.modes(), v, opt);
    const double q = 2.0 * std::clamp(opt.p, 0.0, 1.0) - 1.0;
    const double denom = 1.0 - v * v * q * q;
    const double dfi_dv = 8.0 * v * opt.dp_dphi * opt.dp_dphi / (denom * denom);
    const double ddphi_dv = -0.5 * std::pow(opt.fisher_info, -1.5) * dfi_dv;
    est.sigma_delta_phi = std::abs(ddphi_dv) * fit.sigma_visibility;
    return est;
}

SampledDistribution sample_distribution(const OutputDistribution& dist, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_distribution: shots must be at least 1");
    std::vector<double> cdf(dist.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist.probabilities()[i];
        cdf[i] = acc;
    }
    if (!(acc > 0.0)) throw std::invalid_argument("sample_distribution: distribution has no mass");

    CounterRng rng(seed, 0);
    std::vector<std::uint64_t> counts(dist.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        // Skip zero-probability states that share a CDF value with their neighbour.
        auto idx = static_cast<std::size_t>(it - cdf.begin());
        while (dist.probabilities()[idx] == 0.0 && idx + 1 < dist.size()) ++idx;
        ++counts[idx];
    }
    std::vector<double> probs(dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i) {
        probs[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    }
    return {OutputDistribution(dist.model(), dist.photons(), dist.modes(), dist.states(), std::move(probs)),
            std::move(counts), shots};
}

double total_variation_distance(const OutputDistribution& p, const OutputDistribution& q) {
    if (!p.same_space(q)) throw std::invalid_argument("total_variation_distance: distributions are over different bases");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p.probabilities()[i] - q.probabilities()[i]);
    return 0.5 * d;
}

} // namespace qfti
