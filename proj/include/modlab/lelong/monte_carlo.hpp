#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <thread>
#include <vector>

#include "json.hpp"
#include "modlab/lelong/philox.hpp"
#include "modlab/lelong/projective_map.hpp"

namespace modlab {

struct MonteCarloConfig {
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::uint32_t stream = 0;  // separates estimates that share a seed (e.g. radii of a profile)
};

struct MassEstimate {
    double value = 0;
    double std_error = 0;
    std::uint64_t samples = 0;
    double radius = 0;
    int p = 0;
    std::uint64_t resampled = 0;  // draws rejected because every component vanished
};

namespace detail {

// Mean and sum of squared deviations; merged with Chan's pairwise update.
struct Moments {
    std::uint64_t n = 0;
    double mean = 0;
    double m2 = 0;
    std::uint64_t hits = 0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.n == 0) {
            hits += o.hits;
            return;
        }
        const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
        const double d = o.mean - mean;
        const double tot = na + nb;
        mean += d * nb / tot;
        m2 += o.m2 + d * d * na * nb / tot;
        n += o.n;
        hits += o.hits;
    }
};

inline constexpr std::uint64_t kChunk = 4096;

// Uniform point in the ball of radius r about center, in C^3 = R^6.
inline CVec3 sample_ball(PhiloxStream& rng, const CVec3& center, double r) {
    double g[6];
    for (int k = 0; k < 6; k += 2) {
        const double u1 = rng.uniform(), u2 = rng.uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        g[k] = rad * std::cos(2.0 * std::numbers::pi * u2);
        g[k + 1] = rad * std::sin(2.0 * std::numbers::pi * u2);
    }
    double norm = 0;
    for (double v : g) norm += v * v;
    const double scale = r * std::pow(rng.uniform(), 1.0 / 6.0) / std::sqrt(norm);
    return {center[0] + Complex(g[0], g[1]) * scale, center[1] + Complex(g[2], g[3]) * scale,
            center[2] + Complex(g[4], g[5]) * scale};
}

// Uniform-in-ball average of integrand(H). The sample sequence is split into
// fixed chunks of kChunk samples; chunk c draws from the Philox stream with
// counter words (c, stream), and workers take chunks round-robin. Chunk results
// are merged in chunk order, so the estimate does not depend on the worker count.
inline Moments integrate_ball(const ProjectiveMonomialMap& f, const CVec3& center, double r, const MonteCarloConfig& mc,
                              const std::function<double(const HermitianForm3&)>& integrand) {
    if (!(r > 0)) throw DomainError("mass_in_ball: radius must be positive");
    if (mc.samples < 1) throw DomainError("mass_in_ball: samples must be >= 1");
    if (mc.workers < 1) throw DomainError("mass_in_ball: workers must be >= 1");
    const std::uint64_t chunks = (mc.samples + kChunk - 1) / kChunk;
    if (chunks > 0xFFFFFFFFull) throw DomainError("mass_in_ball: too many samples");
    std::vector<Moments> parts(chunks);

    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t count = std::min(kChunk, mc.samples - c * kChunk);
        PhiloxStream rng(mc.seed, static_cast<std::uint32_t>(c), mc.stream);
        Moments m;
        while (m.n < count) {
            const CVec3 z = sample_ball(rng, center, r);
            try {
                const double v = integrand(fs_pullback(f, z));
                if (!std::isfinite(v)) throw DegenerateSample("non-finite integrand");
                m.add(v);
            } catch (const DegenerateSample&) {
                if (++m.hits > count) break;
            }
        }
        parts[c] = m;
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(mc.workers, chunks));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    try {
                        for (std::uint64_t c = w; c < chunks; c += workers) run_chunk(c);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    Moments total;
    for (const auto& part : parts) total.merge(part);
    if (static_cast<double>(total.hits) > 0.01 * static_cast<double>(mc.samples))
        throw DomainError("mass_in_ball: " + std::to_string(total.hits) + " of " + std::to_string(mc.samples) +
                          " samples hit the base locus (all components vanish); map is degenerate on this ball");
    return total;
}

inline MassEstimate to_estimate(const Moments& m, double r, int p) {
    const double vol = normalized_ball_volume(r);
    const double n = static_cast<double>(m.n);
    const double var = m.n > 1 ? m.m2 / (n - 1) : 0.0;
    return {m.mean * vol, std::sqrt(var / n) * vol, m.n, r, p, m.hits};
}

}  // namespace detail

// Monte Carlo estimate of the mass of (f*omega)^p ^ beta^(3-p) on the ball B(center, r).
inline MassEstimate mass_in_ball(const ProjectiveMonomialMap& f, int p, const CVec3& center, double r,
                                 const MonteCarloConfig& mc) {
    if (p < 0 || p > 3) throw DomainError("mass_in_ball: degree p must be in 0..3");
    const double c = static_cast<double>(wedge_coefficient(p, 3));
    const auto m = detail::integrate_ball(f, center, r, mc, [&](const HermitianForm3& h) { return c * sigma_p(h, p); });
    return detail::to_estimate(m, r, p);
}

// Volume of the graph over B(0, r): integral of (f*omega + beta)^3, i.e. the sum
// over p of binom(3, p) times the p-th mass, evaluated on shared samples.
inline MassEstimate graph_volume(const ProjectiveMonomialMap& f, double r, const MonteCarloConfig& mc) {
    static constexpr int binom[4] = {1, 3, 3, 1};
    double weight[4];
    for (int p = 0; p <= 3; ++p) weight[p] = binom[p] * static_cast<double>(wedge_coefficient(p, 3));
    const auto m = detail::integrate_ball(f, CVec3{}, r, mc, [&](const HermitianForm3& h) {
        double s = 0;
        for (int p = 0; p <= 3; ++p) s += weight[p] * sigma_p(h, p);
        return s;
    });
    return detail::to_estimate(m, r, 3);
}

struct LelongRow {
    double r = 0;
    double theta = 0;
    double std_error = 0;
    std::uint64_t samples = 0;
};

struct LelongReport {
    int p = 0;
    CVec3 center{};
    std::vector<LelongRow> rows;
    double intercept = 0;
    double intercept_std_error = 0;
    double slope = 0;
    double residual = 0;  // root-mean-square residual of the fit
    std::uint64_t seed = 0;
};

struct LineFit {
    double intercept = 0, slope = 0, intercept_se = 0, rms_residual = 0;
};

// Least-squares line y = a + b x. The intercept standard error combines the
// regression (residual) error with the propagated per-point errors.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& se) {
    const std::size_t n = x.size();
    LineFit fit;
    if (n == 1) {
        fit.intercept = y[0];
        fit.intercept_se = se[0];
        return fit;
    }
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < n; ++i) {
        xm += x[i] / static_cast<double>(n);
        ym += y[i] / static_cast<double>(n);
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    double rss = 0, var_mc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double res = y[i] - fit.intercept - fit.slope * x[i];
        rss += res * res;
        const double w = 1.0 / static_cast<double>(n) - xm * (x[i] - xm) / sxx;
        var_mc += w * w * se[i] * se[i];
    }
    fit.rms_residual = std::sqrt(rss / static_cast<double>(n));
    const double var_fit = n > 2 ? rss / static_cast<double>(n - 2) * (1.0 / static_cast<double>(n) + xm * xm / sxx) : 0.0;
    fit.intercept_se = std::sqrt(var_fit + var_mc);
    return fit;
}

// theta(r) = mass(r) / r^(2(3-p)) per radius, and the intercept of theta against r^2.
inline LelongReport lelong_profile(const ProjectiveMonomialMap& f, int p, const CVec3& center,
                                   const std::vector<double>& radii, const MonteCarloConfig& mc) {
    if (radii.empty()) throw DomainError("lelong_profile: no radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0)) throw DomainError("lelong_profile: radii must be positive");
        if (i > 0 && !(radii[i] < radii[i - 1])) throw DomainError("lelong_profile: radii must be strictly decreasing");
    }
    LelongReport rep;
    rep.p = p;
    rep.center = center;
    rep.seed = mc.seed;
    std::vector<double> x, y, se;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        MonteCarloConfig cfg = mc;
        cfg.stream = mc.stream + static_cast<std::uint32_t>(i);
        const auto est = mass_in_ball(f, p, center, radii[i], cfg);
        const double norm = std::pow(radii[i], 2.0 * (3 - p));
        rep.rows.push_back({radii[i], est.value / norm, est.std_error / norm, est.samples});
        x.push_back(radii[i] * radii[i]);
        y.push_back(rep.rows.back().theta);
        se.push_back(rep.rows.back().std_error);
    }
    const auto fit = fit_line(x, y, se);
    rep.intercept = fit.intercept;
    rep.intercept_std_error = fit.intercept_se;
    rep.slope = fit.slope;
    rep.residual = fit.rms_residual;
    return rep;
}

inline nlohmann::json to_json(const MassEstimate& m) {
    return {{"value", m.value},       {"stderr", m.std_error}, {"samples", m.samples},
            {"radius", m.radius},     {"p", m.p},              {"resampled", m.resampled}};
}

inline nlohmann::json to_json(const LelongReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"r", row.r}, {"theta", row.theta}, {"stderr", row.std_error}, {"samples", row.samples}});
    nlohmann::json center = nlohmann::json::array();
    for (const auto& c : r.center) center.push_back({c.real(), c.imag()});
    return {{"p", r.p},
            {"center", center},
            {"rows", rows},
            {"intercept", r.intercept},
            {"intercept_stderr", r.intercept_std_error},
            {"slope", r.slope},
            {"residual", r.residual},
            {"seed", r.seed}};
}

}  // namespace modlab
