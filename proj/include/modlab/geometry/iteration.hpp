#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "modlab/geometry/staircase.hpp"
#include "modlab/lattice/spectral.hpp"
#include "modlab/poly/poly_json.hpp"

namespace modlab {

struct TrajectoryStep {
    unsigned long long step = 0;
    std::size_t support = 0;
    std::size_t minimals = 0;
    std::optional<double> min_angle;  // radians; empty when fewer than two edge endpoints
};

struct IterationReport {
    unsigned long long n_found = 0;
    Exponent vertex;
    Rational constant_a;
    std::optional<SparsePoly> remainder;  // F, with F(0) = 0
    std::vector<TrajectoryStep> trajectory;
    bool capped = false;
    std::vector<std::string> warnings;
};

// Unit normal of the invariant plane of M^T (the plane is orthogonal to the
// dominant right eigenvector of M), in binary64.
inline std::array<double, 3> invariant_plane_normal(const SpectralCertificate& cert) {
    const auto& n = cert.transposed.plane_normal;
    std::array<double, 3> out{to_double(n[0]), to_double(n[1]), to_double(n[2])};
    const double len = std::sqrt(out[0] * out[0] + out[1] * out[1] + out[2] * out[2]);
    for (auto& v : out) v /= len;
    return out;
}

// Angle between the dominant eigenvector of M^T and its invariant plane: the value
// edge directions approach under iteration.
inline Float200 limit_angle(const SpectralCertificate& cert) {
    const auto& w = cert.transposed.dominant;
    const auto& v = cert.transposed.plane_normal;
    Float200 dot = 0, ww = 0, vv = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        const Float200 a = to_float200(w[k]), b = to_float200(v[k]);
        dot += a * b;
        ww += a * a;
        vv += b * b;
    }
    return boost::multiprecision::asin(boost::multiprecision::abs(dot) / boost::multiprecision::sqrt(ww * vv));
}

namespace detail {

inline void require_diagnosable(const SpectralCertificate& cert) {
    if (!cert.residual_zero || !cert.modulus_sq_lambda_reciprocal || !cert.transposed.passes())
        throw DomainError("direction_diagnostics: spectral certificate for the transposed action fails");
}

// Minimum angle between the plane with unit normal n and the difference vectors of
// the given points; empty when fewer than two points.
inline std::optional<double> min_plane_angle(const std::vector<Exponent>& pts, const std::array<double, 3>& n) {
    std::optional<double> best;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double d[3], len2 = 0, dot = 0;
            for (std::size_t k = 0; k < 3; ++k) {
                d[k] = static_cast<double>(BigInt(pts[i][k] - pts[j][k]));
                len2 += d[k] * d[k];
                dot += d[k] * n[k];
            }
            const double angle = std::asin(std::min(1.0, std::abs(dot) / std::sqrt(len2)));
            if (!best || angle < *best) best = angle;
        }
    return best;
}

// Tracks the edge endpoints (staircase minimals and hull vertices) along the
// iteration. For a unimodular map the hull vertex set is carried by the linear map,
// so it is computed once on the initial support.
class EdgeTracker {
public:
    static constexpr std::size_t kMaxHullSupport = 64;

    EdgeTracker(const ExponentSet& support) : points_(support.begin(), support.end()) {
        if (points_.size() <= kMaxHullSupport) hull_ = hull_vertex_indices(points_);
    }

    void advance(const MonomialMap& m) {
        for (auto& p : points_) p = transform_exponent(p, m.matrix());
    }

    std::vector<Exponent> endpoints(const std::vector<Exponent>& minimals) const {
        ExponentSet s(minimals.begin(), minimals.end());
        for (auto i : hull_) s.insert(points_[i]);
        return {s.begin(), s.end()};
    }

private:
    std::vector<Exponent> points_;
    std::vector<std::size_t> hull_;
};

}  // namespace detail

// Minimum angle to the invariant plane of M^T for steps 0..steps of P -> P o M.
inline std::vector<std::optional<double>> direction_diagnostics(const SparsePoly& p, const MonomialMap& m,
                                                                unsigned long long steps) {
    if (p.is_zero()) throw DomainError("direction_diagnostics: zero polynomial");
    if (m.size() != 3 || p.nvars() != 3) throw DimensionError("direction_diagnostics: expects three variables");
    const SpectralCertificate cert = certify_spectral(m.matrix());
    detail::require_diagnosable(cert);
    const auto normal = invariant_plane_normal(cert);

    auto staircase = NewtonStaircase::of(p);
    detail::EdgeTracker tracker(staircase.support);
    std::vector<std::optional<double>> angles;
    for (unsigned long long k = 0;; ++k) {
        angles.push_back(detail::min_plane_angle(tracker.endpoints(staircase.minimals), normal));
        if (k == steps) break;
        tracker.advance(m);
        staircase.support = support_image(staircase.support, m);
        staircase.minimals = minimal_elements(staircase.support);
    }
    return angles;
}

// Smallest N <= cap for which P o M^N is a monomial times a unit, with the
// factorization re-verified exactly against a single substitution by M^N.
inline IterationReport iterate_to_principal(const SparsePoly& p, const MonomialMap& m, long long cap = 64) {
    if (p.is_zero()) throw DomainError("iterate_to_principal: zero polynomial");
    if (cap < 0) throw DomainError("iterate_to_principal: cap must be non-negative");
    if (p.nvars() != m.size()) throw DimensionError("iterate_to_principal: map size differs from variable count");

    IterationReport report;
    if (!m.unimodular()) report.warnings.push_back("map is not unimodular; termination is not guaranteed");

    std::optional<std::array<double, 3>> normal;
    if (m.size() == 3) {
        try {
            const auto cert = certify_spectral(m.matrix());
            detail::require_diagnosable(cert);
            normal = invariant_plane_normal(cert);
        } catch (const DomainError& e) {
            report.warnings.push_back(std::string("no direction diagnostics: ") + e.what());
        }
    }

    SparsePoly current = p;
    std::optional<detail::EdgeTracker> tracker;
    if (normal) tracker.emplace(NewtonStaircase::of(p).support);
    for (unsigned long long n = 0;; ++n) {
        const auto staircase = NewtonStaircase::of(current);
        TrajectoryStep rec{n, staircase.support.size(), staircase.minimals.size(), std::nullopt};
        if (normal) rec.min_angle = detail::min_plane_angle(tracker->endpoints(staircase.minimals), *normal);
        report.trajectory.push_back(rec);

        if (auto f = factor_principal(current)) {
            const SparsePoly direct = substitute_monomial(p, map_power(m, n));
            const SparsePoly rebuilt = poly_mul(SparsePoly::monomial(p.vars(), f->vertex), f->unit);
            if (direct != current || rebuilt != current || f->constant() == 0 || f->remainder().constant_term() != 0)
                throw std::logic_error("iterate_to_principal: factorization identity failed");
            report.n_found = n;
            report.vertex = f->vertex;
            report.constant_a = f->constant();
            report.remainder = f->remainder();
            return report;
        }
        if (n == static_cast<unsigned long long>(cap)) break;
        current = substitute_monomial(current, m);
        if (tracker) tracker->advance(m);
    }
    report.n_found = static_cast<unsigned long long>(cap);
    report.capped = true;
    return report;
}

inline Json to_json(const IterationReport& r) {
    Json traj = Json::array();
    for (const auto& s : r.trajectory)
        traj.push_back(Json{{"step", s.step},
                            {"support", s.support},
                            {"minimals", s.minimals},
                            {"min_angle", s.min_angle ? Json(*s.min_angle) : Json(nullptr)}});
    Json vertex = Json::array();
    for (const auto& v : r.vertex.values()) vertex.push_back(bigint_to_json(v));
    Json j{{"N", r.n_found},
           {"vertex", vertex},
           {"a", r.capped ? Json(nullptr) : rational_to_json(r.constant_a)},
           {"capped", r.capped},
           {"trajectory", traj}};
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j;
}

}  // namespace modlab
