// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "modlab/cli/dispatch.hpp"
#include "support/oracles.hpp"

using namespace modlab;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Check {
    Outcome* out;
    void operator()(bool cond, const std::string& what) const {
        if (!cond && out->ok) {
            out->ok = false;
            out->detail = what;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<std::string(Check)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::string summary;
    try {
        summary = body(Check{&o});
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > budget_s) {
        o.ok = false;
        o.detail = "exceeded time budget";
    }
    if (!o.ok) ++failures;
    std::ostringstream t;
    t << std::fixed << std::setprecision(secs < 1 ? 4 : 1) << secs << " s";
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << id << ". " << name << " (" << t.str() << ")";
    if (!summary.empty()) std::cout << " " << summary;
    if (!o.ok) std::cout << " -- " << o.detail;
    std::cout << std::endl;
}

SparsePoly random_support_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> count(1, 12);
    std::uniform_int_distribution<int> ex(0, 10);
    SparsePoly p(default_vars());
    const std::size_t k = count(rng);
    while (p.size() < k) p.add_term(Exponent({BigInt(ex(rng)), BigInt(ex(rng)), BigInt(ex(rng))}), oracle::random_rational(rng));
    return p;
}

ProjectiveMonomialMap projective(const std::vector<std::string>& comps) {
    std::vector<SparsePoly> polys;
    for (const auto& c : comps) polys.push_back(parse_poly(c));
    return ProjectiveMonomialMap::from_polys(polys);
}

unsigned workers() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

}  // namespace

int main() {
    const IntMatrix A{{1, 1, 0}, {1, 2, 1}, {1, 1, 1}};

    criterion(1, "chart composition pi0*pi1*pi2 = A", 1e-3 * 50, [&](Check check) {
        const auto pi0 = chart("pi0"), pi1 = chart("pi1"), pi2 = chart("pi2");
        const auto t0 = std::chrono::steady_clock::now();
        const auto composed = compose_maps({pi0, pi1, pi2});
        const double us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
        check(composed.matrix() == A, "composition differs from A");
        check(composed == chart("pi"), "composition differs from chart pi");
        check(us < 1000, "composition took longer than 1 ms");
        std::ostringstream s;
        s << "compose " << std::fixed << std::setprecision(1) << us << " us";
        return s.str();
    });

    criterion(2, "spectral certificate on A", 1.0, [&](Check check) {
        const auto cert = certify_spectral(A);
        // Oracles: Leibniz determinant, interpolated characteristic polynomial, direct sign evaluation.
        check(cert.det == 1 && oracle::det(A) == 1, "det != 1");
        const auto cp = oracle::charpoly3(A);
        check(cp == (std::array<Rational, 4>{1, -4, 3, -1}), "oracle charpoly differs");
        for (std::size_t k = 0; k < 4; ++k) check(Rational(cert.charpoly[k]) == cp[k], "charpoly differs from oracle");
        auto eval = [&](const Rational& x) { return ((cp[0] * x + cp[1]) * x + cp[2]) * x + cp[3]; };
        check(cert.mu_interval.lo == 3 && cert.mu_interval.hi == Rational(13, 4), "interval is not (3, 13/4)");
        check(eval(Rational(3)) < 0 && eval(Rational(13, 4)) > 0, "no sign change on (3, 13/4)");
        check(cert.mu_greater_than_3, "property 1");
        check(cert.modulus_sq_lambda_reciprocal && cert.discriminant < 0, "property 2");
        // Eigenvectors re-derived by hand from the rows of A - mu I.
        const auto mu = CubicFieldElement::generator(cert.field);
        const auto one = CubicFieldElement::constant(cert.field, 1), three = CubicFieldElement::constant(cert.field, 3);
        const FieldVector v{one, mu - one, mu * mu - three * mu + one};
        const FieldVector w{mu * mu - three * mu + one, mu - one, one};
        for (std::size_t i = 0; i < 3; ++i) {
            auto av = CubicFieldElement::constant(cert.field, 0), wa = av;
            for (std::size_t j = 0; j < 3; ++j) {
                av = av + Rational(A(i, j)) * v[j];
                wa = wa + Rational(A(j, i)) * w[j];
            }
            check(av == mu * v[i] && wa == mu * w[i], "oracle eigenvector equation fails");
        }
        check(cert.eig.right == v && cert.eig.left == w, "eigenvectors differ from (1, mu-1, mu^2-3mu+1)");
        for (const auto& c : v) check(field_sign(c) > 0, "v not strictly positive");
        for (const auto& c : w) check(field_sign(c) > 0, "w not strictly positive");
        check(cert.direct.dominant_positive && cert.direct.plane_avoids_octant, "properties 3-4");
        check(independence_determinant(v) != 0 && independence_determinant(w) != 0, "property 5 oracle");
        check(cert.direct.plane_has_no_lattice_points && cert.transposed.plane_has_no_lattice_points, "property 5");
        check(cert.all_pass(), "certificate does not pass");
        return "mu in (" + to_string(cert.mu_interval.lo) + ", " + to_string(cert.mu_interval.hi) +
               "), indep det(w) = " + to_string(independence_determinant(w)) +
               ", det(v) = " + to_string(independence_determinant(v));
    });

    criterion(3, "iteration to principal form, 100 random polynomials", 30.0, [&](Check check) {
        const auto phi = chart("pi");
        const auto named = iterate_to_principal(parse_poly("z2 + z1^3"), phi, 64);
        check(!named.capped && named.n_found == 2, "z2 + z1^3: N != 2");
        check(named.vertex == Exponent({4, 6, 3}), "z2 + z1^3: vertex != (4,6,3)");
        std::mt19937_64 rng(2024);
        unsigned long long max_n = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const auto p = random_support_poly(rng);
            const auto r = iterate_to_principal(p, phi, 64);
            check(!r.capped, "capped on " + to_string(p));
            if (r.capped) continue;
            max_n = std::max(max_n, r.n_found);
            // Term-for-term against an independent expansion of P o Phi^N.
            const auto image = oracle::substitute_by_expansion(p, mat_pow(phi.matrix(), r.n_found));
            SparsePoly rebuilt(p.vars());
            for (const auto& [e, c] : r.remainder->terms()) rebuilt.add_term(e + r.vertex, c);
            rebuilt.add_term(r.vertex, r.constant_a);
            check(r.constant_a != 0, "a = 0");
            check(r.remainder->constant_term() == 0, "F(0) != 0");
            check(oracle::as_map(rebuilt) == oracle::as_map(image), "identity fails on " + to_string(p));
        }
        return "max N = " + std::to_string(max_n);
    });

    criterion(4, "substitution homomorphism and functoriality, 500 triples", 30.0, [&](Check check) {
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 500; ++trial) {
            const auto p = oracle::random_poly(rng, 6, 4), q = oracle::random_poly(rng, 6, 4);
            const auto m1 = oracle::random_matrix(rng, 3), m2 = oracle::random_matrix(rng, 3);
            check(substitute_monomial(p * q, m1) == substitute_monomial(p, m1) * substitute_monomial(q, m1), "product");
            check(substitute_monomial(p + q, m1) == substitute_monomial(p, m1) + substitute_monomial(q, m1), "sum");
            check(substitute_monomial(p, compose_maps({MonomialMap(m1), MonomialMap(m2)})) ==
                      substitute_monomial(substitute_monomial(p, m1), m2),
                  "functoriality");
        }
        return std::string();
    });

    criterion(5, "Lelong oracle, 10^6 samples per radius", 300.0, [&](Check check) {
        MonteCarloConfig mc;
        mc.samples = 1'000'000;
        mc.seed = 1;
        mc.workers = workers();
        const std::vector<double> radii{0.4, 0.2, 0.1};
        const auto cone = lelong_profile(projective({"z1", "z2", "z3"}), 1, CVec3{}, radii, mc);
        for (const auto& row : cone.rows) check(std::abs(row.theta - 1) < 0.1, "theta(r) not within 10% of 1");
        check(std::abs(cone.intercept - 1) < 0.1, "intercept not within 10% of 1");
        const auto smooth = lelong_profile(projective({"1", "z1", "z2", "z3"}), 1, CVec3{}, radii, mc);
        check(std::abs(smooth.intercept) <= 2 * smooth.intercept_std_error, "smooth intercept not within 2 SE of 0");
        std::ostringstream s;
        s << std::setprecision(5) << "theta = [" << cone.rows[0].theta << ", " << cone.rows[1].theta << ", "
          << cone.rows[2].theta << "], intercept " << cone.intercept << "; smooth intercept " << smooth.intercept
          << " +- " << smooth.intercept_std_error;
        return s.str();
    });

    criterion(6, "pullback matches finite differences, 10^4 points per map", 60.0, [&](Check check) {
        const std::vector<std::vector<std::string>> fixtures{
            {"z1", "z2", "z3"}, {"1", "z1", "z2", "z3"}, {"z1^2", "z2^2", "z3^2"}, {"1", "z1*z2", "z1*z2^2*z3", "z1*z2*z3"}};
        std::mt19937_64 rng(6);
        double worst = 0;
        for (const auto& comps : fixtures) {
            const auto f = projective(comps);
            for (int trial = 0; trial < 10000; ++trial) {
                const auto z = oracle::random_point(rng, 0.9);
                const auto h = fs_pullback(f, z);
                const auto fd = oracle::pullback_by_differences(f, z);
                double scale = 0, err = 0;
                for (std::size_t k = 0; k < 9; ++k) {
                    scale = std::max(scale, std::abs(fd[k]));
                    err = std::max(err, std::abs(h.h[k] - fd[k]));
                }
                worst = std::max(worst, err / scale);
            }
        }
        check(worst <= 1e-4, "relative error above 1e-4");
        std::ostringstream s;
        s << "worst relative error " << std::scientific << std::setprecision(2) << worst;
        return s.str();
    });

    criterion(7, "determinism of every command", 60.0, [&](Check check) {
        const std::vector<std::vector<std::string>> commands{
            {"spectral-cert", "--matrix", "1,1,0;1,2,1;1,1,1"},
            {"compose-charts", "pi0", "pi1", "pi2"},
            {"substitute", "--poly", "z1 + z2 + z3", "--map", "pi"},
            {"iterate", "--poly", "z2 + z1^3", "--map", "pi", "--cap", "64"},
            {"staircase", "--poly", "z2 + z1^3 + z1*z3", "--steps", "3"},
            {"lelong", "--f", "z1 : z2 : z3", "--samples", "50000", "--seed", "11", "--workers", "4"},
            {"graph-volume", "--f", "1 : z1 : z2 : z3", "--samples", "50000", "--seed", "11", "--workers", "3"},
        };
        for (const auto& args : commands) {
            std::ostringstream o1, o2, e;
            const auto a = cli::dispatch(args, o1, e), b = cli::dispatch(args, o2, e);
            check(a.exit_code == 0 && b.exit_code == 0, args.front() + " failed: " + e.str());
            if (!a.report || !b.report) continue;
            check(cli::payload(*a.report) == cli::payload(*b.report), args.front() + " payload differs");
        }
        return std::to_string(commands.size()) + " commands";
    });

    std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed" : "acceptance: all criteria pass")
              << std::endl;
    return failures ? 1 : 0;
}
