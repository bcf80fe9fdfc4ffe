#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "modlab/lelong/monte_carlo.hpp"
#include "modlab/poly/parser.hpp"
#include "support/oracles.hpp"

using namespace modlab;

namespace {

ProjectiveMonomialMap map_of(const std::string& text) {
    std::vector<SparsePoly> comps;
    std::string cur;
    for (char c : text + ":") {
        if (c == ':') {
            comps.push_back(parse_poly(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return ProjectiveMonomialMap::from_polys(comps);
}

const std::vector<std::string> kFixtures{"z1 : z2 : z3", "1 : z1 : z2 : z3", "z1^2 : z2^2 : z3^2",
                                         "1 : z1*z2 : z1*z2^2*z3 : z1*z2*z3", "z1*z2 : 3*z3^2 : -1/2*z1^3"};

MonteCarloConfig mc(std::uint64_t samples, std::uint64_t seed = 1, unsigned workers = 1) {
    MonteCarloConfig c;
    c.samples = samples;
    c.seed = seed;
    c.workers = workers;
    return c;
}

}  // namespace

TEST(Philox, KnownAnswerVectors) {
    // Published test vectors of the Random123 distribution for philox4x32-10.
    EXPECT_EQ(Philox4x32({0, 0})({0, 0, 0, 0}), (Philox4x32::Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32({0xffffffff, 0xffffffff})({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}),
              (Philox4x32::Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32({0xa4093822, 0x299f31d0})({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}),
              (Philox4x32::Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, StreamsAreReproducibleAndDistinct) {
    PhiloxStream a(42, 0, 0), b(42, 0, 0), c(42, 1, 0), d(43, 0, 0);
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        EXPECT_EQ(x, b.uniform());
        EXPECT_GT(x, 0.0);
        EXPECT_LT(x, 1.0);
        EXPECT_NE(x, c.uniform());
        EXPECT_NE(x, d.uniform());
    }
}

TEST(Philox, UniformMoments) {
    PhiloxStream s(7, 0, 0);
    double sum = 0, sum2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        sum += u;
        sum2 += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.005);
    EXPECT_NEAR(sum2 / n - (sum / n) * (sum / n), 1.0 / 12, 0.002);
}

TEST(WedgeCoefficient, ExteriorAlgebraOracle) {
    // Expand (sum_j h_j e_j)^p ^ (sum_j e_j)^(n-p) over commuting 2-forms e_j with
    // e_j ^ e_j = 0: every ordering of n distinct indices contributes once to the
    // top form, with the first p factors carrying h. Collect by the set of h indices.
    for (int n = 1; n <= 4; ++n)
        for (int p = 0; p <= n; ++p) {
            std::vector<int> idx(static_cast<std::size_t>(n));
            std::iota(idx.begin(), idx.end(), 0);
            std::map<std::vector<int>, long> coeff;
            do {
                std::vector<int> s(idx.begin(), idx.begin() + p);
                std::sort(s.begin(), s.end());
                ++coeff[s];
            } while (std::next_permutation(idx.begin(), idx.end()));
            for (const auto& [s, c] : coeff) EXPECT_EQ(Rational(c), wedge_coefficient(p, n)) << n << " " << p;
        }
    EXPECT_THROW(wedge_coefficient(4, 3), DomainError);
}

TEST(WedgeCoefficient, BallVolume) {
    EXPECT_DOUBLE_EQ(normalized_ball_volume(1.0), 1.0 / 6);
    EXPECT_DOUBLE_EQ(normalized_ball_volume(0.5), std::pow(0.5, 6) / 6);
    EXPECT_DOUBLE_EQ(normalized_ball_volume(2.0, 1), 4.0);
}

TEST(Pullback, ClosedFormForStandardProjection) {
    // For [z1:z2:z3], H_jk = (|z|^2 delta_jk - conj(z_j) z_k) / |z|^4.
    const auto f = map_of("z1 : z2 : z3");
    const CVec3 z{Complex(0.3, -0.1), Complex(-0.2, 0.5), Complex(0.1, 0.05)};
    double n2 = 0;
    for (const auto& c : z) n2 += std::norm(c);
    const auto h = fs_pullback(f, z);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
            const Complex want = ((j == k ? n2 : 0.0) - std::conj(z[j]) * z[k]) / (n2 * n2);
            EXPECT_NEAR(std::abs(h(j, k) - want), 0.0, 1e-12);
        }
    EXPECT_NEAR(sigma_p(h, 3), 0.0, 1e-9);  // rank 2
}

TEST(Pullback, MatchesFiniteDifferences) {
    std::mt19937_64 rng(41);
    for (const auto& text : kFixtures) {
        const auto f = map_of(text);
        for (int trial = 0; trial < 2000; ++trial) {
            const auto z = oracle::random_point(rng, 0.9);
            const auto h = fs_pullback(f, z);
            const auto fd = oracle::pullback_by_differences(f, z);
            double scale = 0;
            for (const auto& v : fd) scale = std::max(scale, std::abs(v));
            for (std::size_t k = 0; k < 9; ++k)
                ASSERT_LE(std::abs(h.h[k] - fd[k]), 1e-4 * scale) << text << " entry " << k;
        }
    }
}

TEST(Pullback, DbarPotentialMatchesOracle) {
    std::mt19937_64 rng(42);
    for (const auto& text : kFixtures) {
        const auto f = map_of(text);
        for (int trial = 0; trial < 200; ++trial) {
            const auto z = oracle::random_point(rng);
            const auto a = dbar_log_potential(f, z), b = oracle::dbar_log_g(f, z);
            for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(a[k] - b[k]), 0.0, 1e-9 * (1 + std::abs(b[k])));
        }
    }
}

TEST(Pullback, HermitianPositiveSemidefinite) {
    std::mt19937_64 rng(43);
    for (const auto& text : kFixtures) {
        const auto f = map_of(text);
        for (int trial = 0; trial < 2000; ++trial) {
            const auto h = fs_pullback(f, oracle::random_point(rng));
            Eigen::Matrix3cd m;
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) m(j, k) = h(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
            ASSERT_LE((m - m.adjoint()).norm(), 1e-14 * (1 + m.norm()));
            const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(m);
            const auto ev = es.eigenvalues();
            ASSERT_GE(ev.minCoeff(), -1e-9 * std::max(1.0, ev.maxCoeff())) << text;
            // sigma_p are the elementary symmetric functions of the eigenvalues.
            EXPECT_NEAR(sigma_p(h, 1), ev.sum(), 1e-9 * (1 + std::abs(ev.sum())));
            const double e2 = ev(0) * ev(1) + ev(0) * ev(2) + ev(1) * ev(2);
            EXPECT_NEAR(sigma_p(h, 2), e2, 1e-8 * (1 + std::abs(e2)));
            EXPECT_NEAR(sigma_p(h, 3), ev.prod(), 1e-8 * (1 + std::abs(ev.prod())));
        }
    }
}

TEST(Pullback, Errors) {
    const auto f = map_of("z1 : z2 : z3");
    EXPECT_THROW(fs_pullback(f, CVec3{}), DegenerateSample);
    EXPECT_THROW(map_of("z1 + z2 : z3"), DomainError);
    EXPECT_THROW(map_of("z1"), DomainError);
    EXPECT_THROW(map_of("0 : 0"), DomainError);
    EXPECT_THROW(sigma_p(HermitianForm3::identity(), 4), DomainError);
}

TEST(MonteCarlo, ConstantIntegrandIsExact) {
    // p = 0: the mass is the ball volume itself with zero variance.
    const auto est = mass_in_ball(map_of("z1 : z2 : z3"), 0, CVec3{}, 0.5, mc(5000));
    EXPECT_NEAR(est.value, normalized_ball_volume(0.5) * 6, 1e-15);
    EXPECT_EQ(est.std_error, 0.0);
}

TEST(MonteCarlo, GraphVolumeOfConstantMap) {
    const auto est = graph_volume(map_of("1 : 0 : 0"), 0.5, mc(4096));
    EXPECT_NEAR(est.value, std::pow(0.5, 6), 1e-15);
}

TEST(MonteCarlo, SeedDeterminismAndWorkerIndependence) {
    const auto f = map_of("1 : z1 : z2 : z3");
    const auto a = mass_in_ball(f, 1, CVec3{}, 0.3, mc(20000, 5, 1));
    const auto b = mass_in_ball(f, 1, CVec3{}, 0.3, mc(20000, 5, 1));
    const auto c = mass_in_ball(f, 1, CVec3{}, 0.3, mc(20000, 5, 4));
    const auto d = mass_in_ball(f, 1, CVec3{}, 0.3, mc(20000, 6, 1));
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_EQ(a.value, c.value);
    EXPECT_EQ(a.std_error, c.std_error);
    EXPECT_NE(a.value, d.value);
}

TEST(MonteCarlo, StandardProjectionHasUnitDensity) {
    const auto est = mass_in_ball(map_of("z1 : z2 : z3"), 1, CVec3{}, 0.3, mc(100000, 3, 4));
    const double theta = est.value / std::pow(0.3, 4);
    EXPECT_NEAR(theta, 1.0, 5 * est.std_error / std::pow(0.3, 4) + 1e-3);
}

TEST(MonteCarlo, SquaredCoordinatesDoubleTheDensity) {
    const auto rep = lelong_profile(map_of("z1^2 : z2^2 : z3^2"), 1, CVec3{}, {0.2}, mc(100000, 9, 4));
    EXPECT_NEAR(rep.rows[0].theta, 2.0, 0.05);
}

TEST(MonteCarlo, SmoothMapHasVanishingDensity) {
    const auto f = map_of("1 : z1 : z2 : z3");
    const auto rep = lelong_profile(f, 1, CVec3{}, {0.5, 0.25, 0.125}, mc(100000, 2, 4));
    EXPECT_GT(rep.rows[0].theta, rep.rows[2].theta);
    EXPECT_LT(std::abs(rep.intercept), 3 * rep.intercept_std_error + 1e-3);
}

TEST(MonteCarlo, OffCenterBall) {
    // Away from the indeterminacy point the standard projection is smooth.
    const CVec3 c{Complex(0.5, 0), Complex(0, 0), Complex(0, 0)};
    const auto rep = lelong_profile(map_of("z1 : z2 : z3"), 1, c, {0.2, 0.1, 0.05}, mc(50000, 4, 2));
    EXPECT_LT(rep.rows.back().theta, 0.2);
}

TEST(MonteCarlo, InvalidArguments) {
    const auto f = map_of("z1 : z2 : z3");
    EXPECT_THROW(mass_in_ball(f, 1, CVec3{}, 0.0, mc(10)), DomainError);
    EXPECT_THROW(mass_in_ball(f, 4, CVec3{}, 0.1, mc(10)), DomainError);
    EXPECT_THROW(mass_in_ball(f, 1, CVec3{}, 0.1, mc(0)), DomainError);
    EXPECT_THROW(lelong_profile(f, 1, CVec3{}, {0.1, 0.2}, mc(10)), DomainError);
    EXPECT_THROW(lelong_profile(f, 1, CVec3{}, {}, mc(10)), DomainError);
}

TEST(MonteCarlo, DegenerateSamplingAborts) {
    // Every sample rejected: the 1% budget is exhausted. A base locus of measure zero is fine.
    const auto f = map_of("z1 : z2 : z3");
    EXPECT_THROW(detail::integrate_ball(f, CVec3{}, 0.1, mc(1000),
                                        [](const HermitianForm3&) -> double { throw DegenerateSample("forced"); }),
                 DomainError);
    EXPECT_NO_THROW(mass_in_ball(map_of("z1 : 0 : 0"), 1, CVec3{}, 0.1, mc(1000)));
}

TEST(LineFit, ExactLineAndSe) {
    const auto fit = fit_line({1, 2, 3}, {3, 5, 7}, {0, 0, 0});
    EXPECT_NEAR(fit.intercept, 1, 1e-12);
    EXPECT_NEAR(fit.slope, 2, 1e-12);
    EXPECT_NEAR(fit.intercept_se, 0, 1e-9);
    const auto noisy = fit_line({1, 2, 3}, {3, 5, 7}, {0.1, 0.1, 0.1});
    EXPECT_GT(noisy.intercept_se, 0.1);
}

TEST(LelongJson, Shape) {
    const auto rep = lelong_profile(map_of("z1 : z2 : z3"), 1, CVec3{}, {0.4, 0.2}, mc(4096));
    const auto j = to_json(rep);
    EXPECT_EQ(j["rows"].size(), 2u);
    for (const char* key : {"p", "center", "intercept", "intercept_stderr", "slope", "residual", "seed"})
        EXPECT_TRUE(j.contains(key)) << key;
}
