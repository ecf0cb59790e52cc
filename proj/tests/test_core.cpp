#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pairspace/conserved.hpp"
#include "pairspace/masses.hpp"
#include "pairspace/pairs.hpp"
#include "pairspace/state.hpp"
#include "test_helpers.hpp"

using namespace pairspace;
using testutil::random_masses;
using testutil::random_state;

TEST(MassVector, ValidatesInput) {
    EXPECT_THROW(MassVector({1.0}), std::invalid_argument);
    EXPECT_THROW(MassVector({1.0, -2.0}), std::invalid_argument);
    EXPECT_THROW(MassVector({1.0, 0.0}), std::invalid_argument);
    const MassVector mv({1.0, 2.0, 3.0});
    EXPECT_DOUBLE_EQ(mv.total(), 6.0);
}

TEST(MassVector, ReducedMasses) {
    const MassVector mv({1.0, 2.0, 3.0});
    EXPECT_DOUBLE_EQ(mv.reduced_pair(0, 1), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(mv.reduced_triplet(0, 1, 2), 6.0 / 36.0);
    EXPECT_THROW(mv.reduced_pair(1, 1), std::invalid_argument);
    EXPECT_THROW(mv.reduced_triplet(0, 1, 1), std::invalid_argument);

    // equal masses: mu_ij = m/N
    const MassVector eq({2.0, 2.0, 2.0, 2.0});
    EXPECT_DOUBLE_EQ(eq.reduced_pair(1, 3), 2.0 / 4.0);
}

TEST(PairConfiguration, DirectSubtraction) {
    const SystemState s({{0, 0, 0}, {1, 0, 0}}, {{0, 0, 0}, {0, 0, 0}});
    const PairState ps = pairs_from_particles(s);
    const Vec3 q = ps.configuration().pair(0, 1);
    EXPECT_DOUBLE_EQ(q.x, -1.0);
    EXPECT_DOUBLE_EQ(q.y, 0.0);
    EXPECT_DOUBLE_EQ(q.z, 0.0);
}

TEST(PairConfiguration, AntisymmetryIsExact) {
    std::mt19937 rng(7);
    const MassVector mv = random_masses(rng, 5);
    const SystemState s = random_state(rng, mv);
    const PairState ps = pairs_from_particles(s);
    const PairConfiguration& pc = ps.configuration();
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            if (i == j) continue;
            const Vec3 a = pc.pair(i, j);
            const Vec3 b = pc.pair(j, i);
            EXPECT_EQ(a.x, -b.x);
            EXPECT_EQ(a.y, -b.y);
            EXPECT_EQ(a.z, -b.z);
            const Vec3 va = ps.velocity(i, j);
            const Vec3 vb = ps.velocity(j, i);
            EXPECT_EQ(va.x, -vb.x);
        }
}

TEST(PairConfiguration, DegenerateAllEqualPositions) {
    const std::vector<Vec3> r(3, Vec3{1.0, 2.0, 3.0});
    const PairConfiguration pc = PairConfiguration::from_positions(r);
    for (std::size_t p = 0; p < pc.pair_count(); ++p)
        EXPECT_EQ(norm(pc.stored()[p]), 0.0);
    EXPECT_THROW(pc.require_separated(), CollisionError);
    EXPECT_EQ(verify_triangle(pc), std::numeric_limits<double>::infinity());
}

TEST(VerifyTriangle, ExactOnParticleDerivedSets) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const MassVector mv = random_masses(rng, 4);
        const SystemState s = random_state(rng, mv);
        const PairState ps = pairs_from_particles(s);
        EXPECT_LE(verify_triangle(ps.configuration()), 1e-13);
    }
}

TEST(VerifyTriangle, DetectsConstructedViolation) {
    // equilateral pair loop with the closing vector negated
    const Vec3 q12{1.0, 0.0, 0.0};
    const Vec3 q23{-0.5, std::sqrt(3.0) / 2.0, 0.0};
    const Vec3 q13 = -(q12 + q23); // wrong sign: q13 should be q12 + q23
    const PairConfiguration pc(3, {q12, q13, q23});
    EXPECT_GT(verify_triangle(pc), 0.3);
}

TEST(VerifyTriangle, EquidistantFakeIsNotRealizable) {
    // all pair vectors identical: "equidistant" in norms but violating the triangle identity
    const Vec3 q{1.0, 0.0, 0.0};
    const PairConfiguration pc(4, std::vector<Vec3>(6, q));
    EXPECT_GT(verify_triangle(pc), 0.3);
    EXPECT_FALSE(is_realizable(pc));
}

TEST(PairKineticEnergy, MatchesParticleKineticEnergy) {
    std::mt19937 rng(23);
    for (std::size_t n = 3; n <= 6; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const MassVector mv = random_masses(rng, n);
            const SystemState s = random_state(rng, mv);
            const double pair_T = pair_kinetic_energy(mv, pairs_from_particles(s));
            const double particle_T = testutil::particle_kinetic_energy(mv, s);
            EXPECT_NEAR(pair_T, particle_T, 1e-12 * particle_T);
        }
    }
}

TEST(PairKineticEnergy, ZeroVelocities) {
    const MassVector mv({1.0, 2.0, 3.0});
    const SystemState s({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, std::vector<Vec3>(3, Vec3{}));
    EXPECT_DOUBLE_EQ(pair_kinetic_energy(mv, pairs_from_particles(s)), 0.0);
}

TEST(PairKineticEnergy, TwoBodyReducedMassForm) {
    // equal masses m, relative speed u: T = (1/2)(m/2)u^2
    const double m = 3.0;
    const double u = 0.8;
    const MassVector mv({m, m});
    const SystemState s({{0, 0, 0}, {1, 0, 0}}, {{u / 2, 0, 0}, {-u / 2, 0, 0}});
    EXPECT_NEAR(pair_kinetic_energy(mv, pairs_from_particles(s)), 0.5 * (m / 2.0) * u * u, 1e-15);
}

TEST(PairKineticEnergy, TripletCorrectionVanishesOnRealizableSets) {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const MassVector mv = random_masses(rng, 5);
        const SystemState s = random_state(rng, mv);
        const PairState ps = pairs_from_particles(s);

        double pair_term = 0.0;
        double triplet_term = 0.0;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j) {
                pair_term += 0.5 * mv.reduced_pair(i, j) * squared_norm(ps.velocity(i, j));
                for (std::size_t k = j + 1; k < 5; ++k) {
                    const Vec3 loop = ps.velocity(i, j) + ps.velocity(j, k) + ps.velocity(k, i);
                    triplet_term += 0.5 * mv.reduced_triplet(i, j, k) * squared_norm(loop);
                }
            }
        EXPECT_LE(triplet_term, 1e-13 * pair_term);
    }
}

TEST(PairEnergy, RestingPairIsPurePotential) {
    const MassVector mv({1.0, 2.0, 3.0});
    const SystemState s({{0, 0, 0}, {2, 0, 0}, {0, 3, 0}}, std::vector<Vec3>(3, Vec3{}), 1.0);
    const PairState ps = pairs_from_particles(s);
    const double e = pair_energy(mv, ps, 0, 1, s.G);
    EXPECT_DOUBLE_EQ(e, -1.0 * 6.0 * mv.reduced_pair(0, 1) / 2.0);
}

TEST(PairEnergy, TotalMatchesParticleEnergy) {
    std::mt19937 rng(37);
    for (std::size_t n = 3; n <= 6; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const MassVector mv = random_masses(rng, n);
            const SystemState s = random_state(rng, mv, 1.3);
            const double pair_E = total_pair_energy(mv, pairs_from_particles(s), s.G);
            const double particle_E = testutil::particle_total_energy(mv, s);
            EXPECT_NEAR(pair_E, particle_E, 1e-12 * std::abs(particle_E));
        }
    }
}

TEST(PairEnergy, CollisionIsAnError) {
    const MassVector mv({1.0, 1.0, 1.0});
    const std::vector<Vec3> r = {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}};
    const PairState ps(PairConfiguration::from_positions(r), std::vector<Vec3>(3, Vec3{}));
    EXPECT_THROW(pair_energy(mv, ps, 0, 1, 1.0), CollisionError);
}

TEST(PairAngularMomentum, TotalMatchesParticleAngularMomentum) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const MassVector mv = random_masses(rng, 3);
        const SystemState s = random_state(rng, mv);
        const Vec3 pair_L = total_pair_angular_momentum(mv, pairs_from_particles(s));
        const Vec3 particle_L = testutil::particle_angular_momentum(mv, s);
        EXPECT_LE(norm(pair_L - particle_L), 1e-12 * norm(particle_L));
    }
}

TEST(PairAngularMomentum, ParallelVelocityGivesZero) {
    const MassVector mv({1.0, 1.0});
    const SystemState s({{0, 0, 0}, {1, 0, 0}}, {{0.3, 0, 0}, {-0.5, 0, 0}});
    const Vec3 L = pair_angular_momentum(mv, pairs_from_particles(s), 0, 1);
    EXPECT_DOUBLE_EQ(norm(L), 0.0);
}

TEST(PairAngularMomentum, RotatingEquilateralTriangle) {
    // side 1, unit masses, G=1: omega = sqrt(GM/L^3) = sqrt(3), |L_ij| = mu * omega = sqrt(3)/3
    const MassVector mv({1.0, 1.0, 1.0});
    const SystemState s = testutil::equilateral_state(mv, 1.0, std::sqrt(3.0));
    const PairState ps = pairs_from_particles(s);
    const double expected = std::sqrt(3.0) / 3.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            EXPECT_NEAR(norm(pair_angular_momentum(mv, ps, i, j)), expected, 1e-12);
}

TEST(SystemState, BarycentricOptionSubtractsCenterOfMass) {
    const MassVector mv({1.0, 3.0});
    const SystemState raw({{1, 0, 0}, {5, 0, 0}}, {{0, 1, 0}, {0, 5, 0}});
    EXPECT_FALSE(raw.is_barycentric(mv));
    const SystemState bc = raw.made_barycentric(mv);
    EXPECT_TRUE(bc.is_barycentric(mv));
    // relative separation is untouched
    EXPECT_DOUBLE_EQ(norm(bc.positions[0] - bc.positions[1]), 4.0);
}

TEST(SystemState, CollisionDetection) {
    const SystemState s({{0, 0, 0}, {1e-14, 0, 0}, {1, 0, 0}}, std::vector<Vec3>(3, Vec3{}));
    EXPECT_THROW(s.require_separated(), CollisionError);
}
