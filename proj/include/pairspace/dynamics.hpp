#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pairspace/errors.hpp"
#include "pairspace/masses.hpp"
#include "pairspace/pairs.hpp"
#include "pairspace/vec3.hpp"

namespace pairspace {

namespace detail {
inline Vec3 over_cube(const PairConfiguration& pc, std::size_t i, std::size_t j) {
    const double r = pc.distance(i, j);
    if (r <= kCollisionRel * pc.max_distance())
        throw CollisionError("dynamics: pair distance below collision tolerance");
    return pc.pair(i, j) / (r * r * r);
}
} // namespace detail

/// G M (q_ij/q_ij^3 + q_jk/q_jk^3 + q_ki/q_ki^3). Antisymmetric under index
/// transpositions, invariant under cyclic permutations.
inline Vec3 triplet_force(const PairConfiguration& pc, std::size_t i, std::size_t j,
                          std::size_t k, double G, double M) {
    if (i == j || j == k || i == k)
        throw std::invalid_argument("triplet_force: indices must be distinct");
    return G * M *
           (detail::over_cube(pc, i, j) + detail::over_cube(pc, j, k) + detail::over_cube(pc, k, i));
}

/// The constraint-coupling acceleration J_ij / mu_ij = sum_k (m_k/M) F_ijk.
/// Empty sum (N=2) gives zero; antisymmetric in (i,j).
inline Vec3 coupling_acceleration(const MassVector& mv, const PairConfiguration& pc,
                                  std::size_t i, std::size_t j, double G) {
    Vec3 sum{};
    for (std::size_t k = 0; k < pc.size(); ++k) {
        if (k == i || k == j) continue;
        sum += (mv.mass(k) / mv.total()) * triplet_force(pc, i, j, k, G, mv.total());
    }
    return sum;
}

/// qddot_ij = -G M q_ij / q_ij^3 + J_ij / mu_ij. Reduces to Kepler relative
/// motion for two bodies.
inline Vec3 pair_acceleration(const MassVector& mv, const PairConfiguration& pc, std::size_t i,
                              std::size_t j, double G) {
    const Vec3 kepler = -G * mv.total() * detail::over_cube(pc, i, j);
    return kepler + coupling_acceleration(mv, pc, i, j, G);
}

/// Standard Newtonian particle accelerations a_i = sum_j G m_j (r_j - r_i)/r_ij^3.
/// Serves as the particle-space oracle for the pair equations of motion.
inline std::vector<Vec3> particle_accelerations(const MassVector& mv,
                                                const std::vector<Vec3>& positions, double G) {
    const std::size_t n = positions.size();
    if (mv.size() != n)
        throw std::invalid_argument("particle_accelerations: mass count mismatch");

    double diameter = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            diameter = std::max(diameter, norm(positions[i] - positions[j]));

    std::vector<Vec3> acc(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec3 d = positions[j] - positions[i];
            const double r = norm(d);
            if (r <= kCollisionRel * diameter)
                throw CollisionError("particle_accelerations: bodies too close");
            const Vec3 pull = d / (r * r * r);
            acc[i] += G * mv.mass(j) * pull;
            acc[j] -= G * mv.mass(i) * pull;
        }
    }
    return acc;
}

} // namespace pairspace
