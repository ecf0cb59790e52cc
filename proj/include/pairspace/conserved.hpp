#pragma once

#include <cstddef>

#include "pairspace/errors.hpp"
#include "pairspace/masses.hpp"
#include "pairspace/pairs.hpp"
#include "pairspace/vec3.hpp"

namespace pairspace {

/// Kinetic energy in pair form: sum of 1/2 mu_ij |qdot_ij|^2 minus the triplet
/// correction 1/2 mu_ijk |qdot_ij + qdot_jk + qdot_ki|^2. The correction
/// vanishes identically on realizable velocity sets but is evaluated anyway as
/// a consistency check; for barycentric states the result equals the particle
/// kinetic energy with the COM term removed.
inline double pair_kinetic_energy(const MassVector& mv, const PairState& ps) {
    const std::size_t n = ps.size();
    double pair_term = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pair_term += 0.5 * mv.reduced_pair(i, j) * squared_norm(ps.velocity(i, j));

    double triplet_term = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const Vec3 loop = ps.velocity(i, j) + ps.velocity(j, k) + ps.velocity(k, i);
                triplet_term += 0.5 * mv.reduced_triplet(i, j, k) * squared_norm(loop);
            }
    return pair_term - triplet_term;
}

/// e_ij = 1/2 mu_ij |qdot_ij|^2 - G M mu_ij / q_ij
inline double pair_energy(const MassVector& mv, const PairState& ps, std::size_t i,
                          std::size_t j, double G) {
    const PairConfiguration& pc = ps.configuration();
    const double r = pc.distance(i, j);
    if (r <= kCollisionRel * pc.max_distance())
        throw CollisionError("pair_energy: pair distance below collision tolerance");
    const double mu = mv.reduced_pair(i, j);
    return 0.5 * mu * squared_norm(ps.velocity(i, j)) - G * mv.total() * mu / r;
}

inline double total_pair_energy(const MassVector& mv, const PairState& ps, double G) {
    double e = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            e += pair_energy(mv, ps, i, j, G);
    return e;
}

/// L_ij = q_ij x mu_ij qdot_ij
inline Vec3 pair_angular_momentum(const MassVector& mv, const PairState& ps, std::size_t i,
                                  std::size_t j) {
    return cross(ps.configuration().pair(i, j), mv.reduced_pair(i, j) * ps.velocity(i, j));
}

/// Sum over pairs; equals the barycentric particle angular momentum.
inline Vec3 total_pair_angular_momentum(const MassVector& mv, const PairState& ps) {
    Vec3 total{};
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            total += pair_angular_momentum(mv, ps, i, j);
    return total;
}

} // namespace pairspace
