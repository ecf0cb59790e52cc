#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "pairspace/masses.hpp"
#include "pairspace/state.hpp"
#include "pairspace/vec3.hpp"

namespace testutil {

using pairspace::MassVector;
using pairspace::SystemState;
using pairspace::Vec3;

inline double uniform(std::mt19937& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3 random_vec(std::mt19937& rng, double lo, double hi) {
    return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

inline MassVector random_masses(std::mt19937& rng, std::size_t n, double lo = 0.2,
                                double hi = 2.0) {
    std::vector<double> m(n);
    for (auto& v : m) v = uniform(rng, lo, hi);
    return MassVector(m);
}

/// Random well-separated state, re-centered on the barycenter.
inline SystemState random_state(std::mt19937& rng, const MassVector& mv, double G = 1.0) {
    const std::size_t n = mv.size();
    std::vector<Vec3> r(n);
    std::vector<Vec3> v(n);
    for (;;) {
        for (auto& p : r) p = random_vec(rng, -1.0, 1.0);
        double dmin = 1e300;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                dmin = std::min(dmin, norm(r[i] - r[j]));
        if (dmin > 0.25) break;
    }
    for (auto& w : v) w = random_vec(rng, -1.0, 1.0);
    return SystemState(r, v, G).made_barycentric(mv);
}

// --- particle-space oracles (independent of the pair-space code paths) ---

inline double particle_kinetic_energy(const MassVector& mv, const SystemState& s) {
    double t = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        t += 0.5 * mv.mass(i) * squared_norm(s.velocities[i]);
    return t;
}

inline double particle_potential_energy(const MassVector& mv, const SystemState& s) {
    double v = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            v -= s.G * mv.mass(i) * mv.mass(j) / norm(s.positions[i] - s.positions[j]);
    return v;
}

inline double particle_total_energy(const MassVector& mv, const SystemState& s) {
    return particle_kinetic_energy(mv, s) + particle_potential_energy(mv, s);
}

inline Vec3 particle_angular_momentum(const MassVector& mv, const SystemState& s) {
    Vec3 L{};
    for (std::size_t i = 0; i < s.size(); ++i)
        L += cross(s.positions[i], mv.mass(i) * s.velocities[i]);
    return L;
}

// --- canonical configurations ---

/// Tight equal-mass binary plus an outer companion off the binary axis: a
/// generic, non-central, non-collinear bound state with no close encounters
/// over tens of time units.
inline SystemState hierarchical_triple_state(const MassVector& mv) {
    const double vb = 0.5 * std::sqrt(2.0);
    const double vo = 0.78;
    SystemState s({{0.5, 0, 0}, {-0.5, 0, 0}, {3.8, 0.9, 0.2}},
                  {{0, vb, 0}, {0, -vb, 0}, {-0.18, vo, 0.03}});
    return s.made_barycentric(mv);
}

/// Equilateral triangle of side `L` in the xy-plane; rigid rotation with
/// angular velocity omega about the barycenter when omega != 0.
inline SystemState equilateral_state(const MassVector& mv, double L, double omega, double G = 1.0) {
    const double h = L * std::sqrt(3.0) / 2.0;
    std::vector<Vec3> r = {{0.0, 0.0, 0.0}, {L, 0.0, 0.0}, {L / 2.0, h, 0.0}};
    std::vector<Vec3> v(3, Vec3{});
    SystemState s(r, v, G);
    s = s.made_barycentric(mv);
    for (std::size_t i = 0; i < 3; ++i)
        s.velocities[i] = {-omega * s.positions[i].y, omega * s.positions[i].x, 0.0};
    return s;
}

/// Regular tetrahedron with edge sqrt(8)*scale; all six distances are
/// bit-identical by construction.
inline std::vector<Vec3> tetrahedron_positions(double scale = 1.0) {
    return {{scale, scale, scale},
            {scale, -scale, -scale},
            {-scale, scale, -scale},
            {-scale, -scale, scale}};
}

inline std::vector<Vec3> square_positions(double side = 1.0) {
    return {{0.0, 0.0, 0.0}, {side, 0.0, 0.0}, {side, side, 0.0}, {0.0, side, 0.0}};
}

/// Equilateral triangle with all three side norms bit-identical (each side
/// vector is a signed permutation of (0,1,-1)).
inline std::vector<Vec3> exact_equilateral_positions(double scale = 1.0) {
    return {{scale, scale, 0.0}, {scale, 0.0, scale}, {0.0, scale, scale}};
}

/// Exact equilateral triangle plus a body at its centroid.
inline std::vector<Vec3> centroid_positions(double scale = 1.0) {
    std::vector<Vec3> r = exact_equilateral_positions(scale);
    r.push_back((r[0] + r[1] + r[2]) / 3.0);
    return r;
}

/// Rodrigues rotation of a point set about a unit axis.
inline std::vector<Vec3> rotated(const std::vector<Vec3>& pts, Vec3 axis, double angle) {
    axis = axis / norm(axis);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    std::vector<Vec3> out;
    out.reserve(pts.size());
    for (const Vec3& p : pts)
        out.push_back(c * p + s * cross(axis, p) + (1.0 - c) * dot(axis, p) * axis);
    return out;
}

} // namespace testutil
