#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pairspace/errors.hpp"
#include "pairspace/masses.hpp"
#include "pairspace/vec3.hpp"

namespace pairspace {

// Bodies closer than this fraction of the configuration diameter count as
// collided.
inline constexpr double kCollisionRel = 1e-10;

/// Particle-space snapshot: positions, velocities and the gravitational
/// constant used with them. This is the source of truth the pair quantities
/// are derived from.
struct SystemState {
    std::vector<Vec3> positions;
    std::vector<Vec3> velocities;
    double G = 1.0;

    SystemState() = default;

    SystemState(std::vector<Vec3> pos, std::vector<Vec3> vel, double g = 1.0)
        : positions(std::move(pos)), velocities(std::move(vel)), G(g) {
        if (positions.size() != velocities.size())
            throw std::invalid_argument("SystemState: positions/velocities size mismatch");
        if (positions.size() < 2)
            throw std::invalid_argument("SystemState: need at least two bodies");
        if (!(G > 0.0))
            throw std::invalid_argument("SystemState: G must be positive");
    }

    std::size_t size() const { return positions.size(); }

    double diameter() const {
        double d = 0.0;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                d = std::max(d, norm(positions[i] - positions[j]));
        return d;
    }

    double min_separation() const {
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                d = std::min(d, norm(positions[i] - positions[j]));
        return d;
    }

    void require_separated(double collision_rel = kCollisionRel) const {
        if (min_separation() <= collision_rel * diameter())
            throw CollisionError("SystemState: bodies closer than collision tolerance");
    }

    // |sum m_p r_p| <= tol * M * max|r_p|
    bool is_barycentric(const MassVector& mv, double tol = 1e-12) const {
        check_masses(mv);
        Vec3 com{};
        double rmax = 0.0;
        for (std::size_t i = 0; i < size(); ++i) {
            com += mv.mass(i) * positions[i];
            rmax = std::max(rmax, norm(positions[i]));
        }
        return norm(com) <= tol * mv.total() * std::max(rmax, 1e-300);
    }

    /// Copy with the center of mass position and velocity subtracted.
    SystemState made_barycentric(const MassVector& mv) const {
        check_masses(mv);
        Vec3 rc{};
        Vec3 vc{};
        for (std::size_t i = 0; i < size(); ++i) {
            rc += mv.mass(i) * positions[i];
            vc += mv.mass(i) * velocities[i];
        }
        rc = rc / mv.total();
        vc = vc / mv.total();
        SystemState out = *this;
        for (std::size_t i = 0; i < size(); ++i) {
            out.positions[i] -= rc;
            out.velocities[i] -= vc;
        }
        return out;
    }

    void check_masses(const MassVector& mv) const {
        if (mv.size() != size())
            throw std::invalid_argument("SystemState: mass count " + std::to_string(mv.size()) +
                                        " does not match body count " + std::to_string(size()));
    }
};

} // namespace pairspace
