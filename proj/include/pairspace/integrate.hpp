#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pairspace/conserved.hpp"
#include "pairspace/dynamics.hpp"
#include "pairspace/masses.hpp"
#include "pairspace/pairs.hpp"
#include "pairspace/state.hpp"

namespace pairspace {

enum class IntegratorMethod { RK4, AdaptiveRK };

/// Sampled particle-space trajectory. `collision` marks a run truncated by a
/// close encounter; times are strictly increasing and parallel to states.
struct Trajectory {
    std::vector<double> times;
    std::vector<SystemState> states;
    IntegratorMethod method = IntegratorMethod::RK4;
    double step = 0.0;
    bool collision = false;
};

namespace detail {

struct Phase {
    std::vector<Vec3> r;
    std::vector<Vec3> v;
};

inline Phase derivative(const MassVector& mv, const Phase& y, double G) {
    return {y.v, particle_accelerations(mv, y.r, G)};
}

inline Phase axpy(const Phase& y, double s, const Phase& d) {
    Phase out = y;
    for (std::size_t i = 0; i < out.r.size(); ++i) {
        out.r[i] += s * d.r[i];
        out.v[i] += s * d.v[i];
    }
    return out;
}

inline Phase rk4_step(const MassVector& mv, const Phase& y, double h, double G) {
    const Phase k1 = derivative(mv, y, G);
    const Phase k2 = derivative(mv, axpy(y, 0.5 * h, k1), G);
    const Phase k3 = derivative(mv, axpy(y, 0.5 * h, k2), G);
    const Phase k4 = derivative(mv, axpy(y, h, k3), G);
    Phase out = y;
    for (std::size_t i = 0; i < out.r.size(); ++i) {
        out.r[i] += (h / 6.0) * (k1.r[i] + 2.0 * k2.r[i] + 2.0 * k3.r[i] + k4.r[i]);
        out.v[i] += (h / 6.0) * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
    }
    return out;
}

inline double phase_distance(const Phase& a, const Phase& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.r.size(); ++i)
        s += squared_norm(a.r[i] - b.r[i]) + squared_norm(a.v[i] - b.v[i]);
    return std::sqrt(s);
}

inline double phase_scale(const Phase& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.r.size(); ++i)
        s += squared_norm(y.r[i]) + squared_norm(y.v[i]);
    return std::max(std::sqrt(s), 1e-300);
}

} // namespace detail

namespace detail {

inline bool phase_ok(const Phase& y, double collision_floor) {
    double dmin = 1e300;
    for (std::size_t i = 0; i < y.r.size(); ++i) {
        if (!std::isfinite(y.r[i].x) || !std::isfinite(y.r[i].y) || !std::isfinite(y.r[i].z) ||
            !std::isfinite(y.v[i].x) || !std::isfinite(y.v[i].y) || !std::isfinite(y.v[i].z))
            return false;
        for (std::size_t j = i + 1; j < y.r.size(); ++j)
            dmin = std::min(dmin, norm(y.r[i] - y.r[j]));
    }
    return dmin > collision_floor;
}

} // namespace detail

/// Integrate the particle equations of motion. RK4 takes `steps` fixed steps
/// of size dt; the adaptive method compares one full step against two halves
/// and adjusts dt to hold the step-doubling error near `adaptive_tol`,
/// stopping at t = dt*steps. Any separation falling below collision_rel times
/// the initial diameter truncates the trajectory and sets the collision flag,
/// so a homothetic total collapse is flagged like a two-body close encounter.
inline Trajectory integrate(const MassVector& mv, const SystemState& state, double dt, int steps,
                            IntegratorMethod method = IntegratorMethod::RK4,
                            double adaptive_tol = 1e-10, double collision_rel = kCollisionRel) {
    if (!(dt > 0.0) || steps < 1)
        throw std::invalid_argument("integrate: need dt > 0 and steps >= 1");
    state.check_masses(mv);

    Trajectory traj;
    traj.method = method;
    traj.step = dt;
    traj.times.push_back(0.0);
    traj.states.push_back(state);

    detail::Phase y{state.positions, state.velocities};
    const double G = state.G;
    const double collision_floor = collision_rel * state.diameter();

    auto push = [&](double t, const detail::Phase& p) {
        traj.times.push_back(t);
        traj.states.push_back(SystemState(p.r, p.v, G));
    };

    try {
        if (method == IntegratorMethod::RK4) {
            double t = 0.0;
            for (int s = 1; s <= steps; ++s) {
                y = detail::rk4_step(mv, y, dt, G);
                if (!detail::phase_ok(y, collision_floor)) {
                    traj.collision = true;
                    break;
                }
                t = dt * s;
                push(t, y);
            }
        } else {
            const double t_end = dt * steps;
            double t = 0.0;
            double h = dt;
            while (t < t_end) {
                h = std::min(h, t_end - t);
                const detail::Phase full = detail::rk4_step(mv, y, h, G);
                const detail::Phase half = detail::rk4_step(
                    mv, detail::rk4_step(mv, y, 0.5 * h, G), 0.5 * h, G);
                const double err =
                    detail::phase_distance(full, half) / 15.0 / detail::phase_scale(y);
                if (err > adaptive_tol && h > 1e-14 * t_end) {
                    h *= 0.5;
                    continue;
                }
                if (!detail::phase_ok(half, collision_floor)) {
                    traj.collision = true;
                    break;
                }
                y = half;
                t += h;
                push(t, y);
                if (err < adaptive_tol / 32.0)
                    h *= 2.0;
            }
        }
    } catch (const CollisionError&) {
        traj.collision = true;
    }
    return traj;
}

/// Relative drifts of the conserved pair quantities along a trajectory.
/// pair_drift is laid out like the stored pairs (i<j); denominators are
/// floored at a common angular-momentum scale so initially-zero components do
/// not blow up the ratio.
struct ConservationReport {
    std::size_t bodies = 0;
    std::vector<double> pair_drift;
    double total_drift = 0.0;
    double energy_drift = 0.0;
};

inline ConservationReport conservation_report(const MassVector& mv, const Trajectory& traj,
                                              double G) {
    if (traj.states.size() < 2)
        throw std::invalid_argument("conservation_report: need at least two samples");

    const std::size_t n = traj.states.front().size();
    const PairState first = pairs_from_particles(traj.states.front());

    std::vector<Vec3> L0;
    double angular_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            L0.push_back(pair_angular_momentum(mv, first, i, j));
            angular_scale = std::max(angular_scale,
                                     mv.reduced_pair(i, j) * first.configuration().distance(i, j) *
                                         norm(first.velocity(i, j)));
        }
    angular_scale = std::max(angular_scale, 1e-300);

    const Vec3 total0 = total_pair_angular_momentum(mv, first);
    const double e0 = total_pair_energy(mv, first, G);
    const double energy_scale = std::max(std::abs(e0), 1e-300);

    ConservationReport report;
    report.bodies = n;
    report.pair_drift.assign(L0.size(), 0.0);

    for (std::size_t s = 1; s < traj.states.size(); ++s) {
        const PairState ps = pairs_from_particles(traj.states[s]);
        std::size_t p = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j, ++p) {
                const Vec3 L = pair_angular_momentum(mv, ps, i, j);
                const double denom = std::max(norm(L0[p]), angular_scale);
                report.pair_drift[p] = std::max(report.pair_drift[p], norm(L - L0[p]) / denom);
            }
        const Vec3 total = total_pair_angular_momentum(mv, ps);
        report.total_drift = std::max(
            report.total_drift, norm(total - total0) / std::max(norm(total0), angular_scale));
        report.energy_drift = std::max(
            report.energy_drift, std::abs(total_pair_energy(mv, ps, G) - e0) / energy_scale);
    }
    return report;
}

} // namespace pairspace
