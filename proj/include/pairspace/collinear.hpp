#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pairspace/errors.hpp"
#include "pairspace/linalg.hpp"
#include "pairspace/masses.hpp"
#include "pairspace/state.hpp"
#include "pairspace/vec3.hpp"

namespace pairspace {

// t/|t|^3, the signed inverse square that shows up in every collinear force term.
inline double signed_inverse_square(double t) {
    if (t == 0.0)
        throw CollisionError("signed_inverse_square: zero separation ratio");
    return (t > 0.0 ? 1.0 : -1.0) / (t * t);
}

/// Normalized coordinates of bodies on a line: slot 0 pinned at 0, slot 1 at 1,
/// the rest strictly increasing. Distance ratios and their signed
/// inverse-square sums are derived views; storing only the coordinates keeps
/// the ratio identities exact by construction.
class LineCoordinates {
  public:
    explicit LineCoordinates(std::vector<double> xs) : x_(std::move(xs)) {
        if (x_.size() < 2)
            throw std::invalid_argument("LineCoordinates: need at least two slots");
        if (x_[0] != 0.0 || x_[1] != 1.0)
            throw std::invalid_argument("LineCoordinates: slots must be normalized to x0=0, x1=1");
        for (std::size_t k = 1; k < x_.size(); ++k)
            if (!(x_[k] > x_[k - 1]))
                throw std::invalid_argument("LineCoordinates: coordinates must strictly increase");
    }

    std::size_t size() const { return x_.size(); }
    double coordinate(std::size_t i) const { return x_.at(i); }
    const std::vector<double>& coordinates() const { return x_; }

    // a^{1,2}_{i,j}; positive for i<j under the orientation that makes
    // a^{1,2}_{1,2} = 1.
    double ratio(std::size_t i, std::size_t j) const {
        if (i >= x_.size() || j >= x_.size() || i == j)
            throw std::invalid_argument("LineCoordinates::ratio: bad indices");
        return x_[j] - x_[i];
    }

    // h^{1,2}_{i,j,k}: signed inverse squares summed around the (i,j,k) loop.
    // Flips sign under transpositions of the indices.
    double inv_square_sum(std::size_t i, std::size_t j, std::size_t k) const {
        if (i == j || j == k || i == k)
            throw std::invalid_argument("LineCoordinates::inv_square_sum: indices must be distinct");
        return signed_inverse_square(ratio(i, j)) + signed_inverse_square(ratio(j, k)) +
               signed_inverse_square(ratio(k, i));
    }

  private:
    std::vector<double> x_;
};

/// Residuals of the distance-ratio equations with reference pair (1,2), scaled
/// by the total mass; one entry per pair (i,j) != (1,2) in row-major i<j
/// order. A Moulton configuration zeroes every entry.
inline std::vector<double> collinear_residuals(const MassVector& slot_masses,
                                               const LineCoordinates& line) {
    const std::size_t n = line.size();
    if (n < 3)
        throw std::invalid_argument("collinear_residuals: need at least three bodies");
    if (slot_masses.size() != n)
        throw std::invalid_argument("collinear_residuals: mass count mismatch");

    const double M = slot_masses.total();
    double bracket = M;
    for (std::size_t k = 2; k < n; ++k)
        bracket -= slot_masses.mass(k) * line.inv_square_sum(0, 1, k);

    std::vector<double> out;
    out.reserve(n * (n - 1) / 2 - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (i == 0 && j == 1) continue;
            const double a = line.ratio(i, j);
            double r = a * bracket - M / (a * a);
            for (std::size_t s = 0; s < n; ++s) {
                if (s == i || s == j) continue;
                r += slot_masses.mass(s) * line.inv_square_sum(i, j, s);
            }
            out.push_back(r / M);
        }
    return out;
}

/// A solved collinear configuration: the ordering of the original bodies along
/// the line, the normalized coordinates and the standard ratios read off them.
struct CollinearSolution {
    std::vector<int> ordering;
    std::vector<double> x;
    double residual_norm = 0.0;
    int iterations = 0;
    double alpha = 0.0;        // q_23 / q_12
    double beta = 0.0;         // q_2N / q_12
    double length_ratio = 0.0; // L / q_12 = 1 + beta
};

/// E(x) for three masses: the monotone function whose unique positive root is
/// the Euler ratio q_23/q_12.
inline double euler_function(const MassVector& mv3, double x) {
    if (mv3.size() != 3)
        throw std::invalid_argument("euler_function: expects exactly three masses");
    if (!(x > 0.0))
        throw std::invalid_argument("euler_function: x must be positive");
    const double M = mv3.total();
    const double m1 = mv3.mass(0);
    const double m3 = mv3.mass(2);
    const double x1 = 1.0 + x;
    return M * (x - 1.0 / (x * x)) + (m1 - m3 * x) * (1.0 + 1.0 / (x * x) - 1.0 / (x1 * x1));
}

// m3* = M - m1 - m2, the tail mass the N-body line collapses onto.
inline double collapsed_tail_mass(const MassVector& slot_masses) {
    if (slot_masses.size() < 3)
        throw std::invalid_argument("collapsed_tail_mass: need at least three bodies");
    return slot_masses.total() - slot_masses.mass(0) - slot_masses.mass(1);
}

/// The three-body E with m3 replaced by m3*. Its root bounds beta from below
/// and alpha from above on any solved line; for N=3 it coincides with
/// euler_function.
inline double collapsed_euler_function(const MassVector& slot_masses, double x) {
    if (!(x > 0.0))
        throw std::invalid_argument("collapsed_euler_function: x must be positive");
    const double M = slot_masses.total();
    const double m1 = slot_masses.mass(0);
    const double m3s = collapsed_tail_mass(slot_masses);
    const double x1 = 1.0 + x;
    return M * (x - 1.0 / (x * x)) + (m1 - m3s * x) * (1.0 + 1.0 / (x * x) - 1.0 / (x1 * x1));
}

/// Bisection root of a monotonically increasing function. The bracket expands
/// geometrically from [lo, hi] until it straddles the sign change, then
/// bisects to relative tolerance.
template <class F>
double find_root_monotone(F&& f, double lo = 1e-6, double hi = 1.0, double tol = 1e-14) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("find_root_monotone: bad initial bracket");

    double flo = f(lo);
    for (int k = 0; flo > 0.0 && k < 200; ++k) {
        lo *= 0.5;
        flo = f(lo);
    }
    double fhi = f(hi);
    for (int k = 0; fhi < 0.0 && k < 200; ++k) {
        hi *= 2.0;
        fhi = f(hi);
    }
    if (flo > 0.0 || fhi < 0.0)
        throw ConvergenceError("find_root_monotone: no sign change after bracket expansion",
                               {lo, hi}, std::min(std::abs(flo), std::abs(fhi)));
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;

    for (int k = 0; k < 2000 && (hi - lo) > tol * std::max(1.0, std::abs(hi)); ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (fm < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Root of the collapsed E function: beta* (= alpha*, the same number read as a
// lower bound on beta or an upper bound on alpha).
inline double collapsed_root(const MassVector& slot_masses) {
    return find_root_monotone([&](double x) { return collapsed_euler_function(slot_masses, x); });
}

struct QuarticRoots {
    double sigma = 0.0;
    double tau = 0.0;
};

/// Positive roots of the two bound quartics for pivot mass k (0-based); they
/// are reciprocals of each other.
inline QuarticRoots bracket_quartic_roots(const MassVector& mv3, std::size_t k) {
    if (mv3.size() != 3)
        throw std::invalid_argument("bracket_quartic_roots: expects exactly three masses");
    if (k > 2)
        throw std::invalid_argument("bracket_quartic_roots: pivot index out of range");
    const double ratio = (mv3.total() - mv3.mass(k)) / mv3.mass(k);

    QuarticRoots roots;
    roots.sigma = find_root_monotone([ratio](double s) {
        const double s1 = 1.0 + s;
        return ratio * s * s * s1 * s1 - 1.0 - 2.0 * s;
    });
    roots.tau = find_root_monotone([ratio](double t) {
        const double t1 = 1.0 + t;
        return t * t * t * t + 2.0 * t * t * t - ratio * t1 * t1;
    });
    return roots;
}

enum class BoundQuantity { Alpha3Body, LengthRatio, AlphaNBody };

/// A one- or two-sided bracket on a collinear ratio, tagged with the mass
/// case that produced it.
struct BoundBracket {
    BoundQuantity quantity = BoundQuantity::Alpha3Body;
    int case_id = 0;
    std::optional<double> lower;
    std::optional<double> upper;
};

/// Bracket on the three-body ratio alpha = q_23/q_12, selected by the mass
/// inequalities (masses in line order).
inline BoundBracket three_body_bracket(const MassVector& mv3) {
    if (mv3.size() != 3)
        throw std::invalid_argument("three_body_bracket: expects exactly three masses");
    const double m1 = mv3.mass(0);
    const double m2 = mv3.mass(1);
    const double m3 = mv3.mass(2);
    const double s = std::sqrt(m3 / m1);

    BoundBracket bracket;
    bracket.quantity = BoundQuantity::Alpha3Body;
    if (m1 > (4.0 / 3.0) * (m3 + m2)) {
        bracket.case_id = 1;
        bracket.lower = s;
        bracket.upper = bracket_quartic_roots(mv3, 0).tau;
    } else if (m1 >= m3) {
        bracket.case_id = 2;
        bracket.lower = s;
        bracket.upper = 1.0;
    } else if ((4.0 / 3.0) * (m1 + m2) >= m3) {
        bracket.case_id = 3;
        bracket.lower = 1.0;
        bracket.upper = s;
    } else {
        bracket.case_id = 4;
        bracket.lower = bracket_quartic_roots(mv3, 2).sigma;
        bracket.upper = s;
    }
    return bracket;
}

/// Lower bound on L/q_12 for an N-body line (masses in line order).
inline BoundBracket length_bound(const MassVector& slot_masses) {
    const double M = slot_masses.total();
    const double m1 = slot_masses.mass(0);
    const double m2 = slot_masses.mass(1);
    const double m3s = collapsed_tail_mass(slot_masses);

    BoundBracket bracket;
    bracket.quantity = BoundQuantity::LengthRatio;
    if (2.0 * m1 + m2 >= M) {
        bracket.case_id = 1;
        bracket.lower = 1.0 + std::sqrt(m3s / m1);
    } else if ((7.0 / 3.0) * (m1 + m2) >= M) {
        bracket.case_id = 2;
        bracket.lower = 2.0;
    } else {
        bracket.case_id = 3;
        const double ratio = (m1 + m2) / m3s;
        bracket.lower = 1.0 + find_root_monotone([ratio](double s) {
                            const double s1 = 1.0 + s;
                            return ratio * s * s * s1 * s1 - 1.0 - 2.0 * s;
                        });
    }
    return bracket;
}

/// Upper bound on alpha = q_23/q_12 for an N-body line (masses in line order).
inline BoundBracket alpha_bound(const MassVector& slot_masses) {
    const double M = slot_masses.total();
    const double m1 = slot_masses.mass(0);
    const double m2 = slot_masses.mass(1);
    collapsed_tail_mass(slot_masses); // size check

    BoundBracket bracket;
    bracket.quantity = BoundQuantity::AlphaNBody;
    if ((7.0 / 4.0) * m1 > M) {
        bracket.case_id = 1;
        const double ratio = (M - m1) / m1;
        bracket.upper = find_root_monotone([ratio](double t) {
            const double t1 = 1.0 + t;
            return t * t * t * t + 2.0 * t * t * t - ratio * t1 * t1;
        });
    } else if (2.0 * m1 + m2 >= M) {
        bracket.case_id = 2;
        bracket.upper = 1.0;
    } else {
        bracket.case_id = 3;
        bracket.upper = std::sqrt((M - m1 - m2) / m1);
    }
    return bracket;
}

namespace detail {

inline double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s += t * t;
    return std::sqrt(s);
}

inline bool feasible_line(const std::vector<double>& x) {
    for (std::size_t k = 1; k < x.size(); ++k)
        if (!(x[k] > x[k - 1] + 1e-12))
            return false;
    return true;
}

// One damped Gauss-Newton descent on the ratio equations. Returns the final
// coordinates; reports the residual norm and iteration count through the out
// parameters. Step damping keeps the slot ordering strict.
inline bool gauss_newton_line(const MassVector& slot_masses, std::vector<double>& x, double tol,
                              int max_iterations, double& out_residual, int& out_iterations) {
    const std::size_t n = x.size();
    const std::size_t u = n - 2;

    auto eval = [&](const std::vector<double>& xs) {
        return collinear_residuals(slot_masses, LineCoordinates(xs));
    };

    std::vector<double> r = eval(x);
    double rn = norm2(r);
    int it = 0;
    for (; it < max_iterations && rn > tol; ++it) {
        const std::size_t rows = r.size();
        std::vector<double> jac(rows * u);
        for (std::size_t c = 0; c < u; ++c) {
            const double h = 1e-7 * std::max(1.0, std::abs(x[c + 2]));
            std::vector<double> xp = x;
            std::vector<double> xm = x;
            xp[c + 2] += h;
            xm[c + 2] -= h;
            if (!feasible_line(xp) || !feasible_line(xm))
                return false;
            const std::vector<double> rp = eval(xp);
            const std::vector<double> rm = eval(xm);
            for (std::size_t row = 0; row < rows; ++row)
                jac[row * u + c] = (rp[row] - rm[row]) / (2.0 * h);
        }

        // normal equations with a whiff of Levenberg damping
        std::vector<double> jtj(u * u, 0.0);
        std::vector<double> jtr(u, 0.0);
        for (std::size_t row = 0; row < rows; ++row)
            for (std::size_t a = 0; a < u; ++a) {
                jtr[a] += jac[row * u + a] * r[row];
                for (std::size_t b = 0; b < u; ++b)
                    jtj[a * u + b] += jac[row * u + a] * jac[row * u + b];
            }
        double trace = 0.0;
        for (std::size_t a = 0; a < u; ++a) trace += jtj[a * u + a];
        for (std::size_t a = 0; a < u; ++a) jtj[a * u + a] += 1e-14 * std::max(trace, 1.0);
        for (double& t : jtr) t = -t;

        std::vector<double> delta;
        try {
            delta = linalg::solve(jtj, jtr, u);
        } catch (const std::runtime_error&) {
            return false;
        }

        double step = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving, step *= 0.5) {
            std::vector<double> cand = x;
            for (std::size_t c = 0; c < u; ++c) cand[c + 2] += step * delta[c];
            if (!feasible_line(cand)) continue;
            const std::vector<double> rc = eval(cand);
            const double rcn = norm2(rc);
            if (rcn < rn * (1.0 - 1e-4 * step) || rcn < tol) {
                x = std::move(cand);
                r = rc;
                rn = rcn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    out_residual = rn;
    out_iterations = it;
    return rn <= tol;
}

} // namespace detail

/// Solve the ratio equations for the unique collinear configuration with the
/// given ordering of bodies along the line. Damped Gauss-Newton from equal
/// spacing; if that stalls, a short continuation path from the equal-mass
/// problem restores convergence. `initial` overrides the starting coordinates.
inline CollinearSolution solve_moulton(const MassVector& mv, std::vector<int> ordering = {},
                                       double tol = 1e-13, int max_iterations = 200,
                                       const std::vector<double>* initial = nullptr) {
    const std::size_t n = mv.size();
    if (n < 3)
        throw std::invalid_argument("solve_moulton: need at least three bodies");
    if (ordering.empty()) {
        ordering.resize(n);
        std::iota(ordering.begin(), ordering.end(), 0);
    }
    const MassVector slots = mv.permuted(ordering);

    std::vector<double> x(n);
    std::iota(x.begin(), x.end(), 0.0);
    if (initial) {
        if (initial->size() != n)
            throw std::invalid_argument("solve_moulton: initial guess size mismatch");
        x = *initial;
        if (!detail::feasible_line(x) || x[0] != 0.0 || x[1] != 1.0)
            throw std::invalid_argument("solve_moulton: initial guess is not a normalized line");
    }

    double residual = 0.0;
    int iterations = 0;
    bool ok = detail::gauss_newton_line(slots, x, tol, max_iterations, residual, iterations);

    if (!ok && !initial) {
        // continuation in the masses from the equal-mass problem
        const double mean = slots.total() / static_cast<double>(n);
        std::vector<double> xc(n);
        std::iota(xc.begin(), xc.end(), 0.0);
        bool path_ok = true;
        const int stages = 8;
        for (int s = 1; s <= stages && path_ok; ++s) {
            const double t = static_cast<double>(s) / stages;
            std::vector<double> blended(n);
            for (std::size_t i = 0; i < n; ++i)
                blended[i] = (1.0 - t) * mean + t * slots.mass(i);
            double rstage = 0.0;
            int istage = 0;
            path_ok = detail::gauss_newton_line(MassVector(blended), xc, tol, max_iterations,
                                                rstage, istage);
            iterations += istage;
            residual = rstage;
        }
        if (path_ok) {
            x = xc;
            ok = true;
        }
    }

    if (!ok)
        throw ConvergenceError("solve_moulton: ratio equations did not converge", x, residual);

    CollinearSolution sol;
    sol.ordering = std::move(ordering);
    sol.x = std::move(x);
    sol.residual_norm = residual;
    sol.iterations = iterations;
    sol.alpha = sol.x[2] - 1.0;
    sol.beta = sol.x[n - 1] - 1.0;
    sol.length_ratio = sol.x[n - 1];
    return sol;
}

/// lambda of the collinear relative equilibrium: the common factor in
/// qddot_ij = -lambda q_ij once the line is scaled so q_12 = spacing.
inline double line_lambda(const MassVector& slot_masses, const LineCoordinates& line,
                          double spacing, double G) {
    double bracket = slot_masses.total();
    for (std::size_t k = 2; k < line.size(); ++k)
        bracket -= slot_masses.mass(k) * line.inv_square_sum(0, 1, k);
    return G * bracket / (spacing * spacing * spacing);
}

/// Place a solved line on the x-axis with pair (1,2) separated by `spacing`.
/// `rotating` adds the planar rigid rotation with omega = sqrt(lambda) that
/// turns the configuration into a relative equilibrium; the result is
/// barycentric either way.
inline SystemState embed_collinear(const MassVector& slot_masses, const LineCoordinates& line,
                                   double spacing, double G, bool rotating) {
    const std::size_t n = line.size();
    if (slot_masses.size() != n)
        throw std::invalid_argument("embed_collinear: mass count mismatch");

    std::vector<Vec3> positions(n);
    for (std::size_t k = 0; k < n; ++k)
        positions[k] = {line.coordinate(k) * spacing, 0.0, 0.0};

    std::vector<Vec3> velocities(n, Vec3{});
    SystemState state(std::move(positions), std::move(velocities), G);
    state = state.made_barycentric(slot_masses);

    if (rotating) {
        const double lambda = line_lambda(slot_masses, line, spacing, G);
        if (!(lambda > 0.0))
            throw std::invalid_argument("embed_collinear: non-positive lambda, cannot rotate");
        const double omega = std::sqrt(lambda);
        for (std::size_t k = 0; k < n; ++k) {
            const Vec3 r = state.positions[k];
            state.velocities[k] = {-omega * r.y + 0.0, omega * r.x + 0.0, 0.0};
        }
    }
    return state;
}

} // namespace pairspace
