#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pairspace/dynamics.hpp"
#include "pairspace/masses.hpp"
#include "pairspace/pairs.hpp"
#include "pairspace/state.hpp"
#include "pairspace/vec3.hpp"

namespace pairspace {

/// A_ikj = 1/q_ik^3 - 1/q_kj^3. Vanishes when k is equidistant from i and j;
/// antisymmetric in the outer indices (A_ikj = -A_jki).
inline double inverse_cube_difference(const PairConfiguration& pc, std::size_t i, std::size_t k,
                                      std::size_t j) {
    if (i == j || j == k || i == k)
        throw std::invalid_argument("inverse_cube_difference: indices must be distinct");
    const double floor = kCollisionRel * pc.max_distance();
    const double rik = pc.distance(i, k);
    const double rkj = pc.distance(k, j);
    if (rik <= floor || rkj <= floor)
        throw CollisionError("inverse_cube_difference: pair distance below collision tolerance");
    return 1.0 / (rik * rik * rik) - 1.0 / (rkj * rkj * rkj);
}

/// Q_ijk = q_ij x q_jk. Antisymmetric in the first two and last two indices,
/// invariant under cyclic permutation.
inline Vec3 pair_cross(const PairConfiguration& pc, std::size_t i, std::size_t j, std::size_t k) {
    if (i == j || j == k || i == k)
        throw std::invalid_argument("pair_cross: indices must be distinct");
    return cross(pc.pair(i, j), pc.pair(j, k));
}

enum class Classification { Central, CollinearFixedLine, CollinearCentral, Generic };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::Central: return "CENTRAL";
        case Classification::CollinearFixedLine: return "COLLINEAR_FIXED_LINE";
        case Classification::CollinearCentral: return "COLLINEAR_CENTRAL";
        case Classification::Generic: return "GENERIC";
    }
    return "GENERIC";
}

/// Result of the per-pair centrality equations. residuals[p] is the vector
/// sum_k m_k A_ikj Q_ikj for the p-th stored pair; scaled[p] divides its norm
/// by sum_k m_k (1/q_ik^3 + 1/q_kj^3) |Q_ikj|, which keeps the report
/// dimensionless and finite even when every A term vanishes.
struct CentralityReport {
    std::vector<Vec3> residuals;
    std::vector<double> scaled;
    double max_residual = 0.0;
    std::optional<double> lambda;
    std::optional<double> lambda_residual;
    bool collinear = false;
    std::optional<bool> fixed_line;
    Classification classification = Classification::Generic;
};

/// Evaluate the centrality equations on a realizable non-degenerate
/// configuration. Zero max_residual is necessary and sufficient for a
/// non-collinear realizable configuration to be central.
inline CentralityReport centrality_residual(const MassVector& mv, const PairConfiguration& pc,
                                            double realizable_tol = 1e-10) {
    if (pc.size() < 3)
        throw std::invalid_argument("centrality_residual: need at least three bodies");
    if (mv.size() != pc.size())
        throw std::invalid_argument("centrality_residual: mass count mismatch");
    pc.require_separated();
    if (verify_triangle(pc) > realizable_tol)
        throw std::invalid_argument("centrality_residual: configuration is not realizable");

    const std::size_t n = pc.size();
    CentralityReport report;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec3 residual{};
            double scale = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double a = inverse_cube_difference(pc, i, k, j);
                const Vec3 q = pair_cross(pc, i, k, j);
                residual += mv.mass(k) * a * q;
                const double rik = pc.distance(i, k);
                const double rkj = pc.distance(k, j);
                scale += mv.mass(k) * (1.0 / (rik * rik * rik) + 1.0 / (rkj * rkj * rkj)) * norm(q);
            }
            report.residuals.push_back(residual);
            report.scaled.push_back(scale > 0.0 ? norm(residual) / scale : 0.0);
            report.max_residual = std::max(report.max_residual, report.scaled.back());
        }
    return report;
}

struct LambdaFit {
    double lambda = 0.0;
    double residual = 0.0;
};

/// Least-squares fit of qddot_ij = -lambda q_ij over all pairs:
/// lambda = -sum qddot.q / sum q.q, residual = RMS|qddot + lambda q| / RMS|qddot|.
inline LambdaFit fit_lambda(const MassVector& mv, const PairConfiguration& pc, double G) {
    const std::size_t n = pc.size();
    if (mv.size() != n)
        throw std::invalid_argument("fit_lambda: mass count mismatch");

    std::vector<Vec3> accel;
    double qq = 0.0;
    double aq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec3 a = pair_acceleration(mv, pc, i, j, G);
            const Vec3 q = pc.pair(i, j);
            accel.push_back(a);
            qq += dot(q, q);
            aq += dot(a, q);
        }
    if (qq == 0.0)
        throw std::invalid_argument("fit_lambda: all pair vectors vanish");

    LambdaFit fit;
    fit.lambda = -aq / qq;
    double rest = 0.0;
    double mag = 0.0;
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++p) {
            rest += squared_norm(accel[p] + fit.lambda * pc.pair(i, j));
            mag += squared_norm(accel[p]);
        }
    fit.residual = mag > 0.0 ? std::sqrt(rest / mag) : 0.0;
    return fit;
}

/// Scaled collinearity measure max |Q_ijk| / (max distance)^2; zero for
/// configurations on a line (and for N=2, where a line always fits).
inline double collinearity_measure(const PairConfiguration& pc) {
    const std::size_t n = pc.size();
    const double d = pc.max_distance();
    if (d == 0.0 || n < 3) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                worst = std::max(worst, norm(pair_cross(pc, i, j, k)));
    return worst / (d * d);
}

/// Full instantaneous classification: collinear states split on whether the
/// (1,2) pair keeps the line fixed, non-collinear states are central exactly
/// when the centrality residuals vanish.
inline CentralityReport classification_report(const MassVector& mv, const SystemState& state,
                                              double tol = 1e-10) {
    state.check_masses(mv);
    state.require_separated();
    const PairState ps = pairs_from_particles(state);
    const PairConfiguration& pc = ps.configuration();

    CentralityReport report;
    report.collinear = collinearity_measure(pc) <= tol;
    if (report.collinear) {
        const Vec3 q = pc.pair(0, 1);
        const Vec3 qdot = ps.velocity(0, 1);
        const bool fixed = norm(cross(q, qdot)) <= tol * norm(q) * norm(qdot);
        report.fixed_line = fixed;
        report.classification =
            fixed ? Classification::CollinearFixedLine : Classification::CollinearCentral;
        if (!fixed) {
            const LambdaFit fit = fit_lambda(mv, pc, state.G);
            report.lambda = fit.lambda;
            report.lambda_residual = fit.residual;
        }
        return report;
    }

    CentralityReport residual = centrality_residual(mv, pc);
    report.residuals = std::move(residual.residuals);
    report.scaled = std::move(residual.scaled);
    report.max_residual = residual.max_residual;
    if (report.max_residual <= tol) {
        report.classification = Classification::Central;
        const LambdaFit fit = fit_lambda(mv, pc, state.G);
        report.lambda = fit.lambda;
        report.lambda_residual = fit.residual;
    } else {
        report.classification = Classification::Generic;
    }
    return report;
}

inline Classification classify(const MassVector& mv, const SystemState& state, double tol = 1e-10) {
    return classification_report(mv, state, tol).classification;
}

} // namespace pairspace
