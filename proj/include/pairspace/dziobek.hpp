#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include "pairspace/central.hpp"
#include "pairspace/linalg.hpp"
#include "pairspace/pairs.hpp"
#include "pairspace/vec3.hpp"

namespace pairspace {

/// Gamma^j: the (N-1)x(N-1) matrix A_{ab j} (Q_{ab j} . h) over the retained
/// indices a,b != j in increasing order, zero diagonal. Central masses solve
/// Gamma^j m = 0, so det Gamma^j must vanish for a central-admissible shape.
struct GammaMatrix {
    std::size_t excluded = 0;
    std::vector<std::size_t> kept;
    std::vector<double> entries; // row-major (N-1)^2
    Vec3 probe;

    double at(std::size_t r, std::size_t c) const { return entries[r * kept.size() + c]; }
};

inline GammaMatrix gamma_matrix(const PairConfiguration& pc, std::size_t j, const Vec3& h) {
    const std::size_t n = pc.size();
    if (n < 3)
        throw std::invalid_argument("gamma_matrix: need at least three bodies");
    if (j >= n)
        throw std::invalid_argument("gamma_matrix: excluded index out of range");
    pc.require_separated();

    GammaMatrix g;
    g.excluded = j;
    g.probe = h;
    for (std::size_t a = 0; a < n; ++a)
        if (a != j) g.kept.push_back(a);

    const std::size_t m = g.kept.size();
    g.entries.assign(m * m, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            if (r == c) continue;
            const std::size_t a = g.kept[r];
            const std::size_t b = g.kept[c];
            g.entries[r * m + c] =
                inverse_cube_difference(pc, a, b, j) * dot(pair_cross(pc, a, b, j), h);
        }
    return g;
}

namespace detail {

// Characteristic inverse-cube magnitude of a configuration: 1/d_min^3. The A
// entries are differences of terms bounded by this.
inline double inverse_cube_scale(const PairConfiguration& pc) {
    const double d = pc.min_distance();
    return 1.0 / (d * d * d);
}

} // namespace detail

/// det Gamma^j for every j, scaled by the Hadamard bound with floored row
/// norms: each row contributes max(||row||, 1e-3 * A_char * Q_char) to the
/// denominator. Row scaling keeps exact zeros exact (a central configuration
/// has the mass vector in the kernel), while the floor stops rows that vanish
/// because distances are equal from inflating the quotient to +-1.
inline std::vector<double> determinant_relations(const PairConfiguration& pc, const Vec3& h) {
    const std::size_t n = pc.size();
    if (n < 3)
        throw std::invalid_argument("determinant_relations: need at least three bodies");

    const double a_scale = detail::inverse_cube_scale(pc);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const GammaMatrix g = gamma_matrix(pc, j, h);
        const std::size_t m = g.kept.size();

        double q_scale = 0.0;
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) {
                if (r == c) continue;
                q_scale = std::max(q_scale,
                                   std::abs(dot(pair_cross(pc, g.kept[r], g.kept[c], j), h)));
            }
        if (q_scale == 0.0) {
            out.push_back(0.0);
            continue;
        }
        const double floor = 1e-3 * a_scale * q_scale;
        double denom = 1.0;
        for (std::size_t r = 0; r < m; ++r) {
            double row = 0.0;
            for (std::size_t c = 0; c < m; ++c)
                row += g.entries[r * m + c] * g.entries[r * m + c];
            denom *= std::max(std::sqrt(row), floor);
        }
        out.push_back(linalg::determinant(g.entries, m) / denom);
    }
    return out;
}

/// The four alternating A-products every non-collinear four-body central
/// configuration must zero. Each is returned as
/// (P1 - P2) / max(|P1| + |P2|, A_char^3); the floor keeps rounding-level
/// products of nearly equal distances from registering as violations.
inline std::array<double, 4> dziobek_products(const PairConfiguration& pc) {
    if (pc.size() != 4)
        throw std::invalid_argument("dziobek_products: expects exactly four bodies");
    pc.require_separated();

    // index triples of the two products per relation, 0-based (i,k,j) of A_{ikj}
    static constexpr std::size_t kRelations[4][2][3][3] = {
        {{{2, 1, 0}, {3, 2, 0}, {1, 3, 0}}, {{3, 1, 0}, {1, 2, 0}, {2, 3, 0}}},
        {{{0, 2, 1}, {3, 0, 1}, {2, 3, 1}}, {{0, 3, 1}, {2, 0, 1}, {3, 2, 1}}},
        {{{3, 0, 2}, {0, 1, 2}, {1, 3, 2}}, {{1, 0, 2}, {3, 1, 2}, {0, 3, 2}}},
        {{{2, 0, 3}, {0, 1, 3}, {1, 2, 3}}, {{1, 0, 3}, {2, 1, 3}, {0, 2, 3}}},
    };

    const double a_scale = detail::inverse_cube_scale(pc);
    const double floor = a_scale * a_scale * a_scale;

    std::array<double, 4> out{};
    for (std::size_t rel = 0; rel < 4; ++rel) {
        double products[2] = {1.0, 1.0};
        for (std::size_t side = 0; side < 2; ++side)
            for (std::size_t f = 0; f < 3; ++f) {
                const auto& t = kRelations[rel][side][f];
                products[side] *= inverse_cube_difference(pc, t[0], t[1], t[2]);
            }
        const double denom = std::max(std::abs(products[0]) + std::abs(products[1]), floor);
        out[rel] = (products[0] - products[1]) / denom;
    }
    return out;
}

/// Outcome of probing the determinant relations with several directions h.
struct AdmissibilityReport {
    bool admissible = false;
    double max_scaled = 0.0;
    std::vector<double> per_j_max; // over probes
    std::vector<Vec3> probes;
};

namespace detail {

// Unit normal of the configuration plane, if all pair vectors are coplanar.
inline bool plane_normal(const PairConfiguration& pc, Vec3& out) {
    const std::size_t n = pc.size();
    Vec3 best{};
    double best_norm = 0.0;
    for (std::size_t i = 0; i < n && best_norm == 0.0; ++i)
        for (std::size_t j = i + 1; j < n && best_norm == 0.0; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const Vec3 q = pair_cross(pc, i, j, k);
                const double qn = norm(q);
                if (qn > best_norm) {
                    best = q;
                    best_norm = qn;
                    break;
                }
            }
    if (best_norm == 0.0) return false;
    const Vec3 normal = best / best_norm;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(dot(pc.pair(i, j), normal)) > 1e-9 * pc.distance(i, j))
                return false;
    out = normal;
    return true;
}

} // namespace detail

/// Check the shape against the mass-independent relations with `trials`
/// seeded random probes plus the coordinate axes (and the plane normal first,
/// when the configuration is planar). Admissible means every scaled
/// determinant stays below tol for every probe; this is necessary but not
/// sufficient for the shape to support a central configuration.
inline AdmissibilityReport shape_admissible(const PairConfiguration& pc, int trials = 8,
                                            double tol = 1e-10, unsigned seed = 12345u) {
    const std::size_t n = pc.size();
    if (n < 3)
        throw std::invalid_argument("shape_admissible: need at least three bodies");

    AdmissibilityReport report;
    report.per_j_max.assign(n, 0.0);

    Vec3 normal{};
    if (detail::plane_normal(pc, normal))
        report.probes.push_back(normal);
    report.probes.push_back({1.0, 0.0, 0.0});
    report.probes.push_back({0.0, 1.0, 0.0});
    report.probes.push_back({0.0, 0.0, 1.0});

    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Vec3 h{gauss(rng), gauss(rng), gauss(rng)};
        const double hn = norm(h);
        if (hn < 1e-6) {
            --t;
            continue;
        }
        report.probes.push_back(h / hn);
    }

    for (const Vec3& h : report.probes) {
        const std::vector<double> dets = determinant_relations(pc, h);
        for (std::size_t j = 0; j < n; ++j) {
            const double v = std::abs(dets[j]);
            report.per_j_max[j] = std::max(report.per_j_max[j], v);
            report.max_scaled = std::max(report.max_scaled, v);
        }
    }
    report.admissible = report.max_scaled < tol;
    return report;
}

} // namespace pairspace
