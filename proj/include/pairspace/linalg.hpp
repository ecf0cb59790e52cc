#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pairspace::linalg {

/// Determinant of a dense row-major n x n matrix by LU with partial pivoting.
/// The copy is destroyed in place.
inline double determinant(std::vector<double> a, std::size_t n) {
    if (a.size() != n * n)
        throw std::invalid_argument("determinant: matrix size mismatch");
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double cand = std::abs(a[row * n + col]);
            if (cand > best) {
                best = cand;
                pivot = row;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a[pivot * n + c], a[col * n + c]);
            det = -det;
        }
        det *= a[col * n + col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c)
                a[row * n + c] -= f * a[col * n + c];
        }
    }
    return det;
}

/// Solve A x = b for a dense row-major n x n system by Gaussian elimination
/// with partial pivoting. Throws on a numerically singular matrix.
inline std::vector<double> solve(std::vector<double> a, std::vector<double> b, std::size_t n) {
    if (a.size() != n * n || b.size() != n)
        throw std::invalid_argument("solve: size mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double cand = std::abs(a[row * n + col]);
            if (cand > best) {
                best = cand;
                pivot = row;
            }
        }
        if (best == 0.0)
            throw std::runtime_error("solve: singular matrix");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a[pivot * n + c], a[col * n + c]);
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row * n + col] / a[col * n + col];
            b[row] -= f * b[col];
            for (std::size_t c = col; c < n; ++c)
                a[row * n + c] -= f * a[col * n + c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t row = n; row-- > 0;) {
        double s = b[row];
        for (std::size_t c = row + 1; c < n; ++c)
            s -= a[row * n + c] * x[c];
        x[row] = s / (a[row * n + row]);
    }
    return x;
}

} // namespace pairspace::linalg
