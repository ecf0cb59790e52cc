#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pairspace {

/// Positive point masses m_1..m_N and their total M. All reduced masses are
/// derived views of this object; the total is the plain left-to-right sum of
/// the stored masses.
class MassVector {
  public:
    explicit MassVector(std::vector<double> masses) : m_(std::move(masses)) {
        if (m_.size() < 2)
            throw std::invalid_argument("MassVector: need at least two bodies");
        for (std::size_t i = 0; i < m_.size(); ++i)
            if (!(m_[i] > 0.0))
                throw std::invalid_argument("MassVector: mass " + std::to_string(i + 1) +
                                            " must be positive");
        total_ = std::accumulate(m_.begin(), m_.end(), 0.0);
    }

    std::size_t size() const { return m_.size(); }
    double mass(std::size_t i) const { return m_.at(i); }
    double total() const { return total_; }
    const std::vector<double>& masses() const { return m_; }

    // mu_ij = m_i m_j / M
    double reduced_pair(std::size_t i, std::size_t j) const {
        require_distinct(i, j);
        return m_[i] * m_[j] / total_;
    }

    // mu_ijk = m_i m_j m_k / M^2
    double reduced_triplet(std::size_t i, std::size_t j, std::size_t k) const {
        require_distinct(i, j);
        require_distinct(i, k);
        require_distinct(j, k);
        return m_[i] * m_[j] * m_[k] / (total_ * total_);
    }

    /// Masses rearranged so line slot s carries the mass of body order[s].
    MassVector permuted(const std::vector<int>& order) const {
        if (order.size() != m_.size())
            throw std::invalid_argument("MassVector::permuted: order size mismatch");
        std::vector<bool> seen(m_.size(), false);
        std::vector<double> out(m_.size());
        for (std::size_t s = 0; s < order.size(); ++s) {
            int b = order[s];
            if (b < 0 || static_cast<std::size_t>(b) >= m_.size() || seen[b])
                throw std::invalid_argument("MassVector::permuted: not a permutation");
            seen[b] = true;
            out[s] = m_[b];
        }
        return MassVector(std::move(out));
    }

  private:
    void require_distinct(std::size_t i, std::size_t j) const {
        if (i >= m_.size() || j >= m_.size())
            throw std::invalid_argument("MassVector: body index out of range");
        if (i == j)
            throw std::invalid_argument("MassVector: indices must be distinct");
    }

    std::vector<double> m_;
    double total_ = 0.0;
};

} // namespace pairspace
