#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pairspace/errors.hpp"
#include "pairspace/state.hpp"
#include "pairspace/vec3.hpp"

namespace pairspace {

/// Relative positions q_ij = r_i - r_j on ordered pairs. Only i<j is stored;
/// reading (j,i) returns the negated vector, so antisymmetry holds by
/// construction. Distances are cached at construction.
class PairConfiguration {
  public:
    PairConfiguration(std::size_t n, std::vector<Vec3> vectors)
        : n_(n), q_(std::move(vectors)) {
        if (n_ < 2)
            throw std::invalid_argument("PairConfiguration: need at least two bodies");
        if (q_.size() != pair_count())
            throw std::invalid_argument("PairConfiguration: wrong number of pair vectors");
        len_.resize(q_.size());
        for (std::size_t p = 0; p < q_.size(); ++p)
            len_[p] = norm(q_[p]);
    }

    static PairConfiguration from_positions(const std::vector<Vec3>& r) {
        std::size_t n = r.size();
        std::vector<Vec3> q;
        q.reserve(n * (n - 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                q.push_back(r[i] - r[j]);
        return PairConfiguration(n, std::move(q));
    }

    std::size_t size() const { return n_; }
    std::size_t pair_count() const { return n_ * (n_ - 1) / 2; }

    // Flat index of the stored (i<j) pair.
    std::size_t index(std::size_t i, std::size_t j) const {
        require_pair(i, j);
        if (i > j) std::swap(i, j);
        return i * n_ - i * (i + 1) / 2 + (j - i - 1);
    }

    Vec3 pair(std::size_t i, std::size_t j) const {
        require_pair(i, j);
        if (i < j) return q_[index(i, j)];
        return -q_[index(j, i)];
    }

    double distance(std::size_t i, std::size_t j) const { return len_[index(i, j)]; }

    double max_distance() const {
        double d = 0.0;
        for (double l : len_) d = std::max(d, l);
        return d;
    }

    double min_distance() const {
        double d = std::numeric_limits<double>::infinity();
        for (double l : len_) d = std::min(d, l);
        return d;
    }

    void require_separated(double collision_rel = kCollisionRel) const {
        if (min_distance() <= collision_rel * max_distance())
            throw CollisionError("PairConfiguration: pair distance below collision tolerance");
    }

    const std::vector<Vec3>& stored() const { return q_; }

  private:
    void require_pair(std::size_t i, std::size_t j) const {
        if (i >= n_ || j >= n_ || i == j)
            throw std::invalid_argument("PairConfiguration: bad pair index");
    }

    std::size_t n_;
    std::vector<Vec3> q_;
    std::vector<double> len_;
};

/// Largest scaled triangle defect max |q_ij + q_jk + q_ki| / (|q_ij|+|q_jk|+|q_ki|)
/// over all triplets. Zero for realizable sets; a triplet whose three norms all
/// vanish reports infinity.
inline double verify_triangle(const PairConfiguration& pc) {
    double worst = 0.0;
    const std::size_t n = pc.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const Vec3 sum = pc.pair(i, j) + pc.pair(j, k) + pc.pair(k, i);
                const double scale = pc.distance(i, j) + pc.distance(j, k) + pc.distance(k, i);
                if (scale == 0.0)
                    return std::numeric_limits<double>::infinity();
                worst = std::max(worst, norm(sum) / scale);
            }
    return worst;
}

inline bool is_realizable(const PairConfiguration& pc, double tol = 1e-12) {
    return verify_triangle(pc) <= tol;
}

/// Pair positions together with pair velocities on the same index layout.
class PairState {
  public:
    PairState(PairConfiguration config, std::vector<Vec3> velocities)
        : pc_(std::move(config)), v_(std::move(velocities)) {
        if (v_.size() != pc_.pair_count())
            throw std::invalid_argument("PairState: wrong number of pair velocities");
    }

    const PairConfiguration& configuration() const { return pc_; }
    std::size_t size() const { return pc_.size(); }

    Vec3 velocity(std::size_t i, std::size_t j) const {
        if (i < j) return v_[pc_.index(i, j)];
        return -v_[pc_.index(j, i)];
    }

  private:
    PairConfiguration pc_;
    std::vector<Vec3> v_;
};

/// q_ij = r_i - r_j, qdot_ij = v_i - v_j for all i<j.
inline PairState pairs_from_particles(const SystemState& state) {
    const std::size_t n = state.size();
    std::vector<Vec3> qdot;
    qdot.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            qdot.push_back(state.velocities[i] - state.velocities[j]);
    return PairState(PairConfiguration::from_positions(state.positions), std::move(qdot));
}

} // namespace pairspace
