// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "qis/linalg.hpp"

namespace qis {

inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdTol = 1e-10;

/// Eigenvalues below this are treated as zero when deciding supports.
inline constexpr double kSupportTol = 1e-9;

/// Hermitian, unit-trace, positive-semidefinite operator. Invariants are
/// checked on construction; the pure() factory skips the (redundant)
/// positivity check for outer products of normalized vectors.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix mat);

    /// |psi><psi| for a nonzero amplitude vector; normalizes the input.
    static DensityMatrix pure(const ComplexVector& amplitudes);

    Eigen::Index dim() const { return mat_.rows(); }
    const ComplexMatrix& mat() const { return mat_; }

  private:
    struct Unchecked {};
    DensityMatrix(Unchecked, ComplexMatrix mat) : mat_(std::move(mat)) {}

    ComplexMatrix mat_;
};

/// Probability-weighted collection of equal-dimension density matrices.
/// Members with probability below 1e-15 are dropped on construction (the
/// count is retained) so that downstream symmetry classification never sees
/// zero-weight states.
class Ensemble {
  public:
    Ensemble(std::vector<double> probs, std::vector<DensityMatrix> states);

    std::size_t size() const { return probs_.size(); }
    double prob(std::size_t i) const { return probs_[i]; }
    const DensityMatrix& state(std::size_t i) const { return states_[i]; }
    Eigen::Index dim() const { return states_.front().dim(); }
    std::size_t dropped_zero_members() const { return dropped_; }

  private:
    std::vector<double> probs_;
    std::vector<DensityMatrix> states_;
    std::size_t dropped_ = 0;
};

enum class MeasurementKind { projective, povm };

/// A complete set of PSD measurement operators; projective families must
/// additionally satisfy Pi_j Pi_k = delta_jk Pi_j.
class MeasurementFamily {
  public:
    MeasurementFamily(std::vector<ComplexMatrix> elements, MeasurementKind kind);

    /// Rank-1 projective family from an orthonormal list of states.
    static MeasurementFamily projective_from_states(const std::vector<ComplexVector>& states);

    std::size_t size() const { return elements_.size(); }
    const ComplexMatrix& element(std::size_t j) const { return elements_[j]; }
    MeasurementKind kind() const { return kind_; }
    Eigen::Index dim() const { return elements_.front().rows(); }

  private:
    std::vector<ComplexMatrix> elements_;
    MeasurementKind kind_;
};

/// Convex combination sum_i p_i rho_i.
DensityMatrix average_state(const Ensemble& e);

/// -Tr[rho ln rho] in nats; 0 ln 0 contributes 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho || sigma) = Tr[rho ln rho] - Tr[rho ln sigma] in nats, with ln sigma
/// evaluated on sigma's numerical support. Throws SupportError when an
/// eigenvector of rho with eigenvalue > kSupportTol has sigma-expectation
/// <= kSupportTol.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Dephasing map sum_j Pi_j rho Pi_j for a projective family.
DensityMatrix dephase(const DensityMatrix& rho, const MeasurementFamily& basis);

/// Outcome probabilities Tr[rho E_j]; tiny negatives (> -1e-12) clamp to 0.
std::vector<double> measure_probs(const DensityMatrix& rho, const MeasurementFamily& m);

/// (Tr[rho X], Tr[rho Y], Tr[rho Z]) for a qubit state.
std::array<double, 3> bloch_vector(const DensityMatrix& rho);

}  // namespace qis
