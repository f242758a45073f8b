// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qis/quantum.hpp"

namespace qis {

/// U(1)-twirling specification: the Hermitian generator plus the width used
/// to cluster nearby eigenvalues into one degenerate block.
struct TwirlSpec {
    ComplexMatrix generator;
    double degeneracy_tol = 1e-8;
};

/// Exact G-twirl sum_n Pi_n rho Pi_n over the generator's spectral blocks.
/// Eigenvalues are grouped by single-linkage clustering on the sorted
/// spectrum with width degeneracy_tol.
DensityMatrix twirl(const DensityMatrix& rho, const TwirlSpec& spec);

/// Trapezoidal approximation of (1/2T) int_{-T}^{T} e^{-iHt} rho e^{iHt} dt.
/// Off-diagonal survivors decay like sinc(domega T).
DensityMatrix finite_time_twirl(const DensityMatrix& rho, const TwirlSpec& spec, double T,
                                std::size_t steps);

/// Relative entropy of asymmetry A(rho; H) = S(rho || G_H(rho)); zero exactly
/// when rho commutes with the generator.
double rel_entropy_asymmetry(const DensityMatrix& rho, const TwirlSpec& spec);

/// <A> for member k: sum_i p_i A(rho_i ; rho_k), the U(1) group being
/// generated by the ensemble member itself.
double average_asymmetry(const Ensemble& e, std::size_t k);

enum class SymmetryClass { symmetric, asymmetric };

/// Symmetric iff every pair of members commutes (Frobenius norm < 1e-10).
SymmetryClass ensemble_symmetry_class(const Ensemble& e);

/// Pairwise commutator ceiling used by the classifier, exposed for tests.
double max_pairwise_commutator(const Ensemble& e);

}  // namespace qis
