// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qis/common.hpp"

namespace qis {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Largest Hilbert-space dimension any kernel operation will produce.
inline constexpr Eigen::Index kMaxHilbertDim = Eigen::Index(1) << 20;

/// Max-entry tolerance for accepting a matrix as Hermitian.
inline constexpr double kHermTol = 1e-10;

/// Result of a Hermitian eigendecomposition: ascending eigenvalues and the
/// matching unitary of column eigenvectors, so V diag(w) V^dag reconstructs
/// the input.
struct EigenDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Kronecker product a (x) b.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest |a(i,j) - conj(a(j,i))| over all entries; 0 for exactly Hermitian
/// input. Non-square input returns +inf.
double hermiticity_defect(const ComplexMatrix& a);

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (A + A^dag)/2 first so downstream entropies stay real; inputs further than
/// kHermTol from Hermitian are rejected.
EigenDecomposition herm_eig(const ComplexMatrix& a);

/// Partial trace of an operator on a tensor product of sites with the given
/// dimensions, keeping the sites listed in `keep` (0-based, order defining
/// the output tensor order).
ComplexMatrix partial_trace(const ComplexMatrix& a, const std::vector<Eigen::Index>& site_dims,
                            const std::vector<std::size_t>& keep);

/// Frobenius norm of the commutator ab - ba.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qis
