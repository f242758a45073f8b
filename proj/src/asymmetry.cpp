// SPDX-License-Identifier: Apache-2.0
#include "qis/asymmetry.hpp"

#include <cmath>

namespace qis {

namespace {

constexpr double kCommuteTol = 1e-10;

EigenDecomposition generator_eig(const TwirlSpec& spec) {
    if (spec.generator.rows() != spec.generator.cols() ||
        hermiticity_defect(spec.generator) > kHermTol)
        throw ContractError("twirl: generator must be Hermitian");
    if (!(spec.degeneracy_tol > 0.0))
        throw ContractError("twirl: degeneracy_tol must be positive");
    return herm_eig(spec.generator);
}

// single-linkage grouping of the ascending spectrum: a gap wider than
// degeneracy_tol starts a new block
std::vector<std::pair<Eigen::Index, Eigen::Index>> spectral_blocks(const RealVector& w,
                                                                   double tol) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
    Eigen::Index begin = 0;
    for (Eigen::Index i = 1; i <= w.size(); ++i) {
        if (i == w.size() || w[i] - w[i - 1] > tol) {
            blocks.emplace_back(begin, i);
            begin = i;
        }
    }
    return blocks;
}

}  // namespace

DensityMatrix twirl(const DensityMatrix& rho, const TwirlSpec& spec) {
    if (spec.generator.rows() != rho.dim()) throw SizeError("twirl: dimension mismatch");
    const EigenDecomposition eig = generator_eig(spec);
    const auto blocks = spectral_blocks(eig.eigenvalues, spec.degeneracy_tol);

    // rotate into the eigenbasis, zero the cross-block entries, rotate back
    const ComplexMatrix rotated = eig.eigenvectors.adjoint() * rho.mat() * eig.eigenvectors;
    ComplexMatrix pinched = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (const auto& [b, e] : blocks)
        pinched.block(b, b, e - b, e - b) = rotated.block(b, b, e - b, e - b);
    return DensityMatrix(eig.eigenvectors * pinched * eig.eigenvectors.adjoint());
}

DensityMatrix finite_time_twirl(const DensityMatrix& rho, const TwirlSpec& spec, double T,
                                std::size_t steps) {
    if (spec.generator.rows() != rho.dim())
        throw SizeError("finite_time_twirl: dimension mismatch");
    if (!(T > 0.0)) throw ValidationError("finite_time_twirl: T must be positive");
    if (steps < 100) throw ValidationError("finite_time_twirl: need at least 100 steps");

    const EigenDecomposition eig = generator_eig(spec);
    const Eigen::Index d = rho.dim();
    const double dt = 2.0 * T / static_cast<double>(steps);

    // Trapezoid rule over t in [-T, T], conjugating by the exact evolution
    // U(t) = V exp(-i w t) V^dag at each node.
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = -T + dt * static_cast<double>(k);
        const double weight = (k == 0 || k == steps) ? 0.5 : 1.0;
        ComplexVector phases(d);
        for (Eigen::Index n = 0; n < d; ++n)
            phases[n] = std::exp(std::complex<double>(0.0, -eig.eigenvalues[n] * t));
        const ComplexMatrix u =
            eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
        acc += weight * (u * rho.mat() * u.adjoint());
    }
    acc *= dt / (2.0 * T);
    return DensityMatrix(std::move(acc));
}

double rel_entropy_asymmetry(const DensityMatrix& rho, const TwirlSpec& spec) {
    const DensityMatrix fixed = twirl(rho, spec);
    // supp(rho) is always inside supp(G(rho)): a support error here would be
    // a numerics bug, so let it propagate loudly.
    return relative_entropy(rho, fixed);
}

double average_asymmetry(const Ensemble& e, std::size_t k) {
    if (k >= e.size()) throw ValidationError("average_asymmetry: member index out of range");
    const TwirlSpec spec{e.state(k).mat(), 1e-8};
    double acc = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i)
        acc += e.prob(i) * rel_entropy_asymmetry(e.state(i), spec);
    return acc;
}

double max_pairwise_commutator(const Ensemble& e) {
    double worst = 0.0;
    for (std::size_t n = 0; n < e.size(); ++n)
        for (std::size_t m = n + 1; m < e.size(); ++m)
            worst = std::max(worst, commutator_norm(e.state(n).mat(), e.state(m).mat()));
    return worst;
}

SymmetryClass ensemble_symmetry_class(const Ensemble& e) {
    return max_pairwise_commutator(e) < kCommuteTol ? SymmetryClass::symmetric
                                                    : SymmetryClass::asymmetric;
}

}  // namespace qis
