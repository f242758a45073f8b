// SPDX-License-Identifier: Apache-2.0
#include "qis/quantum.hpp"

#include <cmath>

namespace qis {

namespace {

void check_density_invariants(const ComplexMatrix& m, bool check_psd) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw ValidationError("DensityMatrix: matrix must be square and non-empty");
    const double defect = hermiticity_defect(m);
    if (!(defect <= kHermTol))
        throw ValidationError("DensityMatrix: not Hermitian (max asymmetry " +
                              format_double(defect) + ")");
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol)
        throw ValidationError("DensityMatrix: trace " + format_double(tr) + " is not 1");
    if (check_psd) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()),
                                                            Eigen::EigenvaluesOnly);
        const double lambda_min = solver.eigenvalues().minCoeff();
        if (lambda_min < -kPsdTol)
            throw ValidationError("DensityMatrix: negative eigenvalue " +
                                  format_double(lambda_min));
    }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
    check_density_invariants(mat_, true);
    mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
}

DensityMatrix DensityMatrix::pure(const ComplexVector& amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !amplitudes.allFinite())
        throw ValidationError("DensityMatrix::pure: amplitude vector must be nonzero and finite");
    const ComplexVector psi = amplitudes / norm;
    return DensityMatrix(Unchecked{}, psi * psi.adjoint());
}

Ensemble::Ensemble(std::vector<double> probs, std::vector<DensityMatrix> states) {
    if (probs.empty() || probs.size() != states.size())
        throw ValidationError("Ensemble: need matching non-empty probs and states");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw ValidationError("Ensemble: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kTraceTol)
        throw ValidationError("Ensemble: probabilities sum to " + format_double(sum));
    const Eigen::Index d = states.front().dim();
    for (const auto& s : states)
        if (s.dim() != d) throw ValidationError("Ensemble: mixed state dimensions");

    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < 1e-15) {
            ++dropped_;
            continue;
        }
        probs_.push_back(probs[i] / sum);
        states_.push_back(std::move(states[i]));
    }
    if (probs_.empty()) throw ValidationError("Ensemble: all members have zero probability");
}

MeasurementFamily::MeasurementFamily(std::vector<ComplexMatrix> elements, MeasurementKind kind)
    : elements_(std::move(elements)), kind_(kind) {
    if (elements_.empty()) throw ValidationError("MeasurementFamily: no elements");
    const Eigen::Index d = elements_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& e : elements_) {
        if (e.rows() != d || e.cols() != d)
            throw ValidationError("MeasurementFamily: elements must share square dimensions");
        if (hermiticity_defect(e) > kHermTol)
            throw ValidationError("MeasurementFamily: element is not Hermitian");
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(e, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -kPsdTol)
            throw ValidationError("MeasurementFamily: element is not PSD");
        sum += e;
    }
    if ((sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kTraceTol)
        throw ValidationError("MeasurementFamily: elements do not sum to the identity");
    if (kind_ == MeasurementKind::projective) {
        for (std::size_t j = 0; j < elements_.size(); ++j)
            for (std::size_t k = 0; k < elements_.size(); ++k) {
                const ComplexMatrix expect =
                    (j == k) ? elements_[j] : ComplexMatrix::Zero(d, d).eval();
                if ((elements_[j] * elements_[k] - expect).cwiseAbs().maxCoeff() > kTraceTol)
                    throw ValidationError("MeasurementFamily: projective orthogonality violated");
            }
    }
}

MeasurementFamily MeasurementFamily::projective_from_states(
    const std::vector<ComplexVector>& states) {
    std::vector<ComplexMatrix> elements;
    elements.reserve(states.size());
    for (const auto& psi : states) {
        const double norm = psi.norm();
        if (!(norm > 0.0))
            throw ValidationError("projective_from_states: zero state vector");
        const ComplexVector v = psi / norm;
        elements.push_back(v * v.adjoint());
    }
    return MeasurementFamily(std::move(elements), MeasurementKind::projective);
}

DensityMatrix average_state(const Ensemble& e) {
    ComplexMatrix acc = ComplexMatrix::Zero(e.dim(), e.dim());
    for (std::size_t i = 0; i < e.size(); ++i) acc += e.prob(i) * e.state(i).mat();
    return DensityMatrix(std::move(acc));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const EigenDecomposition eig = herm_eig(rho.mat());
    double s = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double p = eig.eigenvalues[i];
        if (p > kSupportTol) s -= p * std::log(p);
    }
    return s < 0.0 ? 0.0 : s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw SizeError("relative_entropy: dimension mismatch");

    const EigenDecomposition reig = herm_eig(rho.mat());
    const EigenDecomposition seig = herm_eig(sigma.mat());

    // support check: rho eigenvectors with weight must land inside sigma
    for (Eigen::Index i = 0; i < reig.eigenvalues.size(); ++i) {
        if (reig.eigenvalues[i] <= kSupportTol) continue;
        const ComplexVector v = reig.eigenvectors.col(i);
        const double overlap = (v.adjoint() * sigma.mat() * v)(0, 0).real();
        if (overlap <= kSupportTol)
            throw SupportError("relative_entropy: supp(rho) escapes supp(sigma), overlap " +
                                   format_double(overlap),
                               overlap);
    }

    double tr_rho_ln_rho = 0.0;
    for (Eigen::Index i = 0; i < reig.eigenvalues.size(); ++i) {
        const double p = reig.eigenvalues[i];
        if (p > kSupportTol) tr_rho_ln_rho += p * std::log(p);
    }

    double tr_rho_ln_sigma = 0.0;
    for (Eigen::Index j = 0; j < seig.eigenvalues.size(); ++j) {
        const double mu = seig.eigenvalues[j];
        if (mu <= kSupportTol) continue;
        const ComplexVector u = seig.eigenvectors.col(j);
        const double w = (u.adjoint() * rho.mat() * u)(0, 0).real();
        tr_rho_ln_sigma += w * std::log(mu);
    }

    const double value = tr_rho_ln_rho - tr_rho_ln_sigma;
    return value < 0.0 ? 0.0 : value;
}

DensityMatrix dephase(const DensityMatrix& rho, const MeasurementFamily& basis) {
    if (basis.kind() != MeasurementKind::projective)
        throw KindError("dephase: projective measurement family required");
    if (basis.dim() != rho.dim()) throw SizeError("dephase: dimension mismatch");
    ComplexMatrix acc = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (std::size_t j = 0; j < basis.size(); ++j)
        acc += basis.element(j) * rho.mat() * basis.element(j);
    return DensityMatrix(std::move(acc));
}

std::vector<double> measure_probs(const DensityMatrix& rho, const MeasurementFamily& m) {
    if (m.dim() != rho.dim()) throw SizeError("measure_probs: dimension mismatch");
    std::vector<double> probs(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) {
        double p = (rho.mat() * m.element(j)).trace().real();
        if (p < 0.0) {
            if (p < -1e-12)
                throw ValidationError("measure_probs: probability " + format_double(p));
            p = 0.0;
        }
        probs[j] = p;
    }
    return probs;
}

std::array<double, 3> bloch_vector(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw SizeError("bloch_vector: qubit state required");
    const ComplexMatrix& m = rho.mat();
    const double x = 2.0 * m(0, 1).real();
    const double y = -2.0 * m(0, 1).imag();
    const double z = (m(0, 0) - m(1, 1)).real();
    return {x, y, z};
}

}  // namespace qis
