// SPDX-License-Identifier: Apache-2.0
//
// Independent test oracles. Everything here deliberately avoids the library's
// computation paths: the eigensolver is a hand-rolled cyclic Jacobi (not
// Eigen's tridiagonalization), tensor products and partial traces are literal
// index loops, and entropies are scalar sums.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qis/linalg.hpp"
#include "qis/quantum.hpp"

namespace oracle {

using qis::ComplexMatrix;
using qis::ComplexVector;

// ---- cyclic Jacobi eigensolver for complex Hermitian matrices ----

struct JacobiResult {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns matching the eigenvalues
};

inline JacobiResult jacobi_eig(ComplexMatrix a, int max_sweeps = 100) {
    const Eigen::Index n = a.rows();
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) s += std::norm(a(p, q));
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_norm() > 1e-15 * (1.0 + a.norm()); ++sweep) {
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const std::complex<double> apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                const std::complex<double> phase = apq / mag;
                const double alpha = a(p, p).real();
                const double gamma = a(q, q).real();
                const double tau = (gamma - alpha) / (2.0 * mag);
                const double t =
                    (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // plane unitary u = diag(1, conj(phase)) * [[c, s], [-s, c]]
                ComplexMatrix u = ComplexMatrix::Identity(n, n);
                u(p, p) = c;
                u(p, q) = s;
                u(q, p) = -s * std::conj(phase);
                u(q, q) = c * std::conj(phase);
                a = (u.adjoint() * a * u).eval();
                v = (v * u).eval();
            }
    }

    std::vector<std::pair<double, Eigen::Index>> order;
    for (Eigen::Index i = 0; i < n; ++i) order.emplace_back(a(i, i).real(), i);
    std::sort(order.begin(), order.end());

    JacobiResult result;
    result.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        result.eigenvalues.push_back(order[i].first);
        result.eigenvectors.col(i) = v.col(order[i].second);
    }
    return result;
}

// ---- scalar entropy helpers ----

inline double scalar_entropy(const std::vector<double>& p) {
    double s = 0.0;
    for (double x : p)
        if (x > 1e-15) s -= x * std::log(x);
    return s;
}

inline double scalar_kl(const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 1e-15) s += p[i] * std::log(p[i] / q[i]);
    return s;
}

inline double entropy_via_jacobi(const ComplexMatrix& rho) {
    return scalar_entropy(jacobi_eig(rho).eigenvalues);
}

/// S(rho_bar) - sum_i p_i S(rho_i), all entropies through the Jacobi path.
inline double holevo_via_entropies(const std::vector<double>& probs,
                                   const std::vector<ComplexMatrix>& states) {
    ComplexMatrix avg = ComplexMatrix::Zero(states.front().rows(), states.front().cols());
    for (std::size_t i = 0; i < states.size(); ++i) avg += probs[i] * states[i];
    double chi = entropy_via_jacobi(avg);
    for (std::size_t i = 0; i < states.size(); ++i) chi -= probs[i] * entropy_via_jacobi(states[i]);
    return chi;
}

// ---- literal index-loop linear algebra ----

inline ComplexMatrix kron_loop(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

/// Partial trace of a qubit register by explicit index summation.
inline ComplexMatrix ptrace_loop(const ComplexMatrix& a, int n_qubits,
                                 const std::vector<int>& keep) {
    const int k = static_cast<int>(keep.size());
    const Eigen::Index dk = Eigen::Index(1) << k;
    std::vector<int> env;
    for (int q = 0; q < n_qubits; ++q)
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) env.push_back(q);

    auto compose = [&](Eigen::Index kept_bits, Eigen::Index env_bits) {
        Eigen::Index idx = 0;
        for (int j = 0; j < k; ++j)
            if ((kept_bits >> (k - 1 - j)) & 1)
                idx |= Eigen::Index(1) << (n_qubits - 1 - keep[static_cast<std::size_t>(j)]);
        for (std::size_t j = 0; j < env.size(); ++j)
            if ((env_bits >> (env.size() - 1 - j)) & 1)
                idx |= Eigen::Index(1) << (n_qubits - 1 - env[j]);
        return idx;
    };

    const Eigen::Index de = Eigen::Index(1) << env.size();
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r)
        for (Eigen::Index c = 0; c < dk; ++c)
            for (Eigen::Index e = 0; e < de; ++e) out(r, c) += a(compose(r, e), compose(c, e));
    return out;
}

/// exp(-i H) for Hermitian H through the Jacobi path.
inline ComplexMatrix expm_i_jacobi(const ComplexMatrix& h) {
    const JacobiResult eig = jacobi_eig(h);
    const Eigen::Index n = h.rows();
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        d(i, i) = std::exp(std::complex<double>(0.0, -eig.eigenvalues[static_cast<std::size_t>(i)]));
    return eig.eigenvectors * d * eig.eigenvectors.adjoint();
}

// ---- deterministic random inputs ----

inline ComplexVector random_pure(std::mt19937_64& rng, Eigen::Index dim) {
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        v[i] = std::complex<double>(qis::normal_draw(rng), qis::normal_draw(rng));
    return v / v.norm();
}

inline ComplexMatrix random_density_matrix(std::mt19937_64& rng, Eigen::Index dim) {
    ComplexMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            g(i, j) = std::complex<double>(qis::normal_draw(rng), qis::normal_draw(rng));
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
    ComplexMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            g(i, j) = std::complex<double>(qis::normal_draw(rng), qis::normal_draw(rng));
    return 0.5 * (g + g.adjoint());
}

inline std::vector<double> random_probs(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (double& x : p) {
        x = 0.2 + qis::uniform_unit(rng);  // bounded away from zero
        sum += x;
    }
    for (double& x : p) x /= sum;
    return p;
}

/// Random ensemble of full-rank states, eigenvalues bounded away from the
/// support tolerance so the two entropy routes agree to high precision.
inline qis::Ensemble random_mixed_ensemble(std::mt19937_64& rng, Eigen::Index dim,
                                           std::size_t members) {
    std::vector<double> probs = random_probs(rng, members);
    std::vector<qis::DensityMatrix> states;
    for (std::size_t i = 0; i < members; ++i) {
        ComplexMatrix rho = random_density_matrix(rng, dim);
        // mix toward the maximally mixed state to keep eigenvalues well away
        // from zero
        rho = 0.9 * rho + 0.1 * ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
        states.emplace_back(rho);
    }
    return qis::Ensemble(std::move(probs), std::move(states));
}

inline qis::Ensemble random_pure_ensemble(std::mt19937_64& rng, Eigen::Index dim,
                                          std::size_t members) {
    std::vector<double> probs = random_probs(rng, members);
    std::vector<qis::DensityMatrix> states;
    for (std::size_t i = 0; i < members; ++i)
        states.push_back(qis::DensityMatrix::pure(random_pure(rng, dim)));
    return qis::Ensemble(std::move(probs), std::move(states));
}

/// Random ensemble of commuting (diagonal) states with entries bounded away
/// from zero.
inline qis::Ensemble random_diagonal_ensemble(std::mt19937_64& rng, Eigen::Index dim,
                                              std::size_t members) {
    std::vector<double> probs = random_probs(rng, members);
    std::vector<qis::DensityMatrix> states;
    for (std::size_t i = 0; i < members; ++i) {
        const std::vector<double> diag = random_probs(rng, static_cast<std::size_t>(dim));
        ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
        for (Eigen::Index d = 0; d < dim; ++d) rho(d, d) = diag[static_cast<std::size_t>(d)];
        states.emplace_back(rho);
    }
    return qis::Ensemble(std::move(probs), std::move(states));
}

}  // namespace oracle
