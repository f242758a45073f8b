// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "oracles.hpp"
#include "qis/gates.hpp"
#include "qis/linalg.hpp"

using namespace qis;

TEST_CASE("tensor product identity and basis placement") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    CHECK((tensor_product(i2, i2) - ComplexMatrix::Identity(4, 4)).norm() == doctest::Approx(0.0));

    ComplexMatrix e0(2, 1), e1(2, 1);
    e0 << 1, 0;
    e1 << 0, 1;
    const ComplexMatrix col = tensor_product(e0, e1);
    REQUIRE(col.rows() == 4);
    CHECK(col(0, 0) == std::complex<double>(0, 0));
    CHECK(col(1, 0) == std::complex<double>(1, 0));
    CHECK(col(2, 0) == std::complex<double>(0, 0));
    CHECK(col(3, 0) == std::complex<double>(0, 0));
}

TEST_CASE("tensor product matches the index-formula oracle entrywise") {
    const ComplexMatrix got = tensor_product(pauli_z(), pauli_x());
    const ComplexMatrix want = oracle::kron_loop(pauli_z(), pauli_x());
    CHECK((got - want).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

    std::mt19937_64 rng(11);
    const ComplexMatrix a = oracle::random_hermitian(rng, 3);
    const ComplexMatrix b = oracle::random_hermitian(rng, 4);
    CHECK((tensor_product(a, b) - oracle::kron_loop(a, b)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("tensor product associativity") {
    std::mt19937_64 rng(12);
    const ComplexMatrix a = oracle::random_hermitian(rng, 2);
    const ComplexMatrix b = oracle::random_hermitian(rng, 3);
    const ComplexMatrix c = oracle::random_hermitian(rng, 2);
    const ComplexMatrix left = tensor_product(tensor_product(a, b), c);
    const ComplexMatrix right = tensor_product(a, tensor_product(b, c));
    CHECK((left - right).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("tensor product guards") {
    const ComplexMatrix big = ComplexMatrix::Identity(1 << 11, 1 << 11);
    CHECK_THROWS_AS(tensor_product(big, big), SizeError);

    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(tensor_product(bad, bad), ContractError);
}

TEST_CASE("herm_eig on Pauli matrices") {
    const EigenDecomposition z = herm_eig(pauli_z());
    CHECK(z.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(z.eigenvalues[1] == doctest::Approx(1.0));

    const EigenDecomposition x = herm_eig(pauli_x());
    CHECK(x.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(x.eigenvalues[1] == doctest::Approx(1.0));
    // eigenvectors are |-+> up to phase
    for (Eigen::Index col = 0; col < 2; ++col) {
        CHECK(std::abs(x.eigenvectors(0, col)) == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(std::abs(x.eigenvectors(1, col)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
}

TEST_CASE("herm_eig reconstruction and unitarity on random Hermitian input") {
    std::mt19937_64 rng(13);
    const ComplexMatrix a = oracle::random_hermitian(rng, 16);
    const EigenDecomposition eig = herm_eig(a);

    const ComplexMatrix reconstructed =
        eig.eigenvectors * eig.eigenvalues.cast<std::complex<double>>().asDiagonal() *
        eig.eigenvectors.adjoint();
    CHECK((reconstructed - a).norm() < 1e-10);
    CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - ComplexMatrix::Identity(16, 16))
              .norm() < 1e-10);
    for (Eigen::Index i = 1; i < 16; ++i)
        CHECK(eig.eigenvalues[i] >= eig.eigenvalues[i - 1]);
}

TEST_CASE("herm_eig eigenvalue sum equals the trace") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = oracle::random_hermitian(rng, 8);
        const EigenDecomposition eig = herm_eig(a);
        CHECK(eig.eigenvalues.sum() == doctest::Approx(a.trace().real()).epsilon(1e-10));
    }
}

TEST_CASE("herm_eig rejects non-Hermitian input naming the defect") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 0.5;
    try {
        herm_eig(a);
        FAIL("expected ContractError");
    } catch (const ContractError& e) {
        CHECK(std::string(e.what()).find("0.5") != std::string::npos);
    }
}

TEST_CASE("partial trace of a Bell state gives the maximally mixed qubit") {
    ComplexVector bell(4);
    bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
    const ComplexMatrix rho = bell * bell.adjoint();
    const ComplexMatrix reduced = partial_trace(rho, {2, 2}, {0});
    CHECK((reduced - 0.5 * ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace of a product state returns the kept factor") {
    std::mt19937_64 rng(15);
    const ComplexMatrix rho = oracle::random_density_matrix(rng, 2);
    const ComplexMatrix sigma = oracle::random_density_matrix(rng, 3);
    const ComplexMatrix both = tensor_product(rho, sigma);
    CHECK((partial_trace(both, {2, 3}, {0}) - rho).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((partial_trace(both, {2, 3}, {1}) - sigma).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace matches the explicit index-summation oracle") {
    std::mt19937_64 rng(16);
    const ComplexMatrix rho = oracle::random_density_matrix(rng, 8);
    // keep the first and third qubit
    const ComplexMatrix got = partial_trace(rho, {2, 2, 2}, {0, 2});
    const ComplexMatrix want = oracle::ptrace_loop(rho, 3, {0, 2});
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("partial trace preserves the trace and collapses to a scalar") {
    std::mt19937_64 rng(17);
    const ComplexMatrix rho = oracle::random_density_matrix(rng, 8);
    const ComplexMatrix kept = partial_trace(rho, {2, 2, 2}, {1});
    CHECK(kept.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    const ComplexMatrix scalar = partial_trace(rho, {2, 2, 2}, {});
    REQUIRE(scalar.rows() == 1);
    CHECK(scalar(0, 0).real() == doctest::Approx(rho.trace().real()).epsilon(1e-12));
}

TEST_CASE("partial trace dimension errors") {
    const ComplexMatrix rho = ComplexMatrix::Identity(4, 4) / 4.0;
    CHECK_THROWS_AS(partial_trace(rho, {2, 3}, {0}), SizeError);
    CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {2}), SizeError);
    CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {0, 0}), SizeError);
}

TEST_CASE("commutator norm") {
    CHECK(commutator_norm(pauli_z(), pauli_z()) == doctest::Approx(0.0));
    // [Z, X] = 2iY, Frobenius norm 2 sqrt(2)
    CHECK(commutator_norm(pauli_z(), pauli_x()) == doctest::Approx(2.0 * std::sqrt(2.0)));

    ComplexMatrix d1 = ComplexMatrix::Zero(2, 2), d2 = ComplexMatrix::Zero(2, 2);
    d1.diagonal() << 1, 2;
    d2.diagonal() << 3, 4;
    CHECK(commutator_norm(d1, d2) == doctest::Approx(0.0));

    CHECK_THROWS_AS(commutator_norm(pauli_z(), ComplexMatrix::Identity(3, 3)), SizeError);
}

TEST_CASE("commutator norm is symmetric in its arguments") {
    std::mt19937_64 rng(18);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = oracle::random_hermitian(rng, 4);
        const ComplexMatrix b = oracle::random_hermitian(rng, 4);
        CHECK(commutator_norm(a, b) == doctest::Approx(commutator_norm(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("jacobi oracle agrees with herm_eig") {
    std::mt19937_64 rng(19);
    const ComplexMatrix a = oracle::random_hermitian(rng, 6);
    const EigenDecomposition eig = herm_eig(a);
    const oracle::JacobiResult jac = oracle::jacobi_eig(a);
    for (Eigen::Index i = 0; i < 6; ++i)
        CHECK(jac.eigenvalues[static_cast<std::size_t>(i)] ==
              doctest::Approx(eig.eigenvalues[i]).epsilon(1e-11));
}
