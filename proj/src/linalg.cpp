// SPDX-License-Identifier: Apache-2.0
#include "qis/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qis {

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.allFinite() || !b.allFinite())
        throw ContractError("tensor_product: non-finite entries in operand");
    if (a.rows() * b.rows() > kMaxHilbertDim || a.cols() * b.cols() > kMaxHilbertDim)
        throw SizeError("tensor_product: result dimension exceeds 2^20 guard");

    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double hermiticity_defect(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

EigenDecomposition herm_eig(const ComplexMatrix& a) {
    const double defect = hermiticity_defect(a);
    if (!(defect <= kHermTol))
        throw ContractError("herm_eig: input is not Hermitian (max asymmetry " +
                            format_double(defect) + ")");

    const ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw Error("herm_eig: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix partial_trace(const ComplexMatrix& a, const std::vector<Eigen::Index>& site_dims,
                            const std::vector<std::size_t>& keep) {
    if (a.rows() != a.cols()) throw SizeError("partial_trace: operator is not square");
    Eigen::Index total = 1;
    for (Eigen::Index d : site_dims) {
        if (d < 1) throw SizeError("partial_trace: site dimension < 1");
        total *= d;
    }
    if (total != a.rows())
        throw SizeError("partial_trace: product of site dims does not match operator dim");

    const std::size_t n_sites = site_dims.size();
    std::vector<bool> kept(n_sites, false);
    for (std::size_t s : keep) {
        if (s >= n_sites) throw SizeError("partial_trace: keep index out of range");
        if (kept[s]) throw SizeError("partial_trace: duplicate keep index");
        kept[s] = true;
    }

    // strides of each site in the full row index (site 0 is the leftmost
    // tensor factor, i.e. slowest varying)
    std::vector<Eigen::Index> stride(n_sites, 1);
    for (std::size_t s = n_sites; s-- > 1;) stride[s - 1] = stride[s] * site_dims[s];

    std::vector<std::size_t> env;
    for (std::size_t s = 0; s < n_sites; ++s)
        if (!kept[s]) env.push_back(s);

    Eigen::Index dim_keep = 1;
    for (std::size_t s : keep) dim_keep *= site_dims[s];
    Eigen::Index dim_env = 1;
    for (std::size_t s : env) dim_env *= site_dims[s];

    // full-index offset of a flattened sub-index over the given sites
    auto offset = [&](const std::vector<std::size_t>& sites, Eigen::Index flat) {
        Eigen::Index off = 0;
        for (std::size_t j = sites.size(); j-- > 0;) {
            const std::size_t s = sites[j];
            off += (flat % site_dims[s]) * stride[s];
            flat /= site_dims[s];
        }
        return off;
    };

    ComplexMatrix out = ComplexMatrix::Zero(dim_keep, dim_keep);
    for (Eigen::Index e = 0; e < dim_env; ++e) {
        const Eigen::Index eo = offset(env, e);
        for (Eigen::Index r = 0; r < dim_keep; ++r) {
            const Eigen::Index ro = offset(keep, r) + eo;
            for (Eigen::Index c = 0; c < dim_keep; ++c) out(r, c) += a(ro, offset(keep, c) + eo);
        }
    }
    return out;
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw SizeError("commutator_norm: operands must share square dimensions");
    return (a * b - b * a).norm();
}

}  // namespace qis
