// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "qis/quantum.hpp"

namespace qis {

/// Parameter vector of the 9-qubit classifier circuit. 117 parameters for the
/// 2-class task, 156 for the 3-class task (the second pooling gate widens to
/// the 45-parameter three-qubit form).
struct QcnnModel {
    Task task = Task::two_class;
    std::vector<double> params;
};

std::size_t param_count(Task task);

/// Single-qubit gate V = exp(-i p0 Z) exp(-i p1 Y) exp(-i p2 X).
ComplexMatrix build_v(std::span<const double> p3);

/// Two-qubit convolutional gate (V x V) exp(-i (ZZ, YY, XX) . theta) (V x V);
/// layout: outer V pair (6), theta (3), inner V pair (6).
ComplexMatrix build_w(std::span<const double> p15);

/// Three-qubit convolutional gate W^(3,1) W^(2,3) W^(1,2); the parameter
/// blocks are laid out in application order (1,2), (2,3), (3,1).
ComplexMatrix build_t(std::span<const double> p45);

/// Three-qubit pooling gate
///   (1 x 1 x |0><0| + 1 x V x |1><1|) (|0><0| x 1 x 1 + |1><1| x V x 1):
/// the third qubit controls the first V factor, the first qubit the second.
ComplexMatrix build_k_pool(std::span<const double> p6);

/// Full classifier channel: convolution and pooling unitaries followed by the
/// partial trace onto qubit 5 (2-class) or qubits 5 and 8 (3-class; qubit
/// numbering is 1-based in this description, 0-based in code).
DensityMatrix apply_channel(const DensityMatrix& rho_in, const QcnnModel& model);

/// Fast path for pure inputs: statevector evolution plus a direct reduced
/// density matrix, identical to apply_channel on |psi><psi|.
DensityMatrix apply_channel_pure(const ComplexVector& psi_in, const QcnnModel& model);

/// The assembled 512x512 circuit unitary (before the partial trace).
ComplexMatrix circuit_unitary(const QcnnModel& model);

/// 0-based qubits kept by the channel's partial trace.
std::vector<int> kept_wires(Task task);

// model file (JSON text: task, params, wiring_version)
void save_model(const QcnnModel& model, const std::string& path);
QcnnModel load_model(const std::string& path);

// statevector kernels, shared with tests
void apply_unitary_inplace(ComplexVector& psi, const ComplexMatrix& u,
                           std::span<const int> wires, int n_qubits);
ComplexMatrix reduced_density(const ComplexVector& psi, std::span<const int> keep,
                              int n_qubits);
ComplexMatrix embed_unitary(const ComplexMatrix& u, std::span<const int> wires, int n_qubits);

}  // namespace qis
