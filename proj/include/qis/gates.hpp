// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "qis/linalg.hpp"

namespace qis {

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// single-qubit rotations exp(-i t P)
ComplexMatrix rot_x(double t);
ComplexMatrix rot_y(double t);
ComplexMatrix rot_z(double t);

/// exp(-i p0 Z) exp(-i p1 Y) exp(-i p2 X)
ComplexMatrix v_gate(std::span<const double> p3);

/// exp(-i (tz ZZ + ty YY + tx XX)); the three terms commute, so this is the
/// product of the individual exponentials.
ComplexMatrix heisenberg_exp(double tz, double ty, double tx);

/// (V(p0..2) x V(p3..5)) heisenberg_exp(p6, p7, p8) (V(p9..11) x V(p12..14))
ComplexMatrix w_form(std::span<const double> p15);

}  // namespace qis
