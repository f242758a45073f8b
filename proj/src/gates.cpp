// SPDX-License-Identifier: Apache-2.0
#include "qis/gates.hpp"

#include <cmath>

namespace qis {

namespace {
const std::complex<double> kI{0.0, 1.0};
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix rot_x(double t) {
    ComplexMatrix m(2, 2);
    m << std::cos(t), -kI * std::sin(t), -kI * std::sin(t), std::cos(t);
    return m;
}

ComplexMatrix rot_y(double t) {
    ComplexMatrix m(2, 2);
    m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return m;
}

ComplexMatrix rot_z(double t) {
    ComplexMatrix m(2, 2);
    m << std::exp(-kI * t), 0, 0, std::exp(kI * t);
    return m;
}

ComplexMatrix v_gate(std::span<const double> p3) {
    if (p3.size() != 3) throw SizeError("v_gate: expected 3 parameters");
    return rot_z(p3[0]) * rot_y(p3[1]) * rot_x(p3[2]);
}

ComplexMatrix heisenberg_exp(double tz, double ty, double tx) {
    const ComplexMatrix zz = tensor_product(pauli_z(), pauli_z());
    const ComplexMatrix yy = tensor_product(pauli_y(), pauli_y());
    const ComplexMatrix xx = tensor_product(pauli_x(), pauli_x());
    const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
    const ComplexMatrix ez = std::cos(tz) * id - kI * std::sin(tz) * zz;
    const ComplexMatrix ey = std::cos(ty) * id - kI * std::sin(ty) * yy;
    const ComplexMatrix ex = std::cos(tx) * id - kI * std::sin(tx) * xx;
    return ez * ey * ex;
}

ComplexMatrix w_form(std::span<const double> p15) {
    if (p15.size() != 15) throw SizeError("w_form: expected 15 parameters");
    const ComplexMatrix outer =
        tensor_product(v_gate(p15.subspan(0, 3)), v_gate(p15.subspan(3, 3)));
    const ComplexMatrix core = heisenberg_exp(p15[6], p15[7], p15[8]);
    const ComplexMatrix inner =
        tensor_product(v_gate(p15.subspan(9, 3)), v_gate(p15.subspan(12, 3)));
    return outer * core * inner;
}

}  // namespace qis
