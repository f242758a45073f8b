// SPDX-License-Identifier: Apache-2.0
#include "qis/qcnn.hpp"

#include <fstream>

#include <json.hpp>

#include "qis/gates.hpp"

namespace qis {

namespace {

constexpr int kQubits = 9;
constexpr Eigen::Index kDim = 512;
constexpr int kWiringVersion = 1;

// Wiring of the 9-qubit circuit, 1-based as in the circuit description;
// converted to 0-based in one place below. The three T1 copies share one
// parameter block.
constexpr int kTriples[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
constexpr int kPairs[4][2] = {{2, 3}, {3, 4}, {6, 7}, {7, 8}};
constexpr int kPool1[3] = {4, 5, 6};
constexpr int kPool2[3] = {7, 8, 9};

std::vector<int> zero_based(std::span<const int> wires) {
    std::vector<int> out(wires.begin(), wires.end());
    for (int& w : out) --w;
    return out;
}

struct GateInstance {
    ComplexMatrix u;
    std::vector<int> wires;  // 0-based
};

void check_model(const QcnnModel& model) {
    if (model.params.size() != param_count(model.task))
        throw ValidationError("QcnnModel: expected " +
                              std::to_string(param_count(model.task)) + " parameters, got " +
                              std::to_string(model.params.size()));
    for (double p : model.params)
        if (!std::isfinite(p)) throw ValidationError("QcnnModel: non-finite parameter");
}

std::vector<GateInstance> build_circuit_gates(const QcnnModel& model) {
    check_model(model);
    const std::span<const double> p(model.params);

    std::vector<GateInstance> gates;
    const ComplexMatrix t1 = build_t(p.subspan(0, 45));
    for (const auto& triple : kTriples) gates.push_back({t1, zero_based(triple)});
    for (int j = 0; j < 4; ++j)
        gates.push_back({build_w(p.subspan(45 + 15 * j, 15)), zero_based(kPairs[j])});
    gates.push_back({build_k_pool(p.subspan(105, 6)), zero_based(kPool1)});
    if (model.task == Task::two_class)
        gates.push_back({build_k_pool(p.subspan(111, 6)), zero_based(kPool2)});
    else
        gates.push_back({build_t(p.subspan(111, 45)), zero_based(kPool2)});
    return gates;
}

}  // namespace

std::size_t param_count(Task task) {
    return task == Task::two_class ? 117 : 156;
}

std::vector<int> kept_wires(Task task) {
    return task == Task::two_class ? std::vector<int>{4} : std::vector<int>{4, 7};
}

ComplexMatrix build_v(std::span<const double> p3) {
    if (p3.size() != 3) throw SizeError("build_v: expected 3 parameters");
    return v_gate(p3);
}

ComplexMatrix build_w(std::span<const double> p15) {
    if (p15.size() != 15) throw SizeError("build_w: expected 15 parameters");
    return w_form(p15);
}

ComplexMatrix build_t(std::span<const double> p45) {
    if (p45.size() != 45) throw SizeError("build_t: expected 45 parameters");
    const ComplexMatrix w12 = build_w(p45.subspan(0, 15));
    const ComplexMatrix w23 = build_w(p45.subspan(15, 15));
    const ComplexMatrix w31 = build_w(p45.subspan(30, 15));
    const int wires12[] = {0, 1};
    const int wires23[] = {1, 2};
    const int wires31[] = {2, 0};
    return embed_unitary(w31, wires31, 3) * embed_unitary(w23, wires23, 3) *
           embed_unitary(w12, wires12, 3);
}

ComplexMatrix build_k_pool(std::span<const double> p6) {
    if (p6.size() != 6) throw SizeError("build_k_pool: expected 6 parameters");
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
    p1(1, 1) = 1.0;
    const ComplexMatrix va = v_gate(p6.subspan(0, 3));
    const ComplexMatrix vb = v_gate(p6.subspan(3, 3));
    const ComplexMatrix first = tensor_product(id, tensor_product(id, p0)) +
                                tensor_product(id, tensor_product(va, p1));
    const ComplexMatrix second = tensor_product(p0, tensor_product(id, id)) +
                                 tensor_product(p1, tensor_product(vb, id));
    return first * second;
}

void apply_unitary_inplace(ComplexVector& psi, const ComplexMatrix& u,
                           std::span<const int> wires, int n_qubits) {
    const int k = static_cast<int>(wires.size());
    const Eigen::Index m = Eigen::Index(1) << k;
    if (u.rows() != m || u.cols() != m)
        throw SizeError("apply_unitary_inplace: gate dimension does not match wire count");
    if (psi.size() != (Eigen::Index(1) << n_qubits))
        throw SizeError("apply_unitary_inplace: state dimension mismatch");

    std::uint64_t mask = 0;
    std::vector<int> pos(k);
    for (int j = 0; j < k; ++j) {
        if (wires[j] < 0 || wires[j] >= n_qubits)
            throw SizeError("apply_unitary_inplace: wire index out of range");
        pos[j] = n_qubits - 1 - wires[j];
        if (mask & (std::uint64_t(1) << pos[j]))
            throw SizeError("apply_unitary_inplace: duplicate wire");
        mask |= std::uint64_t(1) << pos[j];
    }

    // spread[s]: bits of the sub-index s distributed to the wire positions
    // (wire 0 is the most significant factor of the gate)
    std::vector<std::uint64_t> spread(m, 0);
    for (Eigen::Index s = 0; s < m; ++s)
        for (int j = 0; j < k; ++j)
            if ((s >> (k - 1 - j)) & 1) spread[s] |= std::uint64_t(1) << pos[j];

    const std::uint64_t dim = std::uint64_t(1) << n_qubits;
    ComplexVector sub(m), mixed(m);
    for (std::uint64_t base = 0; base < dim; ++base) {
        if (base & mask) continue;
        for (Eigen::Index s = 0; s < m; ++s) sub[s] = psi[base | spread[s]];
        mixed.noalias() = u * sub;
        for (Eigen::Index s = 0; s < m; ++s) psi[base | spread[s]] = mixed[s];
    }
}

ComplexMatrix reduced_density(const ComplexVector& psi, std::span<const int> keep,
                              int n_qubits) {
    const int k = static_cast<int>(keep.size());
    const Eigen::Index m = Eigen::Index(1) << k;
    if (psi.size() != (Eigen::Index(1) << n_qubits))
        throw SizeError("reduced_density: state dimension mismatch");

    std::vector<int> pos(k);
    std::uint64_t mask = 0;
    for (int j = 0; j < k; ++j) {
        if (keep[j] < 0 || keep[j] >= n_qubits)
            throw SizeError("reduced_density: keep index out of range");
        pos[j] = n_qubits - 1 - keep[j];
        mask |= std::uint64_t(1) << pos[j];
    }

    std::vector<std::uint64_t> spread(m, 0);
    for (Eigen::Index s = 0; s < m; ++s)
        for (int j = 0; j < k; ++j)
            if ((s >> (k - 1 - j)) & 1) spread[s] |= std::uint64_t(1) << pos[j];

    const std::uint64_t dim = std::uint64_t(1) << n_qubits;
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (std::uint64_t env = 0; env < dim; ++env) {
        if (env & mask) continue;
        for (Eigen::Index s = 0; s < m; ++s) {
            const std::complex<double> a = psi[env | spread[s]];
            if (a == std::complex<double>(0.0, 0.0)) continue;
            for (Eigen::Index t = 0; t < m; ++t)
                out(s, t) += a * std::conj(psi[env | spread[t]]);
        }
    }
    return out;
}

ComplexMatrix embed_unitary(const ComplexMatrix& u, std::span<const int> wires, int n_qubits) {
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    ComplexMatrix out(dim, dim);
    ComplexVector col(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        col.setZero();
        col[j] = 1.0;
        apply_unitary_inplace(col, u, wires, n_qubits);
        out.col(j) = col;
    }
    return out;
}

DensityMatrix apply_channel(const DensityMatrix& rho_in, const QcnnModel& model) {
    if (rho_in.dim() != kDim)
        throw SizeError("apply_channel: 9-qubit (512-dim) input required");
    const auto gates = build_circuit_gates(model);

    ComplexMatrix rho = rho_in.mat();
    ComplexVector col(kDim);
    for (const auto& gate : gates) {
        // rho <- U rho U^dag, one statevector kernel pass per side
        for (Eigen::Index j = 0; j < kDim; ++j) {
            col = rho.col(j);
            apply_unitary_inplace(col, gate.u, gate.wires, kQubits);
            rho.col(j) = col;
        }
        ComplexMatrix conj = rho.adjoint();
        for (Eigen::Index j = 0; j < kDim; ++j) {
            col = conj.col(j);
            apply_unitary_inplace(col, gate.u, gate.wires, kQubits);
            conj.col(j) = col;
        }
        rho = conj.adjoint();
    }

    std::vector<Eigen::Index> site_dims(kQubits, 2);
    std::vector<std::size_t> keep;
    for (int w : kept_wires(model.task)) keep.push_back(static_cast<std::size_t>(w));
    return DensityMatrix(partial_trace(rho, site_dims, keep));
}

DensityMatrix apply_channel_pure(const ComplexVector& psi_in, const QcnnModel& model) {
    if (psi_in.size() != kDim)
        throw SizeError("apply_channel_pure: 9-qubit (512-dim) input required");
    const auto gates = build_circuit_gates(model);
    ComplexVector psi = psi_in / psi_in.norm();
    for (const auto& gate : gates) apply_unitary_inplace(psi, gate.u, gate.wires, kQubits);
    const auto keep = kept_wires(model.task);
    return DensityMatrix(reduced_density(psi, keep, kQubits));
}

ComplexMatrix circuit_unitary(const QcnnModel& model) {
    const auto gates = build_circuit_gates(model);
    ComplexMatrix u = ComplexMatrix::Identity(kDim, kDim);
    ComplexVector col(kDim);
    for (const auto& gate : gates)
        for (Eigen::Index j = 0; j < kDim; ++j) {
            col = u.col(j);
            apply_unitary_inplace(col, gate.u, gate.wires, kQubits);
            u.col(j) = col;
        }
    return u;
}

void save_model(const QcnnModel& model, const std::string& path) {
    check_model(model);
    nlohmann::json j;
    j["task"] = task_name(model.task);
    j["params"] = model.params;
    j["wiring_version"] = kWiringVersion;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write model file " + path);
    out << j.dump(2) << "\n";
}

QcnnModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("model file " + path + ": cannot open");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("model file " + path + ": " + e.what());
    }
    if (!j.contains("task") || !j.contains("params") || !j.contains("wiring_version"))
        throw ParseError("model file " + path + ": missing task/params/wiring_version");
    if (j["wiring_version"].get<int>() != kWiringVersion)
        throw ValidationError("model file " + path + ": unsupported wiring_version");
    QcnnModel model;
    model.task = task_from_name(j["task"].get<std::string>());
    model.params = j["params"].get<std::vector<double>>();
    check_model(model);
    return model;
}

}  // namespace qis
