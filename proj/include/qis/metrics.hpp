// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qis/quantum.hpp"

namespace qis {

/// Rank-1 orthogonal qubit projector pair
///   |psi0> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
///   |psi1> = sin(theta/2)|0> - e^{i phi} cos(theta/2)|1>
struct ProjectorFamily2Class {
    double theta = 0.0;
    double phi = 0.0;

    ComplexVector psi0() const;
    ComplexVector psi1() const;
    MeasurementFamily basis() const;
};

/// Two-qubit projective family Pi_j = U(theta) |j><j| U(theta)^dag with
/// U = (V x V) exp(-i(t7 ZZ + t8 YY + t9 XX)) (V x V), 15 parameters.
struct ProjectorFamilyU15 {
    std::array<double, 15> theta{};

    ComplexMatrix unitary() const;
    MeasurementFamily basis() const;
};

struct AxisSearchConfig {
    int grid_theta = 64;     // theta in [0, pi], inclusive endpoints
    int grid_phi = 64;       // phi in [0, 2pi)
    int grid_restarts = 3;   // local searches started from the best grid cells
    int random_restarts = 32;  // 15-parameter family
    double step_tol = 1e-6;
    int max_sweeps = 200;
    std::uint64_t seed = 1234;
};

struct AccessibleResult {
    double value = 1.0;             // exp of the maximized mutual information
    std::vector<double> params;     // (theta, phi) or the 15-vector
    bool converged = false;
};

/// Classical inception score exp(sum_i p_in(i) D(q(.|i) || p_out)) from a
/// conditional probability table (rows are per-input label distributions).
double classical_is_table(const std::vector<double>& p_in,
                          const std::vector<std::vector<double>>& q_out);

/// chi(E) = sum_i p_i S(rho_i || rho_bar), in nats.
double holevo_information(const Ensemble& e);

/// xi_q = exp(chi(E)).
double quantum_is(const Ensemble& e);

/// Holevo information of the dephased ensemble, equal to the classical KL
/// form for the measurement statistics of `basis`.
double projected_holevo(const Ensemble& e, const MeasurementFamily& basis);

/// xi_c(P) = exp(projected_holevo).
double classical_is(const Ensemble& e, const MeasurementFamily& basis);

/// Maximum of exp(classical mutual information) over the parameterized
/// projector family matching the ensemble dimension (2 -> (theta, phi) pair,
/// 4 -> 15-parameter two-qubit family). Coarse grid (or random restarts)
/// followed by coordinate search with shrinking steps; extra_seeds adds
/// caller-chosen start points (e.g. the reporting axes) to the restart list.
/// Deterministic for a fixed config.
AccessibleResult accessible_is(const Ensemble& e, const AxisSearchConfig& cfg,
                               const std::vector<std::vector<double>>& extra_seeds = {});

/// Generic maximizer over one of the projector families: the (theta, phi)
/// search (n_params = 2) runs the coarse grid plus restarts, the 15-parameter
/// search runs seeded random restarts; both refine by coordinate search.
/// Ties between grid cells resolve to the lowest linear index. Used for both
/// the cIS optimization and the high-accuracy axis.
AccessibleResult maximize_over_family(
    const std::function<double(const std::vector<double>&)>& objective, std::size_t n_params,
    const AxisSearchConfig& cfg, const std::vector<std::vector<double>>& extra_seeds = {});

/// xi_c(P) / xi_q, in (0, 1] up to roundoff; 1 exactly when every member is
/// fixed by the dephasing map.
double efficacy_ratio(const Ensemble& e, const MeasurementFamily& basis);

/// Mutual-information objective used by accessible_is, exposed for tests:
/// exp(I) for the family parameters applied to the ensemble.
double family_is_2class(const Ensemble& e, double theta, double phi);
double family_is_u15(const Ensemble& e, std::span<const double> theta);

struct MetricReport {
    std::string scenario;
    std::string task;
    double xi_q = 1.0;
    double xi_acc = 1.0;
    std::vector<std::pair<std::string, double>> xi_c_by_axis;  // named axes, report order
    double efficacy_ratio = 1.0;

    /// Theorem-2 chain ell >= xi_q >= xi_acc >= xi_c(P) with 1e-6 slack on
    /// the optimized middle term; throws OrderingError on violation.
    void validate(double ell) const;

    double xi_c(const std::string& axis) const;
    static std::string csv_header();
    std::string csv_row() const;
};

}  // namespace qis
