// SPDX-License-Identifier: Apache-2.0
#include "qis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qis/gates.hpp"

namespace qis {

namespace {

constexpr double kProbFloor = 1e-15;

void check_distribution(const std::vector<double>& p, const char* what) {
    if (p.empty()) throw ValidationError(std::string(what) + ": empty distribution");
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ValidationError(std::string(what) + ": invalid probability " +
                                  format_double(v));
        sum += v;
    }
    if (std::abs(sum - 1.0) > kTraceTol)
        throw ValidationError(std::string(what) + ": probabilities sum to " +
                              format_double(sum));
}

// KL divergence with the support rule: entries where both p and q vanish
// contribute nothing; q = 0 under p above the support tolerance is an error.
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
    double acc = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (q[j] < kProbFloor) {
            if (p[j] > kSupportTol)
                throw SupportError("kl_divergence: p > 0 on zero-probability outcome " +
                                       std::to_string(j),
                                   p[j]);
            continue;
        }
        if (p[j] < kProbFloor) continue;
        acc += p[j] * std::log(p[j] / q[j]);
    }
    return acc;
}

// exp of the mutual information for a conditional probability table; shared
// by the reporting path and the axis-search objective.
double is_from_table(const std::vector<double>& p_in,
                     const std::vector<std::vector<double>>& q_out) {
    const std::size_t n_labels = q_out.front().size();
    std::vector<double> marginal(n_labels, 0.0);
    for (std::size_t i = 0; i < p_in.size(); ++i)
        for (std::size_t j = 0; j < n_labels; ++j) marginal[j] += p_in[i] * q_out[i][j];

    double avg = 0.0;
    for (std::size_t i = 0; i < p_in.size(); ++i)
        avg += p_in[i] * kl_divergence(q_out[i], marginal);
    return std::exp(std::max(avg, 0.0));
}

}  // namespace

ComplexVector ProjectorFamily2Class::psi0() const {
    ComplexVector v(2);
    v << std::cos(theta / 2.0),
        std::exp(std::complex<double>(0.0, phi)) * std::sin(theta / 2.0);
    return v;
}

ComplexVector ProjectorFamily2Class::psi1() const {
    ComplexVector v(2);
    v << std::sin(theta / 2.0),
        -std::exp(std::complex<double>(0.0, phi)) * std::cos(theta / 2.0);
    return v;
}

MeasurementFamily ProjectorFamily2Class::basis() const {
    return MeasurementFamily::projective_from_states({psi0(), psi1()});
}

ComplexMatrix ProjectorFamilyU15::unitary() const {
    return w_form(theta);
}

MeasurementFamily ProjectorFamilyU15::basis() const {
    const ComplexMatrix u = unitary();
    std::vector<ComplexVector> columns;
    columns.reserve(4);
    for (Eigen::Index j = 0; j < 4; ++j) columns.push_back(u.col(j));
    return MeasurementFamily::projective_from_states(columns);
}

double classical_is_table(const std::vector<double>& p_in,
                          const std::vector<std::vector<double>>& q_out) {
    check_distribution(p_in, "classical_is_table p_in");
    if (q_out.size() != p_in.size())
        throw ValidationError("classical_is_table: table rows must match p_in length");
    const std::size_t n_labels = q_out.front().size();
    for (const auto& row : q_out) {
        if (row.size() != n_labels)
            throw ValidationError("classical_is_table: ragged conditional table");
        check_distribution(row, "classical_is_table q_out row");
    }
    return is_from_table(p_in, q_out);
}

double holevo_information(const Ensemble& e) {
    const DensityMatrix avg = average_state(e);
    double chi = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i)
        chi += e.prob(i) * relative_entropy(e.state(i), avg);
    return std::max(chi, 0.0);
}

double quantum_is(const Ensemble& e) {
    return std::exp(holevo_information(e));
}

double projected_holevo(const Ensemble& e, const MeasurementFamily& basis) {
    if (basis.kind() != MeasurementKind::projective)
        throw KindError("projected_holevo: projective family required");
    if (basis.dim() != e.dim()) throw SizeError("projected_holevo: dimension mismatch");

    // P(rho_i) and P(rho_bar) share the measurement eigenbasis, so the
    // quantum relative entropies reduce to the classical KL of the outcome
    // statistics.
    std::vector<std::vector<double>> table(e.size());
    std::vector<double> p_in(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        table[i] = measure_probs(e.state(i), basis);
        p_in[i] = e.prob(i);
    }
    return std::log(is_from_table(p_in, table));
}

double classical_is(const Ensemble& e, const MeasurementFamily& basis) {
    return std::exp(projected_holevo(e, basis));
}

double efficacy_ratio(const Ensemble& e, const MeasurementFamily& basis) {
    const double xi_q = quantum_is(e);
    const double xi_c = classical_is(e, basis);
    const double ratio = xi_c / xi_q;
    if (ratio > 1.0 + 1e-9)
        throw OrderingError("efficacy_ratio: xi_c exceeds xi_q (" + format_double(ratio) + ")");
    return std::min(ratio, 1.0);
}

namespace {

// Fast family objectives. For the qubit pair, q_i(j) = <psi_j| rho_i |psi_j>;
// for the two-qubit family, q_i(j) = (U^dag rho_i U)_jj.
double objective_2class(const Ensemble& e, const std::vector<double>& x) {
    const ProjectorFamily2Class fam{x[0], x[1]};
    const ComplexVector p0 = fam.psi0();
    double marginal[2] = {0.0, 0.0};
    std::vector<std::array<double, 2>> q(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const ComplexMatrix& r = e.state(i).mat();
        double q0 = (p0.adjoint() * r * p0)(0, 0).real();
        q0 = std::clamp(q0, 0.0, 1.0);
        q[i] = {q0, 1.0 - q0};  // completeness fixes q1
        marginal[0] += e.prob(i) * q[i][0];
        marginal[1] += e.prob(i) * q[i][1];
    }
    double mi = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (int j = 0; j < 2; ++j)
            if (q[i][j] > kProbFloor && marginal[j] > kProbFloor)
                mi += e.prob(i) * q[i][j] * std::log(q[i][j] / marginal[j]);
    return std::exp(std::max(mi, 0.0));
}

double objective_u15(const Ensemble& e, const std::vector<double>& x) {
    const ComplexMatrix u = w_form(x);
    std::vector<std::array<double, 4>> q(e.size());
    double marginal[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < e.size(); ++i) {
        const ComplexMatrix m = u.adjoint() * e.state(i).mat() * u;
        double sum = 0.0;
        for (int j = 0; j < 4; ++j) {
            q[i][j] = std::max(m(j, j).real(), 0.0);
            sum += q[i][j];
        }
        for (int j = 0; j < 4; ++j) {
            q[i][j] /= sum;
            marginal[j] += e.prob(i) * q[i][j];
        }
    }
    double mi = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (int j = 0; j < 4; ++j)
            if (q[i][j] > kProbFloor && marginal[j] > kProbFloor)
                mi += e.prob(i) * q[i][j] * std::log(q[i][j] / marginal[j]);
    return std::exp(std::max(mi, 0.0));
}

struct SearchOutcome {
    double value = -1.0;
    std::vector<double> params;
    bool converged = false;
};

// Coordinate descent with shrinking steps. Deterministic: coordinates are
// visited in order and only strict improvements move the iterate.
SearchOutcome coordinate_search(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x, std::vector<double> step,
                                double step_tol, int max_sweeps) {
    SearchOutcome out;
    double best = f(x);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool improved = false;
        for (std::size_t d = 0; d < x.size(); ++d) {
            for (double sign : {+1.0, -1.0}) {
                std::vector<double> trial = x;
                trial[d] += sign * step[d];
                const double v = f(trial);
                if (v > best) {
                    best = v;
                    x = std::move(trial);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            double max_step = 0.0;
            for (auto& s : step) {
                s *= 0.5;
                max_step = std::max(max_step, s);
            }
            if (max_step < step_tol) {
                out.converged = true;
                break;
            }
        }
    }
    out.value = best;
    out.params = std::move(x);
    return out;
}

}  // namespace

double family_is_2class(const Ensemble& e, double theta, double phi) {
    if (e.dim() != 2) throw SizeError("family_is_2class: qubit ensemble required");
    return objective_2class(e, {theta, phi});
}

double family_is_u15(const Ensemble& e, std::span<const double> theta) {
    if (e.dim() != 4) throw SizeError("family_is_u15: two-qubit ensemble required");
    if (theta.size() != 15) throw SizeError("family_is_u15: expected 15 parameters");
    return objective_u15(e, std::vector<double>(theta.begin(), theta.end()));
}

AccessibleResult maximize_over_family(
    const std::function<double(const std::vector<double>&)>& objective, std::size_t n_params,
    const AxisSearchConfig& cfg, const std::vector<std::vector<double>>& extra_seeds) {
    if (n_params != 2 && n_params != 15)
        throw ValidationError("maximize_over_family: families have 2 or 15 parameters");

    std::vector<std::vector<double>> starts;
    std::vector<double> step0;

    if (n_params == 2) {
        const int gt = cfg.grid_theta, gp = cfg.grid_phi;
        if (gt < 2 || gp < 1) throw ValidationError("maximize_over_family: bad grid shape");
        const double dth = M_PI / (gt - 1);
        const double dph = 2.0 * M_PI / gp;
        std::vector<double> cell_value(static_cast<std::size_t>(gt) * gp);
        parallel_for(cell_value.size(), [&](std::size_t idx) {
            const int a = static_cast<int>(idx) / gp;
            const int b = static_cast<int>(idx) % gp;
            cell_value[idx] = objective({a * dth, b * dph});
        });
        // best cells, lowest linear index winning ties
        std::vector<std::size_t> order(cell_value.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
            return cell_value[l] > cell_value[r];
        });
        const int n_starts = std::min<int>(cfg.grid_restarts, static_cast<int>(order.size()));
        for (int k = 0; k < n_starts; ++k) {
            const std::size_t idx = order[k];
            starts.push_back({static_cast<double>(idx / gp) * dth,
                              static_cast<double>(idx % gp) * dph});
        }
        step0 = {dth, dph};
    } else {
        std::mt19937_64 rng(cfg.seed);
        starts.emplace_back(15, 0.0);  // computational axis
        for (int r = 0; r < cfg.random_restarts; ++r) {
            std::vector<double> x(15);
            for (auto& v : x) v = uniform_range(rng, -M_PI, M_PI);
            starts.push_back(std::move(x));
        }
        step0.assign(15, M_PI / 8.0);
    }

    for (const auto& seed_params : extra_seeds) {
        if (seed_params.size() != n_params)
            throw ValidationError("maximize_over_family: extra seed has wrong parameter count");
        starts.push_back(seed_params);
    }

    AccessibleResult best;
    best.value = -1.0;
    for (const auto& x0 : starts) {
        SearchOutcome got = coordinate_search(objective, x0, step0, cfg.step_tol,
                                              cfg.max_sweeps);
        if (got.value > best.value) {
            best.value = got.value;
            best.params = got.params;
            best.converged = got.converged;
        }
    }
    return best;
}

AccessibleResult accessible_is(const Ensemble& e, const AxisSearchConfig& cfg,
                               const std::vector<std::vector<double>>& extra_seeds) {
    const Eigen::Index dim = e.dim();
    if (dim != 2 && dim != 4)
        throw ValidationError("accessible_is: projector families exist for dim 2 and 4 only");
    if (dim == 2)
        return maximize_over_family(
            [&e](const std::vector<double>& x) { return objective_2class(e, x); }, 2, cfg,
            extra_seeds);
    return maximize_over_family(
        [&e](const std::vector<double>& x) { return objective_u15(e, x); }, 15, cfg,
        extra_seeds);
}

void MetricReport::validate(double ell) const {
    if (!(ell + 1e-9 >= xi_q))
        throw OrderingError("metric ordering: xi_q " + format_double(xi_q) +
                            " exceeds label bound " + format_double(ell));
    if (!(xi_q + 1e-6 >= xi_acc))
        throw OrderingError("metric ordering: xi_acc " + format_double(xi_acc) +
                            " exceeds xi_q " + format_double(xi_q));
    for (const auto& [axis, value] : xi_c_by_axis) {
        if (!(xi_acc + 1e-6 >= value))
            throw OrderingError("metric ordering: xi_c(" + axis + ") " +
                                format_double(value) + " exceeds xi_acc " +
                                format_double(xi_acc));
    }
    if (!(efficacy_ratio > 0.0 && efficacy_ratio <= 1.0 + 1e-9))
        throw OrderingError("metric ordering: efficacy ratio " +
                            format_double(efficacy_ratio) + " outside (0, 1]");
}

double MetricReport::xi_c(const std::string& axis) const {
    for (const auto& [name, value] : xi_c_by_axis)
        if (name == axis) return value;
    throw ValidationError("MetricReport: no axis '" + axis + "'");
}

std::string MetricReport::csv_header() {
    return "scenario,task,xi_q,xi_acc,xi_c_X,xi_c_Z,xi_c_highacc,xi_c_opt,efficacy_ratio";
}

std::string MetricReport::csv_row() const {
    std::string row = scenario + "," + task;
    row += "," + format_double(xi_q);
    row += "," + format_double(xi_acc);
    for (const char* axis : {"X", "Z", "highacc", "opt"}) row += "," + format_double(xi_c(axis));
    row += "," + format_double(efficacy_ratio);
    return row;
}

}  // namespace qis
