// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "qis/cluster_ising.hpp"
#include "qis/metrics.hpp"
#include "qis/training.hpp"

namespace qis {

struct ExperimentPaths {
    std::string cache_dir = "cache";
    std::string out_dir = "out";
    std::string model;  // defaults to <out_dir>/model_<task>.json
};

struct ExperimentConfig {
    Task task = Task::two_class;
    Scenario scenario = Scenario::unbiased;
    std::uint64_t seed = 7;
    ExperimentPaths paths;
    SpsaConfig spsa;
    AxisSearchConfig axis_search;
    std::string boundary_source = "builtin-linear";  // or a boundary CSV path
    bool line_only_sampling = false;
    bool write_ppm = false;

    std::string grid_cache_path() const;
    std::string training_cache_path() const;
    std::string model_path() const;
    std::string axes_path(Scenario s) const;
    std::string metrics_csv_path() const;

    PhaseBoundaries boundaries() const;

    static ExperimentConfig from_json_file(const std::string& path);
};

/// Compute (or re-validate) the 4096-point grid cache and the 40-point
/// training cache. Valid caches are kept; corrupted ones are regenerated with
/// a warning. Residuals above 1e-8 abort.
void cmd_gen_states(const ExperimentConfig& config);

/// SPSA-train the configured task on the 40-point training set and persist
/// the model plus a per-iteration loss/gradient log.
void cmd_train(const ExperimentConfig& config);

/// Build the 1500-sample test ensemble, compute the full metric family and
/// write one CSV row plus the axis-parameter sidecar. The Theorem-2 ordering
/// is asserted before anything is written.
MetricReport cmd_evaluate(const ExperimentConfig& config);

/// Predicted 64x64 phase diagram per reporting axis (axes from the unbiased
/// evaluation) with per-axis accuracy against the boundary ground truth.
void cmd_phase_diagram(const ExperimentConfig& config);

/// Per-sample Bloch coordinates of the 2-class output ensemble plus a
/// 40-bin histogram of <X>.
void cmd_bloch_dump(const ExperimentConfig& config);

/// CLI entry point (gen-states | train | evaluate | phase-diagram |
/// bloch-dump). Exit codes: 0 ok, 2 validation error, 3 ordering-invariant
/// failure, 1 anything else.
int cli_main(int argc, char** argv);

/// Exit code an exception maps to; exposed for tests.
int exit_code_for(const std::exception& e);

/// Parameters of the fixed reporting axes: "X" is the X (or XX-product) axis,
/// "Z" the Z (or computational ZZ) axis.
std::vector<double> named_axis_params(Task task, const std::string& axis);

/// Projective family for a parameter vector of the task's projector family.
MeasurementFamily basis_for_params(Task task, const std::vector<double>& params);

/// argmax_j Tr[rho E_j]; ties resolve toward the lowest label index.
int predict_label(const ComplexMatrix& rho_out, const MeasurementFamily& basis);

/// "# seed=..." and "# checksum=fnv1a:..." header lines over a body.
std::string with_seed_checksum(std::uint64_t seed, const std::string& body);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qis
