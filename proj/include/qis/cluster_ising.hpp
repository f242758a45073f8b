// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qis/linalg.hpp"

namespace qis {

/// One parameter point of the 1D cluster-Ising chain
///   H = -J sum Z_n X_{n+1} Z_{n+2} - h1 sum X_n - h2 sum X_n X_{n+1}
/// with open boundaries.
struct SpinChainPoint {
    int n_sites = 9;
    double j = 1.0;
    double h1 = 0.0;
    double h2 = 0.0;

    /// (h1/J, h2/J); defined only for J > 0.
    std::array<double, 2> x() const;
};

struct GroundState {
    SpinChainPoint point;
    double energy = 0.0;
    ComplexVector vector;
    bool degenerate = false;  // gap below 1e-10, eigenvector choice ambiguous
};

struct PhaseLabel {
    Task task;
    int value;
};

/// Dense 2^N Hamiltonian; every term is real in the computational basis.
RealMatrix build_hamiltonian_real(const SpinChainPoint& p);
ComplexMatrix build_hamiltonian(const SpinChainPoint& p);

/// Matrix-free H*v, used for cheap eigen-residual audits.
RealVector apply_hamiltonian(const SpinChainPoint& p, const RealVector& v);

/// Lowest eigenpair by dense diagonalization. The global phase is fixed by
/// making the largest-magnitude amplitude real positive.
GroundState ground_state(const SpinChainPoint& p);

/// The 64x64 parameter grid z_{n,m} = (1.6 n/63, -1.6 + 3.2 m/63), J = 1,
/// N = 9, in row-major order i = 64 n + m.
std::vector<SpinChainPoint> grid_points();

/// The 40 training-line points, h1/J = 1 and h2/J = -1.6 + 3.2 i/39.
std::vector<SpinChainPoint> training_points();

/// Phase boundary curves h2_upper(h1) and h2_lower(h1) over h1/J, piecewise
/// linear. The builtin default runs the Table-anchored horizontal lines
/// h2/J = 0 (paramagnetic onset) and h2/J = -1.15 (antiferromagnetic onset).
class PhaseBoundaries {
  public:
    static PhaseBoundaries builtin_linear();
    static PhaseBoundaries from_csv(const std::string& path);

    double upper(double h1_over_j) const;
    double lower(double h1_over_j) const;

  private:
    struct Row {
        double h1, up, lo;
    };
    std::vector<Row> rows_;
};

/// Phase label of a parameter point. 2-class: 0 = SPT, 1 = other.
/// 3-class ground truth: 0 = SPT, 2 = paramagnetic, 3 = antiferromagnetic
/// (label 1, "fail in classification", is prediction-only).
PhaseLabel ground_truth_label(const std::array<double, 2>& x, Task task,
                              const PhaseBoundaries& boundaries);

struct LabeledState {
    GroundState state;
    int label;
};

/// 40 labeled training ground states with uniform input probability 1/40.
std::vector<LabeledState> training_set(Task task);

enum class Scenario { unbiased, biased };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

struct TestSample {
    std::size_t index;  // into the label table / cached grid
    int label;
};

/// Draw the 1500-sample test set of the given scenario with replacement from
/// the points whose ground-truth label matches the per-label quota, in
/// ascending label order. Deterministic for a fixed seed.
std::vector<TestSample> sample_test_set(const std::vector<int>& point_labels, Task task,
                                        Scenario scenario, std::uint64_t seed);

// ---- ground-state cache file ----

struct GroundStateRecord {
    double h1_over_j = 0.0;
    double h2_over_j = 0.0;
    double energy = 0.0;
    std::uint8_t degenerate = 0;
    ComplexVector vector;
};

struct GroundStateCache {
    std::uint32_t n_sites = 9;
    std::vector<GroundStateRecord> records;
};

/// Binary cache: magic "QISGS1\n", little-endian u32 N, u32 count, then per
/// record h1/J, h2/J, energy (f64), degeneracy flag (u8) and 2^N (re, im)
/// f64 pairs. A sidecar "<path>.fnv" holds the content checksum.
void write_ground_state_cache(const GroundStateCache& cache, const std::string& path);
GroundStateCache read_ground_state_cache(const std::string& path);

/// True when the file parses, matches the expected shape and its sidecar
/// checksum agrees with the content.
bool ground_state_cache_valid(const std::string& path, std::uint32_t n_sites,
                              std::uint32_t count);

/// Compute caches for the full grid / the training line (parallel map,
/// records stored in grid order).
GroundStateCache compute_grid_cache();
GroundStateCache compute_training_cache();

/// Largest ||H v - E v|| over the cached records.
double max_eigen_residual(const GroundStateCache& cache);

}  // namespace qis
