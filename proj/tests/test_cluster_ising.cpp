// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "qis/cluster_ising.hpp"

using namespace qis;

namespace {

// Independent lowest-eigenpair oracle: shift-invert power iteration with a
// Gershgorin shift strictly below the spectrum.
double lowest_energy_shift_invert(const RealMatrix& h, int iterations = 200) {
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        double radius = 0.0;
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            if (i != j) radius += std::abs(h(i, j));
        lo = std::min(lo, h(i, i) - radius);
    }
    const double sigma = lo - 1.0;
    const Eigen::PartialPivLU<RealMatrix> lu(
        (h - sigma * RealMatrix::Identity(h.rows(), h.cols())).eval());
    RealVector x = RealVector::Ones(h.rows()).normalized();
    for (int it = 0; it < iterations; ++it) x = lu.solve(x).normalized();
    return x.dot(h * x);
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("spin chain point guards") {
    CHECK_THROWS_AS(build_hamiltonian_real({2, 1.0, 0.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(build_hamiltonian_real({13, 1.0, 0.0, 0.0}), SizeError);
    CHECK_THROWS_AS((SpinChainPoint{9, 0.0, 1.0, 0.0}.x()), ValidationError);
    const auto x = SpinChainPoint{9, 2.0, 1.0, -0.5}.x();
    CHECK(x[0] == doctest::Approx(0.5));
    CHECK(x[1] == doctest::Approx(-0.25));
}

TEST_CASE("N=3 pure cluster term has eigenvalues +-1, each 4-fold") {
    const SpinChainPoint p{3, 1.0, 0.0, 0.0};
    const RealMatrix h = build_hamiltonian_real(p);
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
    for (int i = 0; i < 4; ++i) CHECK(solver.eigenvalues()[i] == doctest::Approx(-1.0));
    for (int i = 4; i < 8; ++i) CHECK(solver.eigenvalues()[i] == doctest::Approx(1.0));
}

TEST_CASE("the Hamiltonian is real-symmetric in the computational basis") {
    const SpinChainPoint p{5, 1.3, 0.7, -0.4};
    const ComplexMatrix h = build_hamiltonian(p);
    CHECK(h.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("independent-spin limit: J=0, h1=1 gives energy -N and |+>^N") {
    const GroundState gs = ground_state({9, 0.0, 1.0, 0.0});
    CHECK(gs.energy == doctest::Approx(-9.0).epsilon(1e-12));
    // |+>^9 has constant amplitude 2^{-9/2}
    for (Eigen::Index i = 0; i < gs.vector.size(); ++i)
        CHECK(gs.vector[i].real() == doctest::Approx(std::pow(2.0, -4.5)).epsilon(1e-8));
}

TEST_CASE("X-chain limit: J=0, h2=1 gives energy -(N-1)") {
    const GroundState gs = ground_state({9, 0.0, 0.0, 1.0});
    CHECK(gs.energy == doctest::Approx(-8.0).epsilon(1e-10));
}

TEST_CASE("stabilizer limit: J=1, h1=h2=0 gives energy -(N-2) and a degenerate flag") {
    const GroundState gs = ground_state({9, 1.0, 0.0, 0.0});
    CHECK(gs.energy == doctest::Approx(-7.0).epsilon(1e-10));
    CHECK(gs.degenerate);
}

TEST_CASE("generic point matches the shift-invert oracle") {
    const SpinChainPoint p{9, 1.0, 1.0, -0.5};
    const GroundState gs = ground_state(p);
    const double oracle_energy = lowest_energy_shift_invert(build_hamiltonian_real(p));
    CHECK(std::abs(gs.energy - oracle_energy) < 1e-8);
    CHECK_FALSE(gs.degenerate);
}

TEST_CASE("ground state is normalized with small residual and fixed phase") {
    const SpinChainPoint p{7, 1.0, 0.6, 0.3};
    const GroundState gs = ground_state(p);
    CHECK(gs.vector.norm() == doctest::Approx(1.0).epsilon(1e-10));

    const RealVector re = gs.vector.real();
    const RealVector residual = apply_hamiltonian(p, re) - gs.energy * re;
    CHECK(residual.norm() < 1e-8);

    // deterministic phase: the largest-magnitude amplitude is real positive
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < re.size(); ++i)
        if (std::abs(re[i]) > std::abs(re[imax])) imax = i;
    CHECK(re[imax] > 0.0);

    const GroundState again = ground_state(p);
    CHECK((gs.vector - again.vector).norm() < 1e-12);
}

TEST_CASE("apply_hamiltonian agrees with the dense matrix") {
    std::mt19937_64 rng(51);
    const SpinChainPoint p{5, 0.8, 1.1, -0.7};
    const RealMatrix h = build_hamiltonian_real(p);
    RealVector v(32);
    for (Eigen::Index i = 0; i < 32; ++i) v[i] = normal_draw(rng);
    CHECK((apply_hamiltonian(p, v) - h * v).norm() < 1e-12);
}

TEST_CASE("ground energy is non-increasing in h1 at fixed J and h2") {
    for (double h2 : {-1.6, -0.5, 1.0}) {
        double previous = std::numeric_limits<double>::infinity();
        for (double h1 : {0.0, 0.5, 1.0, 1.5}) {
            const double e = ground_state({9, 1.0, h1, h2}).energy;
            CHECK(e <= previous + 1e-10);
            previous = e;
        }
    }
}

TEST_CASE("grid points match the stated formula and index bijection") {
    const auto grid = grid_points();
    REQUIRE(grid.size() == 4096);

    CHECK(grid[0].x()[0] == doctest::Approx(0.0));
    CHECK(grid[0].x()[1] == doctest::Approx(-1.6));
    CHECK(grid[64 * 63 + 63].x()[0] == doctest::Approx(1.6));
    CHECK(grid[64 * 63 + 63].x()[1] == doctest::Approx(1.6));
    CHECK(grid[64 * 31 + 31].x()[0] == doctest::Approx(1.6 * 31 / 63.0));
    CHECK(grid[64 * 31 + 31].x()[1] == doctest::Approx(-1.6 + 3.2 * 31 / 63.0));

    for (std::size_t i : {0u, 97u, 4095u}) {
        const std::size_t n = i / 64, m = i % 64;
        CHECK(grid[i].x()[0] == doctest::Approx(1.6 * static_cast<double>(n) / 63.0));
        CHECK(grid[i].x()[1] ==
              doctest::Approx(-1.6 + 3.2 * static_cast<double>(m) / 63.0));
    }
}

TEST_CASE("training points run along h1/J = 1") {
    const auto pts = training_points();
    REQUIRE(pts.size() == 40);
    for (const auto& p : pts) CHECK(p.x()[0] == doctest::Approx(1.0));
    CHECK(pts[0].x()[1] == doctest::Approx(-1.6));
    CHECK(pts[39].x()[1] == doctest::Approx(1.6));
}

TEST_CASE("ground truth labels follow the phase table") {
    const PhaseBoundaries b = PhaseBoundaries::builtin_linear();
    CHECK(ground_truth_label({1.0, -0.5}, Task::two_class, b).value == 0);   // SPT
    CHECK(ground_truth_label({1.0, 0.5}, Task::two_class, b).value == 1);    // paramagnetic
    CHECK(ground_truth_label({1.0, -1.4}, Task::two_class, b).value == 1);   // antiferromagnetic
    CHECK(ground_truth_label({1.0, -0.5}, Task::three_class, b).value == 0);
    CHECK(ground_truth_label({1.0, 0.5}, Task::three_class, b).value == 2);
    CHECK(ground_truth_label({1.0, -1.4}, Task::three_class, b).value == 3);
}

TEST_CASE("boundary file override and parse errors") {
    const std::string path = temp_path("qis_boundaries_test.csv");
    {
        std::ofstream out(path);
        out << "h1_over_J,h2_upper,h2_lower\n";
        out << "0.0,0.2,-1.0\n";
        out << "1.6,0.4,-1.3\n";
    }
    const PhaseBoundaries b = PhaseBoundaries::from_csv(path);
    CHECK(b.upper(0.0) == doctest::Approx(0.2));
    CHECK(b.upper(0.8) == doctest::Approx(0.3));   // midpoint interpolation
    CHECK(b.lower(1.6) == doctest::Approx(-1.3));
    CHECK(b.upper(5.0) == doctest::Approx(0.4));   // clamped beyond the range

    {
        std::ofstream out(path);
        out << "h1_over_J,h2_upper,h2_lower\n";
        out << "0.0,0.2,-1.0\n";
        out << "not,a,row\n";
    }
    try {
        PhaseBoundaries::from_csv(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("training set carries the Table labels") {
    const auto data = training_set(Task::two_class);
    REQUIRE(data.size() == 40);
    CHECK(data[0].label == 1);   // x = (1, -1.6), antiferromagnetic side
    CHECK(data[39].label == 1);  // x = (1, 1.6), paramagnetic side
    CHECK(data[14].label == 0);  // x = (1, -0.451...), inside the SPT window

    // 3-class labels from the same thresholds, without recomputing states
    const PhaseBoundaries b = PhaseBoundaries::builtin_linear();
    CHECK(ground_truth_label(data[0].state.point.x(), Task::three_class, b).value == 3);
    CHECK(ground_truth_label(data[39].state.point.x(), Task::three_class, b).value == 2);

    for (const auto& entry : data) {
        const RealVector re = entry.state.vector.real();
        CHECK((apply_hamiltonian(entry.state.point, re) - entry.state.energy * re).norm() <
              1e-8);
    }
}

TEST_CASE("test-set sampling hits the per-label quotas deterministically") {
    // synthetic label table: 10 points per 3-class label
    std::vector<int> labels;
    for (int rep = 0; rep < 10; ++rep)
        for (int l : {0, 1, 2, 3}) labels.push_back(l);

    const auto two_unbiased = sample_test_set(labels, Task::two_class, Scenario::unbiased, 5);
    REQUIRE(two_unbiased.size() == 1500);
    std::size_t zeros = 0;
    for (const auto& s : two_unbiased) zeros += s.label == 0 ? 1 : 0;
    CHECK(zeros == 750);

    const auto two_biased = sample_test_set(labels, Task::two_class, Scenario::biased, 5);
    zeros = 0;
    for (const auto& s : two_biased) zeros += s.label == 0 ? 1 : 0;
    CHECK(zeros == 1480);

    const auto three_unbiased =
        sample_test_set(labels, Task::three_class, Scenario::unbiased, 5);
    std::array<std::size_t, 4> counts{};
    for (const auto& s : three_unbiased) ++counts[static_cast<std::size_t>(s.label)];
    CHECK(counts[0] == 500);
    CHECK(counts[1] == 0);
    CHECK(counts[2] == 500);
    CHECK(counts[3] == 500);

    const auto three_biased = sample_test_set(labels, Task::three_class, Scenario::biased, 5);
    counts = {};
    for (const auto& s : three_biased) ++counts[static_cast<std::size_t>(s.label)];
    CHECK(counts[0] == 1480);
    CHECK(counts[2] == 10);
    CHECK(counts[3] == 10);

    // sampled indices carry the requested label
    for (const auto& s : three_biased) CHECK(labels[s.index] == s.label);

    // determinism and seed sensitivity
    const auto again = sample_test_set(labels, Task::two_class, Scenario::unbiased, 5);
    bool identical = true;
    for (std::size_t i = 0; i < again.size(); ++i)
        identical = identical && again[i].index == two_unbiased[i].index;
    CHECK(identical);
    const auto other_seed = sample_test_set(labels, Task::two_class, Scenario::unbiased, 6);
    bool all_same = true;
    for (std::size_t i = 0; i < other_seed.size(); ++i)
        all_same = all_same && other_seed[i].index == two_unbiased[i].index;
    CHECK_FALSE(all_same);

    // a label with no candidates is a configuration error
    const std::vector<int> only_zeros(40, 0);
    CHECK_THROWS_AS(sample_test_set(only_zeros, Task::two_class, Scenario::unbiased, 5),
                    ConfigError);
}

TEST_CASE("ground-state cache round-trips with checksum validation") {
    GroundStateCache cache;
    cache.n_sites = 3;
    std::mt19937_64 rng(52);
    for (int k = 0; k < 3; ++k) {
        GroundStateRecord rec;
        rec.h1_over_j = 0.1 * k;
        rec.h2_over_j = -0.2 * k;
        rec.energy = -1.0 - k;
        rec.degenerate = static_cast<std::uint8_t>(k == 2);
        rec.vector = oracle::random_pure(rng, 8);
        cache.records.push_back(rec);
    }

    const std::string path = temp_path("qis_cache_test.qisgs");
    write_ground_state_cache(cache, path);
    CHECK(ground_state_cache_valid(path, 3, 3));
    CHECK_FALSE(ground_state_cache_valid(path, 3, 4));
    CHECK_FALSE(ground_state_cache_valid(path, 9, 3));

    const GroundStateCache loaded = read_ground_state_cache(path);
    REQUIRE(loaded.records.size() == 3);
    CHECK(loaded.n_sites == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(loaded.records[k].h1_over_j == cache.records[k].h1_over_j);
        CHECK(loaded.records[k].energy == cache.records[k].energy);
        CHECK(loaded.records[k].degenerate == cache.records[k].degenerate);
        CHECK((loaded.records[k].vector - cache.records[k].vector).norm() == 0.0);
    }

    // corrupt the magic: parse error and invalid cache
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.put('X');
    }
    CHECK_FALSE(ground_state_cache_valid(path, 3, 3));
    CHECK_THROWS_AS(read_ground_state_cache(path), ParseError);
    std::remove(path.c_str());
    std::remove((path + ".fnv").c_str());
}
