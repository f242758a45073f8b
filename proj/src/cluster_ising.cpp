// SPDX-License-Identifier: Apache-2.0
#include "qis/cluster_ising.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace qis {

namespace {

constexpr int kMinSites = 3;
constexpr int kMaxSites = 12;  // dense 2^N guard
constexpr char kCacheMagic[] = "QISGS1\n";

void check_point(const SpinChainPoint& p) {
    if (p.n_sites < kMinSites) throw ValidationError("SpinChainPoint: need at least 3 sites");
    if (p.n_sites > kMaxSites)
        throw SizeError("SpinChainPoint: dense solver supports at most 12 sites");
    if (!std::isfinite(p.j) || !std::isfinite(p.h1) || !std::isfinite(p.h2))
        throw ValidationError("SpinChainPoint: non-finite coupling");
}

// qubit q (0-based) lives at bit position N-1-q of the basis index
inline std::uint32_t flip_mask(int n, int q) {
    return 1u << (n - 1 - q);
}
inline int bit_at(std::uint32_t basis, int n, int q) {
    return static_cast<int>((basis >> (n - 1 - q)) & 1u);
}

}  // namespace

std::array<double, 2> SpinChainPoint::x() const {
    if (!(j > 0.0)) throw ValidationError("SpinChainPoint: x requires J > 0");
    return {h1 / j, h2 / j};
}

RealMatrix build_hamiltonian_real(const SpinChainPoint& p) {
    check_point(p);
    const int n = p.n_sites;
    const std::uint32_t dim = 1u << n;
    RealMatrix h = RealMatrix::Zero(dim, dim);

    for (std::uint32_t b = 0; b < dim; ++b) {
        // cluster term -J Z_q X_{q+1} Z_{q+2}
        for (int q = 0; q + 2 < n; ++q) {
            const double sign =
                ((bit_at(b, n, q) + bit_at(b, n, q + 2)) % 2 == 0) ? 1.0 : -1.0;
            h(b ^ flip_mask(n, q + 1), b) += -p.j * sign;
        }
        // transverse field -h1 X_q
        for (int q = 0; q < n; ++q) h(b ^ flip_mask(n, q), b) += -p.h1;
        // Ising coupling -h2 X_q X_{q+1}
        for (int q = 0; q + 1 < n; ++q)
            h(b ^ flip_mask(n, q) ^ flip_mask(n, q + 1), b) += -p.h2;
    }
    return h;
}

ComplexMatrix build_hamiltonian(const SpinChainPoint& p) {
    return build_hamiltonian_real(p).cast<std::complex<double>>();
}

RealVector apply_hamiltonian(const SpinChainPoint& p, const RealVector& v) {
    check_point(p);
    const int n = p.n_sites;
    const std::uint32_t dim = 1u << n;
    if (v.size() != static_cast<Eigen::Index>(dim))
        throw SizeError("apply_hamiltonian: vector dimension mismatch");
    RealVector out = RealVector::Zero(dim);
    for (std::uint32_t b = 0; b < dim; ++b) {
        const double amp = v[b];
        if (amp == 0.0) continue;
        for (int q = 0; q + 2 < n; ++q) {
            const double sign =
                ((bit_at(b, n, q) + bit_at(b, n, q + 2)) % 2 == 0) ? 1.0 : -1.0;
            out[b ^ flip_mask(n, q + 1)] += -p.j * sign * amp;
        }
        for (int q = 0; q < n; ++q) out[b ^ flip_mask(n, q)] += -p.h1 * amp;
        for (int q = 0; q + 1 < n; ++q)
            out[b ^ flip_mask(n, q) ^ flip_mask(n, q + 1)] += -p.h2 * amp;
    }
    return out;
}

GroundState ground_state(const SpinChainPoint& p) {
    const RealMatrix h = build_hamiltonian_real(p);
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw Error("ground_state: eigensolver failed to converge");

    GroundState gs;
    gs.point = p;
    gs.energy = solver.eigenvalues()[0];
    gs.degenerate = (solver.eigenvalues()[1] - solver.eigenvalues()[0]) < 1e-10;

    RealVector v = solver.eigenvectors().col(0);
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (v[imax] < 0.0) v = -v;
    gs.vector = v.cast<std::complex<double>>();
    return gs;
}

std::vector<SpinChainPoint> grid_points() {
    std::vector<SpinChainPoint> points;
    points.reserve(64 * 64);
    for (int n = 0; n < 64; ++n)
        for (int m = 0; m < 64; ++m)
            points.push_back({9, 1.0, 1.6 * n / 63.0, -1.6 + 3.2 * m / 63.0});
    return points;
}

std::vector<SpinChainPoint> training_points() {
    std::vector<SpinChainPoint> points;
    points.reserve(40);
    for (int i = 0; i < 40; ++i) points.push_back({9, 1.0, 1.0, -1.6 + 3.2 * i / 39.0});
    return points;
}

PhaseBoundaries PhaseBoundaries::builtin_linear() {
    PhaseBoundaries b;
    b.rows_ = {{0.0, 0.0, -1.15}, {1.6, 0.0, -1.15}};
    return b;
}

PhaseBoundaries PhaseBoundaries::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("boundary file: cannot open " + path);
    PhaseBoundaries b;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line.find("h1_over_J") == std::string::npos)
                throw ParseError("boundary file " + path + ": line " + std::to_string(lineno) +
                                 ": missing h1_over_J,h2_upper,h2_lower header");
            saw_header = true;
            continue;
        }
        std::istringstream ss(line);
        Row row{};
        char c1 = 0, c2 = 0;
        if (!(ss >> row.h1 >> c1 >> row.up >> c2 >> row.lo) || c1 != ',' || c2 != ',')
            throw ParseError("boundary file " + path + ": line " + std::to_string(lineno) +
                             ": expected h1_over_J,h2_upper,h2_lower");
        if (!b.rows_.empty() && row.h1 <= b.rows_.back().h1)
            throw ParseError("boundary file " + path + ": line " + std::to_string(lineno) +
                             ": h1_over_J values must increase");
        b.rows_.push_back(row);
    }
    if (b.rows_.empty())
        throw ParseError("boundary file " + path + ": no data rows");
    if (b.rows_.size() == 1) b.rows_.push_back({b.rows_[0].h1 + 1.0, b.rows_[0].up, b.rows_[0].lo});
    return b;
}

namespace {
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    std::size_t hi = 1;
    while (xs[hi] < x) ++hi;
    const double t = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
    return ys[hi - 1] + t * (ys[hi] - ys[hi - 1]);
}
}  // namespace

double PhaseBoundaries::upper(double h1_over_j) const {
    std::vector<double> xs, ys;
    for (const auto& r : rows_) {
        xs.push_back(r.h1);
        ys.push_back(r.up);
    }
    return interp(xs, ys, h1_over_j);
}

double PhaseBoundaries::lower(double h1_over_j) const {
    std::vector<double> xs, ys;
    for (const auto& r : rows_) {
        xs.push_back(r.h1);
        ys.push_back(r.lo);
    }
    return interp(xs, ys, h1_over_j);
}

PhaseLabel ground_truth_label(const std::array<double, 2>& x, Task task,
                              const PhaseBoundaries& boundaries) {
    const double up = boundaries.upper(x[0]);
    const double lo = boundaries.lower(x[0]);
    int label3;
    if (x[1] >= up)
        label3 = 2;  // paramagnetic
    else if (x[1] <= lo)
        label3 = 3;  // antiferromagnetic
    else
        label3 = 0;  // SPT
    if (task == Task::three_class) return {task, label3};
    return {task, label3 == 0 ? 0 : 1};
}

std::vector<LabeledState> training_set(Task task) {
    const auto points = training_points();
    const PhaseBoundaries boundaries = PhaseBoundaries::builtin_linear();
    std::vector<LabeledState> out(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        out[i].state = ground_state(points[i]);
        out[i].label = ground_truth_label(points[i].x(), task, boundaries).value;
    });
    return out;
}

std::string scenario_name(Scenario s) {
    return s == Scenario::unbiased ? "unbiased" : "biased";
}

Scenario scenario_from_name(const std::string& name) {
    if (name == "unbiased") return Scenario::unbiased;
    if (name == "biased") return Scenario::biased;
    throw ValidationError("unknown scenario '" + name + "'");
}

std::vector<TestSample> sample_test_set(const std::vector<int>& point_labels, Task task,
                                        Scenario scenario, std::uint64_t seed) {
    std::map<int, std::size_t> quota;
    if (task == Task::two_class)
        quota = scenario == Scenario::unbiased ? std::map<int, std::size_t>{{0, 750}, {1, 750}}
                                               : std::map<int, std::size_t>{{0, 1480}, {1, 20}};
    else
        quota = scenario == Scenario::unbiased
                    ? std::map<int, std::size_t>{{0, 500}, {2, 500}, {3, 500}}
                    : std::map<int, std::size_t>{{0, 1480}, {2, 10}, {3, 10}};

    std::mt19937_64 rng(seed);
    std::vector<TestSample> samples;
    samples.reserve(1500);
    for (const auto& [label, count] : quota) {
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < point_labels.size(); ++i)
            if (point_labels[i] == label) candidates.push_back(i);
        if (candidates.empty())
            throw ConfigError("sample_test_set: no point carries label " +
                              std::to_string(label));
        for (std::size_t k = 0; k < count; ++k)
            samples.push_back({candidates[uniform_index(rng, candidates.size())], label});
    }
    return samples;
}

// ---- cache io ----

namespace {

static_assert(std::endian::native == std::endian::little,
              "ground-state cache io assumes a little-endian host");

void put_u32(std::string& buf, std::uint32_t v) {
    buf.append(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64(std::string& buf, double v) {
    buf.append(reinterpret_cast<const char*>(&v), sizeof v);
}

class Reader {
  public:
    Reader(const std::string& data, const std::string& path) : data_(data), path_(path) {}

    template <typename T>
    T get() {
        if (pos_ + sizeof(T) > data_.size())
            throw ParseError("cache " + path_ + ": truncated at byte " + std::to_string(pos_));
        T v;
        std::memcpy(&v, data_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }

    std::size_t remaining() const { return data_.size() - pos_; }

  private:
    const std::string& data_;
    std::string path_;
    std::size_t pos_ = 0;
};

std::string serialize_cache(const GroundStateCache& cache) {
    std::string buf(kCacheMagic, 7);
    put_u32(buf, cache.n_sites);
    put_u32(buf, static_cast<std::uint32_t>(cache.records.size()));
    const Eigen::Index dim = Eigen::Index(1) << cache.n_sites;
    for (const auto& rec : cache.records) {
        if (rec.vector.size() != dim)
            throw ValidationError("cache record has wrong vector dimension");
        put_f64(buf, rec.h1_over_j);
        put_f64(buf, rec.h2_over_j);
        put_f64(buf, rec.energy);
        buf.push_back(static_cast<char>(rec.degenerate));
        for (Eigen::Index i = 0; i < dim; ++i) {
            put_f64(buf, rec.vector[i].real());
            put_f64(buf, rec.vector[i].imag());
        }
    }
    return buf;
}

}  // namespace

void write_ground_state_cache(const GroundStateCache& cache, const std::string& path) {
    const std::string buf = serialize_cache(cache);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write cache file " + path);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    std::ofstream sum(path + ".fnv", std::ios::trunc);
    if (!sum) throw Error("cannot write checksum file " + path + ".fnv");
    sum << to_hex(fnv1a(buf)) << "\n";
}

GroundStateCache read_ground_state_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cache " + path + ": cannot open");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (data.size() < 7 || data.compare(0, 7, kCacheMagic, 7) != 0)
        throw ParseError("cache " + path + ": bad magic bytes");
    Reader r(data, path);
    for (int i = 0; i < 7; ++i) (void)r.get<char>();

    GroundStateCache cache;
    cache.n_sites = r.get<std::uint32_t>();
    if (cache.n_sites < 1 || cache.n_sites > 20)
        throw ParseError("cache " + path + ": implausible site count");
    const std::uint32_t count = r.get<std::uint32_t>();
    const Eigen::Index dim = Eigen::Index(1) << cache.n_sites;

    cache.records.resize(count);
    for (std::uint32_t k = 0; k < count; ++k) {
        auto& rec = cache.records[k];
        rec.h1_over_j = r.get<double>();
        rec.h2_over_j = r.get<double>();
        rec.energy = r.get<double>();
        rec.degenerate = static_cast<std::uint8_t>(r.get<char>());
        rec.vector.resize(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = r.get<double>();
            const double im = r.get<double>();
            rec.vector[i] = {re, im};
        }
    }
    if (r.remaining() != 0)
        throw ParseError("cache " + path + ": trailing bytes");
    return cache;
}

bool ground_state_cache_valid(const std::string& path, std::uint32_t n_sites,
                              std::uint32_t count) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::ifstream sum(path + ".fnv");
    if (!sum) return false;
    std::string recorded;
    sum >> recorded;
    if (recorded != to_hex(fnv1a(data))) return false;

    try {
        GroundStateCache cache = read_ground_state_cache(path);
        return cache.n_sites == n_sites && cache.records.size() == count;
    } catch (const ParseError&) {
        return false;
    }
}

namespace {
GroundStateCache compute_cache(const std::vector<SpinChainPoint>& points) {
    GroundStateCache cache;
    cache.n_sites = 9;
    cache.records.resize(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        const GroundState gs = ground_state(points[i]);
        const auto x = points[i].x();
        cache.records[i] = {x[0], x[1], gs.energy,
                            static_cast<std::uint8_t>(gs.degenerate ? 1 : 0), gs.vector};
    });
    return cache;
}
}  // namespace

GroundStateCache compute_grid_cache() {
    return compute_cache(grid_points());
}

GroundStateCache compute_training_cache() {
    return compute_cache(training_points());
}

double max_eigen_residual(const GroundStateCache& cache) {
    double worst = 0.0;
    std::vector<double> residuals(cache.records.size());
    parallel_for(cache.records.size(), [&](std::size_t i) {
        const auto& rec = cache.records[i];
        const SpinChainPoint p{static_cast<int>(cache.n_sites), 1.0, rec.h1_over_j,
                               rec.h2_over_j};
        const RealVector re = rec.vector.real();
        const RealVector im = rec.vector.imag();
        const RealVector hre = apply_hamiltonian(p, re) - rec.energy * re;
        const RealVector him = apply_hamiltonian(p, im) - rec.energy * im;
        residuals[i] = std::sqrt(hre.squaredNorm() + him.squaredNorm());
    });
    for (double r : residuals) worst = std::max(worst, r);
    return worst;
}

}  // namespace qis
