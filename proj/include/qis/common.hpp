// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace qis {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Dimension mismatch or a size guard violation.
class SizeError : public Error {
  public:
    using Error::Error;
};

/// An input violated a mathematical precondition (e.g. non-Hermitian matrix).
class ContractError : public Error {
  public:
    using Error::Error;
};

/// supp(rho) is not contained in supp(sigma); carries the violating overlap.
class SupportError : public Error {
  public:
    SupportError(const std::string& msg, double overlap) : Error(msg), overlap_(overlap) {}
    double overlap() const { return overlap_; }

  private:
    double overlap_ = 0.0;
};

/// A measurement family of the wrong kind was supplied.
class KindError : public Error {
  public:
    using Error::Error;
};

/// Malformed user-provided value (probabilities, config fields, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Malformed file content; message carries the offending line when known.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Inconsistent or unsatisfiable experiment configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// A metric ordering invariant failed beyond its slack.
class OrderingError : public Error {
  public:
    using Error::Error;
};

enum class Task { two_class, three_class };

std::string task_name(Task t);
Task task_from_name(const std::string& name);

/// Number of workers used by parallel maps: hardware concurrency,
/// capped by the QIS_THREADS environment variable when set.
std::size_t worker_count();

/// Chunked parallel map over [0, n). Results must be written to
/// index-addressed slots so the merge order is deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Deterministic draws on top of mt19937_64. The standard distributions are
// implementation-defined, so anything that feeds frozen expectations or
// reproducible artifacts goes through these helpers instead.
double uniform_unit(std::mt19937_64& rng);                       // [0, 1)
double uniform_range(std::mt19937_64& rng, double lo, double hi);
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);  // {0, ..., n-1}
double normal_draw(std::mt19937_64& rng);                        // Box-Muller
int rademacher(std::mt19937_64& rng);                            // {-1, +1}

std::uint64_t fnv1a(const void* data, std::size_t size);
std::uint64_t fnv1a(const std::string& s);
std::string to_hex(std::uint64_t v);

/// Fixed "%.12g" formatting so emitted artifacts are byte-stable.
std::string format_double(double v);

}  // namespace qis
