#pragma once
// Shared scalar types, tolerances, error taxonomy and a small deterministic
// parallel map used by the per-fiber loops.

#include <array>
#include <complex>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sispace {

using cplx = std::complex<double>;

// Lattice point / spatial point in d <= 2. The second coordinate is unused
// (and kept at zero) when dim == 1.
using LatticePoint = std::array<int, 2>;
using Point = std::array<double, 2>;

inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm_sq(const Point& p) { return p[0] * p[0] + p[1] * p[1]; }
inline Point to_point(const LatticePoint& k) { return {double(k[0]), double(k[1])}; }

// Global comparison tolerances. CLI flags --tol-abs/--tol-rel override them.
struct Tolerances {
  double abs = 1e-9;
  double rel = 1e-7;
};

inline Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

inline bool close(double a, double b, const Tolerances& t = tolerances()) {
  double diff = std::abs(a - b);
  return diff <= t.abs || diff <= t.rel * std::max(std::abs(a), std::abs(b));
}

// All precondition failures derive from PreconditionError so the CLI can map
// them to exit code 2 uniformly. Messages name the violated condition.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : Error {
  using Error::Error;
};

struct OrderViolation : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct ConditionEViolated : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct ExponentViolation : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct ProductUndefined : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct NonDiscreteZeroSet : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct DivisionBlowup : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct FitUnstable : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct DimensionMismatch : PreconditionError {
  using PreconditionError::PreconditionError;
};

// Non-fatal diagnostics (aliasing, truncation tails, ill conditioning).
struct Warning {
  std::string what;
};
using WarningSink = std::vector<Warning>;

inline void warn(WarningSink* sink, std::string msg) {
  if (sink) sink->push_back({std::move(msg)});
}

// Deterministic parallel map: results land in a preallocated slot per index,
// so the reduction order never depends on scheduling. Thread count comes from
// SISPACE_THREADS (0 or unset = hardware concurrency).
inline unsigned thread_budget() {
  if (const char* env = std::getenv("SISPACE_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n > 0) return unsigned(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1u;
}

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned threads = std::min<std::size_t>(thread_budget(), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace sispace
