#pragma once

#include <algorithm>
#include <complex>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace projlink {

using cxd = std::complex<double>;
using CVec = std::vector<cxd>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

/// Hermitian inner product <a,b> = sum_j a_j * conj(b_j).
inline cxd inner(const CVec& a, const CVec& b) {
  cxd s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * std::conj(b[j]);
  return s;
}

inline double norm2(const CVec& a) {
  double s = 0.0;
  for (const cxd& x : a) s += std::norm(x);
  return s;
}

inline double norm(const CVec& a) { return std::sqrt(norm2(a)); }

inline CVec scaled(const CVec& a, cxd c) {
  CVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = c * a[j];
  return r;
}

inline void axpy(CVec& y, cxd c, const CVec& x) {
  for (std::size_t j = 0; j < y.size(); ++j) y[j] += c * x[j];
}

// Structured error raised when a computation's numeric preconditions fail.
// The CLI maps these to exit code 2; schema/config problems use
// ValidationError (exit code 1).
enum class ErrorKind {
  ZeroOnCurve,
  NonTransversal,
  SeedExhaustion,
  SingularPoint,
  NonIntegral,
  ApexSearchFailed,
  AllStartsRejected,
  DimensionMismatch,
  Internal,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroOnCurve: return "ZeroOnCurve";
    case ErrorKind::NonTransversal: return "NonTransversal";
    case ErrorKind::SeedExhaustion: return "SeedExhaustion";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::ApexSearchFailed: return "ApexSearchFailed";
    case ErrorKind::AllStartsRejected: return "AllStartsRejected";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

class NumericalError : public std::runtime_error {
 public:
  NumericalError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Thread count used by ensemble loops. Controlled by PROJLINK_THREADS;
/// defaults to 1 so serial and parallel runs are trivially identical.
inline unsigned thread_count() {
  if (const char* env = std::getenv("PROJLINK_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

/// Index-parallel loop. Each index writes only its own slot, so results are
/// identical regardless of the thread count; reductions happen serially in
/// index order at the call site. The first worker exception is rethrown on
/// the calling thread after the join.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned nt = thread_count();
  if (nt <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  nt = static_cast<unsigned>(std::min<std::size_t>(nt, n));
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::vector<std::exception_ptr> errors(nt);
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (std::size_t i = t; i < n; i += nt) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace projlink
