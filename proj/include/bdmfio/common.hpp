/**
 * @file common.hpp
 * @brief Shared scalar types, constants, and structured error type.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdmfio {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

/// ⟨t⟩ = sqrt(1 + t²)
inline double japanese_bracket(double t) { return std::sqrt(1.0 + t * t); }

/**
 * Library error carrying a machine-readable check name ("anchor") so CLI
 * reports and exit messages can name exactly which verification failed,
 * e.g. "admissibility.symplecticity" or "phase.boundary_fiber_dependence".
 */
class CheckError : public std::runtime_error {
public:
  CheckError(std::string anchor, const std::string& what)
      : std::runtime_error(anchor + ": " + what), anchor_(std::move(anchor)) {}
  const std::string& anchor() const { return anchor_; }

private:
  std::string anchor_;
};

/// Smooth cutoff built from the exp(−1/t) mollifier: 1 on (−∞,1/2], 0 on [1,∞).
inline double smooth_step_down(double t) {
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  // g(s) = exp(−1/s) for s>0; cutoff = g(1−t)/(g(1−t)+g(t−1/2)) on (1/2,1)
  const double a = std::exp(-1.0 / (1.0 - t));
  const double b = std::exp(-1.0 / (t - 0.5));
  return a / (a + b);
}

/// Bump φ: 1 on [0,1/2], 0 outside [0,1] (even extension for negative t).
inline double bump_phi(double t) { return smooth_step_down(std::abs(t)); }

/// Excision ζ: smooth, 0 for |t| ≤ 1, 1 for |t| ≥ 2.
inline double excision_zeta(double t) {
  return 1.0 - smooth_step_down(std::abs(t) - 1.0);
}

}  // namespace bdmfio
