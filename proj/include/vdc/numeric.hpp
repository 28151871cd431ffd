#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>

namespace vdc {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// cos(2*pi*k/n) with the angle reduced in exact integer arithmetic first.
inline double cos_turns(std::uint64_t k, std::uint64_t n) {
  const std::uint64_t r = k % n;
  return std::cos(2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(n)));
}

// Fractional part of theta in [0, 1).
inline double wrap_unit(double theta) {
  double f = theta - std::floor(theta);
  if (f >= 1.0) f = 0.0;
  return f;
}

// Rounds to 12 significant digits; used for all printed reals.
inline double sig12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

inline std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace vdc
