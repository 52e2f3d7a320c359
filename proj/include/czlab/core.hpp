#ifndef CZLAB_CORE_HPP
#define CZLAB_CORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace czlab {

using Point = std::vector<double>;
using PointView = std::span<const double>;
using Complex = std::complex<double>;

/// Base error for invalid arguments and malformed inputs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a finite search (e.g. small-boundary candidates) has no witness.
class NotFound : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

inline double euclid(PointView x, PointView y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = x[i] - y[i];
    s += t * t;
  }
  return std::sqrt(s);
}

inline double sup_dist(PointView x, PointView y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s = std::max(s, std::abs(x[i] - y[i]));
  return s;
}

/// Neumaier-compensated accumulator; `compensated == false` degrades to a plain sum.
template <class T>
class Accumulator {
 public:
  explicit Accumulator(bool compensated = false) : compensated_(compensated) {}

  void add(const T& v) {
    if (!compensated_) {
      sum_ += v;
      return;
    }
    add_component(v);
  }

  T value() const { return sum_ + comp_; }

 private:
  void add_component(const T& v) {
    if constexpr (std::is_same_v<T, Complex>) {
      double sr = sum_.real(), cr = comp_.real();
      double si = sum_.imag(), ci = comp_.imag();
      neumaier(sr, cr, v.real());
      neumaier(si, ci, v.imag());
      sum_ = {sr, si};
      comp_ = {cr, ci};
    } else {
      neumaier(sum_, comp_, v);
    }
  }

  static void neumaier(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  bool compensated_;
  T sum_{};
  T comp_{};
};

/// Atom count above which sums switch to compensated accumulation.
inline constexpr std::size_t kCompensationThreshold = 100000;

/// Portable seeded generator (splitmix64); identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::uint64_t state_;
};

}  // namespace czlab

#endif  // CZLAB_CORE_HPP
