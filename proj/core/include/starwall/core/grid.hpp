#pragma once

#include <cstddef>

namespace starwall::core {

/// Uniform closed lattice {min, min + step, ..., max} with n >= 2 points.
class Axis {
 public:
  Axis() = default;
  /// Throws ConfigError for min >= max, n < 2 or non-finite bounds.
  Axis(double min, double max, std::size_t n);

  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  std::size_t size() const noexcept { return n_; }
  double step() const noexcept { return step_; }

  /// Endpoints are returned exactly.
  double at(std::size_t i) const noexcept {
    return i + 1 == n_ ? max_ : min_ + static_cast<double>(i) * step_;
  }

  /// Period of the sampled data when treated as periodic, n * step.
  double period() const noexcept { return static_cast<double>(n_) * step_; }

  bool operator==(const Axis& other) const noexcept {
    return min_ == other.min_ && max_ == other.max_ && n_ == other.n_;
  }

 private:
  double min_ = 0.0;
  double max_ = 1.0;
  std::size_t n_ = 2;
  double step_ = 1.0;
};

/// Uniform (x, p) lattice. Samples are stored row-major over x then p.
class PhaseSpaceGrid {
 public:
  PhaseSpaceGrid() = default;
  PhaseSpaceGrid(Axis x, Axis p) : x_(x), p_(p) {}

  const Axis& x() const noexcept { return x_; }
  const Axis& p() const noexcept { return p_; }
  std::size_t size() const noexcept { return x_.size() * p_.size(); }
  std::size_t index(std::size_t ix, std::size_t ip) const noexcept { return ix * p_.size() + ip; }

  bool operator==(const PhaseSpaceGrid& other) const noexcept {
    return x_ == other.x_ && p_ == other.p_;
  }

 private:
  Axis x_;
  Axis p_;
};

PhaseSpaceGrid make_grid(double x_min, double x_max, std::size_t n_x,
                         double p_min, double p_max, std::size_t n_p);

/// x in [-6, 1], p in [-6, 6], 512 x 512.
PhaseSpaceGrid default_grid();

}  // namespace starwall::core
