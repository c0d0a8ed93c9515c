#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "starwall/core/conventions.hpp"
#include "starwall/core/grid.hpp"
#include "starwall/core/parallel.hpp"

namespace starwall::core {

enum class FieldKind { real_expected, complex };

/// Complex samples of a phase-space function on a PhaseSpaceGrid.
///
/// A real-expected field is validated on construction: the largest imaginary
/// part must stay below 1e-8 of the largest real part, otherwise
/// NumericsError is thrown. Imaginary parts are kept, not discarded.
class Field {
 public:
  static constexpr double kRealTolerance = 1e-8;

  Field() = default;
  Field(PhaseSpaceGrid grid, std::vector<cplx> values, FieldKind kind);

  static Field zeros(const PhaseSpaceGrid& grid, FieldKind kind = FieldKind::real_expected);

  /// Fills the grid with fn(x, p); rows of constant x are filled in parallel.
  template <class Fn>
  static Field sample(const PhaseSpaceGrid& grid, Fn&& fn,
                      FieldKind kind = FieldKind::real_expected) {
    std::vector<cplx> values(grid.size());
    parallel_for(grid.x().size(), [&](std::size_t ix) {
      const double x = grid.x().at(ix);
      for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
        values[grid.index(ix, ip)] = cplx(fn(x, grid.p().at(ip)));
      }
    });
    return Field(grid, std::move(values), kind);
  }

  const PhaseSpaceGrid& grid() const noexcept { return grid_; }
  FieldKind kind() const noexcept { return kind_; }
  std::span<const cplx> values() const noexcept { return values_; }

  const cplx& operator()(std::size_t ix, std::size_t ip) const { return values_[grid_.index(ix, ip)]; }

  double sup_norm() const;
  /// sqrt(sum |v|^2 dx dp), the discrete L2 norm on the lattice.
  double l2_norm() const;
  /// max |Im| / max |Re|; 0 for an all-zero field.
  double imaginary_ratio() const;

  Field scaled(double factor) const;

  /// CSV with header `x,p,re,im`, row-major over x then p, 17 significant digits.
  void write_csv(std::ostream& out) const;
  /// Inverse of write_csv. Throws GridError when the points do not form a
  /// uniform lattice in the expected order.
  static Field read_csv(std::istream& in, FieldKind kind = FieldKind::complex);

 private:
  PhaseSpaceGrid grid_;
  std::vector<cplx> values_;
  FieldKind kind_ = FieldKind::complex;
};

/// Lattice y_m = (m - floor(n/2)) * step, m = 0..n-1, symmetric about y = 0.
struct ConjugateAxis {
  double step = 1.0;
  std::size_t n = 0;

  double at(std::size_t m) const noexcept {
    return (static_cast<double>(m) - static_cast<double>(n / 2)) * step;
  }
  std::size_t zero_index() const noexcept { return n / 2; }
};

/// Samples of the kernel W(x, y) = integral rho(x, p) exp(2ipy) dp on the
/// x-axis of the source grid and the y-lattice conjugate to its p-axis
/// (step pi / (n_p dp)). For a pure state W(x, y) = psi(x+y) conj(psi(x-y)).
class KernelField {
 public:
  KernelField() = default;
  KernelField(Axis x, ConjugateAxis y, Axis source_p, std::vector<cplx> values);

  const Axis& x() const noexcept { return x_; }
  const ConjugateAxis& y() const noexcept { return y_; }
  /// The p-axis the kernel is conjugate to; needed for the inverse transform.
  const Axis& source_p() const noexcept { return source_p_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::size_t index(std::size_t ix, std::size_t iy) const noexcept { return ix * y_.n + iy; }
  const cplx& operator()(std::size_t ix, std::size_t iy) const { return values_[index(ix, iy)]; }

  /// max |W(x, -y) - conj W(x, y)| / max |W|.
  double hermiticity_defect() const;

 private:
  Axis x_;
  ConjugateAxis y_;
  Axis source_p_;
  std::vector<cplx> values_;
};

}  // namespace starwall::core
