#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "starwall/core/field.hpp"

namespace starwall::core {

/// Forward partial transform over p:
///   W(x, y_m) = dp * sum_j rho(x, p_j) exp(+2 i p_j y_m),
/// the trapezoid discretisation of W(x, y) = integral rho(x, p) exp(2ipy) dp.
/// The y-lattice has step pi / (n_p dp), which makes the pair exactly invertible.
KernelField partial_ft_p(const Field& rho);

/// Inverse of partial_ft_p:
///   rho(x, p_j) = 1/(n_p dp) * sum_m W(x, y_m) exp(-2 i p_j y_m),
/// which is also the trapezoid rule for (1/pi) integral dy exp(-2ipy) W(x, y).
/// Throws GridError if the kernel's y-lattice is not conjugate to its p-axis.
Field inverse_partial_ft_p(const KernelField& kernel, FieldKind kind = FieldKind::real_expected);

/// W(x, y) = psi(x+y) conj(psi(x-y)) on the lattice conjugate to p_axis.
KernelField sample_kernel(const std::function<cplx(double)>& psi, const Axis& x_axis,
                          const Axis& p_axis);

enum class Interpolation { bilinear, bicubic };

/// Square (a, b) lattice for the position-kernel matrix K(a, b).
struct MatrixWindow {
  double a_min = 0.0;
  double a_step = 1.0;
  std::size_t n = 0;
  double at(std::size_t i) const noexcept { return a_min + static_cast<double>(i) * a_step; }
};

/// Window on [a_min, a_max] whose points make (a+b)/2 and (a-b)/2 land on
/// kernel lattice nodes when the y-step is an integer multiple of the x-step.
/// Sampling there needs no interpolation at all.
MatrixWindow aligned_window(const KernelField& kernel, double a_min, double a_max);

/// K(a, b) = W((a+b)/2, (a-b)/2) on the window, interpolated from the kernel
/// lattice. Throws WindowError if any rotated point falls outside the kernel.
Eigen::MatrixXcd kernel_to_matrix(const KernelField& kernel, const MatrixWindow& window,
                                  Interpolation order = Interpolation::bicubic);

/// Spectral d^order/dx^order of a field treated as periodic in x with period
/// n_x dx. Accurate only for fields that decay (smoothly) at both x edges.
Field x_derivative(const Field& field, int order);

/// First column of the circulant spectral differentiation matrix for n
/// samples of spacing h.
std::vector<double> spectral_derivative_stencil(std::size_t n, double h, int order);

}  // namespace starwall::core
