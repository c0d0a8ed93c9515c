#pragma once

#include <string>
#include <vector>

#include "starwall/core/field.hpp"

namespace starwall::star {

/// Moyal product f * g of two grid fields, f * g = f exp[(i/2)(<-d_x ->d_p - <-d_p ->d_x)] g.
///
/// Both operands are read as trigonometric polynomials periodic on the grid
/// window. Each plane wave of f acts on g as a translation,
///   exp(i(ax + bp)) * g = exp(i(ax + bp)) g(x + b/2, p - a/2),
/// so the product is a twisted convolution of the two spectra. The result is
/// evaluated exactly (no aliasing) back on the grid. Cost is O((n_x n_p)^2).
///
/// Throws GridError for mismatched grids. Operands that do not decay to
/// 1e-6 of their maximum on every window edge produce a warning.
core::Field star(const core::Field& f, const core::Field& g,
                 std::vector<std::string>* warnings = nullptr);

/// Polynomial in p, sum_n coeffs[n] p^n.
using PPolynomial = std::vector<double>;

/// poly(p) * g: the Bopp shift poly(p - (i/2) d_x) applied to g.
core::Field star_left(const PPolynomial& poly, const core::Field& g);
/// g * poly(p): poly(p + (i/2) d_x) applied to g.
core::Field star_right(const core::Field& g, const PPolynomial& poly);

/// Cutoff profile in x: 1/2 [erf((x - c1)/s) - erf((x - c2)/s)] with the two
/// transitions centred half a taper width inside [x_min, x_max] and
/// s = taper / 12. It is 1 to machine precision on
/// [x_min + taper, x_max - taper] and below 1e-16 at and beyond the ends.
/// taper = taper_fraction * (x_max - x_min).
double cutoff_profile(double x, double x_min, double x_max, double taper_fraction = 0.1);

/// field(x, p) * cutoff_profile(x); zero outside [x_min, x_max].
core::Field apply_x_cutoff(const core::Field& field, double x_min, double x_max,
                           double taper_fraction = 0.1);

}  // namespace starwall::star
