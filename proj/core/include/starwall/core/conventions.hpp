#pragma once

#include <complex>

namespace starwall {

using cplx = std::complex<double>;

/// Units used throughout the library: hbar = 1 and 2m = 1, so the free
/// Hamiltonian is H = p^2 and an energy eigenvalue is written E = k^2.
/// These are fixed, not parameters; they only exist so call sites can name them.
inline constexpr double kHbar = 1.0;
inline constexpr double kMassFactor = 1.0;  // 2m

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace starwall
