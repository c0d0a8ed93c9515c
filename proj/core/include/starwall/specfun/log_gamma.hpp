#pragma once

#include "starwall/core/conventions.hpp"

namespace starwall::specfun {

/// Principal branch of log Gamma(z): continuous off the non-positive real
/// axis, real for real z > 0, and satisfying
/// log_gamma(z + 1) == log_gamma(z) + log(z).
/// Throws PoleError at z = 0, -1, -2, ...
cplx log_gamma(cplx z);

/// Gamma(z) = exp(log_gamma(z)).
cplx gamma(cplx z);

}  // namespace starwall::specfun
