#pragma once

#include <functional>
#include <string>
#include <variant>

#include "starwall/core/field.hpp"
#include "starwall/states/liouville.hpp"

namespace starwall::star {

/// A phase-space function known in closed form, with exact x-derivatives:
/// eval(x, p, m) = d^m/dx^m f(x, p).
struct AnalyticOperand {
  std::string name;
  std::function<cplx(cplx x, cplx p, int x_order)> eval;
};

/// Either sampled data or a closed form.
using StarOperand = std::variant<core::Field, AnalyticOperand>;

/// rho_bar (unmasked; residual checks restrict to x < 0 themselves).
AnalyticOperand rho_bar_operand(double k);
/// Wigner function of theta(-x) sin(kx + phase), unmasked.
AnalyticOperand half_line_operand(double k, double phase);
/// rho_alpha through the Mellin-Barnes evaluator.
AnalyticOperand liouville_operand(const states::LiouvilleEvaluator& evaluator);

/// max over the four window edges of |f| divided by max |f|.
double edge_decay_ratio(const core::Field& f);

}  // namespace starwall::star
