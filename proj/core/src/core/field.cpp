#include "starwall/core/field.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "starwall/core/errors.hpp"

namespace starwall::core {

Field::Field(PhaseSpaceGrid grid, std::vector<cplx> values, FieldKind kind)
    : grid_(grid), values_(std::move(values)), kind_(kind) {
  if (values_.size() != grid_.size()) {
    throw GridError("field has " + std::to_string(values_.size()) + " samples, grid needs " +
                    std::to_string(grid_.size()));
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericsError("field contains non-finite samples");
    }
  }
  if (kind_ == FieldKind::real_expected && imaginary_ratio() >= kRealTolerance) {
    throw NumericsError(fmt::format("real-expected field has max|Im|/max|Re| = {:.3e}",
                                    imaginary_ratio()));
  }
}

Field Field::zeros(const PhaseSpaceGrid& grid, FieldKind kind) {
  return Field(grid, std::vector<cplx>(grid.size()), kind);
}

double Field::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::l2_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(s * grid_.x().step() * grid_.p().step());
}

double Field::imaginary_ratio() const {
  double re = 0.0;
  double im = 0.0;
  for (const auto& v : values_) {
    re = std::max(re, std::abs(v.real()));
    im = std::max(im, std::abs(v.imag()));
  }
  if (im == 0.0) return 0.0;
  return re == 0.0 ? std::numeric_limits<double>::infinity() : im / re;
}

Field Field::scaled(double factor) const {
  std::vector<cplx> out(values_);
  for (auto& v : out) v *= factor;
  return Field(grid_, std::move(out), kind_);
}

void Field::write_csv(std::ostream& out) const {
  out << "x,p,re,im\n";
  fmt::memory_buffer buf;
  for (std::size_t ix = 0; ix < grid_.x().size(); ++ix) {
    for (std::size_t ip = 0; ip < grid_.p().size(); ++ip) {
      const cplx v = (*this)(ix, ip);
      buf.clear();
      fmt::format_to(std::back_inserter(buf), "{:.17g},{:.17g},{:.17g},{:.17g}\n",
                     grid_.x().at(ix), grid_.p().at(ip), v.real(), v.imag());
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
  }
}

namespace {

// Returns the uniform axis through the sorted distinct coordinates, or throws.
Axis uniform_axis(const std::vector<double>& coords, const char* name) {
  if (coords.size() < 2) throw GridError(std::string("CSV needs at least 2 distinct ") + name);
  Axis axis(coords.front(), coords.back(), coords.size());
  const double tol = 1e-9 * axis.step();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (std::abs(coords[i] - axis.at(i)) > tol) {
      throw GridError(std::string("unsupported grid: non-uniform ") + name + " spacing");
    }
  }
  return axis;
}

}  // namespace

Field Field::read_csv(std::istream& in, FieldKind kind) {
  std::string line;
  if (!std::getline(in, line) || line != "x,p,re,im") {
    throw GridError("CSV header must be `x,p,re,im`");
  }
  struct Row {
    double x, p, re, im;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    Row r{};
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(ss >> r.x >> c1 >> r.p >> c2 >> r.re >> c3 >> r.im) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw GridError("malformed CSV row: " + line);
    }
    rows.push_back(r);
  }
  std::vector<double> xs, ps;
  for (const auto& r : rows) {
    if (xs.empty() || xs.back() != r.x) xs.push_back(r.x);
  }
  for (const auto& r : rows) {
    if (r.x != rows.front().x) break;
    ps.push_back(r.p);
  }
  if (!std::is_sorted(xs.begin(), xs.end()) || !std::is_sorted(ps.begin(), ps.end())) {
    throw GridError("CSV rows must be ordered by x then p");
  }
  const PhaseSpaceGrid grid(uniform_axis(xs, "x"), uniform_axis(ps, "p"));
  if (rows.size() != grid.size()) throw GridError("CSV rows do not fill a rectangular lattice");
  std::vector<cplx> values(grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t ix = i / grid.p().size();
    const std::size_t ip = i % grid.p().size();
    if (rows[i].x != xs[ix] || rows[i].p != ps[ip]) throw GridError("CSV rows out of lattice order");
    values[i] = cplx(rows[i].re, rows[i].im);
  }
  return Field(grid, std::move(values), kind);
}

KernelField::KernelField(Axis x, ConjugateAxis y, Axis source_p, std::vector<cplx> values)
    : x_(x), y_(y), source_p_(source_p), values_(std::move(values)) {
  if (values_.size() != x_.size() * y_.n) throw GridError("kernel sample count mismatch");
}

double KernelField::hermiticity_defect() const {
  double scale = 0.0;
  for (const auto& v : values_) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double defect = 0.0;
  const std::size_t h = y_.zero_index();
  for (std::size_t ix = 0; ix < x_.size(); ++ix) {
    for (std::size_t m = 0; m < y_.n; ++m) {
      if (2 * h < m || 2 * h - m >= y_.n) continue;  // unmatched Nyquist sample
      defect = std::max(defect, std::abs((*this)(ix, 2 * h - m) - std::conj((*this)(ix, m))));
    }
  }
  return defect / scale;
}

}  // namespace starwall::core
