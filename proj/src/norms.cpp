#include "pksns/norms.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace pksns {

double integral(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.g().cell_area();
}

double norm_l1(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += std::abs(v);
  return sum * f.g().cell_area();
}

double norm_l2_sq(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v * v;
  return sum * f.g().cell_area();
}

double norm_l2(const ScalarField& f) { return std::sqrt(norm_l2_sq(f)); }

double norm_linf(const ScalarField& f) { return f.max_abs(); }

double weighted_l2_sq(const ScalarField& f) {
  const Grid& g = f.g();
  double sum = 0.0;
  for (int iy = 0; iy < g.ny(); ++iy) {
    double row = 0.0;
    for (int ix = 0; ix < g.nx(); ++ix) row += f(ix, iy) * f(ix, iy);
    sum += g.y(iy) * g.y(iy) * row;
  }
  return sum * g.cell_area();
}

double weighted_l2(const ScalarField& f) { return std::sqrt(weighted_l2_sq(f)); }

double norm_x_sq(const ScalarField& f) { return norm_l2_sq(f) + weighted_l2_sq(f); }

double norm_x(const ScalarField& f) { return std::sqrt(norm_x_sq(f)); }

double norm_x_sq(const VectorField& u) { return norm_x_sq(u.u1) + norm_x_sq(u.u2); }

double norm_lp(const ScalarField& f, double p) {
  if (std::isinf(p) && p > 0) return norm_linf(f);
  if (p == 1.0) return norm_l1(f);
  if (p == 2.0) return norm_l2(f);
  if (p == 4.0) {
    double sum = 0.0;
    for (double v : f.values()) sum += (v * v) * (v * v);
    return std::pow(sum * f.g().cell_area(), 0.25);
  }
  throw std::invalid_argument("norm_lp: unsupported exponent " + std::to_string(p));
}

double mass(const ScalarField& n) {
  const double floor = -1e-10 * n.max_abs();
  if (n.min() < floor) {
    std::cerr << "warning: mass() called on a density with negative values (min " << n.min() << ")\n";
  }
  return norm_l1(n);
}

NormReport norm_report(const ScalarField& f) {
  NormReport r;
  r.l1 = norm_l1(f);
  r.l2 = norm_l2(f);
  r.linf = norm_linf(f);
  r.weighted_l2 = weighted_l2(f);
  r.x_norm = std::sqrt(r.l2 * r.l2 + r.weighted_l2 * r.weighted_l2);
  return r;
}

}  // namespace pksns
