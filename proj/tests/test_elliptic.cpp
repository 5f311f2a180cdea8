#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pksns/corpus.hpp"
#include "pksns/elliptic.hpp"
#include "pksns/norms.hpp"

using namespace pksns;

namespace {

GridPtr grid(int nx, int ny, double ly) {
  GridSpec s;
  s.nx = nx;
  s.ny = ny;
  s.ly = ly;
  return make_grid(s);
}

ScalarField fn(const GridPtr& g, double (*f)(double, double)) { return ScalarField::from_function(g, f); }

// smooth band-limited test data on the grid
ScalarField smooth(const GridPtr& g, unsigned seed, bool zero_mode) {
  CorpusParams p;
  p.zero_mode = zero_mode;
  return make_corpus(g, 1, seed, p).front();
}

}  // namespace

TEST_CASE("screened Poisson") {
  auto g = grid(32, 32, M_PI);
  auto c = solve_screened_poisson(fn(g, [](double x, double) { return std::cos(x); }));
  CHECK(norm_linf(c - fn(g, [](double x, double) { return 0.5 * std::cos(x); })) < 1e-14);
  CHECK(norm_linf(solve_screened_poisson(ScalarField(g))) == 0.0);

  auto g2 = grid(64, 256, 8.0);
  auto n = smooth(g2, 3, true);
  auto c2 = solve_screened_poisson(n);
  CHECK(norm_l2(c2 - laplacian(c2) - n) <= 1e-10 * norm_l2(n));
  CHECK(screened_poisson_residual(c2, n) <= 1e-10);
}

TEST_CASE("inverse Laplacian on nonzero modes") {
  auto g = grid(32, 32, M_PI);
  CHECK(norm_linf(inverse_laplacian_nonzero(fn(g, [](double x, double) { return std::cos(x); })) +
                  fn(g, [](double x, double) { return std::cos(x); })) < 1e-14);
  auto sc = fn(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
  CHECK(norm_linf(inverse_laplacian_nonzero(sc) + 0.5 * sc) < 1e-14);

  auto g2 = grid(64, 256, 8.0);
  auto f = smooth(g2, 4, false);
  auto v = inverse_laplacian_nonzero(f);
  CHECK(norm_l2(laplacian(v) - f) <= 1e-10 * norm_l2(f));

  auto contaminated = f + fn(g2, [](double, double y) { return std::exp(-y * y); });
  CHECK_THROWS_AS(inverse_laplacian_nonzero(contaminated), std::domain_error);
}

TEST_CASE("inverse dyy on the zero mode") {
  auto g = grid(16, 64, M_PI);
  auto r = inverse_dyy_zero(fn(g, [](double, double y) { return std::cos(y); }));
  CHECK(norm_linf(r.result + fn(g, [](double, double y) { return std::cos(y); })) < 1e-14);
  CHECK(std::abs(r.removed_mean) < 1e-15);

  auto k = inverse_dyy_zero(fn(g, [](double, double) { return 2.5; }));
  CHECK(norm_linf(k.result) < 1e-15);
  CHECK(k.removed_mean == doctest::Approx(2.5).epsilon(1e-14));

  auto g2 = grid(16, 256, 6.0);
  auto f0 = project_zero(smooth(g2, 5, true));
  auto shifted = f0 + fn(g2, [](double, double) { return 0.3; });
  auto m = inverse_dyy_zero(shifted);
  // f0 - its mean is reproduced
  auto expect = shifted - ScalarField::from_function(g2, [&](double, double) { return m.removed_mean; });
  CHECK(norm_l2(ddy(ddy(m.result)) - expect) <= 1e-10 * norm_l2(f0));

  CHECK_THROWS_AS(inverse_dyy_zero(fn(g2, [](double x, double) { return std::sin(x); })), std::domain_error);
}

TEST_CASE("Biot-Savart") {
  auto g = grid(32, 32, M_PI);
  auto u = biot_savart(fn(g, [](double x, double) { return std::cos(x); }));
  CHECK(norm_linf(u.u.u1) < 1e-14);
  CHECK(norm_linf(u.u.u2 - fn(g, [](double x, double) { return std::sin(x); })) < 1e-14);

  auto w0 = fn(g, [](double, double y) { return std::cos(y); });
  auto z = biot_savart(w0);
  CHECK(norm_linf(z.u.u1 + fn(g, [](double, double y) { return std::sin(y); })) < 1e-14);
  CHECK(norm_linf(z.u.u2) == 0.0);
  CHECK(norm_linf(ddy(z.u.u1) + w0) < 1e-13);

  auto g2 = grid(64, 256, 8.0);
  auto w = smooth(g2, 6, true);
  auto b = biot_savart(w);
  const double scale = norm_l2(w);
  CHECK(norm_l2(ddx(b.u.u1) + ddy(b.u.u2)) <= 1e-10 * scale);
  auto curl = ddx(b.u.u2) - ddy(b.u.u1);
  auto expect = w - ScalarField::from_function(g2, [&](double, double) { return b.removed_mean; });
  CHECK(norm_l2(curl - expect) <= 1e-10 * scale);
  CHECK(norm_linf(project_zero(b.u.u2)) < 1e-14 * norm_linf(b.u.u2) + 1e-300);
}
