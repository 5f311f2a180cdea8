#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pksns/field.hpp"
#include "pksns/norms.hpp"

using namespace pksns;

namespace {

GridPtr grid(int nx, int ny, double ly, double frac = 2.0 / 3.0) {
  GridSpec s;
  s.nx = nx;
  s.ny = ny;
  s.ly = ly;
  s.dealias_fraction = frac;
  return make_grid(s);
}

ScalarField random_field(const GridPtr& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField f(g);
  for (double& v : f.values()) v = u(rng);
  return f;
}

double max_diff(const ScalarField& a, const ScalarField& b) { return norm_linf(a - b); }

}  // namespace

TEST_CASE("make_grid wavenumbers in FFT order") {
  auto g = grid(4, 4, M_PI);
  const auto& w = g->wavenumbers();
  CHECK(w.kx == std::vector<int>{0, 1, 2, -1});
  REQUIRE(w.ky.size() == 4);
  const double expect[] = {0, 1, 2, -1};
  for (int i = 0; i < 4; ++i) CHECK(w.ky[i] == doctest::Approx(expect[i]).epsilon(1e-15));
}

TEST_CASE("make_grid coordinates") {
  auto g = grid(8, 8, 2.0);
  for (int i = 0; i < 8; ++i) CHECK(g->x(i) == doctest::Approx(i * M_PI / 4).epsilon(1e-15));
  CHECK(g->y(0) == doctest::Approx(-2.0));
  CHECK(g->dy() == doctest::Approx(0.5));
  CHECK(g->dx() == doctest::Approx(2 * M_PI / 8));
}

TEST_CASE("make_grid rejects bad specs") {
  GridSpec s;
  s.nx = 3;
  CHECK_THROWS_AS(make_grid(s), std::invalid_argument);
  s = GridSpec{};
  s.ny = 2;
  CHECK_THROWS_AS(make_grid(s), std::invalid_argument);
  s = GridSpec{};
  s.ly = 0.0;
  CHECK_THROWS_AS(make_grid(s), std::invalid_argument);
  s = GridSpec{};
  s.dealias_fraction = 1.5;
  CHECK_THROWS_AS(make_grid(s), std::invalid_argument);
}

TEST_CASE("pure modes in spectral space") {
  auto g = grid(16, 16, M_PI);
  auto s = to_spectral(ScalarField::from_function(g, [](double x, double) { return std::sin(x); }));
  for (int iy = 0; iy < 16; ++iy)
    for (int ik = 0; ik < g->nkx(); ++ik) {
      if (ik == 1 && iy == 0) {
        // sin x = (e^{ix} - e^{-ix}) / 2i: half-storage keeps the +1 coefficient -i/2
        CHECK(s(ik, iy).real() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(s(ik, iy).imag() == doctest::Approx(-0.5).epsilon(1e-14));
      } else {
        CHECK(std::abs(s(ik, iy)) < 1e-14);
      }
    }
  auto one = to_spectral(ScalarField::from_function(g, [](double, double) { return 1.0; }));
  CHECK(one(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(spectral_l2(one - project_zero(one)) < 1e-14);
  double rest = 0.0;
  for (int iy = 0; iy < 16; ++iy)
    for (int ik = 0; ik < g->nkx(); ++ik)
      if (ik || iy) rest += std::abs(one(ik, iy));
  CHECK(rest < 1e-14);
}

TEST_CASE("round trip of random data") {
  auto g = grid(32, 64, 5.0);
  auto f = random_field(g, 1);
  auto back = to_physical(to_spectral(f));
  CHECK(max_diff(back, f) / norm_linf(f) < 1e-12);
}

TEST_CASE("dimension mismatch is rejected") {
  auto a = ScalarField(grid(8, 8, 1.0));
  auto b = ScalarField(grid(16, 8, 1.0));
  CHECK_THROWS_AS(a += b, std::invalid_argument);
  CHECK_THROWS_AS(ScalarField(grid(8, 8, 1.0), RealVec(10)), std::invalid_argument);
}

TEST_CASE("derivatives of pure modes") {
  auto g = grid(32, 64, 3.0);
  const double k = M_PI / 3.0;
  auto s = ScalarField::from_function(g, [](double x, double) { return std::sin(x); });
  auto c = ScalarField::from_function(g, [](double x, double) { return std::cos(x); });
  CHECK(max_diff(ddx(s), c) < 1e-12);
  CHECK(max_diff(laplacian(c), -1.0 * c) < 1e-12);
  auto cy = ScalarField::from_function(g, [k](double, double y) { return std::cos(k * y); });
  auto sy = ScalarField::from_function(g, [k](double, double y) { return -k * std::sin(k * y); });
  CHECK(max_diff(ddy(cy), sy) < 1e-12);
}

TEST_CASE("derivatives commute and transforms are linear") {
  auto g = grid(32, 64, 4.0);
  auto f = ScalarField::from_function(g, [](double x, double y) {
    return std::sin(2 * x) * std::exp(-y * y) + std::cos(x + 0.3) * std::exp(-0.5 * (y - 1) * (y - 1));
  });
  auto fh = dealias(to_spectral(f));
  CHECK(spectral_l2(ddx(ddy(fh)) - ddy(ddx(fh))) < 1e-12 * spectral_l2(fh));

  auto a = random_field(g, 2), b = random_field(g, 3);
  auto lhs = to_spectral(2.5 * a + (-0.7) * b);
  auto rhs = 2.5 * to_spectral(a) + (-0.7) * to_spectral(b);
  CHECK(spectral_l2(lhs - rhs) < 1e-12 * spectral_l2(rhs));
}

TEST_CASE("Parseval") {
  auto g = grid(32, 48, 2.5);
  auto f = random_field(g, 4);
  CHECK(spectral_l2(to_spectral(f)) == doctest::Approx(norm_l2(f)).epsilon(1e-12));
}

TEST_CASE("dealias rule, idempotence, energy") {
  auto g = grid(8, 8, M_PI);
  for (int ik = 0; ik < g->nkx(); ++ik) CHECK(g->retained(ik, 0) == (ik <= 2));
  auto f = random_field(grid(32, 32, 2.0), 5);
  auto fh = to_spectral(f);
  auto d1 = dealias(fh);
  auto d2 = dealias(d1);
  CHECK(spectral_l2(d2 - d1) == 0.0);
  CHECK(spectral_l2(d1) < spectral_l2(fh));
  // retained modes untouched
  const Grid& gg = fh.g();
  for (int iy = 0; iy < gg.ny(); ++iy)
    for (int ik = 0; ik < gg.nkx(); ++ik)
      if (gg.retained(ik, iy)) CHECK(d1(ik, iy) == fh(ik, iy));
}

TEST_CASE("retained set symmetric in ky") {
  auto g = grid(16, 32, 3.0);
  for (int iy = 1; iy < 32; ++iy) {
    const int mirror = 32 - iy;
    if (mirror == 16 || iy == 16) continue;
    CHECK(g->retained(1, iy) == g->retained(1, mirror));
  }
}
