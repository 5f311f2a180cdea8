#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "pksns/norms.hpp"
#include "pksns/scenarios.hpp"
#include "pksns/timestepper.hpp"

using namespace pksns;

namespace {

GridPtr grid(int nx, int ny, double ly) {
  GridSpec s;
  s.nx = nx;
  s.ny = ny;
  s.ly = ly;
  return make_grid(s);
}

ScalarField constant(const GridPtr& g, double v) {
  return ScalarField::from_function(g, [v](double, double) { return v; });
}

PhysParams only(double a, bool diffusion, bool shear) {
  PhysParams p;
  p.a = a;
  p.terms.diffusion = diffusion;
  p.terms.shear = shear;
  p.terms.chemotaxis = p.terms.advection = p.terms.buoyancy = false;
  return p;
}

}  // namespace

TEST_CASE("integrating factor is exact for pure diffusion") {
  auto g = grid(16, 16, M_PI);
  auto n = ScalarField::from_function(g, [](double x, double y) { return std::cos(x) + 0.5 * std::sin(2 * y); });
  auto s = make_state(0.0, n, ScalarField(g));
  auto next = step(s, only(10.0, true, false), 0.1);
  CHECK(std::abs(next.n(1, 0).real() - 0.5 * std::exp(-0.01)) < 1e-14);
  CHECK(next.t == doctest::Approx(0.1));
  // every mode decays by its own heat factor
  const auto& w = g->wavenumbers();
  double worst = 0.0;
  for (int iy = 0; iy < g->ny(); ++iy)
    for (int ik = 0; ik < g->nkx(); ++ik) {
      const double k2 = double(w.kx[ik]) * w.kx[ik] + w.ky[iy] * w.ky[iy];
      worst = std::max(worst, std::abs(next.n(ik, iy) - s.n(ik, iy) * std::exp(-k2 * 0.1 / 10.0)));
    }
  CHECK(worst < 1e-14);
}

TEST_CASE("homogeneous steady state is a fixed point") {
  auto g = grid(32, 64, 4.0);
  auto s = make_state(0.0, constant(g, 2.0), ScalarField(g));
  PhysParams p;
  p.a = 30.0;
  auto next = s;
  Stepper st(g, p);
  for (int i = 0; i < 10; ++i) st.step(next, 0.01);
  CHECK(spectral_l2(next.n - s.n) < 1e-15);
  CHECK(spectral_l2(next.omega) < 1e-15);
}

TEST_CASE("shear transport converges at second order in time") {
  auto g = grid(32, 256, 4.0);
  auto prof = [](double y) { return std::exp(-y * y); };
  auto f0 = ScalarField::from_function(g, [&](double x, double y) { return std::sin(x) * prof(y); });
  const double T = 0.1;
  auto exact = ScalarField::from_function(g, [&](double x, double y) { return std::sin(x - y * y * T) * prof(y); });
  PhysParams p = only(10.0, false, true);
  p.horizon = T;
  double errs[3];
  int i = 0;
  for (double dt : {0.004, 0.002, 0.001}) {
    StepperOptions o;
    o.fixed_dt = dt;
    o.negativity_tol = 1e9;  // signed data
    auto r = integrate(make_state(0.0, f0, ScalarField(g)), p, o);
    REQUIRE(r.kind == Outcome::Completed);
    errs[i++] = norm_linf(to_physical(r.final_state.n) - exact);
  }
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.15));
  CHECK(errs[1] / errs[2] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("adapt_dt") {
  auto g = grid(64, 256, 12.0);
  PhysParams p;
  p.a = 100.0;
  StepperOptions o;
  auto s = make_state(0.0, ScalarField(g), ScalarField(g));
  CHECK(adapt_dt(s, p, o) == doctest::Approx(0.4 * g->dx() / 144.0).epsilon(1e-12));

  FlowStats st;
  st.max_speed_x = 3.0;
  st.max_speed_y = 2.0;
  const double dt1 = adapt_dt(st, *g, p, o);
  st.max_speed_x *= 2;
  st.max_speed_y *= 2;
  CHECK(adapt_dt(st, *g, p, o) == doctest::Approx(dt1 / 2));

  FlowStats calm;
  CHECK(adapt_dt(calm, *g, p, o) == doctest::Approx(o.dt_max));
}

TEST_CASE("dt decreases while the density ramps up") {
  auto g = grid(128, 128, 3.0);
  InitialRecipe r;
  r.kind = "gaussian_blob";
  r.mass = 10 * M_PI;
  r.width = 0.4;
  PhysParams p;
  p.a = 1.0;
  p.horizon = 0.3;
  p.terms.shear = p.terms.advection = p.terms.buoyancy = false;
  StepperOptions o;
  std::vector<double> dts;
  RunCallbacks cb;
  cb.on_step = [&](const State&, double dt) { dts.push_back(dt); };
  auto out = integrate(make_state(0.0, make_recipe_field(r, g, 1.0), ScalarField(g)), p, o, cb);
  REQUIRE(out.kind == Outcome::Completed);
  REQUIRE(dts.size() > 5);
  CHECK(out.linf_n > out.initial_linf_n);
  for (std::size_t i = 1; i + 1 < dts.size(); ++i) CHECK(dts[i] <= dts[i - 1]);
}

TEST_CASE("outcomes") {
  auto g = grid(32, 64, 4.0);
  PhysParams p;
  p.a = 20.0;
  p.horizon = 0.2;
  StepperOptions o;

  auto zero = integrate(make_state(0.0, ScalarField(g), ScalarField(g)), p, o);
  CHECK(zero.kind == Outcome::Completed);
  CHECK(zero.linf_n == 0.0);
  CHECK(zero.t == doctest::Approx(0.2));

  auto blob = ScalarField::from_function(g, [](double x, double y) { return std::exp(-y * y) * (1.5 + std::cos(x)); });
  auto ok = integrate(make_state(0.0, blob, ScalarField(g)), p, o);
  CHECK(ok.kind == Outcome::Completed);
  CHECK(ok.t == doctest::Approx(0.2));

  PhysParams capped = p;
  capped.linf_cap = 0.5 * norm_linf(blob);
  CHECK(integrate(make_state(0.0, blob, ScalarField(g)), capped, o).kind == Outcome::BlowUp);

  PhysParams strict = p;
  strict.dt_min = 1.0;
  CHECK(integrate(make_state(0.0, blob, ScalarField(g)), strict, o).kind == Outcome::DtCollapse);

  auto negative = blob - constant(g, 0.2);
  CHECK(integrate(make_state(0.0, negative, ScalarField(g)), p, o).kind == Outcome::UnderResolved);

  auto bad = blob;
  bad(3, 3) = std::numeric_limits<double>::quiet_NaN();
  CHECK(integrate(make_state(0.0, bad, ScalarField(g)), p, o).kind == Outcome::BlowUp);

  CHECK(std::string(outcome_name(Outcome::DtCollapse)) == "DtCollapse");
}

TEST_CASE("integration is deterministic and calls diagnostics on cadence") {
  auto g = grid(32, 64, 4.0);
  PhysParams p;
  p.a = 20.0;
  p.horizon = 0.3;
  StepperOptions o;
  o.diag_interval = 0.1;
  auto blob = ScalarField::from_function(g, [](double x, double y) { return std::exp(-y * y) * (1.5 + std::cos(x)); });
  auto w = ScalarField::from_function(g, [](double x, double y) { return 0.1 * std::sin(x) * std::exp(-y * y); });
  std::vector<double> times;
  RunCallbacks cb;
  cb.on_diag = [&](const State& s, const FlowStats&) { times.push_back(s.t); };
  auto a = integrate(make_state(0.0, blob, w), p, o, cb);
  auto b = integrate(make_state(0.0, blob, w), p, o);
  REQUIRE(a.kind == Outcome::Completed);
  CHECK(a.final_state.n.values() == b.final_state.n.values());
  CHECK(a.final_state.omega.values() == b.final_state.omega.values());
  REQUIRE(times.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(times[i] == doctest::Approx(0.1 * i).epsilon(1e-12));
}
