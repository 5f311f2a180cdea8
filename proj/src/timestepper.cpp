#include "pksns/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pksns {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Completed: return "Completed";
    case Outcome::BlowUp: return "BlowUp";
    case Outcome::DtCollapse: return "DtCollapse";
    case Outcome::UnderResolved: return "UnderResolved";
  }
  return "?";
}

double adapt_dt(const FlowStats& st, const Grid& g, const PhysParams& p, const StepperOptions& opt) {
  if (opt.fixed_dt > 0.0) return opt.fixed_dt;
  const double inf = std::numeric_limits<double>::infinity();
  double lim = inf;
  if (st.max_speed_x > 0.0) lim = std::min(lim, g.dx() / st.max_speed_x);
  if (st.max_speed_y > 0.0) lim = std::min(lim, g.dy() / st.max_speed_y);
  if (p.terms.chemotaxis) {
    if (st.max_chemo_drift > 0.0) lim = std::min(lim, std::min(g.dx(), g.dy()) / st.max_chemo_drift);
    // n (c - n) / A reaction part of div(n grad c)
    if (st.max_n > 0.0) lim = std::min(lim, p.a / st.max_n);
  }
  if (!st.finite) return 0.0;
  return std::min(opt.dt_max, opt.cfl * lim);
}

double adapt_dt(const State& s, const PhysParams& params, const StepperOptions& opt) {
  RhsEvaluator ev(s.n.grid(), params);
  ev.explicit_part(s.n, s.omega);
  return adapt_dt(ev.last_stats(), s.n.g(), params, opt);
}

// --------------------------------------------------------------------- Stepper

Stepper::Stepper(GridPtr grid, PhysParams params) : rhs_(grid, params) {
  const Grid& g = *grid;
  for (Tendency* t : {&n0_, &n1_, &n2_}) *t = {SpectralField(grid), SpectralField(grid)};
  stage_n_ = SpectralField(grid);
  stage_w_ = SpectralField(grid);
  k2_.resize(g.spectral_size());
  for (int iy = 0; iy < g.ny(); ++iy)
    for (int ik = 0; ik < g.nkx(); ++ik) k2_[static_cast<std::size_t>(iy) * g.nkx() + ik] = g.k2(ik, iy);
  half_.assign(k2_.size(), 1.0);
}

void Stepper::set_factors(double dt) {
  if (dt == factor_dt_) return;
  factor_dt_ = dt;
  if (!rhs_.params().terms.diffusion) {
    std::fill(half_.begin(), half_.end(), 1.0);
    return;
  }
  const double s = -0.5 * dt / rhs_.params().a;
  for (std::size_t k = 0; k < k2_.size(); ++k) half_[k] = std::exp(s * k2_[k]);
}

const FlowStats& Stepper::prepare(const State& s) {
  rhs_.explicit_part(s.n, s.omega, n0_);
  prepared_ = &s;
  prepared_t_ = s.t;
  return rhs_.last_stats();
}

void Stepper::step(State& s, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("Stepper::step: dt must be positive");
  if (prepared_ != &s || prepared_t_ != s.t) prepare(s);
  prepared_ = nullptr;
  set_factors(dt);

  const std::size_t ns = k2_.size();
  const double h = 0.5 * dt;
  Complex* un = s.n.data();
  Complex* uw = s.omega.data();
  Complex* sn = stage_n_.data();
  Complex* sw = stage_w_.data();

  // u1 = E(1/2) (u0 + dt/2 N(u0))
  {
    const Complex* an = n0_.dn.data();
    const Complex* aw = n0_.domega.data();
    for (std::size_t k = 0; k < ns; ++k) {
      sn[k] = half_[k] * (un[k] + h * an[k]);
      sw[k] = half_[k] * (uw[k] + h * aw[k]);
    }
  }
  rhs_.explicit_part(stage_n_, stage_w_, n1_);
  // u2 = E(1/2) u0 + dt/2 N(u1)
  {
    const Complex* an = n1_.dn.data();
    const Complex* aw = n1_.domega.data();
    for (std::size_t k = 0; k < ns; ++k) {
      sn[k] = half_[k] * un[k] + h * an[k];
      sw[k] = half_[k] * uw[k] + h * aw[k];
    }
  }
  rhs_.explicit_part(stage_n_, stage_w_, n2_);
  // u_new = E(1/2) (E(1/2) u0 + dt N(u2))
  {
    const Complex* an = n2_.dn.data();
    const Complex* aw = n2_.domega.data();
    for (std::size_t k = 0; k < ns; ++k) {
      un[k] = half_[k] * (half_[k] * un[k] + dt * an[k]);
      uw[k] = half_[k] * (half_[k] * uw[k] + dt * aw[k]);
    }
  }
  s.t += dt;
  refresh_cache(s);
}

State step(const State& s, const PhysParams& params, double dt) {
  Stepper st(s.n.grid(), params);
  State out = s;
  st.step(out, dt);
  return out;
}

// ------------------------------------------------------------------- integrate

namespace {

// Next multiple of `interval` strictly after t (with a small relative tolerance).
double next_event(double t, double interval) {
  if (interval <= 0.0) return std::numeric_limits<double>::infinity();
  const double k = std::floor(t / interval + 1e-9);
  return (k + 1.0) * interval;
}

bool hits(double t, double event) { return std::abs(t - event) <= 1e-12 * std::max(1.0, std::abs(event)); }

}  // namespace

RunOutcome integrate(State s, const PhysParams& params, const StepperOptions& opt, const RunCallbacks& cb) {
  params.validate();
  RunOutcome out;
  const double horizon = params.horizon;

  if (s.n.is_zero() && s.omega.is_zero()) {
    FlowStats zero;
    if (cb.on_diag) cb.on_diag(s, zero);
    s.t = std::max(s.t, horizon);
    if (cb.on_diag) cb.on_diag(s, zero);
    out.kind = Outcome::Completed;
    out.t = s.t;
    out.message = "zero initial data";
    out.final_state = std::move(s);
    return out;
  }

  Stepper stepper(s.n.grid(), params);
  const Grid& g = s.n.g();
  FlowStats st = stepper.prepare(s);
  const double linf0 = std::max(std::abs(st.max_n), std::abs(st.min_n));
  const double cap = params.linf_cap > 0.0 ? params.linf_cap
                                           : (linf0 > 0.0 ? 1e4 * linf0 : std::numeric_limits<double>::infinity());
  out.initial_linf_n = linf0;
  out.linf_cap = cap;

  double last_diag_t = s.t;
  if (cb.on_diag) cb.on_diag(s, st);
  if (cb.on_snapshot && opt.snapshot_interval > 0.0) cb.on_snapshot(s);
  double next_diag = next_event(s.t, opt.diag_interval);
  double next_snap = next_event(s.t, opt.snapshot_interval);

  auto finish = [&](Outcome kind, const std::string& msg) {
    out.kind = kind;
    out.t = s.t;
    out.linf_n = std::max(std::abs(st.max_n), std::abs(st.min_n));
    out.message = msg;
    if (kind != Outcome::Completed && cb.on_diag && s.t != last_diag_t) cb.on_diag(s, st);
    out.final_state = std::move(s);
    return out;
  };

  while (true) {
    // state checks on the freshly evaluated tendency
    if (!st.finite) return finish(Outcome::BlowUp, "non-finite values");
    const double linf = std::max(std::abs(st.max_n), std::abs(st.min_n));
    if (linf > cap) return finish(Outcome::BlowUp, "||n||_inf exceeded cap");
    if (st.min_n < -opt.negativity_tol * std::max(st.max_n, 0.0)) {
      std::ostringstream os;
      os << "negative density " << st.min_n << " below -" << opt.negativity_tol << " * max n";
      return finish(Outcome::UnderResolved, os.str());
    }
    if (s.t >= horizon || hits(s.t, horizon)) break;
    if (opt.max_steps > 0 && out.steps >= opt.max_steps) return finish(Outcome::DtCollapse, "step budget exhausted");

    double dt = adapt_dt(st, g, params, opt);
    if (opt.fixed_dt <= 0.0 && dt < params.dt_min) {
      out.last_dt = dt;
      return finish(Outcome::DtCollapse, "dt below dt_min");
    }
    const double target = std::min({horizon, next_diag, next_snap});
    if (s.t + dt >= target || hits(s.t + dt, target)) dt = target - s.t;
    // avoid a sliver step right before an event
    else if (s.t + 1.5 * dt > target && opt.fixed_dt <= 0.0) dt = 0.5 * (target - s.t);

    stepper.step(s, dt);
    ++out.steps;
    out.last_dt = dt;
    if (hits(s.t, target)) s.t = target;
    st = stepper.prepare(s);
    if (cb.on_step) cb.on_step(s, dt);

    if (hits(s.t, next_diag) || s.t > next_diag) {
      if (cb.on_diag && !hits(s.t, horizon)) {
        cb.on_diag(s, st);
        last_diag_t = s.t;
      }
      next_diag = next_event(s.t, opt.diag_interval);
    }
    if (hits(s.t, next_snap) || s.t > next_snap) {
      if (cb.on_snapshot) cb.on_snapshot(s);
      next_snap = next_event(s.t, opt.snapshot_interval);
    }
  }
  if (cb.on_diag) cb.on_diag(s, st);
  return finish(Outcome::Completed, "reached horizon");
}

}  // namespace pksns
