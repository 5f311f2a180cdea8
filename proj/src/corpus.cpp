#include "pksns/corpus.hpp"

#include <cmath>

namespace pksns {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

namespace {

struct Bump {
  double c[4] = {0, 0, 0, 0};
  double y0 = 0.0, s = 1.0;
  double operator()(double y) const {
    const double poly = c[0] + y * (c[1] + y * (c[2] + y * c[3]));
    const double z = (y - y0) / s;
    return poly * std::exp(-0.5 * z * z);
  }
};

Bump draw_bump(std::mt19937_64& rng, const CorpusParams& p) {
  Bump b;
  for (int d = 0; d <= 3; ++d) b.c[d] = d <= p.degree ? uniform(rng, -1.0, 1.0) : 0.0;
  b.y0 = uniform(rng, -p.y0_max, p.y0_max);
  b.s = uniform(rng, p.s_min, p.s_max);
  return b;
}

}  // namespace

std::vector<ScalarField> make_corpus(const GridPtr& grid, int count, std::uint64_t seed, const CorpusParams& p) {
  std::mt19937_64 rng(seed);
  std::vector<ScalarField> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::vector<double> ca, cb;
    std::vector<Bump> bumps;
    for (int k = 1; k <= p.kx_max; ++k) {
      ca.push_back(uniform(rng, -1.0, 1.0));
      cb.push_back(uniform(rng, -1.0, 1.0));
      bumps.push_back(draw_bump(rng, p));
    }
    const Bump zero = draw_bump(rng, p);
    const bool with_zero = p.zero_mode;
    out.push_back(ScalarField::from_function(grid, [&](double x, double y) {
      double v = with_zero ? zero(y) : 0.0;
      for (int k = 1; k <= p.kx_max; ++k) {
        v += (ca[k - 1] * std::cos(k * x) + cb[k - 1] * std::sin(k * x)) * bumps[k - 1](y);
      }
      return v;
    }));
  }
  return out;
}

}  // namespace pksns
