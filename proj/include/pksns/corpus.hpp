// Seeded random band-limited test fields, Gaussian-decaying in y:
//   f = sum_{k=1..4} (a_k cos kx + b_k sin kx) p_k(y) exp(-(y - y_k)^2 / (2 s_k^2))  [+ zero-mode part]
// with deg p_k <= 3, s_k in [0.5, 1], |y_k| <= 1.5. The same seed yields the
// same continuum function on any grid.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pksns/field.hpp"

namespace pksns {

/// Uniform double in [0, 1) from the top 53 bits (portable across libstdc++ versions).
double uniform01(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);

struct CorpusParams {
  int kx_max = 4;
  int degree = 3;
  double s_min = 0.5, s_max = 1.0;
  double y0_max = 1.5;
  bool zero_mode = true;  // add an x-independent term of the same form
};

std::vector<ScalarField> make_corpus(const GridPtr& grid, int count, std::uint64_t seed,
                                     const CorpusParams& p = {});

}  // namespace pksns
