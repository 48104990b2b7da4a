#pragma once

// Seeded generation of well-typed tangle expressions, used to cross-check
// the matrix evaluator against the arc-coloring route.  All randomness
// goes through explicit modulo reduction so a seed means the same
// expression everywhere.

#include <cstdint>
#include <random>
#include <vector>

#include "qcol/tangle.hpp"

namespace qcol {

struct exprgen_params {
  int max_width = 4;
  int max_layers = 6;
};

namespace detail {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

// One parallel layer consuming `width` strands, with every intermediate
// and resulting width <= max_width.  Factors are shuffled so extrema
// and crossings appear at arbitrary offsets.
inline expr_ptr sample_layer(std::mt19937_64& rng, int width, int max_width) {
  std::vector<expr_ptr> factors;
  int remaining = width;
  int top = 0;
  while (remaining > 0) {
    enum { pick_id, pick_cup, pick_xp, pick_xm };
    std::vector<int> choices;
    const auto fits = [&](int consumes, int produces) {
      // the rest of the layer can always finish with cups plus at most
      // one id(1), so feasibility only needs the parity of what's left
      const int leftover = remaining - consumes;
      return top + produces + (leftover % 2) <= max_width;
    };
    if (fits(1, 1)) choices.push_back(pick_id);
    if (remaining >= 2) {
      choices.push_back(pick_cup);
      if (fits(2, 2)) {
        choices.push_back(pick_xp);
        choices.push_back(pick_xm);
      }
    }
    switch (choices.at(draw(rng, choices.size()))) {
      case pick_id:
        factors.push_back(id(1));
        remaining -= 1;
        top += 1;
        break;
      case pick_cup:
        factors.push_back(cup());
        remaining -= 2;
        break;
      case pick_xp:
        factors.push_back(xp());
        remaining -= 2;
        top += 2;
        break;
      case pick_xm:
        factors.push_back(xm());
        remaining -= 2;
        top += 2;
        break;
    }
  }
  while (top + 2 <= max_width && draw(rng, 3) == 0) {
    factors.push_back(cap());
    top += 2;
  }
  if (factors.empty()) factors.push_back(id(0));

  for (std::size_t i = factors.size(); i > 1; --i)
    std::swap(factors[i - 1], factors[draw(rng, i)]);

  expr_ptr e = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) e = beside(e, factors[i]);
  return e;
}

}  // namespace detail

inline std::vector<expr_ptr> sample_layers(std::mt19937_64& rng,
                                           const exprgen_params& p = {}) {
  std::vector<expr_ptr> layers;
  int width = static_cast<int>(detail::draw(rng, p.max_width + 1));
  const int count = 1 + static_cast<int>(detail::draw(rng, p.max_layers));
  for (int i = 0; i < count; ++i) {
    layers.push_back(detail::sample_layer(rng, width, p.max_width));
    width = layers.back()->top();
  }
  return layers;
}

inline expr_ptr fold_layers(const std::vector<expr_ptr>& layers) {
  expr_ptr e = layers.at(0);
  for (std::size_t i = 1; i < layers.size(); ++i) e = then(e, layers[i]);
  return e;
}

inline expr_ptr sample_expression(std::mt19937_64& rng,
                                  const exprgen_params& p = {}) {
  return fold_layers(sample_layers(rng, p));
}

}  // namespace qcol
