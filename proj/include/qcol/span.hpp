#pragma once

// Coloring spans of sets: the apex is the set of tangle colorings, the
// legs restrict a coloring to the bottom/top boundary tuples.  Spans
// compose by pullback and multiply by cartesian product; collapsing a
// span to its double-preimage cardinalities yields a coloring matrix.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qcol/errors.hpp"
#include "qcol/matrix.hpp"
#include "qcol/quandle.hpp"
#include "qcol/tangle.hpp"

namespace qcol {

class coloring_span {
 public:
  // Apex elements are opaque; only their leg images are observable.
  // legs_left[i] / legs_right[i] are the boundary tuples of element i.
  coloring_span(quandle q, int m, int n,
                std::vector<std::vector<int>> legs_left,
                std::vector<std::vector<int>> legs_right)
      : q_(std::move(q)),
        m_(m),
        n_(n),
        left_(std::move(legs_left)),
        right_(std::move(legs_right)) {
    if (left_.size() != right_.size())
      throw arity_error("span legs must be total on the apex");
    for (const auto& t : left_)
      if (t.size() != static_cast<std::size_t>(m_))
        throw arity_error("left leg tuple has the wrong width");
    for (const auto& t : right_)
      if (t.size() != static_cast<std::size_t>(n_))
        throw arity_error("right leg tuple has the wrong width");
  }

  const quandle& q() const { return q_; }
  int bottom() const { return m_; }
  int top() const { return n_; }
  std::size_t apex_size() const { return left_.size(); }
  const std::vector<int>& leg_left(std::size_t i) const { return left_.at(i); }
  const std::vector<int>& leg_right(std::size_t i) const { return right_.at(i); }

 private:
  quandle q_;
  int m_, n_;
  std::vector<std::vector<int>> left_, right_;
};

// Enumerates the colorings of the compiled diagram; the legs are the
// boundary restrictions.  Apex order is the enumerator's lexicographic
// coloring order.
inline coloring_span span_of(const expr_ptr& e, const quandle& q,
                             std::uint64_t budget = default_search_budget) {
  const arc_diagram diag = compile_diagram(e);
  const std::vector<coloring> colorings = enumerate_colorings(diag, q, budget);
  std::vector<std::vector<int>> left, right;
  left.reserve(colorings.size());
  right.reserve(colorings.size());
  for (const auto& c : colorings) {
    std::vector<int> lo, hi;
    lo.reserve(diag.bottom_arcs.size());
    hi.reserve(diag.top_arcs.size());
    for (int a : diag.bottom_arcs) lo.push_back(c[a]);
    for (int a : diag.top_arcs) hi.push_back(c[a]);
    left.push_back(std::move(lo));
    right.push_back(std::move(hi));
  }
  return coloring_span(q, e->bottom(), e->top(), std::move(left),
                       std::move(right));
}

// Pullback: pairs (x, y) agreeing on the spliced boundary, ordered
// lexicographically in (x, y).
inline coloring_span compose_spans(const coloring_span& f,
                                   const coloring_span& g) {
  if (f.q() != g.q())
    throw quandle_error("span composition needs a common quandle");
  if (f.top() != g.bottom())
    throw arity_error("span composition width mismatch: " +
                      std::to_string(f.top()) + " != " +
                      std::to_string(g.bottom()));
  std::map<std::vector<int>, std::vector<std::size_t>> g_by_left;
  for (std::size_t j = 0; j < g.apex_size(); ++j)
    g_by_left[g.leg_left(j)].push_back(j);

  std::vector<std::vector<int>> left, right;
  for (std::size_t i = 0; i < f.apex_size(); ++i) {
    const auto it = g_by_left.find(f.leg_right(i));
    if (it == g_by_left.end()) continue;
    for (std::size_t j : it->second) {
      left.push_back(f.leg_left(i));
      right.push_back(g.leg_right(j));
    }
  }
  return coloring_span(f.q(), f.bottom(), g.top(), std::move(left),
                       std::move(right));
}

// Cartesian product of apexes; legs concatenate, left factor leftmost.
inline coloring_span product_spans(const coloring_span& f,
                                   const coloring_span& g) {
  if (f.q() != g.q())
    throw quandle_error("span product needs a common quandle");
  std::vector<std::vector<int>> left, right;
  left.reserve(f.apex_size() * g.apex_size());
  right.reserve(f.apex_size() * g.apex_size());
  for (std::size_t i = 0; i < f.apex_size(); ++i)
    for (std::size_t j = 0; j < g.apex_size(); ++j) {
      std::vector<int> lo = f.leg_left(i);
      lo.insert(lo.end(), g.leg_left(j).begin(), g.leg_left(j).end());
      std::vector<int> hi = f.leg_right(i);
      hi.insert(hi.end(), g.leg_right(j).begin(), g.leg_right(j).end());
      left.push_back(std::move(lo));
      right.push_back(std::move(hi));
    }
  return coloring_span(f.q(), f.bottom() + g.bottom(), f.top() + g.top(),
                       std::move(left), std::move(right));
}

// Entry (mu, nu) = |{x in apex : legs(x) = (mu, nu)}|.
inline color_matrix decategorify(const coloring_span& s) {
  const encoding rows(s.q().size(), s.bottom());
  const encoding cols(s.q().size(), s.top());
  color_matrix m(s.q().size(), s.bottom(), s.top());
  for (std::size_t i = 0; i < s.apex_size(); ++i)
    m.add(rows.index(s.leg_left(i)), cols.index(s.leg_right(i)), 1);
  return m;
}

// 2-isomorphism test: every double preimage must have equal cardinality,
// i.e. the decategorifications agree.  Apex elements are never compared
// by identity (the sets are merely isomorphic, not equal).
inline bool spans_isomorphic(const coloring_span& f, const coloring_span& g) {
  if (f.q() != g.q())
    throw quandle_error("span comparison needs a common quandle");
  if (f.bottom() != g.bottom() || f.top() != g.top())
    throw arity_error("span comparison shape mismatch");
  return decategorify(f) == decategorify(g);
}

}  // namespace qcol
