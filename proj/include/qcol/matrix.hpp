#pragma once

// Exact sparse natural-number matrices indexed by boundary colorings,
// generator matrices, and the word evaluator (products and Kronecker
// products of generator matrices).

#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcol/errors.hpp"
#include "qcol/quandle.hpp"
#include "qcol/tangle.hpp"

namespace qcol {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw limit_error("64-bit counter overflow in addition");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw limit_error("64-bit counter overflow in multiplication");
  return r;
}

inline std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// Bijection between width-n boundary colorings over [0,d) and
// [0, d^n), leftmost strand most significant.
class encoding {
 public:
  encoding(int d, int width) : d_(d), width_(width), count_(checked_pow(d, width)) {}

  int d() const { return d_; }
  int width() const { return width_; }
  std::uint64_t count() const { return count_; }

  std::uint64_t index(const std::vector<int>& tuple) const {
    if (tuple.size() != static_cast<std::size_t>(width_))
      throw arity_error("boundary coloring has the wrong width");
    std::uint64_t ix = 0;
    for (int v : tuple) {
      if (v < 0 || v >= d_) throw quandle_error("color out of range");
      ix = ix * d_ + v;
    }
    return ix;
  }

  std::vector<int> tuple(std::uint64_t index) const {
    if (index >= count_) throw arity_error("boundary index out of range");
    std::vector<int> t(width_);
    for (int k = width_ - 1; k >= 0; --k) {
      t[k] = static_cast<int>(index % d_);
      index /= d_;
    }
    return t;
  }

 private:
  int d_, width_;
  std::uint64_t count_;
};

// Sparse d^m x d^n matrix of nonnegative 64-bit counts; absent entries
// are zero and stored entries are strictly positive.  Row-major entry
// order is canonical.
class color_matrix {
 public:
  using index = std::uint64_t;
  using entry_map = std::map<std::pair<index, index>, std::uint64_t>;

  color_matrix(int d, int m, int n)
      : d_(d), m_(m), n_(n), rows_(checked_pow(d, m)), cols_(checked_pow(d, n)) {}

  int d() const { return d_; }
  int bottom() const { return m_; }
  int top() const { return n_; }
  index rows() const { return rows_; }
  index cols() const { return cols_; }
  const entry_map& entries() const { return entries_; }

  std::uint64_t at(index r, index c) const {
    check_index(r, c);
    const auto it = entries_.find({r, c});
    return it == entries_.end() ? 0 : it->second;
  }

  void set(index r, index c, std::uint64_t v) {
    check_index(r, c);
    if (v == 0)
      entries_.erase({r, c});
    else
      entries_[{r, c}] = v;
  }

  void add(index r, index c, std::uint64_t v) {
    if (v == 0) return;
    check_index(r, c);
    auto& slot = entries_[{r, c}];
    slot = checked_add(slot, v);
  }

  static color_matrix identity(int d, int width) {
    color_matrix m(d, width, width);
    for (index i = 0; i < m.rows_; ++i) m.entries_[{i, i}] = 1;
    return m;
  }

  friend bool operator==(const color_matrix& a, const color_matrix& b) {
    return a.d_ == b.d_ && a.m_ == b.m_ && a.n_ == b.n_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const color_matrix& a, const color_matrix& b) {
    return !(a == b);
  }

  // Row-major dense expansion, guarded against silly sizes.
  std::vector<std::vector<std::uint64_t>> to_dense() const {
    if (rows_ > 65536 || cols_ > 65536 || rows_ * cols_ > (1u << 24))
      throw limit_error("matrix too large for dense expansion");
    std::vector<std::vector<std::uint64_t>> dense(
        rows_, std::vector<std::uint64_t>(cols_, 0));
    for (const auto& [rc, v] : entries_) dense[rc.first][rc.second] = v;
    return dense;
  }

 private:
  void check_index(index r, index c) const {
    if (r >= rows_ || c >= cols_) throw arity_error("matrix index out of range");
  }

  int d_, m_, n_;
  index rows_, cols_;
  entry_map entries_;
};

// --- generator matrices -----------------------------------------------------

namespace detail {

inline void require_involutory(const quandle& q) {
  if (!q.involutory())
    throw quandle_error(
        "coloring matrices require an involutory quandle (QInv fails for \"" +
        (q.label().empty() ? std::string("unnamed") : q.label()) + "\")");
}

}  // namespace detail

// xp: entry ((a,b),(c,e)) = 1 iff e = a and c = a|>b.
// xm is the inverse permutation:  entry ((a,b),(c,e)) = 1 iff c = b and
// e = b|>a (forced by relation T2, and what the crossing with the other
// strand on top colors to).
// cup: d^2 x 1 with entry ((a,a),()) = 1; cap its transpose; id(w) the
// d^w identity.
inline color_matrix generator_matrix(gen_kind k, int width, const quandle& q) {
  detail::require_involutory(q);
  const int d = q.size();
  const encoding pairs(d, 2);
  switch (k) {
    case gen_kind::xp: {
      color_matrix m(d, 2, 2);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          m.set(pairs.index({a, b}), pairs.index({q.right(a, b), a}), 1);
      return m;
    }
    case gen_kind::xm: {
      color_matrix m(d, 2, 2);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          m.set(pairs.index({a, b}), pairs.index({b, q.right(b, a)}), 1);
      return m;
    }
    case gen_kind::cup: {
      color_matrix m(d, 2, 0);
      for (int a = 0; a < d; ++a) m.set(pairs.index({a, a}), 0, 1);
      return m;
    }
    case gen_kind::cap: {
      color_matrix m(d, 0, 2);
      for (int a = 0; a < d; ++a) m.set(0, pairs.index({a, a}), 1);
      return m;
    }
    case gen_kind::id: return color_matrix::identity(d, width);
  }
  throw error("unreachable");
}

// --- composition ------------------------------------------------------------

inline color_matrix matrix_multiply(const color_matrix& a,
                                    const color_matrix& b) {
  if (a.d() != b.d())
    throw quandle_error("matrix product needs a common quandle size");
  if (a.top() != b.bottom())
    throw arity_error("matrix product shape mismatch: " +
                      std::to_string(a.top()) + " != " +
                      std::to_string(b.bottom()));
  color_matrix c(a.d(), a.bottom(), b.top());
  const auto bend = b.entries().end();
  for (auto ait = a.entries().begin(); ait != a.entries().end(); ++ait) {
    const auto [ar, alam] = ait->first;
    auto bit = b.entries().lower_bound({alam, 0});
    for (; bit != bend && bit->first.first == alam; ++bit)
      c.add(ar, bit->first.second, checked_mul(ait->second, bit->second));
  }
  return c;
}

// Indexed by concatenated tuples: entry ((u1,u2),(v1,v2)) =
// A[u1,v1]*B[u2,v2]; under the encoding, A is the coarse factor.
inline color_matrix kronecker(const color_matrix& a, const color_matrix& b) {
  if (a.d() != b.d())
    throw quandle_error("Kronecker product needs a common quandle size");
  color_matrix c(a.d(), a.bottom() + b.bottom(), a.top() + b.top());
  for (const auto& [arc, av] : a.entries())
    for (const auto& [brc, bv] : b.entries())
      c.set(checked_mul(arc.first, b.rows()) + brc.first,
            checked_mul(arc.second, b.cols()) + brc.second,
            checked_mul(av, bv));
  return c;
}

// --- word evaluation ---------------------------------------------------------

// Widths w with d^w > 2^32 are rejected unless the caller raises the
// guard; explicit failure beats address-space exhaustion.
inline int default_max_width(int d) {
  if (d <= 1) return 1'000'000;
  int w = 0;
  std::uint64_t cells = 1;
  const std::uint64_t cap = std::uint64_t(1) << 32;
  while (cells <= cap / d) {
    cells *= d;
    ++w;
  }
  return w;
}

inline color_matrix evaluate(const expr_ptr& e, const quandle& q,
                             int max_width = 0) {
  detail::require_involutory(q);
  if (max_width <= 0) max_width = default_max_width(q.size());
  struct walker {
    const quandle& q;
    int max_width;
    color_matrix go(const expr_ptr& e) {
      if (e->bottom() > max_width || e->top() > max_width)
        throw limit_error("width guard: tangle needs " +
                          std::to_string(std::max(e->bottom(), e->top())) +
                          " strands, limit is " + std::to_string(max_width));
      if (const auto* g = std::get_if<tangle_expr::gen_node>(&e->node()))
        return generator_matrix(g->kind, g->width, q);
      if (const auto* t = std::get_if<tangle_expr::then_node>(&e->node()))
        return matrix_multiply(go(t->lower), go(t->upper));
      const auto& b = std::get<tangle_expr::beside_node>(e->node());
      return kronecker(go(b.left), go(b.right));
    }
  };
  return walker{q, max_width}.go(e);
}

// --- the defining relations ---------------------------------------------------

struct relation_check {
  std::string name;
  std::string lhs, rhs;
  bool equal = false;
};

struct relation_report {
  std::vector<relation_check> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.equal) return false;
    return true;
  }
};

// The presentation of the tangle category: T0 and T0' relate extrema to
// each other and to crossings, T1-T3 are the Reidemeister moves.  Words
// are in diagrammatic order (lower tangle first).
inline relation_report verify_relations(const quandle& q) {
  detail::require_involutory(q);
  static const struct {
    const char* name;
    const char* lhs;
    const char* rhs;
  } rels[] = {
      {"T0 (zigzag left)", "(id(1) * cap) ; (cup * id(1))", "id(1)"},
      {"T0 (zigzag right)", "(cap * id(1)) ; (id(1) * cup)", "id(1)"},
      {"T0' (+)", "(xp * id(1)) ; (id(1) * cup)",
       "(id(1) * xm) ; (cup * id(1))"},
      {"T0' (-)", "(xm * id(1)) ; (id(1) * cup)",
       "(id(1) * xp) ; (cup * id(1))"},
      {"T1 (+)", "xp ; cup", "cup"},
      {"T1 (-)", "xm ; cup", "cup"},
      {"T2 (+-)", "xp ; xm", "id(2)"},
      {"T2 (-+)", "xm ; xp", "id(2)"},
      {"T3", "(xp * id(1)) ; (id(1) * xp) ; (xp * id(1))",
       "(id(1) * xp) ; (xp * id(1)) ; (id(1) * xp)"},
  };
  relation_report rep;
  for (const auto& r : rels) {
    relation_check chk{r.name, r.lhs, r.rhs, false};
    chk.equal = evaluate(parse_tangle(r.lhs), q) ==
                evaluate(parse_tangle(r.rhs), q);
    rep.checks.push_back(std::move(chk));
  }
  return rep;
}

// --- braids -------------------------------------------------------------------

// sigma_i^sign on `strands` strands as a d^strands square matrix.
inline color_matrix braid_generator(int i, int strands, int sign,
                                    const quandle& q) {
  if (strands < 2 || i < 1 || i > strands - 1)
    throw arity_error("braid generator index " + std::to_string(i) +
                      " out of range for " + std::to_string(strands) +
                      " strands");
  expr_ptr e = sign >= 0 ? xp() : xm();
  if (i > 1) e = beside(id(i - 1), e);
  if (i < strands - 1) e = beside(e, id(strands - 1 - i));
  return evaluate(e, q);
}

// Word letters are +-i for sigma_i^{+-1}, applied bottom to top.
inline color_matrix braid_word(const std::vector<int>& word, int strands,
                               const quandle& q) {
  if (strands < 1) throw arity_error("braid needs at least one strand");
  color_matrix m = color_matrix::identity(q.size(), strands);
  for (int letter : word) {
    if (letter == 0) throw arity_error("braid letters are nonzero");
    m = matrix_multiply(
        m, braid_generator(std::abs(letter), strands, letter, q));
  }
  return m;
}

// --- documents -----------------------------------------------------------------

// {"d","m","n","rows","cols","entries"}: entries as [row, col, value]
// triples sorted row-major.  Bit-exact across runs.
inline std::string matrix_document(const color_matrix& m) {
  nlohmann::ordered_json doc;
  doc["d"] = m.d();
  doc["m"] = m.bottom();
  doc["n"] = m.top();
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [rc, v] : m.entries())
    entries.push_back({rc.first, rc.second, v});
  doc["entries"] = std::move(entries);
  return doc.dump();
}

}  // namespace qcol
