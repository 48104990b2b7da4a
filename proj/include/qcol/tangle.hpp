#pragma once

// Tangle expressions: surface syntax, typed AST, compilation to an arc
// diagram, and coloring enumeration over that diagram.
//
// Tangles read bottom to top; a tangle m -> n has m endpoints on the
// bottom.  Generators: xp/xm (crossings, 2->2), cup (2->0), cap (0->2),
// id(n) (n->n).  "A ; B" stacks B on top of A, "A * B" lays B to the
// right of A.

#include <array>
#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qcol/errors.hpp"
#include "qcol/quandle.hpp"

namespace qcol {

enum class gen_kind { xp, xm, cup, cap, id };

class tangle_expr;
using expr_ptr = std::shared_ptr<const tangle_expr>;

class tangle_expr {
 public:
  struct gen_node {
    gen_kind kind;
    int width;  // strand count for id, unused otherwise
  };
  struct then_node {
    expr_ptr lower, upper;
  };
  struct beside_node {
    expr_ptr left, right;
  };
  using node_type = std::variant<gen_node, then_node, beside_node>;

  int bottom() const { return m_; }
  int top() const { return n_; }
  const node_type& node() const { return node_; }

  static expr_ptr make_gen(gen_kind k, int width);
  static expr_ptr make_then(expr_ptr lower, expr_ptr upper);
  static expr_ptr make_beside(expr_ptr left, expr_ptr right);

 private:
  tangle_expr(node_type node, int m, int n)
      : node_(std::move(node)), m_(m), n_(n) {}
  node_type node_;
  int m_, n_;
};

inline expr_ptr xp() { return tangle_expr::make_gen(gen_kind::xp, 2); }
inline expr_ptr xm() { return tangle_expr::make_gen(gen_kind::xm, 2); }
inline expr_ptr cup() { return tangle_expr::make_gen(gen_kind::cup, 2); }
inline expr_ptr cap() { return tangle_expr::make_gen(gen_kind::cap, 0); }
inline expr_ptr id(int n) { return tangle_expr::make_gen(gen_kind::id, n); }
inline expr_ptr then(expr_ptr a, expr_ptr b) {
  return tangle_expr::make_then(std::move(a), std::move(b));
}
inline expr_ptr beside(expr_ptr a, expr_ptr b) {
  return tangle_expr::make_beside(std::move(a), std::move(b));
}

std::string to_string(const expr_ptr& e);

inline expr_ptr tangle_expr::make_gen(gen_kind k, int width) {
  int m = 0, n = 0;
  switch (k) {
    case gen_kind::xp:
    case gen_kind::xm: m = n = 2; break;
    case gen_kind::cup: m = 2; n = 0; break;
    case gen_kind::cap: m = 0; n = 2; break;
    case gen_kind::id:
      if (width < 0) throw arity_error("id() needs a nonnegative width");
      m = n = width;
      break;
  }
  return expr_ptr(new tangle_expr(gen_node{k, width}, m, n));
}

inline expr_ptr tangle_expr::make_then(expr_ptr lower, expr_ptr upper) {
  if (lower->top() != upper->bottom())
    throw arity_error(
        "cannot compose \"" + to_string(lower) + "\" (" +
        std::to_string(lower->bottom()) + "->" + std::to_string(lower->top()) +
        ") under \"" + to_string(upper) + "\" (" +
        std::to_string(upper->bottom()) + "->" + std::to_string(upper->top()) +
        "): top arity " + std::to_string(lower->top()) +
        " != bottom arity " + std::to_string(upper->bottom()));
  const int m = lower->bottom(), n = upper->top();
  return expr_ptr(
      new tangle_expr(then_node{std::move(lower), std::move(upper)}, m, n));
}

inline expr_ptr tangle_expr::make_beside(expr_ptr left, expr_ptr right) {
  const int m = left->bottom() + right->bottom();
  const int n = left->top() + right->top();
  return expr_ptr(
      new tangle_expr(beside_node{std::move(left), std::move(right)}, m, n));
}

// --- printing ------------------------------------------------------------

namespace detail {

// precedence: 0 = seq context, 1 = par context
inline void print_expr(std::string& out, const expr_ptr& e, int prec) {
  if (const auto* g = std::get_if<tangle_expr::gen_node>(&e->node())) {
    switch (g->kind) {
      case gen_kind::xp: out += "xp"; break;
      case gen_kind::xm: out += "xm"; break;
      case gen_kind::cup: out += "cup"; break;
      case gen_kind::cap: out += "cap"; break;
      case gen_kind::id:
        out += "id(" + std::to_string(g->width) + ")";
        break;
    }
  } else if (const auto* t = std::get_if<tangle_expr::then_node>(&e->node())) {
    const bool parens = prec > 0;
    if (parens) out += "(";
    print_expr(out, t->lower, 0);
    out += " ; ";
    print_expr(out, t->upper, 0);
    if (parens) out += ")";
  } else {
    const auto& b = std::get<tangle_expr::beside_node>(e->node());
    print_expr(out, b.left, 1);
    out += " * ";
    print_expr(out, b.right, 1);
  }
}

}  // namespace detail

inline std::string to_string(const expr_ptr& e) {
  std::string out;
  detail::print_expr(out, e, 0);
  return out;
}

// Structural equality (same tree, not just same tangle).
inline bool expr_equal(const expr_ptr& a, const expr_ptr& b) {
  if (a->node().index() != b->node().index()) return false;
  if (const auto* g = std::get_if<tangle_expr::gen_node>(&a->node())) {
    const auto& h = std::get<tangle_expr::gen_node>(b->node());
    return g->kind == h.kind &&
           (g->kind != gen_kind::id || g->width == h.width);
  }
  if (const auto* t = std::get_if<tangle_expr::then_node>(&a->node())) {
    const auto& u = std::get<tangle_expr::then_node>(b->node());
    return expr_equal(t->lower, u.lower) && expr_equal(t->upper, u.upper);
  }
  const auto& x = std::get<tangle_expr::beside_node>(a->node());
  const auto& y = std::get<tangle_expr::beside_node>(b->node());
  return expr_equal(x.left, y.left) && expr_equal(x.right, y.right);
}

// --- parser ---------------------------------------------------------------
//
//   tangle := seq ;
//   seq    := par { ";" par } ;      (left operand is the lower tangle)
//   par    := atom { "*" atom } ;
//   atom   := "xp" | "xm" | "cup" | "cap" | "id" "(" nat ")" | "(" tangle ")"
//
// Keywords are case-insensitive, whitespace insignificant.  Lines
// starting with '#' are comments (used by the catalog data files).

namespace detail {

class tangle_parser {
 public:
  explicit tangle_parser(const std::string& text) : text_(text) {}

  expr_ptr parse() {
    expr_ptr e = parse_seq();
    skip_ws();
    if (pos_ != text_.size())
      throw parse_error("unexpected trailing input", pos_);
    return e;
  }

 private:
  expr_ptr parse_seq() {
    expr_ptr e = parse_par();
    while (eat(';')) e = then(e, parse_par());
    return e;
  }

  expr_ptr parse_par() {
    expr_ptr e = parse_atom();
    while (eat('*')) e = beside(e, parse_atom());
    return e;
  }

  expr_ptr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw parse_error("expected a tangle atom", pos_);
    if (eat('(')) {
      expr_ptr e = parse_seq();
      expect(')');
      return e;
    }
    const std::size_t start = pos_;
    std::string word;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      word += static_cast<char>(
          std::tolower(static_cast<unsigned char>(text_[pos_++])));
    if (word.empty())
      throw parse_error(std::string("unexpected character '") + text_[pos_] +
                            "'",
                        pos_);
    if (word == "xp") return xp();
    if (word == "xm") return xm();
    if (word == "cup") return cup();
    if (word == "cap") return cap();
    if (word == "id") {
      expect('(');
      skip_ws();
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw parse_error("id() needs a natural number", pos_);
      long n = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        n = n * 10 + (text_[pos_++] - '0');
        if (n > 1'000'000) throw parse_error("id() width too large", pos_);
      }
      expect(')');
      return id(static_cast<int>(n));
    }
    throw parse_error("unknown atom \"" + word + "\"", start);
  }

  void skip_ws() {
    for (;;) {
      while (pos_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      return;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c))
      throw parse_error(std::string("expected '") + c + "'", pos_);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline expr_ptr parse_tangle(const std::string& text) {
  return detail::tangle_parser(text).parse();
}

// --- arc diagrams ----------------------------------------------------------
//
// Arcs are the maximal over-strand segments of the diagram: a strand
// passing over a crossing stays one arc, a strand passing under is
// severed there.  One crossing record per crossing; the coloring
// relation is color(under_out) = color(over) |> color(under_in).

struct crossing {
  int under_in;
  int over;
  int under_out;
  int sign;  // +1 for xp, -1 for xm
};

struct arc_diagram {
  int arc_count = 0;
  std::vector<crossing> crossings;
  std::vector<int> bottom_arcs;  // length = expression bottom arity
  std::vector<int> top_arcs;     // length = expression top arity
};

namespace detail {

struct diagram_builder {
  std::vector<int> parent;
  std::vector<crossing> crossings;  // in segment ids

  int fresh() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }

  struct ports {
    std::vector<int> bottom, top;
  };

  ports build(const expr_ptr& e) {
    if (const auto* g = std::get_if<tangle_expr::gen_node>(&e->node())) {
      switch (g->kind) {
        case gen_kind::id: {
          ports p;
          for (int i = 0; i < g->width; ++i) {
            const int s = fresh();
            p.bottom.push_back(s);
            p.top.push_back(s);
          }
          return p;
        }
        case gen_kind::cup: {
          const int s = fresh();
          return {{s, s}, {}};
        }
        case gen_kind::cap: {
          const int s = fresh();
          return {{}, {s, s}};
        }
        case gen_kind::xp: {
          // over-strand runs bottom-left -> top-right
          const int over = fresh(), ui = fresh(), uo = fresh();
          crossings.push_back({ui, over, uo, +1});
          return {{over, ui}, {uo, over}};
        }
        case gen_kind::xm: {
          // over-strand runs bottom-right -> top-left
          const int ui = fresh(), over = fresh(), uo = fresh();
          crossings.push_back({ui, over, uo, -1});
          return {{ui, over}, {over, uo}};
        }
      }
      throw error("unreachable");
    }
    if (const auto* t = std::get_if<tangle_expr::then_node>(&e->node())) {
      ports lo = build(t->lower);
      ports up = build(t->upper);
      for (std::size_t i = 0; i < lo.top.size(); ++i)
        unite(lo.top[i], up.bottom[i]);
      return {std::move(lo.bottom), std::move(up.top)};
    }
    const auto& b = std::get<tangle_expr::beside_node>(e->node());
    ports l = build(b.left);
    ports r = build(b.right);
    l.bottom.insert(l.bottom.end(), r.bottom.begin(), r.bottom.end());
    l.top.insert(l.top.end(), r.top.begin(), r.top.end());
    return l;
  }
};

}  // namespace detail

// Arc ids are assigned in first-appearance order over bottom ports,
// crossing fields, top ports, then leftover segments (closed circles
// with no crossings).
inline arc_diagram compile_diagram(const expr_ptr& e) {
  detail::diagram_builder b;
  auto ports = b.build(e);

  std::vector<int> arc_of(b.parent.size(), -1);
  int next = 0;
  const auto arc = [&](int seg) {
    const int root = b.find(seg);
    if (arc_of[root] < 0) arc_of[root] = next++;
    return arc_of[root];
  };

  arc_diagram d;
  for (int s : ports.bottom) d.bottom_arcs.push_back(arc(s));
  for (const auto& c : b.crossings)
    d.crossings.push_back({arc(c.under_in), arc(c.over), arc(c.under_out),
                           c.sign});
  for (int s : ports.top) d.top_arcs.push_back(arc(s));
  for (std::size_t s = 0; s < b.parent.size(); ++s)
    arc(static_cast<int>(s));
  d.arc_count = next;
  return d;
}

// --- coloring enumeration ---------------------------------------------------

using coloring = std::vector<int>;  // arc index -> quandle element

inline constexpr std::uint64_t default_search_budget = 100'000'000;

// All maps arcs -> [0,d) satisfying color(under_out) = over |> under_in
// at every crossing, in lexicographic order of the arc color vector.
// Backtracking with unit propagation: once the over-arc and one under
// side of a crossing are colored, the other side is forced (QInv makes
// the crossing relation symmetric in the two under arcs).  Each crossing
// visit counts against the budget.
inline std::vector<coloring> enumerate_colorings(
    const arc_diagram& diag, const quandle& q,
    std::uint64_t budget = default_search_budget) {
  if (!q.involutory())
    throw quandle_error(
        "coloring requires an involutory quandle (QInv fails for \"" +
        (q.label().empty() ? std::string("unnamed") : q.label()) + "\")");

  const int arcs = diag.arc_count;
  const int d = q.size();
  std::vector<std::vector<int>> incident(arcs);
  for (std::size_t i = 0; i < diag.crossings.size(); ++i) {
    const auto& c = diag.crossings[i];
    for (int a : {c.under_in, c.over, c.under_out})
      incident[a].push_back(static_cast<int>(i));
  }

  std::vector<coloring> out;
  coloring color(arcs, -1);
  std::vector<int> trail;  // assigned arcs, for undo
  std::uint64_t checks = 0;

  // Assign `a`; propagate consequences.  Returns false on conflict.
  const auto propagate = [&](int a0, int v0) -> bool {
    color[a0] = v0;
    trail.push_back(a0);
    std::vector<int> queue{a0};
    while (!queue.empty()) {
      const int a = queue.back();
      queue.pop_back();
      for (const int ci : incident[a]) {
        if (++checks > budget)
          throw limit_error("coloring search budget exceeded");
        const auto& c = diag.crossings[ci];
        const int over = color[c.over];
        if (over < 0) continue;
        const int in = color[c.under_in], out_ = color[c.under_out];
        if (in >= 0 && out_ >= 0) {
          if (q.right(over, in) != out_) return false;
        } else if (in >= 0) {
          const int forced = q.right(over, in);
          color[c.under_out] = forced;
          trail.push_back(c.under_out);
          queue.push_back(c.under_out);
        } else if (out_ >= 0) {
          const int forced = q.right(over, out_);  // QInv: b|>(b|>a) = a
          color[c.under_in] = forced;
          trail.push_back(c.under_in);
          queue.push_back(c.under_in);
        }
      }
    }
    return true;
  };

  // Iterative DFS on the lowest-index uncolored arc.
  struct frame {
    int arc;
    int next_color;
    std::size_t trail_mark;
  };
  std::vector<frame> stack;

  const auto next_unassigned = [&]() {
    for (int a = 0; a < arcs; ++a)
      if (color[a] < 0) return a;
    return -1;
  };

  const auto descend = [&]() {
    const int a = next_unassigned();
    if (a < 0) {
      out.push_back(color);
      return false;
    }
    stack.push_back({a, 0, trail.size()});
    return true;
  };

  if (!descend()) return out;  // zero arcs: the single empty coloring
  while (!stack.empty()) {
    frame& f = stack.back();
    while (trail.size() > f.trail_mark) {
      color[trail.back()] = -1;
      trail.pop_back();
    }
    if (f.next_color >= d) {
      stack.pop_back();
      continue;
    }
    const int v = f.next_color++;
    if (propagate(f.arc, v)) descend();
  }
  return out;
}

// --- presentations ----------------------------------------------------------

// One generator per arc, one relation per crossing.  relations[i] =
// (a, b, c) meaning c = b |> a.  marked_bottom/top are the boundary arcs
// (the images of the free-quandle leg generators).
struct quandle_presentation {
  int generators = 0;
  std::vector<std::array<int, 3>> relations;
  std::vector<int> marked_bottom, marked_top;
};

inline quandle_presentation extract_presentation(const arc_diagram& diag) {
  quandle_presentation p;
  p.generators = diag.arc_count;
  for (const auto& c : diag.crossings)
    p.relations.push_back({c.under_in, c.over, c.under_out});
  p.marked_bottom = diag.bottom_arcs;
  p.marked_top = diag.top_arcs;
  return p;
}

// --- catalog ----------------------------------------------------------------

struct catalog_entry {
  std::string name;
  std::string word;
  std::string note;
};

// Links as 0 -> 0 words: braid trace closures in plat form (nested caps,
// braid on the rightmost strands, nested cups).
inline const std::vector<catalog_entry>& catalog() {
  static const std::vector<catalog_entry> entries = {
      {"unknot", "cap ; cup", "one crossing-free circle"},
      {"trefoil",
       "cap ; (id(1) * cap * id(1)) ; "
       "(id(2) * xp) ; (id(2) * xp) ; (id(2) * xp) ; "
       "(id(1) * cup * id(1)) ; cup",
       "3_1, closure of the 2-braid s1^3"},
      {"figure8",
       "cap ; (id(1) * cap * id(1)) ; (id(2) * cap * id(2)) ; "
       "(id(3) * xp * id(1)) ; (id(4) * xm) ; "
       "(id(3) * xp * id(1)) ; (id(4) * xm) ; "
       "(id(2) * cup * id(2)) ; (id(1) * cup * id(1)) ; cup",
       "4_1, closure of the 3-braid (s1 s2^-1)^2"},
      {"hopf",
       "cap ; (id(1) * cap * id(1)) ; "
       "(id(2) * xp) ; (id(2) * xp) ; "
       "(id(1) * cup * id(1)) ; cup",
       "Hopf link, closure of the 2-braid s1^2"},
  };
  return entries;
}

inline expr_ptr find_catalog(const std::string& name) {
  std::string key;
  for (char ch : name)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (const auto& e : catalog())
    if (e.name == key) return parse_tangle(e.word);
  return nullptr;
}

// A catalog name or a tangle expression.
inline expr_ptr resolve_input(const std::string& text) {
  if (expr_ptr e = find_catalog(text)) return e;
  return parse_tangle(text);
}

}  // namespace qcol
