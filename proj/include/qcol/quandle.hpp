#pragma once

// Finite quandles: operation tables, axiom checking, the dihedral and
// conjugation constructions, and the table file format.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcol/errors.hpp"

namespace qcol {

enum class axiom { q1, q2, q3, qinv };

inline const char* axiom_name(axiom a) {
  switch (a) {
    case axiom::q1: return "Q1";
    case axiom::q2: return "Q2";
    case axiom::q3: return "Q3";
    case axiom::qinv: return "QInv";
  }
  return "?";
}

// One failed axiom instance.  The tuple holds the witnessing elements:
// (a) for Q1, (a, b) for Q2/QInv, (a, b, c) for Q3.
struct axiom_witness {
  axiom which;
  std::vector<int> tuple;
};

struct axiom_report {
  bool q1_holds = true;
  bool q2_holds = true;
  bool q3_holds = true;
  bool involutory = true;
  std::vector<axiom_witness> counterexamples;

  bool is_quandle() const { return q1_holds && q2_holds && q3_holds; }

  std::string describe() const {
    std::ostringstream os;
    os << "Q1 " << (q1_holds ? "ok" : "FAIL") << ", Q2 "
       << (q2_holds ? "ok" : "FAIL") << ", Q3 " << (q3_holds ? "ok" : "FAIL")
       << ", involutory " << (involutory ? "yes" : "no");
    for (const auto& w : counterexamples) {
      os << "; " << axiom_name(w.which) << " fails at (";
      for (std::size_t i = 0; i < w.tuple.size(); ++i)
        os << (i ? "," : "") << w.tuple[i];
      os << ")";
    }
    return os.str();
  }
};

// Finite quandle on {0, .., d-1} with explicit operation tables.
//   right(b, a) = b |> a   (the over-arc b acting on a)
//   left(a, b)  = a <| b   (its Q2 inverse)
// Checked construction enforces Q1-Q3; involutory (QInv) is recorded but
// not required, so Conj(G) for nonabelian G is a valid object.  The
// coloring machinery rejects non-involutory quandles at the point of use.
class quandle {
 public:
  static quandle dihedral(int n);
  static quandle conjugation(const std::vector<std::vector<int>>& cayley,
                             std::string label = "");
  static quandle from_tables(int d, std::vector<int> right,
                             std::optional<std::vector<int>> left,
                             std::string label = {},
                             std::vector<std::string> names = {});
  // No axiom check; tables are only validated structurally.  Test and
  // reporting path (check_quandle_document builds on this).
  static quandle from_tables_unchecked(int d, std::vector<int> right,
                                       std::optional<std::vector<int>> left,
                                       std::string label = {},
                                       std::vector<std::string> names = {});

  int size() const { return d_; }

  int right(int b, int a) const {
    require_element(b);
    require_element(a);
    return right_[static_cast<std::size_t>(b) * d_ + a];
  }

  int left(int a, int b) const {
    require_element(a);
    require_element(b);
    return left_[static_cast<std::size_t>(a) * d_ + b];
  }

  bool involutory() const { return involutory_; }
  const std::string& label() const { return label_; }
  const std::vector<std::string>& names() const { return names_; }

  std::string element_name(int a) const {
    if (a >= 0 && a < static_cast<int>(names_.size())) return names_[a];
    return std::to_string(a);
  }

  // Table equality; labels and names do not participate.
  friend bool operator==(const quandle& x, const quandle& y) {
    return x.d_ == y.d_ && x.right_ == y.right_ && x.left_ == y.left_;
  }
  friend bool operator!=(const quandle& x, const quandle& y) {
    return !(x == y);
  }

 private:
  quandle() = default;

  void require_element(int a) const {
    if (a < 0 || a >= d_)
      throw quandle_error("element " + std::to_string(a) +
                          " out of range [0," + std::to_string(d_) + ")");
  }

  int d_ = 0;
  std::vector<int> right_;  // right_[b*d + a] = b |> a
  std::vector<int> left_;   // left_[a*d + b]  = a <| b
  bool involutory_ = false;
  std::string label_;
  std::vector<std::string> names_;

  friend axiom_report verify_axioms(const quandle& q);
};

inline int op_right(const quandle& q, int b, int a) { return q.right(b, a); }
inline int op_left(const quandle& q, int a, int b) { return q.left(a, b); }

// Exhaustive check of Q1, Q2, Q3 over all tuples and QInv over all
// pairs.  O(d^3); the first witness per axiom is recorded.
inline axiom_report verify_axioms(const quandle& q) {
  const int d = q.d_;
  const auto r = [&](int b, int a) {
    return q.right_[static_cast<std::size_t>(b) * d + a];
  };
  const auto l = [&](int a, int b) {
    return q.left_[static_cast<std::size_t>(a) * d + b];
  };

  axiom_report rep;
  for (int a = 0; a < d; ++a) {
    if (r(a, a) != a) {
      rep.q1_holds = false;
      rep.counterexamples.push_back({axiom::q1, {a}});
      break;
    }
  }
  for (int a = 0; a < d && rep.q2_holds; ++a)
    for (int b = 0; b < d; ++b)
      if (l(r(b, a), b) != a || r(b, l(a, b)) != a) {
        rep.q2_holds = false;
        rep.counterexamples.push_back({axiom::q2, {a, b}});
        break;
      }
  for (int a = 0; a < d && rep.q3_holds; ++a)
    for (int b = 0; b < d && rep.q3_holds; ++b)
      for (int c = 0; c < d; ++c)
        if (r(a, r(b, c)) != r(r(a, b), r(a, c))) {
          rep.q3_holds = false;
          rep.counterexamples.push_back({axiom::q3, {a, b, c}});
          break;
        }
  for (int a = 0; a < d && rep.involutory; ++a)
    for (int b = 0; b < d; ++b)
      if (r(b, a) != l(a, b)) {
        rep.involutory = false;
        rep.counterexamples.push_back({axiom::qinv, {a, b}});
        break;
      }
  return rep;
}

namespace detail {

inline void check_table_shape(int d, const std::vector<int>& t,
                              const char* which) {
  if (d <= 0) throw quandle_error("quandle size must be positive");
  if (t.size() != static_cast<std::size_t>(d) * d)
    throw quandle_error(std::string(which) + " table is not " +
                        std::to_string(d) + "x" + std::to_string(d));
  for (int v : t)
    if (v < 0 || v >= d)
      throw quandle_error(std::string(which) + " table entry " +
                          std::to_string(v) + " out of range [0," +
                          std::to_string(d) + ")");
}

// left[a*d+b] = the unique x with right[b*d+x] = a, i.e. the Q2 inverse
// of each row action.  Fails on a non-bijective row.
inline std::vector<int> derive_left(int d, const std::vector<int>& right) {
  std::vector<int> left(static_cast<std::size_t>(d) * d, -1);
  for (int b = 0; b < d; ++b) {
    for (int x = 0; x < d; ++x) {
      const int a = right[static_cast<std::size_t>(b) * d + x];
      auto& slot = left[static_cast<std::size_t>(a) * d + b];
      if (slot != -1)
        throw quandle_error("row " + std::to_string(b) +
                            " of the right table is not a bijection; "
                            "the left table cannot be derived");
      slot = x;
    }
  }
  return left;
}

}  // namespace detail

inline quandle quandle::from_tables_unchecked(
    int d, std::vector<int> right, std::optional<std::vector<int>> left,
    std::string label, std::vector<std::string> names) {
  detail::check_table_shape(d, right, "right");
  std::vector<int> l = left ? std::move(*left) : detail::derive_left(d, right);
  detail::check_table_shape(d, l, "left");
  if (!names.empty() && names.size() != static_cast<std::size_t>(d))
    throw quandle_error("names list must have one entry per element");

  quandle q;
  q.d_ = d;
  q.right_ = std::move(right);
  q.left_ = std::move(l);
  q.label_ = std::move(label);
  q.names_ = std::move(names);
  q.involutory_ = true;
  for (int a = 0; a < d && q.involutory_; ++a)
    for (int b = 0; b < d; ++b)
      if (q.right_[static_cast<std::size_t>(b) * d + a] !=
          q.left_[static_cast<std::size_t>(a) * d + b]) {
        q.involutory_ = false;
        break;
      }
  return q;
}

inline quandle quandle::from_tables(int d, std::vector<int> right,
                                    std::optional<std::vector<int>> left,
                                    std::string label,
                                    std::vector<std::string> names) {
  quandle q = from_tables_unchecked(d, std::move(right), std::move(left),
                                    std::move(label), std::move(names));
  const axiom_report rep = verify_axioms(q);
  if (!rep.is_quandle())
    throw quandle_error("not a quandle: " + rep.describe());
  return q;
}

inline quandle quandle::dihedral(int n) {
  if (n < 1) throw quandle_error("dihedral quandle needs n >= 1");
  std::vector<int> right(static_cast<std::size_t>(n) * n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      right[static_cast<std::size_t>(b) * n + a] = ((2 * b - a) % n + n) % n;
  // 2b - a = a <| b as well, so the left table coincides.
  return from_tables(n, right, right, "D(Z" + std::to_string(n) + ")");
}

inline quandle quandle::conjugation(
    const std::vector<std::vector<int>>& cayley, std::string label) {
  const int d = static_cast<int>(cayley.size());
  if (d <= 0) throw quandle_error("group table must be nonempty");
  std::vector<int> mul(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    if (cayley[i].size() != static_cast<std::size_t>(d))
      throw quandle_error("group table is not square");
    for (int j = 0; j < d; ++j) {
      const int v = cayley[i][j];
      if (v < 0 || v >= d)
        throw quandle_error("group table entry out of range");
      mul[static_cast<std::size_t>(i) * d + j] = v;
    }
  }
  const auto m = [&](int i, int j) {
    return mul[static_cast<std::size_t>(i) * d + j];
  };

  int e = -1;
  for (int i = 0; i < d && e < 0; ++i) {
    bool ident = true;
    for (int j = 0; j < d; ++j)
      if (m(i, j) != j || m(j, i) != j) {
        ident = false;
        break;
      }
    if (ident) e = i;
  }
  if (e < 0) throw quandle_error("not a group table: no identity element");

  std::vector<int> inv(d, -1);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j)
      if (m(i, j) == e && m(j, i) == e) {
        inv[i] = j;
        break;
      }
    if (inv[i] < 0)
      throw quandle_error("not a group table: no inverse for element " +
                          std::to_string(i));
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (m(m(i, j), k) != m(i, m(j, k)))
          throw quandle_error(
              "not a group table: not associative at (" + std::to_string(i) +
              "," + std::to_string(j) + "," + std::to_string(k) + ")");

  std::vector<int> right(static_cast<std::size_t>(d) * d);
  std::vector<int> left(static_cast<std::size_t>(d) * d);
  for (int b = 0; b < d; ++b)
    for (int a = 0; a < d; ++a) {
      right[static_cast<std::size_t>(b) * d + a] = m(m(b, a), inv[b]);
      left[static_cast<std::size_t>(a) * d + b] = m(m(inv[b], a), b);
    }
  return from_tables(d, std::move(right), std::move(left),
                     label.empty() ? "Conj(G)" : std::move(label));
}

// --- table document format ---------------------------------------------
//
// JSON object with fields:
//   size   (int, required)
//   right  (size x size int table, required)
//   left   (same shape, optional; derived from Q2 when absent)
//   label  (string, optional)
//   names  (array of size strings, optional)
// Unknown fields are rejected.

inline quandle parse_quandle_document_unchecked(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw quandle_error(std::string("quandle document: ") + e.what());
  }
  if (!doc.is_object())
    throw quandle_error("quandle document: top level must be an object");
  for (const auto& item : doc.items()) {
    const std::string& k = item.key();
    if (k != "size" && k != "right" && k != "left" && k != "label" &&
        k != "names")
      throw quandle_error("quandle document: unknown field \"" + k + "\"");
  }
  if (!doc.contains("size") || !doc["size"].is_number_integer())
    throw quandle_error("quandle document: missing integer field \"size\"");
  const int d = doc["size"].get<int>();
  if (d <= 0) throw quandle_error("quandle document: size must be positive");

  const auto read_table = [&](const char* key) {
    const auto& node = doc[key];
    if (!node.is_array() || node.size() != static_cast<std::size_t>(d))
      throw quandle_error(std::string("quandle document: \"") + key +
                          "\" must be an array of " + std::to_string(d) +
                          " rows");
    std::vector<int> t;
    t.reserve(static_cast<std::size_t>(d) * d);
    for (const auto& row : node) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
        throw quandle_error(std::string("quandle document: each row of \"") +
                            key + "\" must have " + std::to_string(d) +
                            " entries");
      for (const auto& v : row) {
        if (!v.is_number_integer())
          throw quandle_error(std::string("quandle document: \"") + key +
                              "\" entries must be integers");
        t.push_back(v.get<int>());
      }
    }
    return t;
  };

  if (!doc.contains("right"))
    throw quandle_error("quandle document: missing field \"right\"");
  std::vector<int> right = read_table("right");
  std::optional<std::vector<int>> left;
  if (doc.contains("left")) left = read_table("left");

  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string())
      throw quandle_error("quandle document: \"label\" must be a string");
    label = doc["label"].get<std::string>();
  }
  std::vector<std::string> names;
  if (doc.contains("names")) {
    if (!doc["names"].is_array())
      throw quandle_error("quandle document: \"names\" must be an array");
    for (const auto& v : doc["names"]) {
      if (!v.is_string())
        throw quandle_error("quandle document: names must be strings");
      names.push_back(v.get<std::string>());
    }
  }
  return quandle::from_tables_unchecked(d, std::move(right), std::move(left),
                                        std::move(label), std::move(names));
}

// Parse without rejecting axiom violations, and report them.
inline std::pair<quandle, axiom_report> check_quandle_document(
    const std::string& text) {
  quandle q = parse_quandle_document_unchecked(text);
  axiom_report rep = verify_axioms(q);
  return {std::move(q), std::move(rep)};
}

inline quandle parse_quandle_document(const std::string& text) {
  auto [q, rep] = check_quandle_document(text);
  if (!rep.is_quandle())
    throw quandle_error("not a quandle: " + rep.describe());
  return q;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline quandle load_quandle(const std::string& path) {
  return parse_quandle_document(read_text_file(path));
}

}  // namespace qcol
