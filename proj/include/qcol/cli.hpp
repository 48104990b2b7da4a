#pragma once

// Command-line front end, kept as a library so the modes are testable
// without spawning processes.  Structured output is a single JSON
// document on stdout; diagnostics go to stderr.
//
// Exit codes: 0 ok; 1 usage; 2 parse/arity; 3 quandle invalid;
// 4 overflow/budget/width; 5 relation-suite or cross-check failure.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcol/errors.hpp"
#include "qcol/exprgen.hpp"
#include "qcol/matrix.hpp"
#include "qcol/quandle.hpp"
#include "qcol/span.hpp"
#include "qcol/tangle.hpp"

namespace qcol {

struct run_config {
  enum class mode_kind {
    matrix,
    count,
    span_summary,
    relations,
    braid,
    check_quandle,
    cross_check,
    presentation,
    catalog,
  };
  enum class format_kind { human, structured };

  mode_kind mode = mode_kind::matrix;
  format_kind format = format_kind::human;
  std::string quandle_spec;  // "dihedral:n" or a file path
  std::string input;         // expression, catalog name, or braid word
  int strands = 0;           // braid mode
  std::uint64_t budget = default_search_budget;
  int max_width = 0;  // 0 = derived from the quandle size
  std::uint64_t seed = 0;
  bool has_seed = false;
};

namespace cli_detail {

inline quandle load(const std::string& spec) {
  if (spec.empty()) throw quandle_error("no quandle given (use --quandle)");
  if (spec.rfind("dihedral:", 0) == 0) {
    const std::string num = spec.substr(9);
    try {
      std::size_t used = 0;
      const int n = std::stoi(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
      return quandle::dihedral(n);
    } catch (const quandle_error&) {
      throw;
    } catch (const std::exception&) {
      throw quandle_error("bad dihedral size \"" + num + "\"");
    }
  }
  return load_quandle(spec);
}

inline std::vector<int> parse_braid_word(const std::string& text) {
  std::vector<int> word;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    int sign = +1;
    if (text[i] == '-') {
      sign = -1;
      ++i;
    } else if (text[i] == '+') {
      ++i;
    }
    if (i < text.size() && (text[i] == 's' || text[i] == 'S')) ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw parse_error("expected a braid letter like s1 or -s2", i);
    int k = 0;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      k = k * 10 + (text[i] - '0');
      if (k > 1'000'000) throw parse_error("braid index too large", i);
      ++i;
    }
    word.push_back(sign * k);
  }
  return word;
}

inline void print_matrix_human(std::ostream& out, const color_matrix& m,
                               const std::string& title) {
  out << title << ": " << m.rows() << "x" << m.cols() << " (m=" << m.bottom()
      << ", n=" << m.top() << ", d=" << m.d() << ")\n";
  if (m.rows() <= 64 && m.cols() <= 64) {
    const auto dense = m.to_dense();
    for (const auto& row : dense) {
      for (std::size_t j = 0; j < row.size(); ++j)
        out << (j ? " " : "") << row[j];
      out << "\n";
    }
  } else {
    out << m.entries().size() << " nonzero entries (row col value):\n";
    for (const auto& [rc, v] : m.entries())
      out << rc.first << " " << rc.second << " " << v << "\n";
  }
}

inline void emit_matrix(std::ostream& out, const run_config& cfg,
                        const color_matrix& m, const std::string& title) {
  if (cfg.format == run_config::format_kind::structured)
    out << matrix_document(m) << "\n";
  else
    print_matrix_human(out, m, title);
}

}  // namespace cli_detail

inline int run(const run_config& cfg, std::ostream& out, std::ostream& err) {
  using mode = run_config::mode_kind;
  using fmt = run_config::format_kind;
  try {
    switch (cfg.mode) {
      case mode::catalog: {
        if (cfg.format == fmt::structured) {
          auto doc = nlohmann::ordered_json::array();
          for (const auto& e : catalog())
            doc.push_back({{"name", e.name}, {"word", e.word}, {"note", e.note}});
          out << doc.dump() << "\n";
        } else {
          for (const auto& e : catalog()) {
            const expr_ptr x = parse_tangle(e.word);
            out << e.name << " (" << x->bottom() << "->" << x->top() << "): "
                << e.note << "\n    " << e.word << "\n";
          }
        }
        return 0;
      }

      case mode::presentation: {
        const expr_ptr e = resolve_input(cfg.input);
        const quandle_presentation p =
            extract_presentation(compile_diagram(e));
        if (cfg.format == fmt::structured) {
          nlohmann::ordered_json doc;
          doc["generators"] = p.generators;
          auto rels = nlohmann::ordered_json::array();
          for (const auto& r : p.relations) rels.push_back({r[0], r[1], r[2]});
          doc["relations"] = std::move(rels);
          doc["bottom"] = p.marked_bottom;
          doc["top"] = p.marked_top;
          out << doc.dump() << "\n";
        } else {
          out << p.generators << " generators";
          if (p.generators > 0) out << " x0..x" << p.generators - 1;
          out << ", " << p.relations.size() << " relations\n";
          for (const auto& r : p.relations)
            out << "  x" << r[2] << " = x" << r[1] << " ▷ x" << r[0]
                << "\n";
          out << "bottom:";
          for (int a : p.marked_bottom) out << " x" << a;
          out << "\ntop:";
          for (int a : p.marked_top) out << " x" << a;
          out << "\n";
        }
        return 0;
      }

      case mode::check_quandle: {
        const auto [q, rep] =
            check_quandle_document(read_text_file(cfg.quandle_spec));
        if (cfg.format == fmt::structured) {
          nlohmann::ordered_json doc;
          doc["size"] = q.size();
          doc["label"] = q.label();
          doc["q1"] = rep.q1_holds;
          doc["q2"] = rep.q2_holds;
          doc["q3"] = rep.q3_holds;
          doc["involutory"] = rep.involutory;
          doc["is_quandle"] = rep.is_quandle();
          auto cx = nlohmann::ordered_json::array();
          for (const auto& w : rep.counterexamples)
            cx.push_back({{"axiom", axiom_name(w.which)}, {"witness", w.tuple}});
          doc["counterexamples"] = std::move(cx);
          out << doc.dump() << "\n";
        } else {
          out << (q.label().empty() ? cfg.quandle_spec : q.label()) << ": size "
              << q.size() << ", " << rep.describe() << "\n";
        }
        return rep.is_quandle() ? 0 : 3;
      }

      case mode::relations: {
        const quandle q = cli_detail::load(cfg.quandle_spec);
        const relation_report rep = verify_relations(q);
        if (cfg.format == fmt::structured) {
          nlohmann::ordered_json doc;
          doc["quandle"] = q.label();
          doc["all_pass"] = rep.all_pass();
          auto checks = nlohmann::ordered_json::array();
          for (const auto& c : rep.checks)
            checks.push_back({{"name", c.name},
                              {"lhs", c.lhs},
                              {"rhs", c.rhs},
                              {"equal", c.equal}});
          doc["checks"] = std::move(checks);
          out << doc.dump() << "\n";
        } else {
          for (const auto& c : rep.checks)
            out << (c.equal ? "PASS " : "FAIL ") << c.name << ": " << c.lhs
                << " == " << c.rhs << "\n";
          out << (rep.all_pass() ? "all relations hold" : "relation failure")
              << " for " << q.label() << "\n";
        }
        return rep.all_pass() ? 0 : 5;
      }

      case mode::braid: {
        const quandle q = cli_detail::load(cfg.quandle_spec);
        if (cfg.strands < 1)
          throw arity_error("braid mode needs --strands");
        const std::vector<int> word = cli_detail::parse_braid_word(cfg.input);
        for (int letter : word)
          if (letter == 0 || std::abs(letter) > cfg.strands - 1)
            throw arity_error("braid letter s" + std::to_string(std::abs(letter)) +
                              " out of range for " +
                              std::to_string(cfg.strands) + " strands");
        const color_matrix m = braid_word(word, cfg.strands, q);
        cli_detail::emit_matrix(out, cfg, m,
                                "braid \"" + cfg.input + "\" on " +
                                    std::to_string(cfg.strands) + " strands");
        return 0;
      }

      case mode::matrix:
      case mode::count: {
        const quandle q = cli_detail::load(cfg.quandle_spec);
        const expr_ptr e = resolve_input(cfg.input);
        if (cfg.mode == mode::count && (e->bottom() != 0 || e->top() != 0))
          throw arity_error("--count needs a link (0 -> 0), got " +
                            std::to_string(e->bottom()) + " -> " +
                            std::to_string(e->top()));
        const color_matrix m = evaluate(e, q, cfg.max_width);
        if (cfg.mode == mode::count) {
          const std::uint64_t count = m.at(0, 0);
          if (cfg.format == fmt::structured) {
            nlohmann::ordered_json doc;
            doc["count"] = count;
            out << doc.dump() << "\n";
          } else {
            out << count << "\n";
          }
        } else {
          cli_detail::emit_matrix(out, cfg, m, to_string(e));
        }
        return 0;
      }

      case mode::span_summary: {
        const quandle q = cli_detail::load(cfg.quandle_spec);
        const expr_ptr e = resolve_input(cfg.input);
        const coloring_span s = span_of(e, q, cfg.budget);
        const color_matrix m = decategorify(s);
        std::map<std::uint64_t, std::uint64_t> histogram;
        for (const auto& [rc, v] : m.entries()) ++histogram[v];
        if (cfg.format == fmt::structured) {
          nlohmann::ordered_json doc;
          doc["apex"] = s.apex_size();
          doc["m"] = s.bottom();
          doc["n"] = s.top();
          auto h = nlohmann::ordered_json::object();
          for (const auto& [card, cells] : histogram)
            h[std::to_string(card)] = cells;
          doc["histogram"] = std::move(h);
          out << doc.dump() << "\n";
        } else {
          out << to_string(e) << ": apex " << s.apex_size() << ", legs to "
              << q.size() << "^" << s.bottom() << " and " << q.size() << "^"
              << s.top() << "\n";
          out << "double-preimage cardinalities (value: cells):\n";
          for (const auto& [card, cells] : histogram)
            out << "  " << card << ": " << cells << "\n";
        }
        return 0;
      }

      case mode::cross_check: {
        const quandle q = cli_detail::load(cfg.quandle_spec);
        std::vector<expr_ptr> exprs;
        if (!cfg.input.empty()) {
          exprs.push_back(resolve_input(cfg.input));
        } else if (cfg.has_seed) {
          std::mt19937_64 rng(cfg.seed);
          exprgen_params params;
          if (cfg.max_width > 0) params.max_width = cfg.max_width;
          for (int i = 0; i < 50; ++i)
            exprs.push_back(sample_expression(rng, params));
        } else {
          throw arity_error("cross-check needs an expression or --seed");
        }
        std::size_t mismatches = 0;
        auto results = nlohmann::ordered_json::array();
        for (const auto& e : exprs) {
          const color_matrix via_matrices = evaluate(e, q, cfg.max_width);
          const color_matrix via_colorings =
              decategorify(span_of(e, q, cfg.budget));
          const bool match = via_matrices == via_colorings;
          if (!match) ++mismatches;
          if (cfg.format == fmt::structured) {
            nlohmann::ordered_json r;
            r["expr"] = to_string(e);
            r["match"] = match;
            if (!match) {
              r["evaluate"] = nlohmann::ordered_json::parse(
                  matrix_document(via_matrices));
              r["oracle"] = nlohmann::ordered_json::parse(
                  matrix_document(via_colorings));
            }
            results.push_back(std::move(r));
          } else {
            out << (match ? "MATCH    " : "MISMATCH ") << to_string(e) << "\n";
            if (!match) {
              cli_detail::print_matrix_human(out, via_matrices, "  evaluate");
              cli_detail::print_matrix_human(out, via_colorings, "  oracle");
            }
          }
        }
        if (cfg.format == fmt::structured) {
          nlohmann::ordered_json doc;
          doc["checked"] = exprs.size();
          doc["mismatches"] = mismatches;
          doc["results"] = std::move(results);
          out << doc.dump() << "\n";
        } else {
          out << exprs.size() << " checked, " << mismatches << " mismatches\n";
        }
        return mismatches == 0 ? 0 : 5;
      }
    }
    throw error("unreachable");
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const arity_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const quandle_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const limit_error& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qcol
