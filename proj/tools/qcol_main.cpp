// qcol: quandle-coloring invariants of tangles, knots, and links.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcol/cli.hpp"

namespace {

void add_common(CLI::App* cmd, qcol::run_config& cfg, bool with_quandle) {
  if (with_quandle)
    cmd->add_option("--quandle", cfg.quandle_spec,
                    "dihedral:n or a quandle file path");
  std::map<std::string, qcol::run_config::format_kind> formats{
      {"human", qcol::run_config::format_kind::human},
      {"structured", qcol::run_config::format_kind::structured}};
  cmd->add_option("--format", cfg.format, "human|structured")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_option("--budget", cfg.budget,
                  "coloring search budget (relation checks)");
  cmd->add_option("--max-width", cfg.max_width,
                  "largest strand count the evaluator accepts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quandle-coloring invariants of tangles, knots, and links"};
  app.require_subcommand(1);

  qcol::run_config cfg;
  bool count_flag = false, span_flag = false;

  auto* eval = app.add_subcommand(
      "eval", "evaluate a tangle expression or catalog name to a matrix");
  add_common(eval, cfg, true);
  eval->add_option("input", cfg.input, "tangle expression or catalog name")
      ->required();
  eval->add_flag("--count", count_flag,
                 "print the coloring count (input must be a link)");
  eval->add_flag("--span-summary", span_flag,
                 "print apex size and double-preimage histogram");

  auto* relations =
      app.add_subcommand("relations", "check the defining tangle relations");
  add_common(relations, cfg, true);

  auto* braid = app.add_subcommand(
      "braid", "evaluate a braid word like \"s1 s2 -s1\"");
  add_common(braid, cfg, true);
  braid->add_option("word", cfg.input, "braid word")->required();
  braid->add_option("--strands", cfg.strands, "strand count")->required();

  auto* check = app.add_subcommand(
      "check-quandle", "verify the axioms of a quandle file");
  add_common(check, cfg, true);

  auto* cross = app.add_subcommand(
      "cross-check",
      "compare matrix evaluation against the arc-coloring oracle");
  add_common(cross, cfg, true);
  cross->add_option("input", cfg.input, "tangle expression or catalog name");
  cross->add_option("--seed", cfg.seed, "run a 50-expression generated suite")
      ->trigger_on_parse()
      ->each([&cfg](const std::string&) { cfg.has_seed = true; });

  auto* pres = app.add_subcommand(
      "presentation", "generators and relations of a tangle diagram");
  add_common(pres, cfg, false);
  pres->add_option("input", cfg.input, "tangle expression or catalog name")
      ->required();

  auto* cat = app.add_subcommand("catalog", "list the built-in link words");
  add_common(cat, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  using mode = qcol::run_config::mode_kind;
  if (eval->parsed()) {
    if (count_flag && span_flag) {
      std::cerr << "error: --count and --span-summary are exclusive\n";
      return 1;
    }
    cfg.mode = count_flag ? mode::count
                          : (span_flag ? mode::span_summary : mode::matrix);
  } else if (relations->parsed()) {
    cfg.mode = mode::relations;
  } else if (braid->parsed()) {
    cfg.mode = mode::braid;
  } else if (check->parsed()) {
    cfg.mode = mode::check_quandle;
  } else if (cross->parsed()) {
    cfg.mode = mode::cross_check;
  } else if (pres->parsed()) {
    cfg.mode = mode::presentation;
  } else if (cat->parsed()) {
    cfg.mode = mode::catalog;
  }

  return qcol::run(cfg, std::cout, std::cerr);
}
