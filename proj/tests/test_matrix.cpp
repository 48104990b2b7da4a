#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qcol/exprgen.hpp"
#include "qcol/matrix.hpp"

#include "groups.hpp"
#include "oracle.hpp"

using namespace qcol;

namespace {

color_matrix from_rows(int d, int m, int n,
                       const std::vector<std::string>& rows) {
  color_matrix mat(d, m, n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      if (rows[r][c] == '1') mat.set(r, c, 1);
  return mat;
}

// The D(Z3) generator matrices, entry for entry.
const std::vector<std::string> xplus_golden = {
    "100000000", "000000100", "000100000",
    "000000010", "000010000", "010000000",
    "000001000", "001000000", "000000001"};

const std::vector<std::string> xminus_golden = {
    "100000000", "000001000", "000000010",
    "001000000", "000010000", "000000100",
    "010000000", "000100000", "000000001"};

}  // namespace

TEST_CASE("encoding is leftmost-most-significant") {
  const encoding enc(3, 2);
  REQUIRE(enc.count() == 9);
  REQUIRE(enc.index({0, 0}) == 0);
  REQUIRE(enc.index({1, 2}) == 5);
  REQUIRE(enc.index({2, 0}) == 6);
  REQUIRE(enc.tuple(7) == std::vector<int>{2, 1});
  for (std::uint64_t i = 0; i < 9; ++i) REQUIRE(enc.index(enc.tuple(i)) == i);

  const encoding empty(5, 0);
  REQUIRE(empty.count() == 1);
  REQUIRE(empty.index({}) == 0);
  REQUIRE(empty.tuple(0).empty());

  REQUIRE_THROWS_AS(enc.index({0}), arity_error);
  REQUIRE_THROWS_AS(enc.index({0, 9}), quandle_error);
  REQUIRE_THROWS_AS(enc.tuple(9), arity_error);
}

TEST_CASE("checked arithmetic") {
  REQUIRE(checked_pow(3, 4) == 81);
  REQUIRE(checked_pow(7, 0) == 1);
  REQUIRE_THROWS_AS(checked_pow(2, 64), limit_error);
  REQUIRE_THROWS_AS(checked_mul(std::uint64_t(1) << 40, std::uint64_t(1) << 40),
                    limit_error);
  REQUIRE_THROWS_AS(checked_add(~std::uint64_t(0), 1), limit_error);
}

TEST_CASE("generator matrices over D(Z3) reproduce the printed figures") {
  const quandle d3 = quandle::dihedral(3);

  const color_matrix xplus = generator_matrix(gen_kind::xp, 2, d3);
  REQUIRE(xplus == from_rows(3, 2, 2, xplus_golden));

  const color_matrix xminus = generator_matrix(gen_kind::xm, 2, d3);
  REQUIRE(xminus == from_rows(3, 2, 2, xminus_golden));

  const color_matrix cupm = generator_matrix(gen_kind::cup, 2, d3);
  REQUIRE(cupm.rows() == 9);
  REQUIRE(cupm.cols() == 1);
  REQUIRE(cupm == from_rows(3, 2, 0, {"1", "0", "0", "0", "1", "0", "0", "0",
                                      "1"}));

  const color_matrix capm = generator_matrix(gen_kind::cap, 2, d3);
  REQUIRE(capm.rows() == 1);
  REQUIRE(capm.cols() == 9);
  REQUIRE(capm == from_rows(3, 0, 2, {"100010001"}));
}

TEST_CASE("crossing matrices are permutation matrices") {
  for (int n : {2, 3, 5}) {
    const quandle q = quandle::dihedral(n);
    for (gen_kind k : {gen_kind::xp, gen_kind::xm}) {
      const color_matrix m = generator_matrix(k, 2, q);
      std::vector<int> row_sum(m.rows(), 0), col_sum(m.cols(), 0);
      for (const auto& [rc, v] : m.entries()) {
        REQUIRE(v == 1);
        ++row_sum[rc.first];
        ++col_sum[rc.second];
      }
      for (int s : row_sum) REQUIRE(s == 1);
      for (int s : col_sum) REQUIRE(s == 1);
    }
  }
}

TEST_CASE("identity and empty-tangle matrices") {
  const quandle d5 = quandle::dihedral(5);
  const color_matrix id0 = generator_matrix(gen_kind::id, 0, d5);
  REQUIRE(id0.rows() == 1);
  REQUIRE(id0.cols() == 1);
  REQUIRE(id0.at(0, 0) == 1);

  const color_matrix id2 = generator_matrix(gen_kind::id, 2, d5);
  REQUIRE(id2 == color_matrix::identity(5, 2));
}

TEST_CASE("generator matrices reject non-involutory quandles") {
  const quandle s3 = quandle::conjugation(qcol::testing::symmetric3());
  REQUIRE_THROWS_AS(generator_matrix(gen_kind::xp, 2, s3), quandle_error);
  REQUIRE_THROWS_AS(evaluate(parse_tangle("xp"), s3), quandle_error);
}

TEST_CASE("matrix multiplication") {
  const quandle d3 = quandle::dihedral(3);
  const color_matrix xplus = generator_matrix(gen_kind::xp, 2, d3);
  const color_matrix xminus = generator_matrix(gen_kind::xm, 2, d3);

  SECTION("T2 as a product") {
    REQUIRE(matrix_multiply(xplus, xminus) == color_matrix::identity(3, 2));
    REQUIRE(matrix_multiply(xminus, xplus) == color_matrix::identity(3, 2));
  }

  SECTION("identity is neutral") {
    REQUIRE(matrix_multiply(xplus, color_matrix::identity(3, 2)) == xplus);
    REQUIRE(matrix_multiply(color_matrix::identity(3, 2), xplus) == xplus);
  }

  SECTION("shape and size mismatches") {
    const color_matrix cupm = generator_matrix(gen_kind::cup, 2, d3);
    REQUIRE_THROWS_AS(matrix_multiply(cupm, cupm), arity_error);
    const quandle d2 = quandle::dihedral(2);
    REQUIRE_THROWS_AS(
        matrix_multiply(xplus, generator_matrix(gen_kind::xp, 2, d2)),
        quandle_error);
  }

  SECTION("counts accumulate exactly") {
    // cap ; cup as matrices: 1x1 [3]
    const color_matrix capm = generator_matrix(gen_kind::cap, 2, d3);
    const color_matrix cupm = generator_matrix(gen_kind::cup, 2, d3);
    const color_matrix circle = matrix_multiply(capm, cupm);
    REQUIRE(circle.at(0, 0) == 3);
  }

  SECTION("overflow is an error, not a wraparound") {
    color_matrix a(7, 0, 0), b(7, 0, 0);
    a.set(0, 0, std::uint64_t(1) << 40);
    b.set(0, 0, std::uint64_t(1) << 40);
    REQUIRE_THROWS_AS(matrix_multiply(a, b), limit_error);
  }
}

TEST_CASE("kronecker product") {
  const quandle d3 = quandle::dihedral(3);
  const color_matrix cupm = generator_matrix(gen_kind::cup, 2, d3);
  const color_matrix xplus = generator_matrix(gen_kind::xp, 2, d3);

  SECTION("unit") {
    const color_matrix unit = generator_matrix(gen_kind::id, 0, d3);
    REQUIRE(kronecker(xplus, unit) == xplus);
    REQUIRE(kronecker(unit, xplus) == xplus);
  }

  SECTION("cup x cup hits rows {0,4,8}*9 + {0,4,8}") {
    const color_matrix cc = kronecker(cupm, cupm);
    REQUIRE(cc.rows() == 81);
    REQUIRE(cc.cols() == 1);
    REQUIRE(cc.entries().size() == 9);
    for (int i : {0, 4, 8})
      for (int j : {0, 4, 8}) REQUIRE(cc.at(9 * i + j, 0) == 1);
  }

  SECTION("respects the tuple encoding") {
    std::mt19937_64 rng(5);
    const color_matrix k = kronecker(xplus, xplus);
    const encoding enc2(3, 2), enc4(3, 4);
    for (int trial = 0; trial < 50; ++trial) {
      const auto mu1 = enc2.tuple(rng() % 9), mu2 = enc2.tuple(rng() % 9);
      const auto nu1 = enc2.tuple(rng() % 9), nu2 = enc2.tuple(rng() % 9);
      auto mu = mu1, nu = nu1;
      mu.insert(mu.end(), mu2.begin(), mu2.end());
      nu.insert(nu.end(), nu2.begin(), nu2.end());
      REQUIRE(k.at(enc4.index(mu), enc4.index(nu)) ==
              xplus.at(enc2.index(mu1), enc2.index(nu1)) *
                  xplus.at(enc2.index(mu2), enc2.index(nu2)));
    }
  }
}

TEST_CASE("evaluate assembles words") {
  const quandle d3 = quandle::dihedral(3);

  SECTION("links give 1x1 counts") {
    REQUIRE(evaluate(find_catalog("unknot"), d3).at(0, 0) == 3);
    REQUIRE(evaluate(find_catalog("trefoil"), d3).at(0, 0) == 9);
    REQUIRE(evaluate(find_catalog("figure8"), d3).at(0, 0) == 3);
    REQUIRE(evaluate(find_catalog("hopf"), d3).at(0, 0) == 3);
    const quandle d5 = quandle::dihedral(5);
    REQUIRE(evaluate(find_catalog("figure8"), d5).at(0, 0) == 25);
    REQUIRE(evaluate(find_catalog("trefoil"), d5).at(0, 0) == 5);
  }

  SECTION("T0 zig-zags evaluate to the single-strand identity") {
    for (int n : {3, 4, 5}) {
      const quandle q = quandle::dihedral(n);
      REQUIRE(evaluate(parse_tangle("(id(1) * cap) ; (cup * id(1))"), q) ==
              color_matrix::identity(n, 1));
      REQUIRE(evaluate(parse_tangle("(cap * id(1)) ; (id(1) * cup)"), q) ==
              color_matrix::identity(n, 1));
    }
  }

  SECTION("width guard") {
    REQUIRE_THROWS_AS(evaluate(id(40), d3), limit_error);
    REQUIRE_NOTHROW(evaluate(id(4), d3, 4));
    REQUIRE_THROWS_AS(evaluate(beside(id(3), id(2)), d3, 4), limit_error);
  }
}

TEST_CASE("evaluate agrees with the coloring oracle on links") {
  const quandle d3 = quandle::dihedral(3);
  std::mt19937_64 rng(20240812);
  for (int i = 0; i < 40; ++i) {
    const expr_ptr e = sample_expression(rng);
    const arc_diagram d = compile_diagram(e);
    if (e->bottom() != 0 || e->top() != 0 || d.arc_count > 12) continue;
    REQUIRE(evaluate(e, d3).at(0, 0) ==
            qcol::testing::brute_force_colorings(d, d3).size());
  }
}

TEST_CASE("the defining relations hold for involutory quandles") {
  for (int n = 1; n <= 7; ++n) {
    const relation_report rep = verify_relations(quandle::dihedral(n));
    CAPTURE(n);
    REQUIRE(rep.checks.size() == 9);
    REQUIRE(rep.all_pass());
  }
  const quandle klein = quandle::conjugation(qcol::testing::klein_four());
  REQUIRE(verify_relations(klein).all_pass());
}

TEST_CASE("a Q3 violation shows up in T3 and nowhere else") {
  // involutions fixing their row index, but not self-distributive
  const std::vector<int> right = {0, 2, 1, 3,   // b=0: swap 1,2
                                  0, 1, 3, 2,   // b=1: swap 2,3
                                  0, 1, 2, 3,   // b=2
                                  0, 1, 2, 3};  // b=3
  const quandle broken =
      quandle::from_tables_unchecked(4, right, std::nullopt, "broken");
  const axiom_report rep = verify_axioms(broken);
  REQUIRE(rep.q1_holds);
  REQUIRE(rep.q2_holds);
  REQUIRE_FALSE(rep.q3_holds);
  REQUIRE(rep.involutory);

  const relation_report rel = verify_relations(broken);
  REQUIRE_FALSE(rel.all_pass());
  for (const auto& chk : rel.checks) {
    if (chk.name == "T3")
      REQUIRE_FALSE(chk.equal);
    else
      REQUIRE(chk.equal);
  }
}

TEST_CASE("braid generators") {
  const quandle d3 = quandle::dihedral(3);

  SECTION("sigma_1 on two strands is the crossing matrix") {
    REQUIRE(braid_generator(1, 2, +1, d3) ==
            generator_matrix(gen_kind::xp, 2, d3));
    REQUIRE(braid_generator(1, 2, -1, d3) ==
            generator_matrix(gen_kind::xm, 2, d3));
  }

  SECTION("inverses cancel") {
    for (int n = 2; n <= 4; ++n)
      for (int i = 1; i < n; ++i) {
        const color_matrix p =
            matrix_multiply(braid_generator(i, n, +1, d3),
                            braid_generator(i, n, -1, d3));
        REQUIRE(p == color_matrix::identity(3, n));
      }
  }

  SECTION("braid relation in B3") {
    const color_matrix lhs = braid_word({1, 2, 1}, 3, d3);
    const color_matrix rhs = braid_word({2, 1, 2}, 3, d3);
    REQUIRE(lhs == rhs);
  }

  SECTION("far generators commute in B4") {
    REQUIRE(braid_word({1, 3}, 4, d3) == braid_word({3, 1}, 4, d3));
  }

  SECTION("index range") {
    REQUIRE_THROWS_AS(braid_generator(0, 3, +1, d3), arity_error);
    REQUIRE_THROWS_AS(braid_generator(3, 3, +1, d3), arity_error);
    REQUIRE_THROWS_AS(braid_word({5}, 3, d3), arity_error);
  }
}

TEST_CASE("matrix documents are stable") {
  const quandle d3 = quandle::dihedral(3);
  const color_matrix cupm = generator_matrix(gen_kind::cup, 2, d3);
  const std::string doc = matrix_document(cupm);
  REQUIRE(doc ==
          R"({"d":3,"m":2,"n":0,"rows":9,"cols":1,)"
          R"("entries":[[0,0,1],[4,0,1],[8,0,1]]})");
  REQUIRE(matrix_document(cupm) == doc);

  const color_matrix empty(3, 0, 0);
  REQUIRE(matrix_document(empty) ==
          R"({"d":3,"m":0,"n":0,"rows":1,"cols":1,"entries":[]})");
}
