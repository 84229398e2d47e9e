#include <catch2/catch_amalgamated.hpp>
#include <vector>

#include "tgr/catalog.hpp"
#include "tgr/detvar.hpp"

using namespace tgr;

namespace {

const FieldSpec kQQ = FieldSpec::rationals();

template <class F>
Polynomial<F> monic(const Polynomial<F>& p) {
  return p.scaled(p.leading(MonomialOrder::grevlex()).c.inv());
}

// a x b matrix with one fresh variable per entry
LinearMatrix<Rat> generic_matrix(int a, int b) {
  const Ring<Rat> r(a * b);
  LinearMatrix<Rat> e(r, a, b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.at(i, j) = Polynomial<Rat>::variable(r, i * b + j);
  return e;
}

Polynomial<Rat> var(const Ring<Rat>& r, int i) { return Polynomial<Rat>::variable(r, i); }

}  // namespace

TEST_CASE("minor enumeration fixtures") {
  const LinearMatrix<Rat> x2 = cat::x2_matrix<Rat>(kQQ);
  const std::vector<Polynomial<Rat>> m2 = minors(x2, 2);
  REQUIRE(m2.size() == 1);
  const Ring<Rat> r4(4);
  const Polynomial<Rat> d = var(r4, 0) * var(r4, 3) - var(r4, 1) * var(r4, 2);
  REQUIRE(m2.front() == d);

  const LinearMatrix<Rat> mm2 = catalog_entry<Rat>("mm(2,2,2)", kQQ).matrix;
  const std::vector<Polynomial<Rat>> m4 = minors(mm2, 4);
  REQUIRE(m4.size() == 1);
  REQUIRE(m4.front() == d * d);

  REQUIRE(minors(x2, 3).empty());
  REQUIRE(minors(LinearMatrix<Rat>(r4, 2, 2), 1).empty());
  REQUIRE_THROWS_AS(minors(x2, 0), InputError);
  REQUIRE(minors(generic_matrix(3, 3), 2).size() == 9);

  const LinearMatrix<Rat> sk = catalog_entry<Rat>("skew3", kQQ).matrix;
  REQUIRE(minors(sk, 3).empty());
  REQUIRE(minors(sk, 2).size() == 9);
}

TEST_CASE("bounded rank decisions") {
  const LinearMatrix<Rat> sk = catalog_entry<Rat>("skew3", kQQ).matrix;
  REQUIRE(bounded_rank(sk, 2));
  REQUIRE_FALSE(bounded_rank(sk, 1));

  const LinearMatrix<Rat> bv = catalog_entry<Rat>("beauville-counterexample", kQQ).matrix;
  REQUIRE(bounded_rank(bv, 4));
  REQUIRE_FALSE(bounded_rank(bv, 3));

  const LinearMatrix<Rat> b3 = catalog_entry<Rat>("bounded3-fixture", kQQ).matrix;
  REQUIRE(bounded_rank(b3, 3));
  REQUIRE_FALSE(bounded_rank(b3, 2));

  const LinearMatrix<Rat> mm2 = catalog_entry<Rat>("mm(2,2,2)", kQQ).matrix;
  REQUIRE(bounded_rank(mm2, 4));
  REQUIRE_FALSE(bounded_rank(mm2, 3));
}

TEST_CASE("rank strata of generic matrices") {
  for (const auto& [a, b] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
    const LinearMatrix<Rat> e = generic_matrix(a, b);
    for (int r = 0; r < std::min(a, b); ++r) REQUIRE(stratum_codim(e, r) == (a - r) * (b - r));
    REQUIRE(stratum_codim(e, std::min(a, b)) == 0);
  }
  // same over the default prime field
  const Ring<Fp> rp(6, kDefaultPrime);
  LinearMatrix<Fp> ep(rp, 2, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) ep.at(i, j) = Polynomial<Fp>::variable(rp, i * 3 + j);
  REQUIRE(stratum_codim(ep, 1) == 2);
}

TEST_CASE("rank strata of block pencils") {
  const LinearMatrix<Rat> mm2 = catalog_entry<Rat>("mm(2,2,2)", kQQ).matrix;
  REQUIRE(stratum_codim(mm2, 3) == 1);
  REQUIRE(stratum_codim(mm2, 2) == 1);
  REQUIRE(stratum_codim(mm2, 1) == 4);
  REQUIRE(stratum_codim(mm2, 0) == 4);
  REQUIRE(stratum_codim(mm2, 4) == 0);

  const LinearMatrix<Rat> mm233 = catalog_entry<Rat>("mm(2,3,3)", kQQ).matrix;
  const int expected[] = {6, 6, 6, 2, 2, 2, 0};
  for (int r = 0; r <= 6; ++r) REQUIRE(stratum_codim(mm233, r) == expected[r]);

  const LinearMatrix<Rat> g7 = catalog_entry<Rat>("gr4-counterexample(7)", kQQ).matrix;
  REQUIRE(stratum_codim(g7, 1) == 4);
  REQUIRE(stratum_codim(g7, 3) == 1);
  REQUIRE(stratum_codim(g7, 4) == 1);

  // span smaller than the ambient variable count
  const Ring<Rat> r6(6);
  LinearMatrix<Rat> e(r6, 2, 2);
  e.at(0, 0) = var(r6, 0) + var(r6, 1);
  e.at(1, 1) = var(r6, 0) + var(r6, 1);
  e.at(0, 1) = var(r6, 2);
  e.at(1, 0) = var(r6, 2);
  REQUIRE(stratum_codim(e, 1) == 1);
  REQUIRE(stratum_codim(e, 0) == 2);

  REQUIRE_THROWS_AS(stratum_codim(e, -1), InputError);
}

TEST_CASE("kappa measures contraction defects") {
  const Ring<Rat> r3(3);
  LinearMatrix<Rat> e(r3, 2, 2);
  e.at(0, 1) = var(r3, 0);
  e.at(1, 0) = var(r3, 1);
  e.at(1, 1) = var(r3, 2);
  const KappaReport<Rat> k1 = kappa(e);
  REQUIRE(k1.kappa == 1);
  REQUIRE(k1.col_side == 1);
  REQUIRE(k1.row_side == 1);
  REQUIRE_FALSE(k1.u.empty());

  const KappaReport<Rat> kx1 = kappa(cat::x1_matrix<Rat>(kQQ));
  REQUIRE(kx1.kappa == 0);
  REQUIRE_FALSE(kx1.u.empty());

  const Ring<Rat> r2(2);
  LinearMatrix<Rat> zr(r2, 2, 2);
  zr.at(1, 0) = var(r2, 0);
  zr.at(1, 1) = var(r2, 1);
  const KappaReport<Rat> kz = kappa(zr);
  REQUIRE(kz.col_side == 2);
  REQUIRE(kz.row_side == 1);
  REQUIRE(kz.kappa == 2);

  const KappaReport<Rat> kzero = kappa(LinearMatrix<Rat>(r2, 2, 3));
  REQUIRE(kzero.col_side == 3);
  REQUIRE(kzero.row_side == 2);
  REQUIRE(kzero.kappa == 3);

  const KappaReport<Rat> ksk = kappa(catalog_entry<Rat>("skew3", kQQ).matrix);
  REQUIRE(ksk.kappa == 1);
  REQUIRE(ksk.col_side == 1);
  REQUIRE(ksk.row_side == 1);
}

TEST_CASE("one-genericity") {
  REQUIRE(is_e1_generic(cat::x1_matrix<Rat>(kQQ)));
  REQUIRE(is_e1_generic(cat::x2_matrix<Rat>(kQQ)));
  REQUIRE_FALSE(is_e1_generic(catalog_entry<Rat>("beauville-counterexample", kQQ).matrix));
  REQUIRE_FALSE(is_e1_generic(catalog_entry<Rat>("skew3", kQQ).matrix));

  const Ring<Rat> r3(3);
  LinearMatrix<Rat> e(r3, 2, 2);
  e.at(0, 1) = var(r3, 0);
  e.at(1, 0) = var(r3, 1);
  e.at(1, 1) = var(r3, 2);
  REQUIRE_FALSE(is_e1_generic(e));

  REQUIRE(is_e1_generic(generic_matrix(2, 3)));
  REQUIRE(is_e1_generic(generic_matrix(3, 3)));

  // Hankel: u^T H w is the convolution u * w, which never vanishes for
  // nonzero factors.
  const Ring<Rat> r5(5);
  const LinearMatrix<Rat> hankel = cat::from_rows(r5, 3, 3, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
  REQUIRE(is_e1_generic(hankel));
}

TEST_CASE("eisenbud codimension bound on one-generic spans") {
  const LinearMatrix<Rat> g33 = generic_matrix(3, 3);
  for (int k = 0; k < 3; ++k) REQUIRE(stratum_codim(g33, k) >= 3 + 3 - 2 * k - 1);

  const Ring<Rat> r5(5);
  const LinearMatrix<Rat> hankel = cat::from_rows(r5, 3, 3, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
  REQUIRE(stratum_codim(hankel, 2) == 1);
  REQUIRE(stratum_codim(hankel, 1) == 3);
  REQUIRE(stratum_codim(hankel, 0) == 5);
  for (int k = 0; k < 3; ++k) REQUIRE(stratum_codim(hankel, k) >= 3 + 3 - 2 * k - 1);
}

TEST_CASE("compression space detection") {
  const Ring<Rat> r3(3);
  LinearMatrix<Rat> e(r3, 2, 2);
  e.at(0, 0) = var(r3, 0);
  e.at(0, 1) = var(r3, 1);
  e.at(1, 0) = var(r3, 2);
  std::pair<std::vector<int>, std::vector<int>> wit;
  REQUIRE(is_compression_space(e, 1, 1, kDefaultChartBudget, kDefaultSPairBudget, &wit));
  REQUIRE(wit.first == std::vector<int>{0});
  REQUIRE(wit.second == std::vector<int>{1});
  REQUIRE_FALSE(is_compression_space(e, 0, 1));
  REQUIRE_FALSE(is_compression_space(e, 1, 0));
  REQUIRE(is_compression_space(e, 2, 0));
  REQUIRE(is_compression_space(e, 0, 2));
  REQUIRE_THROWS_AS(is_compression_space(e, 3, 0), InputError);

  // all-zero span compresses to nothing at all
  REQUIRE(is_compression_space(LinearMatrix<Rat>(r3, 2, 2), 0, 0));
  REQUIRE_FALSE(is_compression_space(e, 0, 0));

  const LinearMatrix<Rat> sk6 = catalog_entry<Rat>("skew4(6)", kQQ).matrix;
  for (int p = 0; p <= 3; ++p) REQUIRE_FALSE(is_compression_space(sk6, p, 3 - p));

  // bounded rank holds but no subspace pair works: needs the chart algebra
  const LinearMatrix<Rat> sk = catalog_entry<Rat>("skew3", kQQ).matrix;
  REQUIRE(bounded_rank(sk, 2));
  REQUIRE_FALSE(is_compression_space(sk, 1, 1));

  const LinearMatrix<Rat> mm2 = catalog_entry<Rat>("mm(2,2,2)", kQQ).matrix;
  std::pair<std::vector<int>, std::vector<int>> wit2;
  REQUIRE(is_compression_space(mm2, 2, 2, kDefaultChartBudget, kDefaultSPairBudget, &wit2));
  REQUIRE(wit2.first == std::vector<int>{0, 1});
  REQUIRE_FALSE(is_compression_space(mm2, 2, 0));
}

TEST_CASE("common factors of minors") {
  const LinearMatrix<Rat> mm2 = catalog_entry<Rat>("mm(2,2,2)", kQQ).matrix;
  const CommonFactorReport<Rat> rep3 = common_factor_report(mm2, 3);
  const Ring<Rat> r4(4);
  const Polynomial<Rat> d = var(r4, 0) * var(r4, 3) - var(r4, 1) * var(r4, 2);
  REQUIRE(rep3.common == monic(d));
  REQUIRE(rep3.quadric_rank == 4);

  const LinearMatrix<Rat> sk6 = catalog_entry<Rat>("skew4(6)", kQQ).matrix;
  const CommonFactorReport<Rat> reppf = common_factor_report(sk6, 3);
  const Ring<Rat> r6(6);
  const Polynomial<Rat> pf =
      var(r6, 0) * var(r6, 5) - var(r6, 1) * var(r6, 4) + var(r6, 2) * var(r6, 3);
  REQUIRE(reppf.common == monic(pf));
  REQUIRE(reppf.common == pf);  // already monic under the working order
  REQUIRE(reppf.quadric_rank == 6);

  const CommonFactorReport<Rat> repx1 = common_factor_report(cat::x1_matrix<Rat>(kQQ), 2);
  const Ring<Rat> r3(3);
  REQUIRE(repx1.common == monic(var(r3, 0) * var(r3, 2) - var(r3, 1) * var(r3, 1)));
  REQUIRE(repx1.quadric_rank == 3);

  REQUIRE_THROWS_AS(common_factor_report(LinearMatrix<Rat>(r3, 2, 2), 1), InputError);
}

TEST_CASE("constant rank probe") {
  const LinearMatrix<Rat> bv = catalog_entry<Rat>("beauville-counterexample", kQQ).matrix;
  const Ring<Rat> r4(4);
  const Polynomial<Rat> s = var(r4, 0) * var(r4, 3) - var(r4, 1) * var(r4, 2);
  const std::vector<std::vector<Rat>> pts = {{Rat(1), Rat(), Rat(), Rat()}, {Rat(), Rat(), Rat(), Rat(1)}};
  REQUIRE(constant_rank_probe(bv, s, pts) == std::vector<int>{3, 2});

  REQUIRE_THROWS_AS(constant_rank_probe(bv, s, {{Rat(1), Rat(), Rat(), Rat(1)}}), InputError);
  REQUIRE_THROWS_AS(constant_rank_probe(bv, s, {{Rat(1), Rat()}}), InputError);
}
