// Rank strata of two hand-picked pencils of linear forms.
//
// The 4x4 skew pencil has every 3-minor divisible by its Pfaffian, so the
// rank-2 stratum is the quadric hypersurface the Pfaffian cuts out.  The
// Beauville pencil squares that story: its determinant is the square of a
// rank-3 quadric and the matrix rank stays constant along it.

#include <iostream>

#include "tgr/catalog.hpp"
#include "tgr/detvar.hpp"

using namespace tgr;

int main() {
  const FieldSpec fs = FieldSpec::prime(kDefaultPrime);

  const LinearMatrix<Fp> sk = catalog_entry<Fp>("skew4(6)", fs).matrix;
  std::cout << "skew4(6), " << sk.rows << "x" << sk.cols << " in " << sk.nvars() << " vars\n";
  for (int r = 0; r <= 3; ++r) std::cout << "  codim of rank<=" << r << " stratum: " << stratum_codim(sk, r) << "\n";
  const CommonFactorReport<Fp> cf = common_factor_report(sk, 3);
  std::cout << "  3-minor gcd: " << cf.common.str() << " (quadric rank "
            << (cf.quadric_rank ? std::to_string(*cf.quadric_rank) : "-") << ")\n";

  const LinearMatrix<Fp> bv = catalog_entry<Fp>("beauville-counterexample", fs).matrix;
  const Polynomial<Fp> q = Polynomial<Fp>::variable(bv.ring, 0) * Polynomial<Fp>::variable(bv.ring, 3) -
                           Polynomial<Fp>::variable(bv.ring, 1) * Polynomial<Fp>::variable(bv.ring, 2);
  const Ring<Fp> sc = make_ring<Fp>(fs, 0);
  std::vector<Fp> e1(4, sc.zero()), e4(4, sc.zero());
  e1[0] = sc.one();
  e4[3] = sc.one();
  std::cout << "beauville ranks at two points of the quadric:";
  for (int r : constant_rank_probe(bv, q, {e1, e4})) std::cout << " " << r;
  std::cout << "\n";

  const KappaReport<Fp> k1 = kappa(catalog_entry<Fp>("X1", fs).matrix);
  const KappaReport<Fp> k2 = kappa(catalog_entry<Fp>("X2", fs).matrix);
  std::cout << "compression defects: X1 -> " << k1.kappa << ", X2 -> " << k2.kappa << "\n";
  return 0;
}
