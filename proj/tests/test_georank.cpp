#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <vector>

#include "tgr/catalog.hpp"
#include "tgr/georank.hpp"

using namespace tgr;

namespace {

const FieldSpec kQQ = FieldSpec::rationals();
const FieldSpec kFp = FieldSpec::prime(kDefaultPrime);

// rank-one tensor from coordinate indices
template <class F>
Tensor<F> unit_tensor(const FieldSpec& fs, std::vector<int> dims, std::vector<int> at) {
  Tensor<F> t(fs, std::move(dims));
  t.at(at) = t.from_long(1);
  return t;
}

template <class F>
Tensor<F> random_tensor(const FieldSpec& fs, std::vector<int> dims, std::mt19937_64& rng) {
  Tensor<F> t(fs, std::move(dims));
  std::uniform_int_distribution<long> coef(-20, 20);
  for (long off = 0; off < t.size(); ++off) t.flat(off) = t.from_long(coef(rng));
  return t;
}

template <class F>
Tensor<F> permute_axes(const Tensor<F>& t, const std::vector<int>& perm) {
  std::vector<int> nd(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) nd[k] = t.dims()[perm[k]];
  Tensor<F> out(t.field(), nd);
  const int n = t.order();
  std::vector<int> idx(n), pidx(n);
  for (long off = 0; off < t.size(); ++off) {
    long o = off;
    for (int k = n - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(o % t.dims()[k]);
      o /= t.dims()[k];
    }
    for (int k = 0; k < n; ++k) pidx[k] = idx[perm[k]];
    out.at(pidx) = t.flat(off);
  }
  return out;
}

template <class F>
Tensor<F> axis_slice(const Tensor<F>& t, int axis, int pick) {
  Tensor<F> out(t.field(), t.dims());
  std::vector<int> idx(3);
  for (long off = 0; off < t.size(); ++off) {
    long o = off;
    for (int k = 2; k >= 0; --k) {
      idx[k] = static_cast<int>(o % t.dims()[k]);
      o /= t.dims()[k];
    }
    if (idx[axis] == pick) out.flat(off) = t.flat(off);
  }
  return out;
}

}  // namespace

TEST_CASE("geometric rank of catalog tensors") {
  const Tensor<Fp> one = unit_tensor<Fp>(kFp, {2, 2, 2}, {0, 0, 0});
  REQUIRE(gr(one) == 1);
  REQUIRE(gr(Tensor<Fp>(kFp, {2, 2, 2})) == 0);

  const GRReport sk = gr_alternative(cat::skew3_tensor<Fp>(kFp));
  REQUIRE(sk.value == 2);
  REQUIRE(sk.direct_codim == 2);
  for (int axis = 0; axis < 3; ++axis) REQUIRE(sk.achieving_i[axis] == 2);
  REQUIRE(sk.per_axis[0] ==
          std::vector<std::pair<int, long>>{{0, 3}, {1, 4}, {2, 2}});

  const GRReport sk4 = gr_alternative(cat::skew4_tensor<Fp>(kFp, 6));
  REQUIRE(sk4.value == 3);
  REQUIRE(sk4.achieving_i[0] == 2);

  REQUIRE(gr(cat::compression_w_tensor<Fp>(kFp, 3)) == 3);
  REQUIRE(gr(tensor_from_pencil(cat::ex556_matrix<Fp>(kFp))) == 4);
  REQUIRE(gr(tensor_from_pencil(cat::gr4_matrix<Fp>(kFp, 7))) == 4);
  REQUIRE(gr(tensor_from_pencil(cat::bounded3_matrix<Fp>(kFp))) == 3);
}

TEST_CASE("geometric rank of matrix multiplication tensors") {
  const int shapes[7][3] = {{1, 1, 1}, {1, 2, 2}, {1, 2, 3}, {2, 2, 2},
                            {2, 2, 3}, {2, 2, 4}, {2, 3, 3}};
  for (const auto& s : shapes) {
    const long want = cat::mm_gr_value(s[0], s[1], s[2]);
    REQUIRE(gr(cat::mm_tensor<Fp>(kFp, s[0], s[1], s[2])) == want);
  }
  REQUIRE(gr(cat::mm_tensor<Rat>(kQQ, 2, 2, 2)) == 3);
}

TEST_CASE("order-2 geometric rank is matrix rank") {
  Tensor<Rat> m(kQQ, {2, 3});
  m.at({0, 0}) = m.from_long(1);
  m.at({1, 1}) = m.from_long(2);
  REQUIRE(gr(m) == 2);
  REQUIRE(gr_direct(m) == 2);
}

TEST_CASE("n-part geometric rank strategies agree") {
  Tensor<Fp> diag(kFp, {2, 2, 2, 2});
  diag.at({0, 0, 0, 0}) = diag.from_long(1);
  diag.at({1, 1, 1, 1}) = diag.from_long(1);
  REQUIRE(gr_npart(diag, GRStrategy::direct) == 2);
  REQUIRE(gr_npart(diag, GRStrategy::recursive) == 2);

  const Tensor<Fp> one = unit_tensor<Fp>(kFp, {2, 2, 2, 2}, {0, 0, 0, 0});
  REQUIRE(gr_npart(one, GRStrategy::direct) == 1);
  REQUIRE(gr_npart(one, GRStrategy::recursive) == 1);

  // outer product of two invertible matrices has rank one across the split
  Tensor<Fp> mn(kFp, {2, 2, 2, 2});
  const long mv[2][2] = {{1, 2}, {3, 5}}, nv[2][2] = {{2, 1}, {1, 1}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) mn.at({i, j, k, l}) = mn.from_long(mv[i][j] * nv[k][l]);
  REQUIRE(gr_npart(mn, GRStrategy::direct) == 1);
  REQUIRE(gr_npart(mn, GRStrategy::recursive) == 1);

  std::mt19937_64 rng(7);
  const Tensor<Fp> t = random_tensor<Fp>(kFp, {2, 3, 2, 2}, rng);
  const long base = gr_npart(t, GRStrategy::direct);
  REQUIRE(gr_npart(permute_axes(t, {2, 0, 3, 1}), GRStrategy::direct) == base);
  REQUIRE(gr_npart(t, GRStrategy::recursive) == base);

  REQUIRE(gr_npart(cat::skew3_tensor<Fp>(kFp), GRStrategy::recursive) == 2);
  REQUIRE_THROWS_AS(gr_npart(Tensor<Fp>(kFp, {2, 2}), GRStrategy::direct), InputError);
}

TEST_CASE("partition rank one detection") {
  const Tensor<Fp> one = unit_tensor<Fp>(kFp, {2, 2, 2, 2}, {0, 0, 0, 0});
  const auto split = partition_rank_one(one);
  REQUIRE(split.has_value());
  REQUIRE(split->left_axes == std::vector<int>{0});

  Tensor<Fp> diag(kFp, {2, 2, 2, 2});
  diag.at({0, 0, 0, 0}) = diag.from_long(1);
  diag.at({1, 1, 1, 1}) = diag.from_long(1);
  REQUIRE(!partition_rank_one(diag).has_value());

  // I_2 on the first two axes times a rank-one matrix on the last two
  Tensor<Fp> t(kFp, {2, 2, 2, 2});
  t.at({0, 0, 0, 0}) = t.from_long(1);
  t.at({1, 1, 0, 0}) = t.from_long(1);
  const auto s2 = partition_rank_one(t);
  REQUIRE(s2.has_value());
  REQUIRE(s2->left_axes == std::vector<int>{0, 1});
  // the two factors reconstruct the tensor entry by entry
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          REQUIRE(s2->left.vals[i * 2 + j] * s2->right.vals[k * 2 + l] == t.at({i, j, k, l}));

  REQUIRE(partition_rank_one(unit_tensor<Fp>(kFp, {2, 2, 2}, {1, 0, 1})).has_value());
  REQUIRE(!partition_rank_one(cat::skew3_tensor<Fp>(kFp)).has_value());
  REQUIRE_THROWS_AS(partition_rank_one(Tensor<Fp>(kFp, {3, 3})), InputError);
}

TEST_CASE("slice rank decisions") {
  const Tensor<Fp> zero(kFp, {2, 2, 2});
  const SRDecision<Fp> dz = decide_slice_rank_leq(zero, 0);
  REQUIRE(dz.yes);
  REQUIRE(dz.witness.has_value());
  REQUIRE(sr_witness_vanishes(zero, *dz.witness));

  const Tensor<Fp> one = unit_tensor<Fp>(kFp, {2, 2, 2}, {0, 0, 0});
  REQUIRE(!decide_slice_rank_leq(one, 0).yes);
  const SRDecision<Fp> d1 = decide_slice_rank_leq(one, 1);
  REQUIRE(d1.yes);
  REQUIRE(sr_witness_vanishes(one, *d1.witness));

  const Tensor<Fp> mm2 = cat::mm_tensor<Fp>(kFp, 2, 2, 2);
  REQUIRE(!decide_slice_rank_leq(mm2, 2).yes);
  REQUIRE(!decide_slice_rank_leq(mm2, 3).yes);
  REQUIRE(decide_slice_rank_leq(mm2, 4).yes);

  const Tensor<Fp> w3 = cat::compression_w_tensor<Fp>(kFp, 3);
  REQUIRE(!decide_slice_rank_leq(w3, 2).yes);
  const SRDecision<Fp> dw = decide_slice_rank_leq(w3, 3);
  REQUIRE(dw.yes);
  REQUIRE(sr_witness_vanishes(w3, *dw.witness));

  const Tensor<Fp> sk = cat::skew3_tensor<Fp>(kFp);
  REQUIRE(!decide_slice_rank_leq(sk, 2).yes);
  REQUIRE(decide_slice_rank_leq(sk, 3).yes);

  const Tensor<Fp> g47 = tensor_from_pencil(cat::gr4_matrix<Fp>(kFp, 7));
  REQUIRE(!decide_slice_rank_leq(g47, 4).yes);
  const SRDecision<Fp> d5 = decide_slice_rank_leq(g47, 5);
  REQUIRE(d5.yes);
  REQUIRE(d5.witness.has_value());
  REQUIRE(sr_witness_vanishes(g47, *d5.witness));
  int total = 0;
  for (int v : d5.witness->codims) total += v;
  REQUIRE(total <= 5);

  REQUIRE_THROWS_AS(decide_slice_rank_leq(one, -1), InputError);
  REQUIRE_THROWS_AS(decide_slice_rank_leq(Tensor<Fp>(kFp, {2, 2}), 1), InputError);
  SRWitness<Fp> bad;
  bad.dual_bases[0] = {{one.from_long(1)}};
  bad.dual_bases[1] = {{one.from_long(1), one.from_long(0)}};
  bad.dual_bases[2] = {{one.from_long(1), one.from_long(0)}};
  REQUIRE_THROWS_AS(sr_witness_vanishes(one, bad), InputError);
}

TEST_CASE("rank-3 classification") {
  const GR3Label<Fp> lw = classify_gr3(cat::compression_w_tensor<Fp>(kFp, 3));
  REQUIRE(lw.label == GR3Kind::slice_rank_le_3);
  REQUIRE(lw.gr_value == 3);
  REQUIRE(lw.sr.has_value());
  REQUIRE(lw.sr->yes);

  const GR3Label<Fp> lm = classify_gr3(cat::mm_tensor<Fp>(kFp, 2, 2, 2));
  REQUIRE(lm.label == GR3Kind::mm2_class);
  REQUIRE(!lm.bounded_axis.has_value());

  // the 4x4 skew pencil has nonzero determinant, but the transposed pencil
  // on the next axis is 4x6 and degenerates everywhere
  const GR3Label<Fp> ls = classify_gr3(cat::skew4_tensor<Fp>(kFp, 6));
  REQUIRE(ls.label == GR3Kind::bounded_rank_3);
  REQUIRE(ls.bounded_axis == 1);

  const GR3Label<Fp> lb = classify_gr3(tensor_from_pencil(cat::bounded3_matrix<Fp>(kFp)));
  REQUIRE(lb.label == GR3Kind::bounded_rank_3);
  REQUIRE(lb.bounded_axis == 0);

  const GR3Label<Fp> lsk = classify_gr3(cat::skew3_tensor<Fp>(kFp));
  REQUIRE(lsk.label == GR3Kind::slice_rank_le_3);
  REQUIRE(lsk.gr_value == 2);

  const GR3Label<Fp> lg = classify_gr3(tensor_from_pencil(cat::gr4_matrix<Fp>(kFp, 7)));
  REQUIRE(lg.label == GR3Kind::gr_exceeds_3);
  REQUIRE(lg.gr_value == 4);

  REQUIRE(std::string(gr3_kind_name(GR3Kind::bounded_rank_3)) == "bounded-rank-3");
  REQUIRE(std::string(gr3_kind_name(GR3Kind::mm2_class)) == "mm2-class");
}

TEST_CASE("decomposition search splits and refusals") {
  const Tensor<Fp> g47 = tensor_from_pencil(cat::gr4_matrix<Fp>(kFp, 7));
  const DecompositionCertificate<Fp> c47 = find_decomposition(g47);
  REQUIRE(c47.kind == DecompKind::split);
  REQUIRE(c47.total_gr == 4);
  REQUIRE(c47.parts.size() == 2);
  REQUIRE(c47.parts[0].role == "primitive-candidate");
  REQUIRE(c47.parts[0].gr == 2);
  REQUIRE(c47.parts[1].role == "compression");
  REQUIRE(c47.parts[1].gr == 2);
  REQUIRE(c47.parts[0].part + c47.parts[1].part == g47);

  const Tensor<Fp> e556 = tensor_from_pencil(cat::ex556_matrix<Fp>(kFp));
  const DecompositionCertificate<Fp> cp = find_decomposition(e556);
  REQUIRE(cp.kind == DecompKind::split);
  REQUIRE(cp.parts[0].gr == 3);
  REQUIRE(cp.parts[1].gr == 1);

  // a supplied hyperplane wins over the built-in coordinate scan, so each of
  // the two known splits is recovered on request
  Hyperplane<Fp> hc;
  hc.axis = 2;
  hc.phi.assign(6, e556.from_long(0));
  hc.phi[5] = e556.from_long(1);
  const DecompositionCertificate<Fp> cc = find_decomposition(e556, {hc});
  REQUIRE(cc.kind == DecompKind::split);
  REQUIRE(cc.used.at(0).axis == 2);
  for (const auto& p : cc.parts) {
    if (p.role == "compression")
      REQUIRE(p.part == axis_slice(e556, 2, 5));
    else
      REQUIRE(p.part == e556 - axis_slice(e556, 2, 5));
  }

  Hyperplane<Fp> hb;
  hb.axis = 1;
  hb.phi.assign(5, e556.from_long(0));
  hb.phi[4] = e556.from_long(1);
  const DecompositionCertificate<Fp> cb = find_decomposition(e556, {hb});
  REQUIRE(cb.used.at(0).axis == 1);
  for (const auto& p : cb.parts)
    if (p.role == "compression") REQUIRE(p.part == axis_slice(e556, 1, 4));

  const DecompositionCertificate<Fp> cs = find_decomposition(cat::skew3_tensor<Fp>(kFp));
  REQUIRE(cs.kind == DecompKind::none_found);
  REQUIRE(cs.parts.size() == 1);
  REQUIRE(cs.parts[0].role == "primitive-candidate");
  REQUIRE(cs.parts[0].gr == 2);

  REQUIRE(find_decomposition(cat::mm_tensor<Fp>(kFp, 2, 2, 2)).kind == DecompKind::none_found);

  // fully compressible: exhausted into rank-one slices
  const DecompositionCertificate<Fp> c122 = find_decomposition(cat::mm_tensor<Fp>(kFp, 1, 2, 2));
  REQUIRE(c122.kind == DecompKind::split);
  REQUIRE(c122.parts.size() == 1);
  REQUIRE(c122.parts[0].role == "compression");
  REQUIRE(c122.parts[0].gr == 2);

  REQUIRE_THROWS_AS(find_decomposition(unit_tensor<Fp>(kFp, {2, 2, 2}, {0, 0, 0})), InputError);
  Hyperplane<Fp> badh;
  badh.axis = 1;
  badh.phi.assign(3, e556.from_long(1));
  REQUIRE_THROWS_AS(find_decomposition(e556, {badh}), InputError);
}

TEST_CASE("multilinear bounds for unsplit rank-4 tensors") {
  const Tensor<Fp> sk = cat::skew3_tensor<Fp>(kFp);
  const Tensor<Fp> dbl = direct_sum(sk, sk);
  REQUIRE(gr(dbl) == 4);
  REQUIRE(multilinear_ranks(dbl) == std::vector<int>{6, 6, 6});
  REQUIRE(verify_gr4_bounds(dbl));

  // both counterexample sizes split, so the bound check refuses them
  REQUIRE_THROWS_AS(verify_gr4_bounds(tensor_from_pencil(cat::gr4_matrix<Fp>(kFp, 7))), InputError);
  REQUIRE_THROWS_AS(verify_gr4_bounds(tensor_from_pencil(cat::gr4_matrix<Fp>(kFp, 9))), InputError);
  REQUIRE_THROWS_AS(verify_gr4_bounds(cat::mm_tensor<Fp>(kFp, 2, 2, 2)), InputError);
}

TEST_CASE("stratified and direct values agree on random tensors") {
  std::mt19937_64 rng(20240817);
  for (const auto& dims : {std::vector<int>{2, 2, 2}, {3, 3, 3}, {2, 3, 4}}) {
    for (int s = 0; s < 10; ++s) {
      const Tensor<Fp> t = random_tensor<Fp>(kFp, dims, rng);
      const GRReport rep = gr_alternative(t);  // throws on any disagreement
      REQUIRE(rep.value >= 0);
      REQUIRE(rep.value <= *std::min_element(dims.begin(), dims.end()));
    }
  }
}

TEST_CASE("slice rank bounds geometric rank") {
  std::mt19937_64 rng(99);
  for (int s = 0; s < 8; ++s) {
    const Tensor<Fp> t = random_tensor<Fp>(kFp, {2, 2, 3}, rng);
    const long g = gr(t);
    for (long r = 0; r <= 2; ++r) {
      const SRDecision<Fp> d = decide_slice_rank_leq(t, r);
      if (d.yes) REQUIRE(g <= r);
      if (d.witness.has_value()) REQUIRE(sr_witness_vanishes(t, *d.witness));
    }
  }
}

TEST_CASE("rank one four-part tensors are exactly the partition splits") {
  std::mt19937_64 rng(4242);
  for (int s = 0; s < 20; ++s) {
    const Tensor<Fp> t = random_tensor<Fp>(kFp, {2, 2, 2, 2}, rng);
    if (t.is_zero()) continue;
    const bool g1 = gr_npart(t, GRStrategy::direct) == 1;
    REQUIRE(g1 == partition_rank_one(t).has_value());
  }
  // engineered positives across different groupings
  for (std::uint32_t mask : {1u, 3u, 5u}) {
    Tensor<Fp> t(kFp, {2, 2, 2, 2});
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            const int left[4] = {i, j, k, l};
            long u = 1, v = 1;
            for (int ax = 0; ax < 4; ++ax)
              if (mask >> ax & 1)
                u += left[ax] * (ax + 2);
              else
                v += left[ax] * (ax + 3);
            t.at({i, j, k, l}) = t.from_long(u * v);
          }
    REQUIRE(gr_npart(t, GRStrategy::direct) == 1);
    REQUIRE(partition_rank_one(t).has_value());
  }
}

TEST_CASE("direct sums and padding preserve structure") {
  const Tensor<Fp> sk = cat::skew3_tensor<Fp>(kFp);
  const Tensor<Fp> mm2 = cat::mm_tensor<Fp>(kFp, 2, 2, 2);
  REQUIRE(gr(direct_sum(mm2, sk)) <= 5);

  // zero-padding changes no rank data once the core is extracted
  Tensor<Fp> padded(kFp, {4, 5, 6});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) padded.at({i, j + 1, k + 2}) = sk.at({i, j, k});
  const ConciseCore<Fp> core = concise_core(padded);
  REQUIRE(core.core.dims() == std::vector<int>{3, 3, 3});
  REQUIRE(gr(core.core) == 2);
  REQUIRE(gr(padded) == 2);
}
