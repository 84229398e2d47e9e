#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tgr/tensor.hpp"

namespace tgr {

// A named example ships with the invariant values the test suite checks it
// against; every value carries a short derivation note.
struct ExpectedValue {
  long value = 0;
  std::string note;
};

template <class F>
struct CatalogEntry {
  std::string name;
  Tensor<F> tensor;
  LinearMatrix<F> matrix;  // axis-0 pencil; the defining object when pencil_primary
  bool pencil_primary = false;
  std::vector<std::pair<std::string, ExpectedValue>> expected;

  std::optional<long> expect(const std::string& key) const {
    for (const auto& [k, v] : expected)
      if (k == key) return v.value;
    return std::nullopt;
  }
};

namespace cat {

// Matrix multiplication tensor <e,h,l>: the trace form Tr(xyz) on
// (e x h) x (h x l) x (l x e) matrices.  Basis index of x_{ij} is
// (j-1)e + (i-1), of y_{jk} is (k-1)h + (j-1), of z_{ki} is (k-1)e + (i-1);
// with this ordering the axis-0 pencil is block diagonal with l copies of a
// single e*h-variable block.
template <class F>
Tensor<F> mm_tensor(const FieldSpec& fs, int e, int h, int l) {
  Tensor<F> t(fs, {e * h, h * l, l * e});
  const F one = t.from_long(1);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < h; ++j)
      for (int k = 0; k < l; ++k) t.at({j * e + i, k * h + j, k * e + i}) = one;
  return t;
}

template <class F>
Tensor<F> skew3_tensor(const FieldSpec& fs) {
  Tensor<F> t(fs, {3, 3, 3});
  const F one = t.from_long(1);
  const int even[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& p : even) {
    t.at({p[0], p[1], p[2]}) = one;
    t.at({p[0], p[2], p[1]}) = -one;
  }
  return t;
}

// Span of the first d elementary alternating 4x4 matrices e_ij - e_ji, pairs
// (i,j) in lexicographic order (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
template <class F>
Tensor<F> skew4_tensor(const FieldSpec& fs, int d) {
  Tensor<F> t(fs, {d, 4, 4});
  const F one = t.from_long(1);
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int s = 0; s < d; ++s) {
    t.at({s, pairs[s][0], pairs[s][1]}) = one;
    t.at({s, pairs[s][1], pairs[s][0]}) = -one;
  }
  return t;
}

// w(m) = sum_i (a1 b_i c_i + a_i b1 c_i + a_i b_i c1): supported on three
// coordinate slabs, hence slice rank at most 3.
template <class F>
Tensor<F> compression_w_tensor(const FieldSpec& fs, int m) {
  Tensor<F> t(fs, {m, m, m});
  const F one = t.from_long(1);
  for (int i = 0; i < m; ++i) {
    t.at({0, i, i}) = t.at({0, i, i}) + one;
    t.at({i, 0, i}) = t.at({i, 0, i}) + one;
    t.at({i, i, 0}) = t.at({i, i, 0}) + one;
  }
  return t;
}

template <class F>
LinearMatrix<F> from_rows(const Ring<F>& r, int rows, int cols, const std::vector<std::vector<int>>& var1) {
  // var1[i][j] > 0 picks x_{var1[i][j]}, < 0 its negative, 0 the zero entry.
  LinearMatrix<F> lm(r, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const int v = var1[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v == 0) continue;
      Polynomial<F> x = Polynomial<F>::variable(r, (v > 0 ? v : -v) - 1);
      lm.at(i, j) = v > 0 ? x : x.scaled(r.from_long(-1));
    }
  return lm;
}

template <class F>
LinearMatrix<F> ex556_matrix(const FieldSpec& fs) {
  const Ring<F> r = make_ring<F>(fs, 5);
  return from_rows(r, 5, 6,
                   {{2, 3, 4, 0, 0, 0},
                    {1, 0, 0, 3, 4, 0},
                    {0, 1, 0, -2, 0, 4},
                    {0, 0, 1, 0, -2, -3},
                    {0, 0, 0, 0, 0, 5}});
}

// Alternating 3x3 block in x1..x3 plus an (m-3) x (m-3) block with x4 down
// the diagonal and first row (x4, x5, ..., x_m).
template <class F>
LinearMatrix<F> gr4_matrix(const FieldSpec& fs, int m) {
  const Ring<F> r = make_ring<F>(fs, m);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), 0));
  rows[0][1] = 1;
  rows[0][2] = 2;
  rows[1][0] = -1;
  rows[1][2] = 3;
  rows[2][0] = -2;
  rows[2][1] = -3;
  for (int t = 3; t < m; ++t) rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] = 4;
  for (int s = 4; s < m; ++s) rows[3][static_cast<std::size_t>(s)] = s + 1;
  return from_rows(r, m, m, rows);
}

template <class F>
LinearMatrix<F> beauville_matrix(const FieldSpec& fs) {
  const Ring<F> r = make_ring<F>(fs, 4);
  return from_rows(r, 4, 4,
                   {{1, 2, 0, 0},
                    {3, 4, 0, 1},
                    {0, 0, 1, 2},
                    {0, 0, 3, 4}});
}

template <class F>
LinearMatrix<F> x1_matrix(const FieldSpec& fs) {
  const Ring<F> r = make_ring<F>(fs, 3);
  return from_rows(r, 2, 2, {{1, 2}, {2, 3}});
}

template <class F>
LinearMatrix<F> x2_matrix(const FieldSpec& fs) {
  const Ring<F> r = make_ring<F>(fs, 4);
  return from_rows(r, 2, 2, {{1, 2}, {3, 4}});
}

// One full row and two full columns of independent variables: every member
// has rank at most 3, and the minor on rows {1,2,3}, columns {1,2,3} is the
// nonzero polynomial x3 (x6 x10 - x7 x9), so bounded rank 2 fails.
template <class F>
LinearMatrix<F> bounded3_matrix(const FieldSpec& fs) {
  const Ring<F> r = make_ring<F>(fs, 11);
  return from_rows(r, 4, 5,
                   {{1, 2, 3, 4, 5},
                    {6, 9, 0, 0, 0},
                    {7, 10, 0, 0, 0},
                    {8, 11, 0, 0, 0}});
}

inline long mm_gr_value(int e, int h, int l) {
  if (e + h < l) return static_cast<long>(e) * h;
  const long s = e + h - l;
  return static_cast<long>(e) * h - (s * s) / 4;
}

}  // namespace cat

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> n;
  for (int e = 1; e <= 4; ++e)
    for (int h = e; h <= 4; ++h)
      for (int l = h; l <= 4; ++l)
        n.push_back("mm(" + std::to_string(e) + "," + std::to_string(h) + "," + std::to_string(l) + ")");
  n.push_back("skew3");
  for (int d = 4; d <= 6; ++d) n.push_back("skew4(" + std::to_string(d) + ")");
  n.push_back("ex-5x5x6");
  for (int m = 5; m <= 9; ++m) n.push_back("gr4-counterexample(" + std::to_string(m) + ")");
  n.push_back("beauville-counterexample");
  for (int m = 3; m <= 8; ++m) n.push_back("compression-w(" + std::to_string(m) + ")");
  n.push_back("X1");
  n.push_back("X2");
  n.push_back("bounded3-fixture");
  return n;
}

namespace cat {

inline std::vector<int> parse_args(const std::string& name, const std::string& head, std::size_t count) {
  // Matches head(v1,...,vcount); returns empty when the name has a different head.
  if (name.size() <= head.size() + 1 || name.compare(0, head.size(), head) != 0 || name[head.size()] != '(' ||
      name.back() != ')')
    return {};
  std::vector<int> vals;
  std::string body = name.substr(head.size() + 1, name.size() - head.size() - 2);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty() || tok.size() > 4 || tok.find_first_not_of("0123456789") != std::string::npos) return {};
    vals.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (vals.size() != count) return {};
  return vals;
}

}  // namespace cat

template <class F>
CatalogEntry<F> catalog_entry(const std::string& name, const FieldSpec& fs) {
  CatalogEntry<F> ce;
  ce.name = name;
  auto note = [](long v, const std::string& n) { return ExpectedValue{v, n}; };

  if (auto a = cat::parse_args(name, "mm", 3); !a.empty()) {
    const int e = a[0], h = a[1], l = a[2];
    if (!(1 <= e && e <= h && h <= l && l <= 4)) throw InputError("mm parameters must satisfy 1 <= e <= h <= l <= 4");
    ce.tensor = cat::mm_tensor<F>(fs, e, h, l);
    ce.matrix = pencil(ce.tensor, 0);
    ce.expected.emplace_back("gr", note(cat::mm_gr_value(e, h, l),
                                        "closed form eh - floor((e+h-l)^2/4) when e+h >= l, else eh"));
    ce.expected.emplace_back("ml-a", note(static_cast<long>(e) * h, "the flattenings span full matrix spaces"));
    ce.expected.emplace_back("ml-b", note(static_cast<long>(h) * l, "the flattenings span full matrix spaces"));
    ce.expected.emplace_back("ml-c", note(static_cast<long>(l) * e, "the flattenings span full matrix spaces"));
    const bool prim = e >= 2 && e + h >= l;
    ce.expected.emplace_back("primitive", note(prim ? 1 : 0,
                                               "primitive when e >= 2 and e+h >= l; otherwise a compression with "
                                               "slice rank equal to geometric rank"));
    if (!prim) ce.expected.emplace_back("sr", note(static_cast<long>(e) * h, "compression case: slice rank eh"));
    if (e == 2 && h == 2 && l == 2) ce.expected.emplace_back("sr", note(4, "no at 3, yes at 4 in the slice rank decision"));
    return ce;
  }
  if (auto a = cat::parse_args(name, "skew4", 1); !a.empty()) {
    const int d = a[0];
    if (d < 4 || d > 6) throw InputError("skew4 dimension must be 4, 5, or 6");
    ce.tensor = cat::skew4_tensor<F>(fs, d);
    ce.matrix = pencil(ce.tensor, 0);
    ce.expected.emplace_back("gr", note(3,
                                        "alternating rank is even, so rank <= 3 coincides with rank <= 2, the "
                                        "Pfaffian hypersurface of codimension 1; 1 + 2 = 3"));
    ce.expected.emplace_back("ml-a", note(d, "independent alternating matrices"));
    return ce;
  }
  if (auto a = cat::parse_args(name, "gr4-counterexample", 1); !a.empty()) {
    const int m = a[0];
    if (m < 5 || m > 9) throw InputError("gr4-counterexample size must lie in [5, 9]");
    ce.matrix = cat::gr4_matrix<F>(fs, m);
    ce.tensor = tensor_from_pencil(ce.matrix);
    ce.expected.emplace_back("gr", note(4,
                                        "direct sum of the alternating 3x3 pencil (geometric rank 2) and a "
                                        "one-row-plus-diagonal block of geometric rank 2"));
    ce.expected.emplace_back("sr", note(5, "the slice rank decision answers no at 4 and yes at 5"));
    return ce;
  }
  if (auto a = cat::parse_args(name, "compression-w", 1); !a.empty()) {
    const int m = a[0];
    if (m < 3 || m > 8) throw InputError("compression-w size must lie in [3, 8]");
    ce.tensor = cat::compression_w_tensor<F>(fs, m);
    ce.matrix = pencil(ce.tensor, 0);
    ce.expected.emplace_back("gr", note(3,
                                        "at most 3 by the slab support; the rank <= 2 stratum is the hyperplane "
                                        "x1 = 0, so 1 + 2 = 3 is attained"));
    ce.expected.emplace_back("sr", note(3, "supported on three coordinate slabs"));
    return ce;
  }
  if (name == "skew3") {
    ce.tensor = cat::skew3_tensor<F>(fs);
    ce.matrix = pencil(ce.tensor, 0);
    ce.expected.emplace_back("gr", note(2,
                                        "every alternating 3x3 matrix is singular, so the rank <= 2 stratum "
                                        "fills the span"));
    ce.expected.emplace_back("ml-a", note(3, "concise on all axes"));
    return ce;
  }
  if (name == "ex-5x5x6") {
    ce.matrix = cat::ex556_matrix<F>(fs);
    ce.tensor = tensor_from_pencil(ce.matrix);
    ce.expected.emplace_back("gr", note(4,
                                        "restricting the third factor to x6 = 0, or the second to x5 = 0, "
                                        "leaves geometric rank 3 plus a rank-one complement"));
    return ce;
  }
  if (name == "beauville-counterexample") {
    ce.matrix = cat::beauville_matrix<F>(fs);
    ce.tensor = tensor_from_pencil(ce.matrix);
    ce.pencil_primary = true;
    ce.expected.emplace_back("det-quadric-rank", note(4, "det = (x1 x4 - x2 x3)^2, the square of a rank 4 quadric"));
    ce.expected.emplace_back("rank-at-e1", note(3, "evaluation at (1,0,0,0)"));
    ce.expected.emplace_back("rank-at-e4", note(2, "evaluation at (0,0,0,1)"));
    return ce;
  }
  if (name == "X1") {
    ce.matrix = cat::x1_matrix<F>(fs);
    ce.tensor = tensor_from_pencil(ce.matrix);
    ce.pencil_primary = true;
    ce.expected.emplace_back("det-quadric-rank", note(3, "det = x1 x3 - x2^2 has rank 3"));
    return ce;
  }
  if (name == "X2") {
    ce.matrix = cat::x2_matrix<F>(fs);
    ce.tensor = tensor_from_pencil(ce.matrix);
    ce.pencil_primary = true;
    ce.expected.emplace_back("det-quadric-rank", note(4, "det = x1 x4 - x2 x3 has rank 4"));
    return ce;
  }
  if (name == "bounded3-fixture") {
    ce.matrix = cat::bounded3_matrix<F>(fs);
    ce.tensor = tensor_from_pencil(ce.matrix);
    ce.pencil_primary = true;
    ce.expected.emplace_back("gr", note(3,
                                        "one row plus two columns bound every member's rank by 3; the minor on "
                                        "rows 1..3 and columns 1..3 is x3 (x6 x10 - x7 x9) != 0, so the rank 3 "
                                        "stratum has codimension 0 and the rank 2 stratum does not"));
    return ce;
  }
  throw InputError("unknown catalog name: " + name);
}

}  // namespace tgr
