// Hyperplane splitting on the 5x5x6 example tensor.
//
// The tensor splits off one unit of geometric rank two different ways: along
// the last column slice, or along the fifth row slice.  An unconstrained
// search finds some split; supplying a hyperplane pins down which one.

#include <iostream>

#include "tgr/catalog.hpp"
#include "tgr/georank.hpp"

using namespace tgr;

namespace {

void show(const char* tag, const DecompositionCertificate<Fp>& cert) {
  std::cout << tag << ": ";
  if (cert.kind == DecompKind::none_found) {
    std::cout << "none found (gr " << cert.total_gr << ")\n";
    return;
  }
  std::cout << "total gr " << cert.total_gr << " =";
  for (const auto& p : cert.parts) std::cout << " " << p.gr << "(" << p.role << ")";
  if (!cert.used.empty()) std::cout << "  [hyperplane on axis " << cert.used.front().axis << "]";
  std::cout << "\n";
}

Hyperplane<Fp> coordinate(const Tensor<Fp>& t, int axis, int idx) {
  Hyperplane<Fp> h;
  h.axis = axis;
  h.phi.assign(t.dims()[static_cast<std::size_t>(axis)], t.from_long(0));
  h.phi[static_cast<std::size_t>(idx)] = t.from_long(1);
  return h;
}

}  // namespace

int main() {
  const FieldSpec fs = FieldSpec::prime(kDefaultPrime);
  const Tensor<Fp> t = catalog_entry<Fp>("ex-5x5x6", fs).tensor;

  show("free search       ", find_decomposition(t));
  show("last column slice ", find_decomposition(t, {coordinate(t, 2, 5)}));
  show("fifth row slice   ", find_decomposition(t, {coordinate(t, 1, 4)}));

  // primitive inputs refuse to split no matter how hard the search tries
  show("skew3             ", find_decomposition(catalog_entry<Fp>("skew3", fs).tensor));
  return 0;
}
