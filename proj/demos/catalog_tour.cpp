// Walks a few catalog tensors and prints rank data side by side.

#include <iostream>

#include "tgr/catalog.hpp"
#include "tgr/georank.hpp"

using namespace tgr;

int main() {
  const FieldSpec fs = FieldSpec::prime(kDefaultPrime);
  for (const char* name : {"mm(1,2,2)", "mm(2,2,2)", "mm(2,3,3)", "skew3", "skew4(6)",
                           "compression-w(3)", "gr4-counterexample(7)", "ex-5x5x6"}) {
    const CatalogEntry<Fp> entry = catalog_entry<Fp>(name, fs);
    const Tensor<Fp>& t = entry.tensor;
    std::cout << name << ": dims (";
    for (std::size_t i = 0; i < t.dims().size(); ++i) std::cout << (i ? "," : "") << t.dims()[i];
    std::cout << "), ml (";
    const std::vector<int> ml = multilinear_ranks(t);
    for (std::size_t i = 0; i < ml.size(); ++i) std::cout << (i ? "," : "") << ml[i];
    std::cout << "), gr " << gr(t) << "\n";
  }
  return 0;
}
