// Helpers shared by the unit tests.
#pragma once

#include <random>

#include "tl/morphism.hpp"

namespace tltest {

inline std::shared_ptr<const tl::PointedField> prime_field(std::uint32_t p, long deltabar) {
  return tl::PointedField::create(p, {-deltabar, 1});
}

inline tl::Diagram word(int n, std::initializer_list<int> gens) {
  tl::Diagram d = tl::Diagram::identity(n);
  for (int i : gens) d = tl::compose(d, tl::generator_u(n, i)).diagram;
  return d;
}

inline tl::Diagram random_diagram(std::mt19937_64& rng, int n, int m) {
  const std::uint64_t count = tl::diagram_count(n, m);
  return tl::diagram_unrank(n, m, std::uniform_int_distribution<std::uint64_t>(0, count - 1)(rng));
}

inline tl::IntegerPolynomial random_polynomial(std::mt19937_64& rng, int max_degree, long bound) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> coeff(-bound, bound);
  std::vector<tl::BigInt> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coeff(rng);
  return tl::IntegerPolynomial(c);
}

/// Random element of TL_n (or Hom(n, m)) with small integer coefficients.
inline tl::GenericMorphism random_morphism(std::mt19937_64& rng, int n, int m, int terms) {
  tl::GenericMorphism out(tl::GenericRing{}, n, m);
  std::uniform_int_distribution<long> coeff(-3, 3);
  for (int i = 0; i < terms; ++i) {
    const long c = coeff(rng);
    if (c != 0) out.add_term(random_diagram(rng, n, m), tl::RationalFunction(c));
  }
  return out;
}

}  // namespace tltest
