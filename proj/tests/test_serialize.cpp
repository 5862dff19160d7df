#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tl/jw.hpp"
#include "tl/pljw.hpp"
#include "tl/serialize.hpp"

using namespace tl;

namespace {

template <class T, class F>
void round_trip(const T& value, F decode) {
  const Json j = encode(value);
  const Json reparsed = Json::parse(j.dump());
  CHECK(decode(reparsed) == value);
  CHECK(encode(decode(reparsed)).dump() == j.dump());
}

}  // namespace

TEST_CASE("scalars") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = tltest::random_polynomial(rng, 6, 1000000) * BigInt("123456789012345678901234567890");
    round_trip(p, decode_polynomial);
    round_trip(RationalFunction(p, tltest::random_polynomial(rng, 3, 5) * IntegerPolynomial::delta() + IntegerPolynomial(1)),
               decode_rational);
  }
  CHECK(encode(quantum_int(3)).dump() == R"(["-1","0","1"])");
  round_trip(TorsionParams{3, 2}, decode_torsion);
  round_trip(TorsionParams::generic(5), decode_torsion);
  const auto f4 = PointedField::create(2, {1, 1, 1});
  CHECK(*decode_field(encode(*f4)) == *f4);
}

TEST_CASE("diagrams and morphisms") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(rng() % 6);
    const int m = n + 2 * static_cast<int>(rng() % 2);
    round_trip(tltest::random_diagram(rng, n, m), decode_diagram);
  }
  for (int n = 1; n <= 5; ++n) round_trip(jw(n), decode_generic_morphism);
  const auto f3 = tltest::prime_field(3, 1);
  round_trip(descend_jw(5, f3), decode_field_morphism);
  const auto f4 = PointedField::create(2, {1, 1, 1});
  round_trip(descend_jw(4, f4), decode_field_morphism);
}

TEST_CASE("decompositions") {
  for (const TorsionParams& t : {TorsionParams{2, 2}, TorsionParams{3, 2}, TorsionParams::generic(3)}) {
    for (int n = 1; n <= 6; ++n) {
      const auto& d = build_pljw(n, t);
      const Json j = encode(d);
      const PljwDecomposition back = decode_pljw(Json::parse(j.dump()));
      CHECK(back.n == d.n);
      CHECK(back.torsion == d.torsion);
      CHECK(back.support == d.support);
      CHECK(back.father == d.father);
      CHECK(back.shift == d.shift);
      CHECK(back.lambda == d.lambda);
      CHECK(back.projector == d.projector);
      CHECK(back.terms == d.terms);
      CHECK(back.total == d.total);
      CHECK(encode(back).dump() == j.dump());
    }
  }
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(decode_polynomial(Json::parse(R"(["1","x"])")), FormatError);
  CHECK_THROWS_AS(decode_rational(Json::parse(R"({"num":["1"],"den":[]})")), FormatError);
  CHECK_THROWS_AS(decode_diagram(Json::parse(R"({"fmt":1,"source":2,"target":2,"pairing":[2,3,0,1]})")), FormatError);
  Json j = encode(jw(2));
  j["fmt"] = 99;
  CHECK_THROWS_AS(decode_generic_morphism(j), FormatError);
  Json f = encode(descend_jw(3, tltest::prime_field(2, 0)));
  f["terms"][0]["coeff"] = Json::array({"2"});
  CHECK_THROWS_AS(decode_field_morphism(f), FormatError);
}
