// JSON encodings. Every top-level object carries "fmt": 1.
#pragma once

#include <memory>

#include "json.hpp"
#include "tl/jw.hpp"
#include "tl/pljw.hpp"

namespace tl {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Thrown for malformed or unsupported JSON input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json encode(const IntegerPolynomial& p);
Json encode(const RationalFunction& r);
Json encode(const PointedField& k);
Json encode(const TorsionParams& t);
Json encode(const Diagram& d);
Json encode(const GenericMorphism& m);
Json encode(const FieldMorphism& m);
Json encode(const PljwDecomposition& d);

IntegerPolynomial decode_polynomial(const Json& j);
RationalFunction decode_rational(const Json& j);
std::shared_ptr<const PointedField> decode_field(const Json& j);
TorsionParams decode_torsion(const Json& j);
Diagram decode_diagram(const Json& j);
GenericMorphism decode_generic_morphism(const Json& j);
FieldMorphism decode_field_morphism(const Json& j);
PljwDecomposition decode_pljw(const Json& j);

}  // namespace tl
