#include "tl/serialize.hpp"

#include <string>

namespace tl {

namespace {

void check_format(const Json& j) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  if (j.contains("fmt") && j.at("fmt") != kFormatVersion) throw FormatError("unsupported format version");
}

template <class Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw FormatError(e.what());
  } catch (const FormatError&) {
    throw;
  } catch (const std::logic_error& e) {
    throw FormatError(e.what());
  }
}

Json field_coefficient(const FieldElement& e) {
  Json out = Json::array();
  for (std::uint32_t c : e.rep()) out.push_back(std::to_string(c));
  return out;
}

template <class M, class CoeffFn>
Json encode_morphism(const M& m, Json ring, CoeffFn coeff) {
  Json terms = Json::array();
  for (const auto& [d, c] : m.sorted_terms()) {
    Json diagram = encode(d);
    diagram.erase("fmt");
    terms.push_back({{"diagram", std::move(diagram)}, {"coeff", coeff(c)}});
  }
  return {{"fmt", kFormatVersion},
          {"source", m.source()},
          {"target", m.target()},
          {"ring", std::move(ring)},
          {"terms", std::move(terms)}};
}

}  // namespace

Json encode(const IntegerPolynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(c.get_str());
  return out;
}

Json encode(const RationalFunction& r) { return {{"num", encode(r.num())}, {"den", encode(r.den())}}; }

Json encode(const PointedField& k) {
  Json minpoly = Json::array();
  for (std::uint32_t c : k.minpoly()) minpoly.push_back(std::to_string(c));
  return {{"p", k.characteristic()}, {"minpoly", std::move(minpoly)}};
}

Json encode(const TorsionParams& t) {
  Json p = t.p ? Json(*t.p) : Json("infinity");
  return {{"ell", t.ell}, {"p", std::move(p)}};
}

Json encode(const Diagram& d) {
  return {{"fmt", kFormatVersion}, {"source", d.source()}, {"target", d.target()}, {"pairing", d.pairing()}};
}

Json encode(const GenericMorphism& m) {
  return encode_morphism(m, Json{{"kind", "generic"}}, [](const RationalFunction& c) { return encode(c); });
}

Json encode(const FieldMorphism& m) {
  Json ring = encode(*m.ring().field);
  ring["kind"] = "field";
  const auto& k = m.ring().field;
  return encode_morphism(m, std::move(ring), [&](std::uint32_t c) { return field_coefficient(k->element(c)); });
}

Json encode(const PljwDecomposition& d) {
  Json lambda = Json::object();
  Json projector = Json::object();
  Json terms = Json::object();
  for (const auto& [i, l] : d.lambda) lambda[std::to_string(i)] = encode(l);
  for (const auto& [i, p] : d.projector) projector[std::to_string(i)] = encode(p);
  for (const auto& [i, u] : d.terms) terms[std::to_string(i)] = encode(u);
  Json out = {{"fmt", kFormatVersion},
              {"n", d.n},
              {"torsion", encode(d.torsion)},
              {"support", d.support},
              {"lambda", std::move(lambda)},
              {"projector", std::move(projector)},
              {"terms", std::move(terms)},
              {"total", encode(d.total)}};
  if (d.father) {
    out["father"] = *d.father;
    out["shift"] = d.shift;
  }
  return out;
}

IntegerPolynomial decode_polynomial(const Json& j) {
  return guarded([&] {
    if (!j.is_array()) throw FormatError("polynomial must be an array");
    std::vector<BigInt> coeffs;
    for (const auto& c : j) coeffs.emplace_back(c.get<std::string>(), 10);
    return IntegerPolynomial(std::move(coeffs));
  });
}

RationalFunction decode_rational(const Json& j) {
  return guarded([&] { return RationalFunction(decode_polynomial(j.at("num")), decode_polynomial(j.at("den"))); });
}

std::shared_ptr<const PointedField> decode_field(const Json& j) {
  return guarded([&] {
    std::vector<long> minpoly;
    for (const auto& c : j.at("minpoly")) minpoly.push_back(std::stol(c.get<std::string>()));
    return PointedField::create(j.at("p").get<std::uint32_t>(), std::move(minpoly));
  });
}

TorsionParams decode_torsion(const Json& j) {
  return guarded([&] {
    TorsionParams t;
    t.ell = j.at("ell").get<int>();
    const Json& p = j.at("p");
    if (p.is_string()) {
      if (p != "infinity") throw FormatError("torsion p must be a prime or \"infinity\"");
    } else {
      t.p = p.get<std::uint32_t>();
    }
    return t;
  });
}

Diagram decode_diagram(const Json& j) {
  return guarded([&] {
    check_format(j);
    const auto pairing = j.at("pairing").get<std::vector<int>>();
    return Diagram::from_pairing(j.at("source").get<int>(), j.at("target").get<int>(), pairing);
  });
}

GenericMorphism decode_generic_morphism(const Json& j) {
  return guarded([&] {
    check_format(j);
    if (j.at("ring").at("kind") != "generic") throw FormatError("expected a Q(delta) morphism");
    GenericMorphism m(GenericRing{}, j.at("source").get<int>(), j.at("target").get<int>());
    for (const auto& term : j.at("terms")) m.add_term(decode_diagram(term.at("diagram")), decode_rational(term.at("coeff")));
    return m;
  });
}

FieldMorphism decode_field_morphism(const Json& j) {
  return guarded([&] {
    check_format(j);
    if (j.at("ring").at("kind") != "field") throw FormatError("expected a morphism over a pointed field");
    auto k = decode_field(j.at("ring"));
    FieldMorphism m(FieldRing(k), j.at("source").get<int>(), j.at("target").get<int>());
    for (const auto& term : j.at("terms")) {
      std::vector<std::uint32_t> rep;
      for (const auto& c : term.at("coeff")) {
        const unsigned long v = std::stoul(c.get<std::string>());
        if (v >= k->characteristic()) throw FormatError("field coefficient digit out of range");
        rep.push_back(static_cast<std::uint32_t>(v));
      }
      if (rep.size() > static_cast<std::size_t>(k->degree())) throw FormatError("field coefficient too long");
      m.add_term(decode_diagram(term.at("diagram")), k->encode(rep));
    }
    return m;
  });
}

PljwDecomposition decode_pljw(const Json& j) {
  return guarded([&] {
    check_format(j);
    PljwDecomposition d;
    d.n = j.at("n").get<int>();
    d.torsion = decode_torsion(j.at("torsion"));
    d.support = j.at("support").get<std::vector<int>>();
    if (j.contains("father")) {
      d.father = j.at("father").get<int>();
      d.shift = j.at("shift").get<int>();
    }
    for (const auto& [key, value] : j.at("lambda").items()) d.lambda.emplace(std::stoi(key), decode_rational(value));
    for (const auto& [key, value] : j.at("projector").items()) {
      d.projector.emplace(std::stoi(key), decode_generic_morphism(value));
    }
    for (const auto& [key, value] : j.at("terms").items()) d.terms.emplace(std::stoi(key), decode_generic_morphism(value));
    d.total = decode_generic_morphism(j.at("total"));
    return d;
  });
}

}  // namespace tl
