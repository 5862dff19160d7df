#include "render.hpp"

#include <sstream>

namespace tlcli {

using tl::Diagram;

const std::vector<int>* DiagramNames::word(const Diagram& d) {
  if (d.source() != d.target()) return nullptr;
  auto it = words_.find(d.source());
  if (it == words_.end()) it = words_.emplace(d.source(), tl::u_words(d.source())).first;
  return &it->second.at(d);
}

std::string DiagramNames::text(const Diagram& d) {
  const auto* w = word(d);
  if (!w) return "d" + std::to_string(tl::diagram_rank(d));
  if (w->empty()) return "1";
  std::string out;
  for (int i : *w) out += "u" + std::to_string(i);
  return out;
}

std::string DiagramNames::latex(const Diagram& d) {
  const auto* w = word(d);
  if (!w) return "d_{" + std::to_string(tl::diagram_rank(d)) + "}";
  if (w->empty()) return "1";
  std::string out;
  for (int i : *w) out += "u_{" + std::to_string(i) + "}";
  return out;
}

std::string latex_polynomial(const tl::IntegerPolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const tl::BigInt& c = p.coeff(i);
    if (c == 0) continue;
    tl::BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i >= 1) out << "\\delta";
    if (i >= 2) out << "^{" << i << "}";
  }
  return out.str();
}

std::string latex_rational(const tl::RationalFunction& r) {
  if (r.is_polynomial()) return latex_polynomial(r.num());
  std::string num = latex_polynomial(r.num());
  std::string sign;
  if (r.num().sign() < 0) {
    sign = "-";
    num = latex_polynomial(-r.num());
  }
  return sign + "\\frac{" + num + "}{" + latex_polynomial(r.den()) + "}";
}

namespace {

template <class Ring, class Coeff>
std::string text_table(const tl::Morphism<Ring>& m, const std::string& title, Coeff coeff) {
  DiagramNames names;
  std::ostringstream out;
  out << title << ": " << m.source() << " -> " << m.target() << " over " << m.ring().to_string() << ", " << m.size()
      << (m.size() == 1 ? " term" : " terms") << "\n";
  for (const auto& [d, c] : m.sorted_terms()) out << "  " << names.text(d) << "\t" << coeff(c) << "\n";
  return out.str();
}

template <class Ring, class Coeff>
std::string latex_table(const tl::Morphism<Ring>& m, const std::string& title, Coeff coeff) {
  DiagramNames names;
  std::ostringstream out;
  out << "% " << title << ": " << m.source() << " -> " << m.target() << "\n";
  out << "\\begin{tabular}{ll}\n";
  out << "diagram & coefficient \\\\\n\\hline\n";
  for (const auto& [d, c] : m.sorted_terms()) out << "$" << names.latex(d) << "$ & $" << coeff(c) << "$ \\\\\n";
  out << "\\end{tabular}\n";
  return out.str();
}

}  // namespace

std::string render_text(const tl::GenericMorphism& m, const std::string& title) {
  return text_table(m, title, [](const tl::RationalFunction& c) { return c.to_string(); });
}

std::string render_text(const tl::FieldMorphism& m, const std::string& title) {
  const auto& k = m.ring().field;
  return text_table(m, title, [&](std::uint32_t c) { return k->element(c).to_string(); });
}

std::string render_latex(const tl::GenericMorphism& m, const std::string& title) {
  return latex_table(m, title, [](const tl::RationalFunction& c) { return latex_rational(c); });
}

std::string render_latex(const tl::FieldMorphism& m, const std::string& title) {
  const auto& k = m.ring().field;
  return latex_table(m, title, [&](std::uint32_t c) {
    std::string s = k->element(c).to_string();
    return s;
  });
}

}  // namespace tlcli
