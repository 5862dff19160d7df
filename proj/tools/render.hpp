// Plain-text and LaTeX renderings of morphisms over a named diagram basis.
#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "tl/morphism.hpp"

namespace tlcli {

/// Names diagrams by shortest u-words ("1", "u1u2") and other shapes by rank ("d7").
class DiagramNames {
 public:
  std::string text(const tl::Diagram& d);
  std::string latex(const tl::Diagram& d);

 private:
  const std::vector<int>* word(const tl::Diagram& d);
  std::map<int, std::unordered_map<tl::Diagram, std::vector<int>, tl::DiagramHash>> words_;
};

std::string latex_polynomial(const tl::IntegerPolynomial& p);
std::string latex_rational(const tl::RationalFunction& r);

std::string render_text(const tl::GenericMorphism& m, const std::string& title);
std::string render_text(const tl::FieldMorphism& m, const std::string& title);
std::string render_latex(const tl::GenericMorphism& m, const std::string& title);
std::string render_latex(const tl::FieldMorphism& m, const std::string& title);

}  // namespace tlcli
