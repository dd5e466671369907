#pragma once

#include <stdexcept>
#include <string>

#include "dgsw/gca.hpp"

namespace dgsw {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

// Presentation text format:
//   field Q;
//   gen NAME : DEGREE [weight W];
//   D NAME = EXPR;
// Generators in attachment order, degrees <= 0. EXPR uses generator names,
// integer and a/b rational literals, and + - * ^.
CdgaPtr parse_presentation(const std::string& text);
std::string print_presentation(const Cdga& alg);

// Polynomial expression over an existing presentation.
Poly parse_poly(const std::string& text, const Cdga* alg);
std::string print_poly(const Poly& p);
std::string print_monomial(const Cdga* alg, const Monomial& m);

}  // namespace dgsw
