// Tiny arithmetic-expression evaluator for CLI flags, so surd parameters like
// sqrt(2/15), 1/sqrt(2), sqrt8 or pi/2 are taken at full precision instead of
// being rounded through decimal literals.

#pragma once

#include <string>

namespace discorr::expr {

// Grammar: + - * / ^ (right assoc), unary minus, parentheses, numbers,
// pi, and sqrt(...) (also the shorthand sqrtN). Throws SpecError on bad input.
double evaluate(const std::string& text);

} // namespace discorr::expr
