#pragma once

#include <string>
#include <string_view>

#include "doxa/formula.hpp"

namespace doxa {

// Concrete syntax, loosest binding first:
//
//   formula := iff
//   iff     := impl ("<->" impl)*          left-associative
//   impl    := or ("->" impl)?             right-associative
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | "K[" ident "]" unary | "B[" ident "]" unary | atomexp
//   atomexp := "false" | "true" | ident | "(" formula ")"
//   ident   := [A-Za-z_][A-Za-z0-9_]*

/// Throws ParseError carrying the byte offset and the expected token set.
Formula parse_formula(std::string_view text);

/// Minimally parenthesized text; derived connectives are recognized and
/// printed as sugar. parse_formula(render_formula(f)) == f.
std::string render_formula(const Formula& f);

}  // namespace doxa
