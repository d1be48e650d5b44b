#ifndef QFANO_PARSER_HPP
#define QFANO_PARSER_HPP

#include <string>

#include "qfano/polynomial.hpp"

namespace qfano {

// Parse a polynomial expression over the given ring.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := variable | integer | integer '/' integer | '(' expr ')'
//
// Whitespace is insignificant; there is no implicit multiplication.  Every
// identifier must be a ring variable.  Throws parse_error with the byte
// offset of the failure.
Polynomial parse_poly(const std::string& text, RingPtr ring);

}  // namespace qfano

#endif
