#pragma once

// Text format for structures:
//
//   atoms: a b c
//   token z = a
//   token top = undef
//   fn s/1 { (a) -> b ; (b) -> c }
//
// Atoms are numbered in header order and keep their header names. Printing
// lists the scope in id order, naming unnamed atoms `a<id>`.

#include <string>

#include "fps/core.hpp"
#include "fps/syntax.hpp"

namespace fps {

Structure parse_structure(const std::string& text);
std::string print_structure(const Structure& s);

}  // namespace fps
