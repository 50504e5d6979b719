#pragma once

#include <stdexcept>
#include <string>

#include "carrollian/expr.hpp"
#include "carrollian/form.hpp"

namespace carrollian {

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Infix syntax shared by the CLI and the config files.
//   scalars: numbers, x1..xn (x,y,z aliases when n <= 3), t,
//            sin cos exp ln, + - * /, ^ with an integer literal exponent
//   forms:   dx1..dxn (dx,dy,dz aliases when n <= 3), th for theta; ^ (or *)
//            between forms is the wedge product; * scales a form by a scalar
// ln denotes ln|.| (the library's logarithm of the absolute value).
Expr parse_scalar(const std::string& text, int n);
Form parse_form(const std::string& text, int n);

}  // namespace carrollian
