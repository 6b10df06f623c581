#pragma once

#include "obc/diagram.hpp"

#include "json.hpp"

#include <string>

namespace obc {

// grammar: sum of compositions of tensor products; `.` composes (left
// factor acts after the right one), `*` tensors and binds tighter,
// atoms are generator names, id(word), D(k) bubbles, (scalar) literals
// and parenthesized subexpressions
Expr parse_expr(const std::string& text);

std::string print_expr(const Expr& e);

nlohmann::json expr_to_json(const Expr& e);

} // namespace obc
