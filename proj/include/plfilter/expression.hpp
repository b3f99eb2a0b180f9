#ifndef PLFILTER_EXPRESSION_HPP
#define PLFILTER_EXPRESSION_HPP

#include <functional>
#include <string>

#include "plfilter/linalg.hpp"

namespace plf {

/// Compile an arithmetic expression in variables x1..xn into an evaluator.
/// Supports + - * / ^, parentheses, numeric literals, pi, and the functions
/// sin cos tan exp log sqrt abs min max pow. Throws on syntax errors or
/// references beyond xn.
std::function<double(const Vec&)> compile_expression(const std::string& text, std::size_t dimension);

} // namespace plf

#endif // PLFILTER_EXPRESSION_HPP
