#ifndef MCG2_SRC_EXPR_HPP
#define MCG2_SRC_EXPR_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mcg2::detail {

using Env = std::map<std::string, long, std::less<>>;

class ExprError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Integer expression over the variables in `env`:
///   + - * / %, comparisons, && || !, parentheses, mod(a, b) (non-negative).
/// Comparisons and logical operators yield 0 or 1.
long eval_expr(std::string_view text, const Env& env);

/// Expands `<v=a..b: body>` (ascending) and `<v=a downto b: body>` repetitions,
/// then replaces each `{expr}` by its value.
std::string substitute(std::string_view text, const Env& env);

} // namespace mcg2::detail

#endif // MCG2_SRC_EXPR_HPP
