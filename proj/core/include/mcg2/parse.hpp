#ifndef MCG2_PARSE_HPP
#define MCG2_PARSE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mcg2/defs.hpp"
#include "mcg2/word.hpp"

namespace mcg2 {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Parses the word grammar
///
///   word   := term*
///   term   := factor ("^" int)?
///   factor := GEN | NAME | "(" word ")"
///
/// where GEN is "w" followed by digits. Names stay as single letters; powers
/// are distributed, so "(w1 w2)^-1" yields w2^-1 w1^-1. No free reduction.
TwistWord parse_word(std::string_view text, int genus, const DefTable& defs);

/// Same grammar, but every NAME is accepted and interned without checking a
/// definition table. Used for abstract presentation words.
TwistWord parse_word_unchecked(std::string_view text, int genus);

}  // namespace mcg2

#endif  // MCG2_PARSE_HPP
