#ifndef MCG2_WORD_HPP
#define MCG2_WORD_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcg2 {

/// Interned identifier for a named abbreviation (z0, eta, ...).
///
/// Symbols are process-global and never released; the table only grows with
/// the distinct names that appear in definitions, scripts and catalogs.
class Symbol {
public:
  static Symbol intern(std::string_view name);

  /// Looks up an already interned id; throws WordError for unknown ids.
  static Symbol from_id(std::int32_t id);

  std::string_view name() const;
  std::int32_t id() const { return id_; }

  friend bool operator==(Symbol, Symbol) = default;
  friend auto operator<=>(Symbol, Symbol) = default;

private:
  explicit Symbol(std::int32_t id) : id_(id) {}
  std::int32_t id_;
};

/// One signed letter: either a Humphries generator w_i or a named symbol.
///
/// Encoded as a single integer so words hash and compare cheaply: positive
/// codes are generator indices, negative codes are symbol ids (offset by one).
struct Letter {
  std::int32_t code = 1;
  std::int8_t sign = 1;

  static Letter gen(int index, int sign = 1) {
    return {static_cast<std::int32_t>(index), static_cast<std::int8_t>(sign)};
  }
  static Letter name(Symbol s, int sign = 1) {
    return {-(s.id() + 1), static_cast<std::int8_t>(sign)};
  }

  bool is_gen() const { return code > 0; }
  bool is_name() const { return code < 0; }
  int index() const { return code; }
  Symbol symbol() const;

  Letter inverse() const { return {code, static_cast<std::int8_t>(-sign)}; }
  bool cancels(Letter other) const {
    return code == other.code && sign == -other.sign;
  }

  friend bool operator==(Letter, Letter) = default;
  friend auto operator<=>(Letter, Letter) = default;
};

class WordError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A word in the Humphries generators w_1..w_{2g+1} and named abbreviations.
///
/// Words are read left to right exactly as written; no reduction happens
/// unless free_reduce is called explicitly.
class TwistWord {
public:
  explicit TwistWord(int genus = 2);
  TwistWord(int genus, std::vector<Letter> letters);
  TwistWord(int genus, std::initializer_list<Letter> letters);

  int genus() const { return genus_; }
  int generator_count() const { return 2 * genus_ + 1; }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  bool has_names() const;

  TwistWord subword(std::size_t pos, std::size_t len) const;
  /// Replaces letters [pos, pos+len) by `with`.
  TwistWord splice(std::size_t pos, std::size_t len, const TwistWord& with) const;

  TwistWord& operator*=(const TwistWord& rhs);
  friend TwistWord operator*(TwistWord lhs, const TwistWord& rhs) {
    lhs *= rhs;
    return lhs;
  }

  friend bool operator==(const TwistWord&, const TwistWord&) = default;

private:
  int genus_;
  std::vector<Letter> letters_;
};

/// Cancels every adjacent pair x x^-1 until none remains.
TwistWord free_reduce(const TwistWord& w);
bool is_freely_reduced(const TwistWord& w);

/// Reverse with flipped signs, then freely reduced.
TwistWord invert(const TwistWord& w);
/// Plain reversal with flipped signs and no reduction.
TwistWord formal_inverse(const TwistWord& w);

/// by * core * by^-1, freely reduced.
TwistWord conjugate(const TwistWord& core, const TwistWord& by);

/// w^n for any integer n (n < 0 uses the formal inverse); not reduced.
TwistWord power(const TwistWord& w, int n);

/// Canonical text form accepted back by parse_word: "w1 w2^-1 z0".
std::string render(const TwistWord& w);
std::string render(Letter l);

/// True when the two words are equal up to rotation or inversion after
/// cyclic reduction. Both words must be pure generator words.
bool cyclically_equivalent(const TwistWord& a, const TwistWord& b);

}  // namespace mcg2

#endif  // MCG2_WORD_HPP
