#ifndef MCG2_DEFS_HPP
#define MCG2_DEFS_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcg2/word.hpp"

namespace mcg2 {

/// Named abbreviations for words, e.g. z1 = w1 w2 w3 w4 w5.
///
/// A definition may only mention names defined before it, so the table is
/// acyclic by construction and every name has a pure generator expansion,
/// which is computed once at definition time.
class DefTable {
public:
  explicit DefTable(int genus = 2) : genus_(genus) {}

  int genus() const { return genus_; }

  /// Adds `name := body`. Throws WordError on redefinition, on an undefined
  /// name inside `body`, or when `name` looks like a generator (w<digits>).
  void define(std::string_view name, const TwistWord& body);

  bool contains(Symbol s) const { return entries_.count(s) != 0; }
  bool contains(std::string_view name) const;

  /// The body exactly as given to define().
  const TwistWord& body(Symbol s) const;
  /// Pure generator word, freely reduced.
  const TwistWord& expansion(Symbol s) const;

  /// Names in definition order.
  const std::vector<Symbol>& names() const { return order_; }

private:
  struct Entry {
    TwistWord body;
    TwistWord expansion;
  };
  int genus_;
  std::map<Symbol, Entry> entries_;
  std::vector<Symbol> order_;
};

/// Replaces every name by its expansion, then freely reduces.
TwistWord expand(const TwistWord& w, const DefTable& defs);

/// Abbreviations shared by every script and catalog at this genus:
///   z   = w1 w2 ... w_{2g+1}
///   eta = w1 w2 ... w_{2g}
///   xi  = w1 w1 w2 ... w_{2g}
///   z0  = w1 ... w_{2g+1} w_{2g+1} ... w1   (hyperelliptic involution)
/// and, for genus 2 only, the periodic elements z1..z5.
DefTable standard_defs(int genus);

}  // namespace mcg2

#endif  // MCG2_DEFS_HPP
