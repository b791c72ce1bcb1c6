#ifndef MCG2_REWRITE_HPP
#define MCG2_REWRITE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mcg2/word.hpp"

namespace mcg2 {

enum class Direction { forward, backward };

/// One defining relation lhs = rhs of the mapping class group, usable in
/// either direction. Both sides are pure, freely reduced generator words.
struct RewriteRule {
  std::string id;       // "braid[i=1]", "comm[i=1,j=3]", "chain", ...
  std::string family;   // "braid", "comm", "chain", "hyper", "central"
  std::map<std::string, int> params;
  TwistWord lhs;
  TwistWord rhs;

  int genus() const { return lhs.genus(); }
};

/// Thrown when a rule or lemma side does not occur where a step says it does.
class NoMatchError : public std::runtime_error {
public:
  NoMatchError(const std::string& what, std::string expected, std::string found)
      : std::runtime_error(what), expected_(std::move(expected)),
        found_(std::move(found)) {}
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

private:
  std::string expected_;
  std::string found_;
};

class RuleSet {
public:
  RuleSet() = default;
  explicit RuleSet(int genus) : genus_(genus) {}

  int genus() const { return genus_; }
  void add(RewriteRule rule);

  const std::vector<RewriteRule>& rules() const { return rules_; }
  /// Looks up "family" or "family[k=v,...]"; nullptr when absent.
  const RewriteRule* find(std::string_view id) const;
  std::size_t size() const { return rules_.size(); }

private:
  int genus_ = 2;
  std::vector<RewriteRule> rules_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Canonical rule id, e.g. rule_id("braid", {{"i", 2}}) == "braid[i=2]".
std::string rule_id(std::string_view family, const std::map<std::string, int>& params);

/// The defining relations in the Humphries generators:
///   comm[i,j]    w_i w_j = w_j w_i           for |i-j| >= 2 (both orders)
///   braid[i]     w_i w_{i+1} w_i = w_{i+1} w_i w_{i+1}
///   chain        (w_1 ... w_{2g+1})^{2g+2} = 1
///   hyper        z0^2 = 1
/// and for genus 2 only
///   central[i]   z0 w_i = w_i z0             for i = 1..5
RuleSet relation_set(int genus);

/// Replaces the occurrence of `from` at `pos` in `w` by `to`.
/// With `inverted` the equation is used in the form from^-1 = to^-1.
TwistWord apply_equation(const TwistWord& w, const TwistWord& from,
                         const TwistWord& to, std::size_t pos, bool inverted = false);

/// Leftmost position where `side` (or its inverse) occurs in `w`.
std::optional<std::size_t> find_occurrence(const TwistWord& w, const TwistWord& side,
                                           bool inverted = false);

/// One rewrite step with a defining relation; no free reduction afterwards.
TwistWord apply_rule(const TwistWord& w, const RewriteRule& rule, std::size_t pos,
                     Direction dir, bool inverted = false);

/// Normal form of a word modulo the commutation relations w_i^a w_j^b =
/// w_j^b w_i^a (|i-j| >= 2). Named letters commute with nothing.
/// Two words are equal via commutations alone iff their normal forms agree.
TwistWord commutation_normal_form(const TwistWord& w);
bool commutation_equivalent(const TwistWord& a, const TwistWord& b);

}  // namespace mcg2

#endif  // MCG2_REWRITE_HPP
