#include "mcg2/rewrite.hpp"

#include <cstdlib>

#include "mcg2/defs.hpp"

namespace mcg2 {

std::string rule_id(std::string_view family, const std::map<std::string, int>& params) {
  std::string id(family);
  if (params.empty())
    return id;
  id += '[';
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first)
      id += ',';
    first = false;
    id += k + "=" + std::to_string(v);
  }
  id += ']';
  return id;
}

void RuleSet::add(RewriteRule rule) {
  if (index_.count(rule.id))
    throw std::invalid_argument("duplicate rule id " + rule.id);
  index_.emplace(rule.id, rules_.size());
  rules_.push_back(std::move(rule));
}

const RewriteRule* RuleSet::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &rules_[it->second];
}

RuleSet relation_set(int genus) {
  if (genus < 1)
    throw std::invalid_argument("genus must be positive");
  RuleSet set(genus);
  const int n = 2 * genus + 1;
  auto g = [genus](std::initializer_list<int> idx) {
    std::vector<Letter> v;
    for (int i : idx)
      v.push_back(Letter::gen(i));
    return TwistWord(genus, std::move(v));
  };
  auto add = [&set](std::string family, std::map<std::string, int> params,
                    TwistWord lhs, TwistWord rhs) {
    auto id = rule_id(family, params);
    set.add({std::move(id), std::move(family), std::move(params), std::move(lhs),
             std::move(rhs)});
  };

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (std::abs(i - j) >= 2)
        add("comm", {{"i", i}, {"j", j}}, g({i, j}), g({j, i}));
  for (int i = 1; i < n; ++i)
    add("braid", {{"i", i}}, g({i, i + 1, i}), g({i + 1, i, i + 1}));

  auto defs = standard_defs(genus);
  const auto& z = defs.expansion(Symbol::intern("z"));
  const auto& z0 = defs.expansion(Symbol::intern("z0"));
  add("chain", {}, power(z, 2 * genus + 2), TwistWord(genus));
  add("hyper", {}, z0 * z0, TwistWord(genus));
  if (genus == 2)
    for (int i = 1; i <= n; ++i)
      add("central", {{"i", i}}, z0 * g({i}), g({i}) * z0);
  return set;
}

std::optional<std::size_t> find_occurrence(const TwistWord& w, const TwistWord& side,
                                           bool inverted) {
  const TwistWord pattern = inverted ? formal_inverse(side) : side;
  if (pattern.empty() || pattern.size() > w.size())
    return std::nullopt;
  for (std::size_t p = 0; p + pattern.size() <= w.size(); ++p) {
    bool ok = true;
    for (std::size_t k = 0; k < pattern.size() && ok; ++k)
      ok = w[p + k] == pattern[k];
    if (ok)
      return p;
  }
  return std::nullopt;
}

TwistWord apply_equation(const TwistWord& w, const TwistWord& from, const TwistWord& to,
                         std::size_t pos, bool inverted) {
  const TwistWord pattern = inverted ? formal_inverse(from) : from;
  const TwistWord replacement = inverted ? formal_inverse(to) : to;
  if (pos > w.size())
    throw NoMatchError("position " + std::to_string(pos) + " beyond word of length " +
                           std::to_string(w.size()),
                       render(pattern), "");
  const std::size_t avail = std::min(pattern.size(), w.size() - pos);
  const auto found = w.subword(pos, avail);
  if (avail < pattern.size() || !(found == pattern))
    throw NoMatchError("no match at position " + std::to_string(pos) + ": expected '" +
                           render(pattern) + "', found '" + render(found) + "'",
                       render(pattern), render(found));
  return w.splice(pos, pattern.size(), replacement);
}

TwistWord apply_rule(const TwistWord& w, const RewriteRule& rule, std::size_t pos,
                     Direction dir, bool inverted) {
  if (rule.genus() != w.genus())
    throw std::invalid_argument("rule " + rule.id + " is for a different genus");
  return dir == Direction::forward ? apply_equation(w, rule.lhs, rule.rhs, pos, inverted)
                                   : apply_equation(w, rule.rhs, rule.lhs, pos, inverted);
}

namespace {

bool independent(Letter a, Letter b) {
  return a.is_gen() && b.is_gen() && std::abs(a.index() - b.index()) >= 2;
}

}  // namespace

TwistWord commutation_normal_form(const TwistWord& w) {
  std::vector<Letter> rest(w.begin(), w.end());
  std::vector<Letter> out;
  out.reserve(rest.size());
  std::vector<bool> used(rest.size(), false);
  for (std::size_t emitted = 0; emitted < rest.size(); ++emitted) {
    // Among letters that commute past every unused letter before them, take
    // the smallest; ties go to the leftmost, which is the one that can move.
    std::size_t best = rest.size();
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (used[i])
        continue;
      bool movable = true;
      for (std::size_t j = 0; j < i && movable; ++j)
        if (!used[j] && !independent(rest[j], rest[i]))
          movable = false;
      if (movable && (best == rest.size() || rest[i] < rest[best]))
        best = i;
    }
    used[best] = true;
    out.push_back(rest[best]);
  }
  return TwistWord(w.genus(), std::move(out));
}

bool commutation_equivalent(const TwistWord& a, const TwistWord& b) {
  if (a.size() != b.size())
    return false;
  return commutation_normal_form(a) == commutation_normal_form(b);
}

}  // namespace mcg2
