#include "mcg2/script.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "expr.hpp"
#include "mcg2/parse.hpp"

namespace mcg2 {

using detail::Env;
using detail::ExprError;

// ------------------------------------------------------------------ helpers

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;)
    out.push_back(t);
  return out;
}

// First whitespace-delimited token and the trimmed remainder.
std::pair<std::string, std::string> head_tail(std::string_view s) {
  std::string t = trim(s);
  auto sp = t.find_first_of(" \t");
  if (sp == std::string::npos)
    return {t, {}};
  return {t.substr(0, sp), trim(std::string_view(t).substr(sp))};
}

bool starts_with_word(std::string_view line, std::string_view kw) {
  return line.substr(0, kw.size()) == kw &&
         (line.size() == kw.size() || line[kw.size()] == ' ' || line[kw.size()] == '\t');
}

std::string format_instance(const std::string& base, const std::map<std::string, long>& values) {
  if (values.empty())
    return base;
  std::string id = base + "[";
  bool first = true;
  for (const auto& [k, v] : values) {
    if (!first)
      id += ',';
    first = false;
    id += k + "=" + std::to_string(v);
  }
  return id + "]";
}

std::string normalize_instance(const std::string& id) {
  auto [base, values] = split_instance_id(id);
  return format_instance(base, values);
}

// Replaces every occurrence (either orientation) of the names used by `eq`
// with the caller's meaning and reports the first disagreement.
std::optional<std::string> name_mismatch(const Equation& eq, const DefTable& defs) {
  for (const auto& [sym, exp] : eq.names) {
    if (!defs.contains(sym))
      return "lemma uses '" + std::string(sym.name()) + "', which is not defined here";
    if (!(defs.expansion(sym) == exp))
      return "lemma's '" + std::string(sym.name()) + "' differs from the definition here";
  }
  return std::nullopt;
}

} // namespace

std::pair<std::string, std::map<std::string, long>> split_instance_id(const std::string& id) {
  auto open = id.find('[');
  if (open == std::string::npos)
    return {id, {}};
  if (id.back() != ']')
    throw std::invalid_argument("malformed lemma id '" + id + "'");
  std::map<std::string, long> values;
  std::string inner = id.substr(open + 1, id.size() - open - 2);
  std::istringstream in(inner);
  for (std::string part; std::getline(in, part, ',');) {
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("malformed lemma id '" + id + "'");
    try {
      values[trim(part.substr(0, eq))] = std::stol(part.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed lemma id '" + id + "'");
    }
  }
  return {id.substr(0, open), values};
}

// ----------------------------------------------------------------- steps

std::string to_string(const Step& s) {
  using K = Step::Kind;
  std::string out;
  auto at = [&] {
    if (s.pos)
      out += " at " + std::to_string(*s.pos);
  };
  auto dir_inv = [&] {
    if (s.dir == Direction::backward)
      out += " bwd";
    if (s.inverse)
      out += " inv";
  };
  switch (s.kind) {
  case K::rule: {
    out = "rule ";
    auto [family, params] = split_instance_id(s.ref);
    out += family;
    for (const auto& [k, v] : params)
      out += " " + k + "=" + std::to_string(v);
    at();
    dir_inv();
    break;
  }
  case K::expand:
    out = "expand " + s.ref;
    at();
    break;
  case K::collapse:
    out = "collapse " + s.ref;
    at();
    break;
  case K::insert:
    out = "insert " + render(s.word) + " at " + std::to_string(s.pos.value_or(0));
    break;
  case K::free_reduce:
    out = "freereduce";
    break;
  case K::free_equal:
    out = "free " + render(s.word);
    break;
  case K::commute:
    out = "commute " + render(s.word);
    break;
  case K::expect:
    out = "expect " + render(s.word);
    break;
  case K::lemma:
    out = "lemma " + s.ref;
    at();
    dir_inv();
    break;
  case K::conj:
    out = "conj " + render(s.word);
    break;
  case K::invert:
    out = "invert";
    break;
  case K::mul_left:
    out = "mulleft " + render(s.word);
    break;
  case K::mul_right:
    out = "mulright " + render(s.word);
    break;
  case K::swap:
    out = "swap";
    break;
  }
  return out;
}

std::string to_text(const DerivationScript& s) {
  std::string out = "lemma " + s.name + " genus " + std::to_string(s.genus) + "\n";
  out += "goal " + render(s.lhs) + " = " + render(s.rhs) + "\n";
  for (const auto& step : s.steps)
    out += to_string(step) + "\n";
  return out;
}

// ----------------------------------------------------------------- lemmas

void LemmaStore::add(const std::string& id, int genus, Equation eq) {
  entries_.insert_or_assign({genus, id}, std::move(eq));
}

const Equation* LemmaStore::find(const std::string& id, int genus) const {
  auto it = entries_.find({genus, id});
  return it == entries_.end() ? nullptr : &it->second;
}

const Equation* LemmaStore::require(const std::string& id, int genus) {
  if (auto* e = find(id, genus))
    return e;
  if (resolver_)
    resolver_(id, genus, *this);
  return find(id, genus);
}

Equation make_equation(const TwistWord& lhs, const TwistWord& rhs, const DefTable& defs) {
  Equation eq{lhs, rhs, {}};
  for (const auto* w : {&lhs, &rhs})
    for (auto l : *w)
      if (l.is_name())
        eq.names.emplace(l.symbol(), defs.expansion(l.symbol()));
  return eq;
}

// ----------------------------------------------------------------- replay

namespace {

struct StepError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t locate(const TwistWord& w, const TwistWord& side, bool inverted,
                   const std::optional<std::size_t>& pos) {
  if (pos)
    return *pos;
  auto p = find_occurrence(w, side, inverted);
  if (!p) {
    const TwistWord pattern = inverted ? formal_inverse(side) : side;
    throw StepError("'" + render(pattern) + "' does not occur in the current word");
  }
  return *p;
}

TwistWord expand_once(const TwistWord& w, std::size_t at, const DefTable& defs) {
  if (at >= w.size())
    throw StepError("position " + std::to_string(at) + " beyond word of length " +
                    std::to_string(w.size()));
  Letter l = w[at];
  if (!l.is_name())
    throw StepError("no name at position " + std::to_string(at) + " (found '" + render(l) +
                    "')");
  const TwistWord& body = defs.body(l.symbol());
  return w.splice(at, 1, l.sign > 0 ? body : formal_inverse(body));
}

TwistWord do_expand(const TwistWord& w, const Step& step, const DefTable& defs) {
  Symbol sym = Symbol::intern(step.ref);
  if (!defs.contains(sym))
    throw StepError("undefined name '" + step.ref + "'");
  if (step.pos) {
    if (*step.pos < w.size() && w[*step.pos].is_name() && w[*step.pos].symbol() != sym)
      throw StepError("expected '" + step.ref + "' at position " + std::to_string(*step.pos) +
                      ", found '" + render(w[*step.pos]) + "'");
    return expand_once(w, *step.pos, defs);
  }
  TwistWord out = w;
  bool any = false;
  for (std::size_t i = out.size(); i-- > 0;)
    if (out[i].is_name() && out[i].symbol() == sym) {
      out = expand_once(out, i, defs);
      any = true;
    }
  if (!any)
    throw StepError("'" + step.ref + "' does not occur in the current word");
  return out;
}

TwistWord do_collapse(const TwistWord& w, const Step& step, const DefTable& defs) {
  Symbol sym = Symbol::intern(step.ref);
  if (!defs.contains(sym))
    throw StepError("undefined name '" + step.ref + "'");
  const TwistWord& body = defs.body(sym);
  if (body.empty())
    throw StepError("cannot collapse the empty word");
  const TwistWord inv = formal_inverse(body);
  auto matches_at = [&](const TwistWord& pat, std::size_t p) {
    return p + pat.size() <= w.size() && w.subword(p, pat.size()) == pat;
  };
  auto collapse_at = [&](std::size_t p) -> std::optional<TwistWord> {
    if (matches_at(body, p))
      return w.splice(p, body.size(), TwistWord(w.genus(), {Letter::name(sym, 1)}));
    if (matches_at(inv, p))
      return w.splice(p, inv.size(), TwistWord(w.genus(), {Letter::name(sym, -1)}));
    return std::nullopt;
  };
  if (step.pos) {
    if (auto r = collapse_at(*step.pos))
      return *r;
    std::size_t avail = *step.pos < w.size() ? std::min(body.size(), w.size() - *step.pos) : 0;
    throw StepError("no match at position " + std::to_string(*step.pos) + ": expected '" +
                    render(body) + "' or its inverse, found '" +
                    render(w.subword(std::min(*step.pos, w.size()), avail)) + "'");
  }
  for (std::size_t p = 0; p < w.size(); ++p)
    if (auto r = collapse_at(p))
      return *r;
  throw StepError("'" + render(body) + "' does not occur in the current word");
}

} // namespace

CheckResult check_script(const DerivationScript& s, const RuleSet& rules, LemmaStore& lemmas,
                         const CheckOptions& opts) {
  using K = Step::Kind;
  TwistWord current = s.lhs;
  TwistWord target = s.rhs;

  auto fail = [&](std::size_t index, int line, std::string why) {
    CheckResult r;
    r.failure = StepFailure{index, line, current, std::move(why)};
    return r;
  };

  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const Step& step = s.steps[i];
    TwistWord next = current;
    TwistWord next_target = target;
    try {
      switch (step.kind) {
      case K::rule: {
        const RewriteRule* rule = rules.find(step.ref);
        if (!rule)
          throw StepError("unknown rule '" + step.ref + "'");
        const TwistWord& from = step.dir == Direction::forward ? rule->lhs : rule->rhs;
        std::size_t p = locate(current, from, step.inverse, step.pos);
        next = apply_rule(current, *rule, p, step.dir, step.inverse);
        break;
      }
      case K::expand:
        next = do_expand(current, step, s.defs);
        break;
      case K::collapse:
        next = do_collapse(current, step, s.defs);
        break;
      case K::insert: {
        std::size_t p = step.pos.value_or(0);
        if (p > current.size())
          throw StepError("insert position " + std::to_string(p) + " beyond word of length " +
                          std::to_string(current.size()));
        next = current.splice(p, 0, step.word * formal_inverse(step.word));
        break;
      }
      case K::free_reduce:
        next = free_reduce(current);
        break;
      case K::free_equal:
        if (!(expand(current, s.defs) == expand(step.word, s.defs)))
          throw StepError("not freely equal to '" + render(step.word) + "'");
        next = step.word;
        break;
      case K::commute:
        if (!commutation_equivalent(current, step.word))
          throw StepError("not equal to '" + render(step.word) + "' by commutations alone");
        next = step.word;
        break;
      case K::expect:
        if (!(current == step.word))
          throw StepError("expected '" + render(step.word) + "'");
        break;
      case K::lemma: {
        const Equation* eq = lemmas.require(step.ref, s.genus);
        if (!eq)
          throw StepError("lemma '" + step.ref + "' is not verified at genus " +
                          std::to_string(s.genus));
        if (auto why = name_mismatch(*eq, s.defs))
          throw StepError(*why);
        const TwistWord& from = step.dir == Direction::forward ? eq->lhs : eq->rhs;
        const TwistWord& to = step.dir == Direction::forward ? eq->rhs : eq->lhs;
        if (from.empty() && !step.pos)
          throw StepError("an empty lemma side needs an explicit position");
        std::size_t p = from.empty() ? *step.pos : locate(current, from, step.inverse, step.pos);
        next = apply_equation(current, from, to, p, step.inverse);
        break;
      }
      case K::conj:
        next = step.word * current * formal_inverse(step.word);
        next_target = step.word * target * formal_inverse(step.word);
        break;
      case K::invert:
        next = formal_inverse(current);
        next_target = formal_inverse(target);
        break;
      case K::mul_left:
        next = step.word * current;
        next_target = step.word * target;
        break;
      case K::mul_right:
        next = current * step.word;
        next_target = target * step.word;
        break;
      case K::swap:
        std::swap(next, next_target);
        break;
      }
    } catch (const NoMatchError& e) {
      return fail(i, step.line, e.what());
    } catch (const std::exception& e) {
      return fail(i, step.line, e.what());
    }
    if (opts.on_step)
      opts.on_step(StepEvent{i, step, current, next, next_target});
    current = std::move(next);
    target = std::move(next_target);
  }

  try {
    TwistWord a = expand(current, s.defs);
    TwistWord b = expand(target, s.defs);
    if (!(a == b))
      return fail(s.steps.size(), 0,
                  "final word '" + render(a) + "' differs from goal '" + render(b) + "'");
  } catch (const std::exception& e) {
    return fail(s.steps.size(), 0, e.what());
  }
  lemmas.add(s.name, s.genus, make_equation(s.lhs, s.rhs, s.defs));
  CheckResult r;
  r.verified = true;
  return r;
}

// ----------------------------------------------------------------- search

namespace {

std::string key(const TwistWord& w) {
  std::string k;
  k.reserve(w.size() * 5);
  for (auto l : w) {
    auto c = static_cast<std::uint32_t>(l.code);
    k.push_back(static_cast<char>(c & 0xff));
    k.push_back(static_cast<char>((c >> 8) & 0xff));
    k.push_back(static_cast<char>((c >> 16) & 0xff));
    k.push_back(static_cast<char>((c >> 24) & 0xff));
    k.push_back(static_cast<char>(l.sign));
  }
  return k;
}

struct Move {
  Step::Kind kind;
  std::string ref;
  const TwistWord* from;
  const TwistWord* to;
  Direction dir;
  bool inverse;
};

} // namespace

std::optional<DerivationScript> search_equal(const TwistWord& w1, const TwistWord& w2,
                                             const RuleSet& rules, int depth,
                                             const SearchOptions& opts) {
  const int genus = w1.genus();
  DefTable fallback = standard_defs(genus);
  const DefTable& defs = opts.defs ? *opts.defs : fallback;

  DerivationScript script;
  script.name = "search";
  script.genus = genus;
  script.defs = defs;
  script.lhs = w1;
  script.rhs = w2;

  const TwistWord goal = expand(w2, defs);
  const TwistWord start = free_reduce(w1);
  const bool reduce_first = !(start == w1);

  std::vector<Move> moves;
  auto add_moves = [&](Step::Kind kind, const std::string& ref, const TwistWord& lhs,
                       const TwistWord& rhs) {
    for (bool inv : {false, true}) {
      if (inv && !opts.include_inverse_rules)
        continue;
      if (!lhs.empty())
        moves.push_back({kind, ref, &lhs, &rhs, Direction::forward, inv});
      if (!rhs.empty())
        moves.push_back({kind, ref, &rhs, &lhs, Direction::backward, inv});
    }
  };
  for (const auto& r : rules.rules())
    add_moves(Step::Kind::rule, r.id, r.lhs, r.rhs);
  for (const auto& [id, eq] : opts.lemmas)
    add_moves(Step::Kind::lemma, id, eq.lhs, eq.rhs);

  struct Node {
    TwistWord word;
    std::size_t parent;
    Step step;
    int depth;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> seen;
  std::deque<std::size_t> queue;

  nodes.push_back({start, 0, Step{}, 0});
  seen.emplace(key(start), 0);
  queue.push_back(0);

  auto build = [&](std::size_t idx) {
    std::vector<Step> path;
    for (std::size_t n = idx; n != 0; n = nodes[n].parent) {
      path.push_back(Step{});
      path.push_back(nodes[n].step);
    }
    std::reverse(path.begin(), path.end());
    if (reduce_first)
      script.steps.push_back(Step{});
    script.steps.insert(script.steps.end(), path.begin(), path.end());
    return script;
  };

  while (!queue.empty()) {
    std::size_t idx = queue.front();
    queue.pop_front();
    if (expand(nodes[idx].word, defs) == goal)
      return build(idx);
    if (nodes[idx].depth >= depth)
      continue;
    for (const auto& m : moves) {
      const TwistWord pattern = m.inverse ? formal_inverse(*m.from) : *m.from;
      const TwistWord w = nodes[idx].word;
      if (pattern.size() > w.size())
        continue;
      for (std::size_t p = 0; p + pattern.size() <= w.size(); ++p) {
        if (!(w.subword(p, pattern.size()) == pattern))
          continue;
        TwistWord next = free_reduce(apply_equation(w, *m.from, *m.to, p, m.inverse));
        auto [it, fresh] = seen.emplace(key(next), nodes.size());
        if (!fresh)
          continue;
        Step st;
        st.kind = m.kind;
        st.ref = m.ref;
        st.pos = p;
        st.dir = m.dir;
        st.inverse = m.inverse;
        nodes.push_back({std::move(next), idx, std::move(st), nodes[idx].depth + 1});
        queue.push_back(nodes.size() - 1);
        if (nodes.size() >= opts.max_states)
          goto exhausted;
      }
    }
  }
exhausted:
  // Drain whatever was generated before the cap.
  for (std::size_t idx : queue)
    if (expand(nodes[idx].word, defs) == goal)
      return build(idx);
  return std::nullopt;
}

// ----------------------------------------------------------- script files

struct ScriptSource::Node {
  enum class Kind { line, loop, branch } kind = Kind::line;
  std::string text; // step text, or condition for branch
  int line = 0;
  // loop
  std::string var, from, to;
  bool descending = false;
  std::vector<Node> body;
  std::vector<Node> otherwise;
};

namespace {

using Node = ScriptSource::Node;

struct BlockParser {
  const std::string& origin;
  const std::vector<std::pair<int, std::string>>& lines;
  std::size_t i = 0;

  // Parses until `end`/`else` (returned) or end of input.
  std::string block(std::vector<Node>& out) {
    while (i < lines.size()) {
      const auto& [no, text] = lines[i];
      if (text == "end" || text == "else")
        return text;
      ++i;
      if (starts_with_word(text, "for")) {
        Node n;
        n.kind = Node::Kind::loop;
        n.line = no;
        auto rest = trim(std::string_view(text).substr(3));
        auto eq = rest.find('=');
        if (eq == std::string::npos)
          throw ScriptError(origin, no, "expected 'for v = a..b' or 'for v = a downto b'");
        n.var = trim(std::string_view(rest).substr(0, eq));
        std::string range = rest.substr(eq + 1);
        if (auto d = range.find("downto"); d != std::string::npos) {
          n.descending = true;
          n.from = trim(std::string_view(range).substr(0, d));
          n.to = trim(std::string_view(range).substr(d + 6));
        } else if (auto d2 = range.find(".."); d2 != std::string::npos) {
          n.from = trim(std::string_view(range).substr(0, d2));
          n.to = trim(std::string_view(range).substr(d2 + 2));
        } else {
          throw ScriptError(origin, no, "loop range needs '..' or 'downto'");
        }
        if (block(n.body) != "end")
          throw ScriptError(origin, no, "'for' without matching 'end'");
        ++i;
        out.push_back(std::move(n));
      } else if (starts_with_word(text, "if")) {
        Node n;
        n.kind = Node::Kind::branch;
        n.line = no;
        n.text = trim(std::string_view(text).substr(2));
        auto stop = block(n.body);
        if (stop == "else") {
          ++i;
          stop = block(n.otherwise);
        }
        if (stop != "end")
          throw ScriptError(origin, no, "'if' without matching 'end'");
        ++i;
        out.push_back(std::move(n));
      } else {
        Node n;
        n.text = text;
        n.line = no;
        out.push_back(std::move(n));
      }
    }
    return {};
  }
};

long eval_at(const std::string& origin, int line, std::string_view text, const Env& env) {
  try {
    return detail::eval_expr(text, env);
  } catch (const ExprError& e) {
    throw ScriptError(origin, line, e.what());
  }
}

std::string subst_at(const std::string& origin, int line, std::string_view text,
                     const Env& env) {
  try {
    return detail::substitute(text, env);
  } catch (const ExprError& e) {
    throw ScriptError(origin, line, e.what());
  }
}

TwistWord word_at(const std::string& origin, int line, std::string_view text, int genus,
                  const DefTable& defs) {
  try {
    return parse_word(text, genus, defs);
  } catch (const std::exception& e) {
    throw ScriptError(origin, line, e.what());
  }
}

std::size_t position_at(const std::string& origin, int line, const std::string& tok) {
  try {
    std::size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size() || v < 0)
      throw std::invalid_argument(tok);
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw ScriptError(origin, line, "bad position '" + tok + "'");
  }
}

// Trailing `at P`, `fwd`, `bwd`, `inv` modifiers; returns the remaining tokens.
std::vector<std::string> modifiers(const std::string& origin, int line,
                                   std::vector<std::string> toks, Step& step) {
  std::vector<std::string> rest;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    const auto& t = toks[k];
    if (t == "at") {
      if (k + 1 >= toks.size())
        throw ScriptError(origin, line, "'at' needs a position");
      step.pos = position_at(origin, line, toks[++k]);
    } else if (t == "fwd") {
      step.dir = Direction::forward;
    } else if (t == "bwd") {
      step.dir = Direction::backward;
    } else if (t == "inv") {
      step.inverse = true;
    } else {
      rest.push_back(t);
    }
  }
  return rest;
}

Step parse_step(const std::string& origin, int line, const std::string& text, int genus,
                const DefTable& defs) {
  using K = Step::Kind;
  auto [kw, arg] = head_tail(text);
  Step step;
  step.line = line;
  auto word = [&](std::string_view t) { return word_at(origin, line, t, genus, defs); };
  auto no_arg = [&] {
    if (!arg.empty())
      throw ScriptError(origin, line, "'" + kw + "' takes no argument");
  };

  if (kw == "rule") {
    step.kind = K::rule;
    auto rest = modifiers(origin, line, tokens(arg), step);
    if (rest.empty())
      throw ScriptError(origin, line, "rule needs a family name");
    std::map<std::string, int> params;
    for (std::size_t k = 1; k < rest.size(); ++k) {
      auto eq = rest[k].find('=');
      if (eq == std::string::npos)
        throw ScriptError(origin, line, "unexpected '" + rest[k] + "'");
      params[rest[k].substr(0, eq)] =
          static_cast<int>(position_at(origin, line, rest[k].substr(eq + 1)));
    }
    step.ref = rest[0].find('[') != std::string::npos ? normalize_instance(rest[0])
                                                      : rule_id(rest[0], params);
  } else if (kw == "expand" || kw == "collapse") {
    step.kind = kw == "expand" ? K::expand : K::collapse;
    auto rest = modifiers(origin, line, tokens(arg), step);
    if (rest.size() != 1 || step.inverse || step.dir != Direction::forward)
      throw ScriptError(origin, line, kw + " takes a name and an optional position");
    step.ref = rest[0];
  } else if (kw == "insert") {
    step.kind = K::insert;
    auto at = arg.rfind(" at ");
    if (at == std::string::npos)
      throw ScriptError(origin, line, "insert needs 'at <position>'");
    step.word = word(arg.substr(0, at));
    step.pos = position_at(origin, line, trim(std::string_view(arg).substr(at + 4)));
  } else if (kw == "freereduce") {
    no_arg();
    step.kind = K::free_reduce;
  } else if (kw == "free" || kw == "commute" || kw == "expect" || kw == "conj" ||
             kw == "mulleft" || kw == "mulright") {
    step.kind = kw == "free"      ? K::free_equal
                : kw == "commute" ? K::commute
                : kw == "expect"  ? K::expect
                : kw == "conj"    ? K::conj
                : kw == "mulleft" ? K::mul_left
                                  : K::mul_right;
    step.word = word(arg);
  } else if (kw == "lemma") {
    step.kind = K::lemma;
    auto rest = modifiers(origin, line, tokens(arg), step);
    if (rest.size() != 1)
      throw ScriptError(origin, line, "lemma takes one id");
    try {
      step.ref = normalize_instance(rest[0]);
    } catch (const std::exception& e) {
      throw ScriptError(origin, line, e.what());
    }
  } else if (kw == "invert") {
    no_arg();
    step.kind = K::invert;
  } else if (kw == "swap") {
    no_arg();
    step.kind = K::swap;
  } else {
    throw ScriptError(origin, line, "unknown step '" + kw + "'");
  }
  return step;
}

void emit(const std::string& origin, const std::vector<Node>& nodes, Env& env,
          std::vector<std::pair<int, std::string>>& out) {
  for (const auto& n : nodes) {
    switch (n.kind) {
    case Node::Kind::line:
      out.emplace_back(n.line, subst_at(origin, n.line, n.text, env));
      break;
    case Node::Kind::branch:
      emit(origin, eval_at(origin, n.line, n.text, env) ? n.body : n.otherwise, env, out);
      break;
    case Node::Kind::loop: {
      long a = eval_at(origin, n.line, n.from, env);
      long b = eval_at(origin, n.line, n.to, env);
      auto saved = env.find(n.var) != env.end() ? std::optional<long>(env[n.var]) : std::nullopt;
      for (long v = a; n.descending ? v >= b : v <= b; v += n.descending ? -1 : 1) {
        env[n.var] = v;
        emit(origin, n.body, env, out);
      }
      if (saved)
        env[n.var] = *saved;
      else
        env.erase(n.var);
      break;
    }
    }
  }
}

} // namespace

ScriptSource ScriptSource::parse(const std::string& text, const std::string& origin) {
  ScriptSource src;
  src.origin_ = origin;
  std::vector<std::pair<int, std::string>> body_lines;
  bool have_header = false, in_body = false;
  int depth = 0;

  std::istringstream in(text);
  int no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++no;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty())
      continue;
    auto [kw, rest] = head_tail(line);
    if (!have_header) {
      if (kw != "lemma")
        throw ScriptError(origin, no, "script must start with 'lemma <id> genus <g>'");
      auto t = tokens(rest);
      if (t.size() != 3 || t[1] != "genus")
        throw ScriptError(origin, no, "expected 'lemma <id> genus <g>'");
      src.id_ = t[0];
      src.genus_ = static_cast<int>(position_at(origin, no, t[2]));
      if (src.genus_ < 1)
        throw ScriptError(origin, no, "genus must be positive");
      have_header = true;
      continue;
    }
    if (depth == 0 && !in_body && (kw == "param" || kw == "require" || kw == "def" ||
                                   kw == "goal")) {
      if (kw == "param") {
        auto eq = rest.find('=');
        auto dots = rest.find("..");
        if (eq == std::string::npos || dots == std::string::npos || dots < eq)
          throw ScriptError(origin, no, "expected 'param v = a..b'");
        Param p{trim(std::string_view(rest).substr(0, eq)),
                trim(std::string_view(rest).substr(eq + 1, dots - eq - 1)),
                trim(std::string_view(rest).substr(dots + 2)), no};
        if (p.name == "g")
          throw ScriptError(origin, no, "'g' is reserved for the genus");
        src.params_.push_back(std::move(p));
      } else if (kw == "require") {
        src.requires_.push_back({rest, no});
      } else {
        src.header_.push_back({line, no});
      }
      continue;
    }
    in_body = true;
    if (starts_with_word(line, "for") || starts_with_word(line, "if"))
      ++depth;
    else if (line == "end")
      --depth;
    body_lines.emplace_back(no, line);
  }
  if (!have_header)
    throw ScriptError(origin, no, "empty script");
  if (std::none_of(src.header_.begin(), src.header_.end(),
                   [](const Line& l) { return starts_with_word(l.text, "goal"); }))
    throw ScriptError(origin, no, "script has no goal");

  auto root = std::make_shared<Node>();
  BlockParser bp{origin, body_lines};
  if (!bp.block(root->body).empty())
    throw ScriptError(origin, body_lines[bp.i].first,
                      "'" + body_lines[bp.i].second + "' without an open block");
  src.body_ = std::move(root);
  return src;
}

ScriptSource ScriptSource::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ScriptError(path.string(), 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::vector<std::string> ScriptSource::param_names() const {
  std::vector<std::string> out;
  for (const auto& p : params_)
    out.push_back(p.name);
  return out;
}

std::vector<std::map<std::string, long>> ScriptSource::instances(int genus) const {
  std::vector<std::map<std::string, long>> out;
  Env env{{"g", genus}};
  std::map<std::string, long> values;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == params_.size()) {
      for (const auto& r : requires_)
        if (!eval_at(origin_, r.line, r.text, env))
          return;
      out.push_back(values);
      return;
    }
    const auto& p = params_[k];
    long a = eval_at(origin_, p.line, p.from, env);
    long b = eval_at(origin_, p.line, p.to, env);
    for (long v = a; v <= b; ++v) {
      env[p.name] = v;
      values[p.name] = v;
      self(self, k + 1);
    }
    env.erase(p.name);
    values.erase(p.name);
  };
  rec(rec, 0);
  return out;
}

bool ScriptSource::admits(int genus, const std::map<std::string, long>& values) const {
  auto all = instances(genus);
  return std::find(all.begin(), all.end(), values) != all.end();
}

std::string ScriptSource::instance_id(const std::map<std::string, long>& values) const {
  return format_instance(id_, values);
}

DerivationScript ScriptSource::instantiate(int genus,
                                           const std::map<std::string, long>& values) const {
  if (!admits(genus, values))
    throw ScriptError(origin_, 0,
                      instance_id(values) + " is not an instance at genus " +
                          std::to_string(genus));
  Env env{{"g", genus}};
  for (const auto& [k, v] : values)
    env[k] = v;

  DerivationScript s;
  s.name = instance_id(values);
  s.genus = genus;
  s.defs = standard_defs(genus);
  bool have_goal = false;
  for (const auto& h : header_) {
    std::string text = subst_at(origin_, h.line, h.text, env);
    auto [kw, rest] = head_tail(text);
    auto eq = rest.find('=');
    if (eq == std::string::npos)
      throw ScriptError(origin_, h.line, "expected '='");
    std::string left = trim(std::string_view(rest).substr(0, eq));
    std::string right = trim(std::string_view(rest).substr(eq + 1));
    if (kw == "def") {
      try {
        s.defs.define(left, parse_word(right, genus, s.defs));
      } catch (const ScriptError&) {
        throw;
      } catch (const std::exception& e) {
        throw ScriptError(origin_, h.line, e.what());
      }
    } else {
      if (have_goal)
        throw ScriptError(origin_, h.line, "second goal");
      s.lhs = word_at(origin_, h.line, left, genus, s.defs);
      s.rhs = word_at(origin_, h.line, right, genus, s.defs);
      have_goal = true;
    }
  }

  std::vector<std::pair<int, std::string>> lines;
  emit(origin_, body_->body, env, lines);
  for (const auto& [no, text] : lines)
    s.steps.push_back(parse_step(origin_, no, text, genus, s.defs));
  return s;
}

// ----------------------------------------------------------------- library

ScriptLibrary::ScriptLibrary(const std::filesystem::path& dir) : dir_(dir) {
  if (!std::filesystem::is_directory(dir))
    throw ScriptError(dir.string(), 0, "not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".drv")
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    auto src = ScriptSource::load(f);
    if (sources_.count(src.id()))
      throw ScriptError(f.string(), 1,
                        "lemma id '" + src.id() + "' also defined in " +
                            paths_.at(src.id()).string());
    paths_.emplace(src.id(), f);
    sources_.emplace(src.id(), std::move(src));
  }
  store_.set_resolver(
      [this](const std::string& id, int genus, LemmaStore& st) { resolve(id, genus, st); });
}

std::vector<std::string> ScriptLibrary::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : sources_)
    out.push_back(id);
  return out;
}

const ScriptSource& ScriptLibrary::source(const std::string& base_id) const {
  auto it = sources_.find(base_id);
  if (it == sources_.end())
    throw std::out_of_range("no script for lemma '" + base_id + "'");
  return it->second;
}

InstanceVerdict ScriptLibrary::run(const ScriptSource& src, int genus,
                                   const std::map<std::string, long>& values,
                                   const CheckOptions& opts) {
  const std::string id = src.instance_id(values);
  InstanceVerdict v{id, genus, false, std::nullopt, {}};
  if (store_.contains(id, genus) && !opts.on_step) {
    v.verified = true;
    return v;
  }
  const auto key = std::make_pair(genus, id);
  in_progress_.insert(key);
  try {
    auto script = src.instantiate(genus, values);
    auto rules = relation_set(genus);
    auto r = check_script(script, rules, store_, opts);
    v.verified = r.verified;
    v.failure = r.failure;
  } catch (const std::exception& e) {
    v.error = e.what();
  }
  in_progress_.erase(key);
  if (!v.verified)
    failed_.insert_or_assign(key, v);
  return v;
}

void ScriptLibrary::resolve(const std::string& id, int genus, LemmaStore&) {
  const auto key = std::make_pair(genus, id);
  if (in_progress_.count(key))
    throw std::runtime_error("lemma dependency cycle through '" + id + "'");
  if (auto f = failed_.find(key); f != failed_.end())
    throw std::runtime_error("lemma '" + id + "' failed to verify");
  auto [base, values] = split_instance_id(id);
  auto it = sources_.find(base);
  if (it == sources_.end())
    return;
  if (!it->second.admits(genus, values))
    throw std::runtime_error("'" + id + "' is not an instance of lemma '" + base +
                             "' at genus " + std::to_string(genus));
  auto v = run(it->second, genus, values, {});
  if (!v.verified) {
    std::string why = v.error;
    if (v.failure)
      why = "line " + std::to_string(v.failure->line) + ": " + v.failure->diagnosis;
    throw std::runtime_error("lemma '" + id + "' failed to verify (" + why + ")");
  }
}

std::vector<InstanceVerdict> ScriptLibrary::check_source(const ScriptSource& src, int genus,
                                                         const CheckOptions& opts) {
  std::vector<InstanceVerdict> out;
  std::vector<std::map<std::string, long>> all;
  try {
    all = src.instances(genus);
  } catch (const std::exception& e) {
    out.push_back({src.id(), genus, false, std::nullopt, e.what()});
    return out;
  }
  for (const auto& values : all)
    out.push_back(run(src, genus, values, opts));
  return out;
}

InstanceVerdict ScriptLibrary::check_instance(const std::string& id, int genus,
                                              const CheckOptions& opts) {
  auto [base, values] = split_instance_id(id);
  auto it = sources_.find(base);
  if (it == sources_.end())
    return {id, genus, false, std::nullopt, "no script for lemma '" + base + "'"};
  if (!it->second.admits(genus, values))
    return {id, genus, false, std::nullopt,
            "not an admissible instance at genus " + std::to_string(genus)};
  return run(it->second, genus, values, opts);
}

} // namespace mcg2
