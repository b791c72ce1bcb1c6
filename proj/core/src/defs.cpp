#include "mcg2/defs.hpp"

#include <cctype>

#include "mcg2/parse.hpp"

namespace mcg2 {

namespace {

bool looks_like_generator(std::string_view name) {
  if (name.size() < 2 || name[0] != 'w')
    return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i])))
      return false;
  return true;
}

}  // namespace

void DefTable::define(std::string_view name, const TwistWord& body) {
  if (name.empty() || looks_like_generator(name))
    throw WordError("invalid definition name '" + std::string(name) + "'");
  if (body.genus() != genus_)
    throw WordError("definition of '" + std::string(name) +
                    "' has the wrong genus");
  auto sym = Symbol::intern(name);
  if (entries_.count(sym))
    throw WordError("name '" + std::string(name) + "' is already defined");
  // Throws on any name not yet defined, which keeps the table acyclic.
  auto expanded = expand(body, *this);
  entries_.emplace(sym, Entry{body, std::move(expanded)});
  order_.push_back(sym);
}

bool DefTable::contains(std::string_view name) const {
  return contains(Symbol::intern(name));
}

const TwistWord& DefTable::body(Symbol s) const {
  auto it = entries_.find(s);
  if (it == entries_.end())
    throw WordError("undefined name '" + std::string(s.name()) + "'");
  return it->second.body;
}

const TwistWord& DefTable::expansion(Symbol s) const {
  auto it = entries_.find(s);
  if (it == entries_.end())
    throw WordError("undefined name '" + std::string(s.name()) + "'");
  return it->second.expansion;
}

TwistWord expand(const TwistWord& w, const DefTable& defs) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto l : w) {
    if (l.is_gen()) {
      out.push_back(l);
      continue;
    }
    const auto& e = defs.expansion(l.symbol());
    if (l.sign > 0)
      out.insert(out.end(), e.begin(), e.end());
    else
      for (auto it = e.letters().rbegin(); it != e.letters().rend(); ++it)
        out.push_back(it->inverse());
  }
  return free_reduce(TwistWord(w.genus(), std::move(out)));
}

DefTable standard_defs(int genus) {
  DefTable defs(genus);
  const int n = 2 * genus + 1;
  auto run = [genus](int from, int to) {
    std::vector<Letter> v;
    if (from <= to)
      for (int i = from; i <= to; ++i)
        v.push_back(Letter::gen(i));
    else
      for (int i = from; i >= to; --i)
        v.push_back(Letter::gen(i));
    return TwistWord(genus, std::move(v));
  };
  defs.define("z", run(1, n));
  defs.define("eta", run(1, n - 1));
  defs.define("xi", TwistWord(genus, {Letter::gen(1)}) * run(1, n - 1));
  defs.define("z0", run(1, n) * run(n, 1));
  if (genus == 2) {
    auto p = [&defs](std::string_view text) { return parse_word(text, 2, defs); };
    defs.define("z1", p("w1 w2 w3 w4 w5"));
    defs.define("z2", p("w1 w2 w4^-1 w5^-1"));
    defs.define("z3", p("w1^2 w2 w3 w4"));
    defs.define("z4", p("w1 w2 w3 w4"));
    defs.define("z5", p("w1 w2 w1 w4^-1 w5^-1 w4^-1"));
  }
  return defs;
}

}  // namespace mcg2
