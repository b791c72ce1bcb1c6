#include "mcg2/word.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace mcg2 {

namespace {

struct SymbolTable {
  std::mutex mutex;
  // deque keeps string_views stable as the table grows
  std::deque<std::string> names;
  std::unordered_map<std::string_view, std::int32_t> ids;
};

SymbolTable& symbol_table() {
  static SymbolTable table;
  return table;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
  auto& table = symbol_table();
  std::lock_guard lock(table.mutex);
  if (auto it = table.ids.find(name); it != table.ids.end())
    return Symbol(it->second);
  table.names.emplace_back(name);
  auto id = static_cast<std::int32_t>(table.names.size() - 1);
  table.ids.emplace(table.names.back(), id);
  return Symbol(id);
}

std::string_view Symbol::name() const {
  auto& table = symbol_table();
  std::lock_guard lock(table.mutex);
  return table.names.at(static_cast<std::size_t>(id_));
}

Symbol Symbol::from_id(std::int32_t id) {
  auto& table = symbol_table();
  std::lock_guard lock(table.mutex);
  if (id < 0 || static_cast<std::size_t>(id) >= table.names.size())
    throw WordError("unknown symbol id " + std::to_string(id));
  return Symbol(id);
}

Symbol Letter::symbol() const {
  if (!is_name())
    throw WordError("letter is a generator, not a name");
  return Symbol::from_id(-code - 1);
}

TwistWord::TwistWord(int genus) : genus_(genus) {
  if (genus < 1)
    throw WordError("genus must be positive");
}

TwistWord::TwistWord(int genus, std::vector<Letter> letters)
    : genus_(genus), letters_(std::move(letters)) {
  if (genus < 1)
    throw WordError("genus must be positive");
  for (const auto& l : letters_) {
    if (l.is_gen() && l.index() > generator_count())
      throw WordError("generator w" + std::to_string(l.index()) +
                      " out of range for genus " + std::to_string(genus));
    if (l.sign != 1 && l.sign != -1)
      throw WordError("letter exponent must be +1 or -1");
  }
}

TwistWord::TwistWord(int genus, std::initializer_list<Letter> letters)
    : TwistWord(genus, std::vector<Letter>(letters)) {}

bool TwistWord::has_names() const {
  return std::any_of(letters_.begin(), letters_.end(),
                     [](Letter l) { return l.is_name(); });
}

TwistWord TwistWord::subword(std::size_t pos, std::size_t len) const {
  if (pos > letters_.size() || len > letters_.size() - pos)
    throw WordError("subword out of range");
  TwistWord out(genus_);
  out.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                      letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

TwistWord TwistWord::splice(std::size_t pos, std::size_t len,
                            const TwistWord& with) const {
  if (pos > letters_.size() || len > letters_.size() - pos)
    throw WordError("splice out of range");
  TwistWord out(genus_);
  out.letters_.reserve(letters_.size() - len + with.size());
  out.letters_.insert(out.letters_.end(), letters_.begin(),
                      letters_.begin() + static_cast<std::ptrdiff_t>(pos));
  out.letters_.insert(out.letters_.end(), with.letters_.begin(),
                      with.letters_.end());
  out.letters_.insert(out.letters_.end(),
                      letters_.begin() + static_cast<std::ptrdiff_t>(pos + len),
                      letters_.end());
  return out;
}

TwistWord& TwistWord::operator*=(const TwistWord& rhs) {
  if (rhs.genus_ != genus_)
    throw WordError("cannot multiply words of different genus");
  letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return *this;
}

TwistWord free_reduce(const TwistWord& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (auto l : w) {
    if (!stack.empty() && stack.back().cancels(l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return TwistWord(w.genus(), std::move(stack));
}

bool is_freely_reduced(const TwistWord& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i - 1].cancels(w[i]))
      return false;
  return true;
}

TwistWord formal_inverse(const TwistWord& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push_back(it->inverse());
  return TwistWord(w.genus(), std::move(out));
}

TwistWord invert(const TwistWord& w) { return free_reduce(formal_inverse(w)); }

TwistWord conjugate(const TwistWord& core, const TwistWord& by) {
  return free_reduce(by * core * formal_inverse(by));
}

TwistWord power(const TwistWord& w, int n) {
  const TwistWord base = n < 0 ? formal_inverse(w) : w;
  TwistWord out(w.genus());
  for (int i = 0; i < (n < 0 ? -n : n); ++i)
    out *= base;
  return out;
}

std::string render(Letter l) {
  std::string s = l.is_gen() ? "w" + std::to_string(l.index())
                             : std::string(l.symbol().name());
  if (l.sign < 0)
    s += "^-1";
  return s;
}

std::string render(const TwistWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += ' ';
    out += render(w[i]);
  }
  return out;
}

namespace {

std::vector<Letter> cyclic_reduce(const TwistWord& w) {
  auto r = free_reduce(w);
  std::vector<Letter> v(r.begin(), r.end());
  std::size_t lo = 0, hi = v.size();
  while (hi - lo >= 2 && v[lo].cancels(v[hi - 1])) {
    ++lo;
    --hi;
  }
  return {v.begin() + static_cast<std::ptrdiff_t>(lo),
          v.begin() + static_cast<std::ptrdiff_t>(hi)};
}

bool is_rotation(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  if (a.size() != b.size())
    return false;
  if (a.empty())
    return true;
  for (std::size_t shift = 0; shift < a.size(); ++shift) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i)
      ok = a[(i + shift) % a.size()] == b[i];
    if (ok)
      return true;
  }
  return false;
}

}  // namespace

bool cyclically_equivalent(const TwistWord& a, const TwistWord& b) {
  auto ca = cyclic_reduce(a);
  auto cb = cyclic_reduce(b);
  if (is_rotation(ca, cb))
    return true;
  std::vector<Letter> inv;
  for (auto it = cb.rbegin(); it != cb.rend(); ++it)
    inv.push_back(it->inverse());
  return is_rotation(ca, inv);
}

}  // namespace mcg2
