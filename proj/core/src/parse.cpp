#include "mcg2/parse.hpp"

#include <cctype>
#include <climits>
#include <vector>

namespace mcg2 {

namespace {

class WordParser {
public:
  WordParser(std::string_view text, int genus, const DefTable* defs)
      : text_(text), genus_(genus), defs_(defs) {}

  TwistWord run() {
    auto letters = parse_word_body();
    skip_space();
    if (pos_ != text_.size())
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return TwistWord(genus_, std::move(letters));
  }

private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at_term_start() {
    skip_space();
    if (pos_ >= text_.size())
      return false;
    char c = text_[pos_];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c));
  }

  std::vector<Letter> parse_word_body() {
    std::vector<Letter> out;
    while (at_term_start()) {
      auto term = parse_term();
      out.insert(out.end(), term.begin(), term.end());
    }
    return out;
  }

  std::vector<Letter> parse_term() {
    auto base = parse_factor();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      int e = parse_int();
      return raise(base, e);
    }
    return base;
  }

  static std::vector<Letter> raise(const std::vector<Letter>& base, int e) {
    std::vector<Letter> unit;
    if (e >= 0) {
      unit = base;
    } else {
      for (auto it = base.rbegin(); it != base.rend(); ++it)
        unit.push_back(it->inverse());
    }
    std::vector<Letter> out;
    int reps = e < 0 ? -e : e;
    for (int i = 0; i < reps; ++i)
      out.insert(out.end(), unit.begin(), unit.end());
    return out;
  }

  int parse_int() {
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("expected integer exponent", start);
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 100000)
        throw ParseError("exponent too large", start);
      ++pos_;
    }
    return static_cast<int>(neg ? -v : v);
  }

  std::vector<Letter> parse_factor() {
    skip_space();
    std::size_t start = pos_;
    if (text_[pos_] == '(') {
      ++pos_;
      auto inner = parse_word_body();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    while (pos_ < text_.size() &&
           std::isalnum(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string_view ident = text_.substr(start, pos_ - start);
    if (is_generator(ident)) {
      long idx = 0;
      for (std::size_t i = 1; i < ident.size(); ++i) {
        idx = idx * 10 + (ident[i] - '0');
        if (idx > INT_MAX / 16)
          break;
      }
      if (idx < 1 || idx > 2 * genus_ + 1)
        throw ParseError("generator " + std::string(ident) +
                             " out of range 1.." + std::to_string(2 * genus_ + 1),
                         start);
      return {Letter::gen(static_cast<int>(idx))};
    }
    auto sym = Symbol::intern(ident);
    if (defs_ && !defs_->contains(sym))
      throw ParseError("unknown name '" + std::string(ident) + "'", start);
    return {Letter::name(sym)};
  }

  static bool is_generator(std::string_view ident) {
    if (ident.size() < 2 || ident[0] != 'w')
      return false;
    for (std::size_t i = 1; i < ident.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(ident[i])))
        return false;
    return true;
  }

  std::string_view text_;
  int genus_;
  const DefTable* defs_;
  std::size_t pos_ = 0;
};

}  // namespace

TwistWord parse_word(std::string_view text, int genus, const DefTable& defs) {
  return WordParser(text, genus, &defs).run();
}

TwistWord parse_word_unchecked(std::string_view text, int genus) {
  return WordParser(text, genus, nullptr).run();
}

}  // namespace mcg2
