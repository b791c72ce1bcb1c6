#include "expr.hpp"

#include <cctype>

namespace mcg2::detail {

namespace {

class ExprParser {
public:
  ExprParser(std::string_view text, const Env& env) : text_(text), env_(env) {}

  long run() {
    long v = logical_or();
    skip();
    if (pos_ != text_.size())
      fail("unexpected trailing input");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprError(msg + " in expression '" + std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  long logical_or() {
    long v = logical_and();
    while (eat("||")) {
      long r = logical_and();
      v = (v || r) ? 1 : 0;
    }
    return v;
  }

  long logical_and() {
    long v = comparison();
    while (eat("&&")) {
      long r = comparison();
      v = (v && r) ? 1 : 0;
    }
    return v;
  }

  long comparison() {
    long v = additive();
    for (;;) {
      if (eat("=="))
        v = v == additive();
      else if (eat("!="))
        v = v != additive();
      else if (eat("<="))
        v = v <= additive();
      else if (eat(">="))
        v = v >= additive();
      else if (eat("<"))
        v = v < additive();
      else if (eat(">"))
        v = v > additive();
      else
        return v;
    }
  }

  long additive() {
    long v = multiplicative();
    for (;;) {
      if (eat("+"))
        v += multiplicative();
      else if (eat("-"))
        v -= multiplicative();
      else
        return v;
    }
  }

  long multiplicative() {
    long v = unary();
    for (;;) {
      if (eat("*")) {
        v *= unary();
      } else if (eat("/")) {
        long d = unary();
        if (d == 0)
          fail("division by zero");
        v /= d;
      } else if (eat("%")) {
        long d = unary();
        if (d == 0)
          fail("division by zero");
        v %= d;
      } else {
        return v;
      }
    }
  }

  long unary() {
    if (eat("-"))
      return -unary();
    if (eat("!"))
      return unary() ? 0 : 1;
    return primary();
  }

  long primary() {
    skip();
    if (eat("(")) {
      long v = logical_or();
      if (!eat(")"))
        fail("expected ')'");
      return v;
    }
    if (pos_ >= text_.size())
      fail("unexpected end");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        v = v * 10 + (text_[pos_++] - '0');
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view ident = text_.substr(start, pos_ - start);
      if (ident == "mod") {
        if (!eat("("))
          fail("expected '(' after mod");
        long a = logical_or();
        if (!eat(","))
          fail("expected ',' in mod");
        long b = logical_or();
        if (!eat(")"))
          fail("expected ')'");
        if (b <= 0)
          fail("mod by non-positive value");
        return ((a % b) + b) % b;
      }
      auto it = env_.find(ident);
      if (it == env_.end())
        fail("unknown variable '" + std::string(ident) + "'");
      return it->second;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const Env& env_;
  std::size_t pos_ = 0;
};

// Finds the '>' closing a repetition opened at `open`, honouring nesting and
// skipping over {...} groups.
std::size_t closing_angle(std::string_view text, std::size_t open) {
  int depth = 0, brace = 0;
  for (std::size_t i = open; i < text.size(); ++i) {
    char c = text[i];
    if (c == '{')
      ++brace;
    else if (c == '}')
      --brace;
    else if (brace == 0 && c == '<')
      ++depth;
    else if (brace == 0 && c == '>' && --depth == 0)
      return i;
  }
  throw ExprError("unterminated '<' repetition in '" + std::string(text) + "'");
}

std::string expand_repetitions(std::string_view text, const Env& env) {
  std::string out;
  int brace = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '{')
      ++brace;
    else if (c == '}')
      --brace;
    if (c != '<' || brace != 0) {
      out += c;
      continue;
    }
    std::size_t close = closing_angle(text, i);
    std::string_view inner = text.substr(i + 1, close - i - 1);
    auto colon = inner.find(':');
    auto eq = inner.find('=');
    if (colon == std::string_view::npos || eq == std::string_view::npos || eq > colon)
      throw ExprError("malformed repetition '<" + std::string(inner) + ">'");
    std::string var(inner.substr(0, eq));
    while (!var.empty() && std::isspace(static_cast<unsigned char>(var.back())))
      var.pop_back();
    while (!var.empty() && std::isspace(static_cast<unsigned char>(var.front())))
      var.erase(var.begin());
    std::string_view range = inner.substr(eq + 1, colon - eq - 1);
    std::string_view body = inner.substr(colon + 1);
    bool descending = false;
    std::string_view lo_text, hi_text;
    if (auto d = range.find("downto"); d != std::string_view::npos) {
      descending = true;
      lo_text = range.substr(0, d);
      hi_text = range.substr(d + 6);
    } else if (auto d2 = range.find(".."); d2 != std::string_view::npos) {
      lo_text = range.substr(0, d2);
      hi_text = range.substr(d2 + 2);
    } else {
      throw ExprError("repetition range needs '..' or 'downto'");
    }
    long a = eval_expr(lo_text, env);
    long b = eval_expr(hi_text, env);
    Env inner_env = env;
    auto emit = [&](long v) {
      inner_env[var] = v;
      out += ' ';
      out += substitute(body, inner_env);
      out += ' ';
    };
    if (descending)
      for (long v = a; v >= b; --v)
        emit(v);
    else
      for (long v = a; v <= b; ++v)
        emit(v);
    i = close;
  }
  return out;
}

} // namespace

long eval_expr(std::string_view text, const Env& env) { return ExprParser(text, env).run(); }

std::string substitute(std::string_view text, const Env& env) {
  std::string expanded = expand_repetitions(text, env);
  std::string out;
  for (std::size_t i = 0; i < expanded.size(); ++i) {
    if (expanded[i] != '{') {
      out += expanded[i];
      continue;
    }
    auto close = expanded.find('}', i);
    if (close == std::string::npos)
      throw ExprError("unterminated '{' in '" + expanded + "'");
    out += std::to_string(eval_expr(std::string_view(expanded).substr(i + 1, close - i - 1), env));
    i = close;
  }
  return out;
}

} // namespace mcg2::detail
