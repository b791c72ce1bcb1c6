#include "mcg2/symplectic.hpp"

#include <algorithm>

namespace mcg2 {

namespace {

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw ArithmeticOverflow("integer overflow in matrix arithmetic");
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw ArithmeticOverflow("integer overflow in matrix arithmetic");
  return r;
}

// Determinant by fraction-free Gaussian elimination (Bareiss); small sizes only.
std::int64_t determinant(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t n = m.size();
  std::int64_t prev = 1, sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0)
        ++r;
      if (r == n)
        return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = add(mul(m[i][j], m[k][k]), -mul(m[i][k], m[k][j])) / prev;
    prev = m[k][k];
  }
  return n == 0 ? 1 : sign * m[n - 1][n - 1];
}

} // namespace

SpMatrix::SpMatrix(int n, std::vector<std::int64_t> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("matrix entry count does not match dimension");
}

SpMatrix SpMatrix::identity(int n) {
  SpMatrix m(n);
  for (int i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

bool SpMatrix::is_identity() const {
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0))
        return false;
  return true;
}

std::int64_t SpMatrix::trace() const {
  std::int64_t t = 0;
  for (int i = 0; i < n_; ++i)
    t = add(t, (*this)(i, i));
  return t;
}

SpMatrix SpMatrix::transpose() const {
  SpMatrix t(n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

SpMatrix SpMatrix::operator-() const {
  SpMatrix m(n_);
  for (std::size_t i = 0; i < a_.size(); ++i)
    m.a_[i] = mul(a_[i], -1);
  return m;
}

IntVec SpMatrix::apply(const IntVec& x) const {
  if (x.size() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("vector dimension mismatch");
  IntVec y(n_, 0);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c)
      y[r] = add(y[r], mul((*this)(r, c), x[c]));
  return y;
}

SpMatrix operator*(const SpMatrix& a, const SpMatrix& b) {
  if (a.n_ != b.n_)
    throw std::invalid_argument("matrix dimension mismatch");
  const int n = a.n_;
  SpMatrix p(n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const std::int64_t x = a(r, k);
      if (x == 0)
        continue;
      for (int c = 0; c < n; ++c)
        p(r, c) = add(p(r, c), mul(x, b(k, c)));
    }
  return p;
}

std::string to_string(const SpMatrix& m) {
  std::string s = "[";
  for (int r = 0; r < m.dim(); ++r) {
    s += r ? ",[" : "[";
    for (int c = 0; c < m.dim(); ++c) {
      if (c)
        s += ',';
      s += std::to_string(m(r, c));
    }
    s += ']';
  }
  return s + "]";
}

SymplecticConfig SymplecticConfig::standard(int genus) {
  if (genus < 1)
    throw std::invalid_argument("genus must be positive");
  SymplecticConfig cfg;
  cfg.genus = genus;
  const int n = 2 * genus;
  cfg.form = SpMatrix(n);
  for (int k = 0; k < genus; ++k) {
    cfg.form(2 * k, 2 * k + 1) = 1;
    cfg.form(2 * k + 1, 2 * k) = -1;
  }
  auto a = [n](int k) { IntVec v(n, 0); v[2 * (k - 1)] = 1; return v; };
  auto b = [n](int k) { IntVec v(n, 0); v[2 * (k - 1) + 1] = 1; return v; };
  cfg.vectors.push_back(a(1));
  for (int k = 1; k <= genus; ++k) {
    cfg.vectors.push_back(b(k));
    if (k < genus) {
      IntVec v = a(k);
      v[2 * k] = 1;
      cfg.vectors.push_back(v);
    }
  }
  cfg.vectors.push_back(a(genus));
  return cfg;
}

std::int64_t SymplecticConfig::pairing(const IntVec& x, const IntVec& y) const {
  const IntVec jy = form.apply(y);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    s = add(s, mul(x[i], jy[i]));
  return s;
}

std::optional<std::string> SymplecticConfig::validate() const {
  const int n = dim();
  if (form.dim() != n)
    return "form has the wrong dimension";
  if (!(form.transpose() == -form))
    return "form is not antisymmetric";
  if (!(form * form == -SpMatrix::identity(n)))
    return "form does not square to -I";
  if (static_cast<int>(vectors.size()) != n + 1)
    return "expected " + std::to_string(n + 1) + " curve classes";
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != n)
      return "curve class of the wrong dimension";
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const auto p = pairing(vectors[i], vectors[j]);
      if (j == i + 1 && p != 1 && p != -1)
        return "<v" + std::to_string(i + 1) + ",v" + std::to_string(j + 1) + "> is not +-1";
      if (j > i + 1 && p != 0)
        return "<v" + std::to_string(i + 1) + ",v" + std::to_string(j + 1) + "> is not 0";
    }
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[i][j] = vectors[j][i];
  const auto det = determinant(m);
  if (det != 1 && det != -1)
    return "v1..v" + std::to_string(n) + " do not span the lattice";
  return std::nullopt;
}

SpMatrix transvection(const IntVec& v, const SymplecticConfig& cfg, int sign) {
  const int n = cfg.dim();
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("vector dimension mismatch");
  if (std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }))
    throw std::invalid_argument("transvection along the zero vector");
  // <x, v> = x^T J v = (Jv) . x, so T = I + sign * v (Jv)^T.
  const IntVec jv = cfg.form.apply(v);
  SpMatrix t = SpMatrix::identity(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      t(r, c) = add(t(r, c), mul(sign, mul(v[r], jv[c])));
  return t;
}

SpMatrix evaluate(const TwistWord& w, const SymplecticConfig& cfg, const DefTable* defs) {
  if (w.genus() != cfg.genus)
    throw std::invalid_argument("word genus does not match the representation");
  TwistWord pure = w;
  if (w.has_names()) {
    if (defs) {
      pure = expand(w, *defs);
    } else {
      pure = expand(w, standard_defs(w.genus()));
    }
  }
  std::vector<SpMatrix> fwd, bwd;
  for (const auto& v : cfg.vectors) {
    fwd.push_back(transvection(v, cfg, 1));
    bwd.push_back(transvection(v, cfg, -1));
  }
  SpMatrix m = SpMatrix::identity(cfg.dim());
  for (auto l : pure)
    m = m * (l.sign > 0 ? fwd : bwd)[l.index() - 1];
  return m;
}

std::optional<int> matrix_order(const SpMatrix& m, int cap) {
  if (cap < 1)
    throw std::invalid_argument("cap must be positive");
  SpMatrix p = m;
  try {
    for (int n = 1; n <= cap; ++n) {
      if (p.is_identity())
        return n;
      if (n < cap)
        p = p * m;
    }
  } catch (const ArithmeticOverflow&) {
    // Powers of a finite-order matrix stay bounded.
  }
  return std::nullopt;
}

bool symplectic_check(const SpMatrix& m, const SymplecticConfig& cfg) {
  if (m.dim() != cfg.dim())
    return false;
  return m.transpose() * cfg.form * m == cfg.form;
}

} // namespace mcg2
