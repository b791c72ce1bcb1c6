#ifndef MCG2_SYMPLECTIC_HPP
#define MCG2_SYMPLECTIC_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcg2/defs.hpp"
#include "mcg2/word.hpp"

namespace mcg2 {

class ArithmeticOverflow : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

using IntVec = std::vector<std::int64_t>;

/// Square integer matrix, row-major. Every operation checks for overflow.
class SpMatrix {
public:
  SpMatrix() = default;
  explicit SpMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}
  SpMatrix(int n, std::vector<std::int64_t> entries);

  static SpMatrix identity(int n);

  int dim() const { return n_; }
  std::int64_t operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }
  std::int64_t& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
  const std::vector<std::int64_t>& entries() const { return a_; }

  bool is_identity() const;
  std::int64_t trace() const;
  SpMatrix transpose() const;
  SpMatrix operator-() const;
  IntVec apply(const IntVec& x) const;

  friend SpMatrix operator*(const SpMatrix& a, const SpMatrix& b);
  friend bool operator==(const SpMatrix&, const SpMatrix&) = default;
  friend auto operator<=>(const SpMatrix&, const SpMatrix&) = default;

private:
  int n_ = 0;
  std::vector<std::int64_t> a_;
};

std::string to_string(const SpMatrix& m); // "[[1,0],[0,1]]"

/// Homology data for the Humphries curves: the intersection form J and the
/// classes v_1..v_{2g+1}. A generator w_i acts by x -> x + <x, v_i> v_i with
/// <x, y> = x^T J y; words act as matrix products in reading order.
struct SymplecticConfig {
  int genus = 2;
  SpMatrix form;
  std::vector<IntVec> vectors;

  int dim() const { return 2 * genus; }

  /// Basis (a1, b1, ..., ag, bg), J block-diagonal with blocks [[0,1],[-1,0]],
  /// v1 = a1, v_{2k} = b_k, v_{2k+1} = a_k + a_{k+1}, v_{2g+1} = a_g.
  static SymplecticConfig standard(int genus = 2);

  /// Empty when J is antisymmetric with J^2 = -I, the curve classes satisfy
  /// the chain intersection pattern, and v_1..v_{2g} span the lattice;
  /// otherwise the first violated condition.
  std::optional<std::string> validate() const;

  std::int64_t pairing(const IntVec& x, const IntVec& y) const;
};

/// x -> x + sign * <x, v> v.
SpMatrix transvection(const IntVec& v, const SymplecticConfig& cfg, int sign = 1);

/// Image of a word; names are expanded through `defs` (standard_defs when null).
SpMatrix evaluate(const TwistWord& w, const SymplecticConfig& cfg, const DefTable* defs = nullptr);

/// Least n in 1..cap with M^n = I.
std::optional<int> matrix_order(const SpMatrix& m, int cap);

/// M^T J M == J.
bool symplectic_check(const SpMatrix& m, const SymplecticConfig& cfg);

} // namespace mcg2

#endif // MCG2_SYMPLECTIC_HPP
