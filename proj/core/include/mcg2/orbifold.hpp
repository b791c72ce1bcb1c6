#ifndef MCG2_ORBIFOLD_HPP
#define MCG2_ORBIFOLD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mcg2/group.hpp"
#include "mcg2/symplectic.hpp"

namespace mcg2 {

/// Quotient genus h and branch orders m_1 <= ... <= m_n of R -> R/G.
struct OrbifoldSignature {
  int genus = 0;
  std::vector<int> orders;

  /// Accepts "(0;2,3,8)", "(0; 2,3,8)", "(0;2^6)" and "(1;2,2)".
  static OrbifoldSignature parse(std::string_view text);

  std::string str() const;        // "(0;2,2,2,3)"
  std::string compressed() const; // "(0;2^3,3)"

  friend bool operator==(const OrbifoldSignature&, const OrbifoldSignature&) = default;
};

class SignatureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// 2 - trace: the number of fixed points of a non-trivial finite-order map
/// acting on the surface. Throws SignatureError for I or a negative count.
std::int64_t lefschetz_fix(const SpMatrix& m);

/// 2g - 2 = |G|(2h - 2) + sum (|G|/m_i)(m_i - 1), g = surface genus.
bool riemann_hurwitz_check(const OrbifoldSignature& sig, std::int64_t group_order,
                           int surface_genus = 2);

/// Branch data from fixed-point counts: for each cyclic subgroup C, the number
/// of points whose stabiliser is exactly C, collected per conjugacy class.
OrbifoldSignature signature(const FiniteGroupTable& t, const CyclicPoset& poset);
OrbifoldSignature signature(const FiniteGroupTable& t);

} // namespace mcg2

#endif // MCG2_ORBIFOLD_HPP
