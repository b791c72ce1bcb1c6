#include "mcg2/orbifold.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace mcg2 {

OrbifoldSignature OrbifoldSignature::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += c;
  auto bad = [&] { return std::invalid_argument("malformed signature '" + std::string(text) + "'"); };
  if (s.size() < 3 || s.front() != '(' || s.back() != ')')
    throw bad();
  s = s.substr(1, s.size() - 2);
  auto semi = s.find(';');
  auto parse_int = [&](const std::string& t) {
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(c); }))
      throw bad();
    return std::stoi(t);
  };
  OrbifoldSignature sig;
  sig.genus = parse_int(s.substr(0, semi));
  if (semi == std::string::npos)
    return sig;
  std::string rest = s.substr(semi + 1);
  std::size_t start = 0;
  while (start <= rest.size() && !rest.empty()) {
    auto comma = rest.find(',', start);
    std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos
                                                                     : comma - start);
    auto caret = item.find('^');
    int m = parse_int(item.substr(0, caret));
    int r = caret == std::string::npos ? 1 : parse_int(item.substr(caret + 1));
    if (m < 2)
      throw bad();
    sig.orders.insert(sig.orders.end(), r, m);
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  std::sort(sig.orders.begin(), sig.orders.end());
  return sig;
}

std::string OrbifoldSignature::str() const {
  std::string s = "(" + std::to_string(genus) + ";";
  for (std::size_t i = 0; i < orders.size(); ++i)
    s += (i ? "," : "") + std::to_string(orders[i]);
  return s + ")";
}

std::string OrbifoldSignature::compressed() const {
  std::string s = "(" + std::to_string(genus) + ";";
  bool first = true;
  for (std::size_t i = 0; i < orders.size();) {
    std::size_t j = i;
    while (j < orders.size() && orders[j] == orders[i])
      ++j;
    s += (first ? "" : ",") + std::to_string(orders[i]);
    if (j - i > 1)
      s += "^" + std::to_string(j - i);
    first = false;
    i = j;
  }
  return s + ")";
}

std::int64_t lefschetz_fix(const SpMatrix& m) {
  if (m.is_identity())
    throw SignatureError("fixed-point count of the identity is undefined");
  const std::int64_t f = 2 - m.trace();
  if (f < 0)
    throw SignatureError("negative fixed-point count " + std::to_string(f) +
                         " (matrix not realisable by a finite-order map)");
  return f;
}

bool riemann_hurwitz_check(const OrbifoldSignature& sig, std::int64_t group_order,
                           int surface_genus) {
  if (group_order < 1 || sig.genus < 0)
    return false;
  std::int64_t rhs = group_order * (2 * sig.genus - 2);
  for (int m : sig.orders) {
    if (m < 2 || group_order % m != 0)
      return false;
    rhs += group_order / m * (m - 1);
  }
  return rhs == 2 * surface_genus - 2;
}

OrbifoldSignature signature(const FiniteGroupTable& t, const CyclicPoset& poset) {
  const auto order = static_cast<std::int64_t>(t.order());
  const int surface_genus = t.elements.empty() ? 2 : t.elements.front().dim() / 2;
  const std::size_t k = poset.subgroups.size();

  std::vector<std::int64_t> fixed(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& c = poset.subgroups[i];
    if (c.order() == 1)
      continue;
    fixed[i] = lefschetz_fix(t.elements[c.generator]);
    for (int e : c.elements)
      if (t.element_order(e) == c.order() && lefschetz_fix(t.elements[e]) != fixed[i])
        throw SignatureError("generators of a cyclic subgroup of order " +
                             std::to_string(c.order()) + " disagree on fixed points");
  }

  // Subgroups are sorted by ascending order, so walking backwards visits
  // every strict supergroup before the subgroup itself.
  std::vector<std::int64_t> exact(k, 0);
  for (std::size_t i = k; i-- > 0;) {
    if (poset.subgroups[i].order() == 1)
      continue;
    std::int64_t e = fixed[i];
    for (std::size_t j = i + 1; j < k; ++j)
      if (poset.contains[j][i] && poset.subgroups[j].order() > poset.subgroups[i].order())
        e -= exact[j];
    if (e < 0)
      throw SignatureError("negative count of points with stabiliser of order " +
                           std::to_string(poset.subgroups[i].order()));
    exact[i] = e;
  }

  std::map<int, std::int64_t> per_class;
  std::map<int, int> class_order;
  for (std::size_t i = 0; i < k; ++i) {
    if (poset.subgroups[i].order() == 1)
      continue;
    per_class[poset.conjugacy_class[i]] += exact[i];
    class_order[poset.conjugacy_class[i]] = poset.subgroups[i].order();
  }

  OrbifoldSignature sig;
  std::int64_t branch_sum = 0;
  for (const auto& [cls, points] : per_class) {
    const int m = class_order[cls];
    if ((m * points) % order != 0)
      throw SignatureError("non-integral orbit count for stabilisers of order " +
                           std::to_string(m));
    const std::int64_t orbits = m * points / order;
    sig.orders.insert(sig.orders.end(), orbits, m);
    branch_sum += orbits * (order / m) * (m - 1);
  }
  std::sort(sig.orders.begin(), sig.orders.end());

  // 2g - 2 = |G|(2h - 2) + branch_sum
  const std::int64_t twice_h_minus_2 = (2 * surface_genus - 2 - branch_sum);
  if (twice_h_minus_2 % order != 0 || (twice_h_minus_2 / order) % 2 != 0)
    throw SignatureError("Riemann-Hurwitz gives a non-integral quotient genus");
  const std::int64_t h = (twice_h_minus_2 / order + 2) / 2;
  if (h < 0)
    throw SignatureError("Riemann-Hurwitz gives a negative quotient genus");
  sig.genus = static_cast<int>(h);
  return sig;
}

OrbifoldSignature signature(const FiniteGroupTable& t) {
  return signature(t, cyclic_subgroup_poset(t));
}

} // namespace mcg2
