#ifndef MCG2_GROUP_HPP
#define MCG2_GROUP_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcg2/defs.hpp"
#include "mcg2/symplectic.hpp"
#include "mcg2/word.hpp"

namespace mcg2 {

/// Thrown when an enumeration grows past its cap.
class CapExceeded : public std::runtime_error {
public:
  CapExceeded(const std::string& what, std::size_t cap)
    : std::runtime_error(what), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t cap_;
};

/// A finite matrix group with its multiplication table. Elements are listed
/// in breadth-first discovery order from the identity (index 0), extending by
/// the generators in input order.
struct FiniteGroupTable {
  std::vector<SpMatrix> elements;
  std::vector<std::vector<int>> product; // product[a][b] = index of a*b
  std::vector<int> inverse;
  std::vector<int> generators;           // indices of the input generators

  std::size_t order() const { return elements.size(); }
  int identity() const { return 0; }
  int element_order(int a) const;
  int index_of(const SpMatrix& m) const; // -1 when absent
};

FiniteGroupTable closure(const std::vector<SpMatrix>& gens, std::size_t cap = 10000);

/// Cayley table as CSV of element indices (one row per left factor).
std::string to_csv(const FiniteGroupTable& t);

struct GroupInvariants {
  std::size_t order = 0;
  std::map<int, int> order_histogram; // element order -> count
  std::size_t center_order = 0;
  bool abelian = false;
  std::size_t derived_order = 0;

  friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
};

GroupInvariants invariants(const FiniteGroupTable& t);

struct CyclicSubgroup {
  std::vector<int> elements; // sorted table indices
  int generator;             // smallest index generating the subgroup
  int order() const { return static_cast<int>(elements.size()); }
};

/// Every cyclic subgroup once, ordered by (order, elements). Inclusion is
/// `contains[i][j]` = subgroup j is a subset of subgroup i; conjugacy
/// classes are numbered in order of first member.
struct CyclicPoset {
  std::vector<CyclicSubgroup> subgroups;
  std::vector<std::vector<bool>> contains;
  std::vector<int> conjugacy_class;
  int class_count = 0;
};

CyclicPoset cyclic_subgroup_poset(const FiniteGroupTable& t);

/// Abstract presentation: relators are words whose letters are the generator
/// names (as symbols).
struct Presentation {
  std::vector<std::string> generators;
  std::vector<TwistWord> relators;
  std::vector<std::string> relator_names;

  /// Builds from relator texts in the word grammar over the generator names.
  static Presentation parse(const std::vector<std::string>& generators,
                            const std::vector<std::string>& relators,
                            std::vector<std::string> names = {});
};

/// Order of the presented group by coset enumeration over the trivial
/// subgroup (HLT with immediate coincidence processing).
std::size_t todd_coxeter(const Presentation& p, std::size_t cap = 100000);

/// Replaces each generator name of an abstract word by its assigned word.
TwistWord substitute(const TwistWord& abstract, const std::map<std::string, TwistWord>& assignment,
                     int genus);

struct RelatorFinding {
  std::string name;
  TwistWord word;                  // the relator with generators substituted
  bool matrix_ok = false;
  std::optional<std::string> script_id;
  bool script_ok = false;
  std::string note;
};

struct PresentationReport {
  std::vector<RelatorFinding> relators;
  std::optional<std::size_t> closure_order;
  std::optional<std::size_t> tc_order;
  std::vector<std::string> findings; // sub-check failures, human readable
  bool iso_certified = false;
};

/// Certifier for one relator: returns (script id, verified) or nothing when
/// no script covers the relator.
using RelatorCertifier =
    std::function<std::optional<std::pair<std::string, bool>>(std::size_t, const TwistWord&)>;

struct VerifyOptions {
  std::size_t closure_cap = 10000;
  std::size_t tc_cap = 100000;
  RelatorCertifier certify; // without one no relator is script-certified
  const DefTable* defs = nullptr;
};

PresentationReport verify_presentation(const std::map<std::string, TwistWord>& assignment,
                                       const Presentation& p, const SymplecticConfig& cfg,
                                       const VerifyOptions& opts = {});

} // namespace mcg2

#endif // MCG2_GROUP_HPP
