#ifndef MCG2_CATALOG_HPP
#define MCG2_CATALOG_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcg2/group.hpp"
#include "mcg2/orbifold.hpp"
#include "mcg2/script.hpp"
#include "mcg2/symplectic.hpp"

namespace mcg2 {

class CatalogError : public std::runtime_error {
public:
  CatalogError(const std::string& where, int line, const std::string& msg)
    : std::runtime_error(where + ":" + std::to_string(line) + ": " + msg) {}
};

/// One finite subgroup of MCG_2 as claimed: generator words, an abstract
/// presentation, its order and the quotient orbifold type.
struct CatalogEntry {
  struct Relator {
    std::string name;
    std::string text;
  };
  struct ScriptRef {
    std::string label;
    std::filesystem::path path; // resolved against the catalog directory
  };

  std::string id;
  std::string iso;
  std::vector<std::pair<std::string, std::string>> gens; // name -> word text
  std::vector<Relator> relators;
  std::size_t order = 0;
  OrbifoldSignature type;
  std::optional<std::string> printed_type; // when the source prints something else
  std::vector<std::string> notes;
  std::vector<ScriptRef> scripts;
  int line = 0;

  std::vector<std::string> generator_names() const;
};

/// Line-oriented catalog:
///   group 2.aa / iso GL2(3) / gen x = word / rel [name:] word / order 48 /
///   type (0;2,3,8) / printed-type text / note text / script label = path / end
struct Catalog {
  std::filesystem::path source;
  std::filesystem::path base_dir;
  std::vector<CatalogEntry> entries;

  static Catalog parse(const std::string& text, const std::filesystem::path& base_dir,
                       const std::string& origin = "<catalog>");
  static Catalog load(const std::filesystem::path& path);

  const CatalogEntry* find(const std::string& id) const;
};

struct GroupVerdict {
  std::string id;
  std::string iso;
  std::size_t claimed_order = 0;
  OrbifoldSignature claimed_type;
  std::optional<std::string> printed_type;
  std::vector<std::string> notes;

  PresentationReport presentation;
  std::optional<GroupInvariants> invariants;
  std::optional<OrbifoldSignature> signature;
  bool order_ok = false;
  bool type_ok = false;
  std::vector<std::string> findings;
  bool pass = false;
};

struct Report {
  int genus = 2;
  SymplecticConfig config;
  std::vector<std::string> assumptions;
  std::vector<GroupVerdict> groups;
  std::vector<InstanceVerdict> scripts; // every relator script checked, by id
  bool all_pass() const;
  std::size_t pass_count() const;
};

/// Generator words of an entry, parsed against the standard abbreviations.
std::map<std::string, TwistWord> assignment(const CatalogEntry& e);

/// Runs every check for catalog entries against one script library.
class CatalogVerifier {
public:
  CatalogVerifier(const Catalog& catalog, ScriptLibrary& library,
                  SymplecticConfig cfg = SymplecticConfig::standard(2));

  GroupVerdict verify(const CatalogEntry& e);
  /// Every entry when `ids` is empty.
  Report run(const std::vector<std::string>& ids = {});

  static std::vector<std::string> standard_assumptions();

private:
  const InstanceVerdict& script_verdict(const std::filesystem::path& path);

  const Catalog& catalog_;
  ScriptLibrary& library_;
  SymplecticConfig cfg_;
  std::map<std::filesystem::path, InstanceVerdict> script_cache_;
  std::map<std::filesystem::path, std::optional<TwistWord>> goal_cache_;
};

std::string to_json(const Report& r, int indent = 2);
std::string to_text(const Report& r);

} // namespace mcg2

#endif // MCG2_CATALOG_HPP
