#ifndef MCG2_SCRIPT_HPP
#define MCG2_SCRIPT_HPP

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mcg2/defs.hpp"
#include "mcg2/rewrite.hpp"
#include "mcg2/word.hpp"

namespace mcg2 {

/// One replayable proof step.
///
/// Word-rewriting kinds change the current word only; goal transforms
/// (conj, invert, mulleft, mulright, swap) act on the current word and the
/// target alike, so the remaining obligation stays equivalent to the goal.
struct Step {
  enum class Kind {
    rule,        // rule <id> [at p] [fwd|bwd] [inv]
    expand,      // expand <name> [at p]
    collapse,    // collapse <name> [at p]
    insert,      // insert <word> at p       (inserts word word^-1)
    free_reduce, // freereduce
    free_equal,  // free <word>              (equal after expansion + free reduction)
    commute,     // commute <word>           (equal modulo relation (1))
    expect,      // expect <word>            (literal checkpoint)
    lemma,       // lemma <id> [at p] [fwd|bwd] [inv]
    conj,        // conj <word>
    invert,      // invert
    mul_left,    // mulleft <word>
    mul_right,   // mulright <word>
    swap,        // swap
  };

  Kind kind = Kind::free_reduce;
  std::string ref;                // rule id, name, or lemma instance id
  std::optional<std::size_t> pos; // leftmost match when absent
  Direction dir = Direction::forward;
  bool inverse = false;
  TwistWord word = TwistWord(2);
  int line = 0;

  bool is_goal_transform() const noexcept {
    return kind == Kind::conj || kind == Kind::invert || kind == Kind::mul_left ||
           kind == Kind::mul_right || kind == Kind::swap;
  }
};

std::string to_string(const Step& s);

/// A proof of lhs = rhs at a fixed genus.
struct DerivationScript {
  std::string name;
  int genus = 2;
  DefTable defs{2};
  TwistWord lhs;
  TwistWord rhs;
  std::vector<Step> steps;
};

/// Serialises a script in the line-oriented file format (definitions beyond
/// the standard table are not emitted).
std::string to_text(const DerivationScript& s);

/// A verified equation, with the expansions of every name it mentions so a
/// caller whose names mean something else cannot use it.
struct Equation {
  TwistWord lhs;
  TwistWord rhs;
  std::map<Symbol, TwistWord> names;
};

/// Lemma instance id -> verified equation, per genus. Entries exist only after
/// their script has been checked. An optional resolver is asked to verify
/// missing lemmas on demand.
class LemmaStore {
public:
  using Resolver = std::function<void(const std::string& id, int genus, LemmaStore&)>;

  void add(const std::string& id, int genus, Equation eq);
  const Equation* find(const std::string& id, int genus) const;
  /// find(), consulting the resolver on a miss.
  const Equation* require(const std::string& id, int genus);
  bool contains(const std::string& id, int genus) const { return find(id, genus) != nullptr; }
  std::size_t size() const noexcept { return entries_.size(); }

  void set_resolver(Resolver r) { resolver_ = std::move(r); }

private:
  std::map<std::pair<int, std::string>, Equation> entries_;
  Resolver resolver_;
};

struct StepFailure {
  std::size_t step_index = 0; // == steps.size() for the final comparison
  int line = 0;
  TwistWord current;
  std::string diagnosis;
};

struct StepEvent {
  std::size_t index;
  const Step& step;
  const TwistWord& before;
  const TwistWord& after;
  const TwistWord& target;
};

struct CheckOptions {
  std::function<void(const StepEvent&)> on_step;
};

struct CheckResult {
  bool verified = false;
  std::optional<StepFailure> failure;
  explicit operator bool() const noexcept { return verified; }
};

/// Replays the script. On success the goal enters `lemmas` under the script's
/// name and genus.
CheckResult check_script(const DerivationScript& s, const RuleSet& rules,
                         LemmaStore& lemmas, const CheckOptions& opts = {});

/// Equation carrying the expansions of the names in lhs/rhs.
Equation make_equation(const TwistWord& lhs, const TwistWord& rhs, const DefTable& defs);

struct SearchOptions {
  std::size_t max_states = 200000;
  bool include_inverse_rules = false;
  /// Extra equations usable as rewrite rules, keyed by lemma instance id.
  std::vector<std::pair<std::string, Equation>> lemmas;
  const DefTable* defs = nullptr; // standard_defs(genus) when null
};

/// Bounded breadth-first search for a derivation of w1 = w2. Moves are
/// applications of a non-empty rule side at any offset in either direction,
/// then free reduction. Exhaustive to `depth` (unless max_states is hit) and
/// deterministic. The returned script passes check_script.
std::optional<DerivationScript> search_equal(const TwistWord& w1, const TwistWord& w2,
                                             const RuleSet& rules, int depth,
                                             const SearchOptions& opts = {});

// ------------------------------------------------------------ script files

class ScriptError : public std::runtime_error {
public:
  ScriptError(const std::string& where, int line, const std::string& msg)
    : std::runtime_error(where + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

/// A parsed script file. Files may be parametric: `param i = 1..2*g+1`
/// declares a family of lemma instances `id[i=1]`, `id[i=2]`, ...
class ScriptSource {
public:
  static ScriptSource parse(const std::string& text, const std::string& origin = "<script>");
  static ScriptSource load(const std::filesystem::path& path);

  const std::string& id() const noexcept { return id_; }
  int genus() const noexcept { return genus_; }
  const std::string& origin() const noexcept { return origin_; }
  bool parametric() const noexcept { return !params_.empty(); }
  std::vector<std::string> param_names() const;

  /// Parameter assignments allowed at `genus` (ranges and `require` clauses).
  std::vector<std::map<std::string, long>> instances(int genus) const;
  /// Whether `values` is one of instances(genus).
  bool admits(int genus, const std::map<std::string, long>& values) const;

  std::string instance_id(const std::map<std::string, long>& values) const;
  DerivationScript instantiate(int genus, const std::map<std::string, long>& values) const;

  struct Node; // body tree (opaque)

private:
  struct Param {
    std::string name;
    std::string from;
    std::string to;
    int line;
  };
  struct Line {
    std::string text;
    int line;
  };

  std::string origin_;
  std::string id_;
  int genus_ = 2;
  std::vector<Param> params_;
  std::vector<Line> requires_;
  std::vector<Line> header_; // def and goal lines, in order
  std::shared_ptr<const Node> body_;
};

/// Splits "z1pow[i=2,j=3]" into ("z1pow", {i:2, j:3}).
std::pair<std::string, std::map<std::string, long>> split_instance_id(const std::string& id);

/// Verdict for one lemma instance checked by the library.
struct InstanceVerdict {
  std::string id;
  int genus;
  bool verified;
  std::optional<StepFailure> failure;
  std::string error; // instantiation / dependency errors
};

/// A directory of *.drv files indexed by lemma id. Missing lemmas referenced
/// by a script are verified on demand; dependency cycles are rejected.
class ScriptLibrary {
public:
  explicit ScriptLibrary(const std::filesystem::path& dir);
  ScriptLibrary(const ScriptLibrary&) = delete;
  ScriptLibrary& operator=(const ScriptLibrary&) = delete;

  const std::filesystem::path& directory() const noexcept { return dir_; }
  std::vector<std::string> ids() const;
  bool has(const std::string& base_id) const { return sources_.count(base_id) != 0; }
  const ScriptSource& source(const std::string& base_id) const;

  /// Checks every admissible instance of `src` at `genus`.
  std::vector<InstanceVerdict> check_source(const ScriptSource& src, int genus,
                                            const CheckOptions& opts = {});
  /// Checks a single instance ("z1pow[i=2,j=3]").
  InstanceVerdict check_instance(const std::string& id, int genus, const CheckOptions& opts = {});

  LemmaStore& store() noexcept { return store_; }

private:
  InstanceVerdict run(const ScriptSource& src, int genus,
                      const std::map<std::string, long>& values, const CheckOptions& opts);
  void resolve(const std::string& id, int genus, LemmaStore& store);

  std::filesystem::path dir_;
  std::map<std::string, ScriptSource> sources_;
  std::map<std::string, std::filesystem::path> paths_;
  LemmaStore store_;
  std::set<std::pair<int, std::string>> in_progress_;
  std::map<std::pair<int, std::string>, InstanceVerdict> failed_;
};

} // namespace mcg2

#endif // MCG2_SCRIPT_HPP
