// mcg2: command-line driver for the genus-2 finite subgroup verifier.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or data error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mcg2/catalog.hpp"
#include "mcg2/group.hpp"
#include "mcg2/orbifold.hpp"
#include "mcg2/parse.hpp"
#include "mcg2/script.hpp"
#include "mcg2/symplectic.hpp"

#ifndef MCG2_DEFAULT_DATA_DIR
#define MCG2_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace mcg2;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

fs::path data_dir() {
  if (const char* env = std::getenv("MCG2_DATA_DIR"))
    return env;
  return MCG2_DEFAULT_DATA_DIR;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    out.push_back(item);
  return out;
}

std::vector<SpMatrix> evaluate_all(const std::vector<std::string>& texts, int genus) {
  const auto defs = standard_defs(genus);
  const auto cfg = SymplecticConfig::standard(genus);
  std::vector<SpMatrix> out;
  for (const auto& t : texts)
    out.push_back(evaluate(parse_word(t, genus, defs), cfg, &defs));
  return out;
}

void print_matrix(const SpMatrix& m) {
  for (int r = 0; r < m.dim(); ++r) {
    std::cout << "  ";
    for (int c = 0; c < m.dim(); ++c)
      std::cout << (c ? " " : "") << std::setw(4) << m(r, c);
    std::cout << "\n";
  }
}

int cmd_eval(const std::string& text, int genus, int cap) {
  const auto defs = standard_defs(genus);
  const auto cfg = SymplecticConfig::standard(genus);
  const auto w = parse_word(text, genus, defs);
  const auto m = evaluate(w, cfg, &defs);
  std::cout << "word:       " << (w.empty() ? "(empty)" : render(w)) << "\n";
  std::cout << "expanded:   " << (w.empty() ? "(empty)" : render(expand(w, defs))) << "\n";
  std::cout << "matrix:\n";
  print_matrix(m);
  std::cout << "trace:      " << m.trace() << "\n";
  std::cout << "symplectic: " << (symplectic_check(m, cfg) ? "yes" : "NO") << "\n";
  auto order = matrix_order(m, cap);
  std::cout << "order:      " << (order ? std::to_string(*order) : "> " + std::to_string(cap))
            << "\n";
  if (order && *order > 1)
    std::cout << "fixed:      " << 2 - m.trace() << "\n";
  return kPass;
}

int cmd_closure(const std::string& words, std::size_t cap, bool csv) {
  auto table = closure(evaluate_all(split_words(words), 2), cap);
  if (csv) {
    std::cout << to_csv(table);
    return kPass;
  }
  auto inv = invariants(table);
  std::cout << "order:         " << inv.order << "\n";
  std::cout << "element orders:";
  for (const auto& [k, v] : inv.order_histogram)
    std::cout << " " << k << ":" << v;
  std::cout << "\ncenter:        " << inv.center_order << "\n";
  std::cout << "abelian:       " << (inv.abelian ? "yes" : "no") << "\n";
  std::cout << "derived:       " << inv.derived_order << "\n";
  auto poset = cyclic_subgroup_poset(table);
  std::cout << "cyclic subgroups: " << poset.subgroups.size() << " in " << poset.class_count
            << " conjugacy classes\n";
  return kPass;
}

int cmd_signature(const std::string& words, std::size_t cap) {
  auto table = closure(evaluate_all(split_words(words), 2), cap);
  auto sig = signature(table);
  std::cout << sig.str() << "  " << sig.compressed() << "  |G| = " << table.order() << "\n";
  return riemann_hurwitz_check(sig, static_cast<std::int64_t>(table.order())) ? kPass : kFail;
}

void print_failure(const InstanceVerdict& v) {
  if (!v.error.empty())
    std::cout << "  error: " << v.error << "\n";
  if (v.failure) {
    const auto& f = *v.failure;
    std::cout << "  step " << f.step_index;
    if (f.line)
      std::cout << " (line " << f.line << ")";
    else
      std::cout << " (final comparison)";
    std::cout << ": " << f.diagnosis << "\n";
    std::cout << "  current word: " << render(f.current) << "\n";
  }
}

int cmd_check_script(const fs::path& path, std::optional<int> genus, const fs::path& lib_dir,
                     bool trace) {
  auto src = ScriptSource::load(path);
  ScriptLibrary lib(lib_dir);
  const int g = genus.value_or(src.genus());
  CheckOptions opts;
  if (trace)
    opts.on_step = [](const StepEvent& e) {
      std::cout << "  " << e.index << ": " << to_string(e.step) << "\n      " << render(e.after)
                << "\n";
    };
  auto verdicts = lib.check_source(src, g, opts);
  if (verdicts.empty()) {
    std::cout << "FAIL " << src.id() << " has no instances at genus " << g << "\n";
    return kFail;
  }
  bool all = true;
  for (const auto& v : verdicts) {
    std::cout << (v.verified ? "PASS " : "FAIL ") << v.id << " (genus " << g << ")\n";
    if (!v.verified)
      print_failure(v);
    all = all && v.verified;
  }
  return all ? kPass : kFail;
}

int cmd_verify_group(const std::string& id, const fs::path& catalog_path, bool json,
                     const fs::path& lib_dir) {
  auto catalog = Catalog::load(catalog_path);
  ScriptLibrary lib(lib_dir);
  CatalogVerifier verifier(catalog, lib);
  std::vector<std::string> ids;
  if (id != "all") {
    if (!catalog.find(id)) {
      std::cerr << "mcg2: unknown group id '" << id << "'\n";
      return kUsage;
    }
    ids.push_back(id);
  }
  auto report = verifier.run(ids);
  std::cout << (json ? to_json(report) + "\n" : to_text(report));
  return report.all_pass() ? kPass : kFail;
}

int cmd_search(const std::string& lhs, const std::string& rhs, int genus, int depth,
               bool inverse, const std::vector<std::string>& lemmas, const fs::path& lib_dir) {
  const auto defs = standard_defs(genus);
  auto a = parse_word(lhs, genus, defs), b = parse_word(rhs, genus, defs);
  auto rules = relation_set(genus);
  SearchOptions opts;
  opts.defs = &defs;
  opts.include_inverse_rules = inverse;
  ScriptLibrary lib(lib_dir);
  // A bare script id stands for all of its instances.
  std::vector<std::string> ids;
  for (const auto& id : lemmas) {
    if (id.find('[') == std::string::npos && lib.has(id)) {
      const auto& src = lib.source(id);
      for (const auto& values : src.instances(genus))
        ids.push_back(src.instance_id(values));
    } else {
      ids.push_back(id);
    }
  }
  for (const auto& id : ids) {
    const Equation* eq = lib.store().require(id, genus);
    if (!eq)
      throw std::invalid_argument("lemma '" + id + "' is not available");
    opts.lemmas.emplace_back(id, *eq);
  }
  auto found = search_equal(a, b, rules, depth, opts);
  if (!found) {
    std::cout << "not found within depth " << depth << "\n";
    return kFail;
  }
  std::cout << to_text(*found);
  return kPass;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifier for the finite subgroups of the genus-2 mapping class group"};
  app.require_subcommand(1);
  const fs::path data = data_dir();

  std::string word_text;
  int genus = 2;
  int order_cap = 1000;
  auto* eval = app.add_subcommand("eval", "Matrix, trace, order and fixed points of a word");
  eval->add_option("word", word_text, "word, e.g. \"w1 w2 z0^-1\"")->required();
  eval->add_option("--genus", genus, "surface genus")->check(CLI::Range(1, 20));
  eval->add_option("--cap", order_cap, "largest order to search")->check(CLI::PositiveNumber);

  std::string group_id;
  std::string catalog_path = (data / "catalog.txt").string();
  std::string lib_dir = (data / "scripts").string();
  bool json = false;
  auto* verify = app.add_subcommand("verify-group", "Check catalog entries");
  verify->add_option("id", group_id, "group id (e.g. 2.aa) or 'all'")->required();
  verify->add_option("--catalog", catalog_path, "catalog file");
  verify->add_option("--scripts", lib_dir, "lemma script directory");
  verify->add_flag("--json", json, "machine-readable report");

  std::string words;
  std::size_t cap = 10000;
  auto* sig = app.add_subcommand("signature", "Orbifold type of the group generated by words");
  sig->add_option("words", words, "comma-separated words")->required();
  sig->add_option("--cap", cap, "closure cap")->check(CLI::PositiveNumber);

  std::string script_path;
  std::optional<int> script_genus;
  bool trace = false;
  auto* check = app.add_subcommand("check-script", "Replay a derivation script");
  check->add_option("path", script_path, "script file")->required()->check(CLI::ExistingFile);
  check->add_option("--genus", script_genus, "instantiate at this genus")
      ->check(CLI::Range(1, 20));
  check->add_option("--scripts", lib_dir, "lemma script directory");
  check->add_flag("--trace", trace, "print the word after every step");

  bool csv = false;
  auto* clos = app.add_subcommand("closure", "Enumerate the matrix group generated by words");
  clos->add_option("words", words, "comma-separated words")->required();
  clos->add_option("--cap", cap, "element cap")->check(CLI::PositiveNumber);
  clos->add_flag("--csv", csv, "print the Cayley table as CSV");

  std::string lhs, rhs;
  int depth = 4;
  bool inverse = false;
  std::vector<std::string> lemma_ids;
  auto* search = app.add_subcommand("search", "Bounded search for a rewrite derivation");
  search->add_option("lhs", lhs)->required();
  search->add_option("rhs", rhs)->required();
  search->add_option("--genus", genus)->check(CLI::Range(1, 20));
  search->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
  search->add_flag("--inverse", inverse, "also rewrite with inverted rule forms");
  search->add_option("--lemma", lemma_ids, "lemma instance usable as a move, e.g. z1pow[i=3,j=1]");
  search->add_option("--scripts", lib_dir, "lemma script directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*eval)
      return cmd_eval(word_text, genus, order_cap);
    if (*verify)
      return cmd_verify_group(group_id, catalog_path, json, lib_dir);
    if (*sig)
      return cmd_signature(words, cap);
    if (*check)
      return cmd_check_script(script_path, script_genus, lib_dir, trace);
    if (*clos)
      return cmd_closure(words, cap, csv);
    if (*search)
      return cmd_search(lhs, rhs, genus, depth, inverse, lemma_ids, lib_dir);
  } catch (const CapExceeded& e) {
    std::cerr << "mcg2: " << e.what() << "\n";
    return kFail;
  } catch (const SignatureError& e) {
    std::cerr << "mcg2: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "mcg2: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
