#include "mcg2/catalog.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mcg2/parse.hpp"

namespace mcg2 {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::pair<std::string, std::string> split_eq(const std::string& s, const std::string& origin,
                                             int line) {
  auto eq = s.find('=');
  if (eq == std::string::npos)
    throw CatalogError(origin, line, "expected '<name> = <value>'");
  return {trim(std::string_view(s).substr(0, eq)), trim(std::string_view(s).substr(eq + 1))};
}

} // namespace

std::vector<std::string> CatalogEntry::generator_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : gens)
    out.push_back(name);
  return out;
}

Catalog Catalog::parse(const std::string& text, const std::filesystem::path& base_dir,
                       const std::string& origin) {
  Catalog cat;
  cat.base_dir = base_dir;
  std::optional<CatalogEntry> cur;
  bool have_order = false, have_type = false;
  std::istringstream in(text);
  int no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++no;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty())
      continue;
    auto sp = line.find_first_of(" \t");
    std::string kw = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(std::string_view(line).substr(sp));

    if (kw == "group") {
      if (cur)
        throw CatalogError(origin, no, "'group' inside group " + cur->id + " (missing 'end')");
      if (rest.empty())
        throw CatalogError(origin, no, "group needs an id");
      if (cat.find(rest))
        throw CatalogError(origin, no, "duplicate group id " + rest);
      cur.emplace();
      cur->id = rest;
      cur->line = no;
      have_order = have_type = false;
      continue;
    }
    if (!cur)
      throw CatalogError(origin, no, "'" + kw + "' outside a group record");
    if (kw == "iso") {
      cur->iso = rest;
    } else if (kw == "gen") {
      auto [name, word] = split_eq(rest, origin, no);
      for (const auto& [n, _] : cur->gens)
        if (n == name)
          throw CatalogError(origin, no, "generator " + name + " assigned twice");
      cur->gens.emplace_back(name, word);
    } else if (kw == "rel") {
      CatalogEntry::Relator r;
      if (auto colon = rest.find(':'); colon != std::string::npos) {
        r.name = trim(std::string_view(rest).substr(0, colon));
        r.text = trim(std::string_view(rest).substr(colon + 1));
      } else {
        r.name = r.text = rest;
      }
      cur->relators.push_back(std::move(r));
    } else if (kw == "order") {
      try {
        cur->order = std::stoul(rest);
      } catch (const std::logic_error&) {
        throw CatalogError(origin, no, "bad order '" + rest + "'");
      }
      have_order = true;
    } else if (kw == "type") {
      try {
        cur->type = OrbifoldSignature::parse(rest);
      } catch (const std::exception& e) {
        throw CatalogError(origin, no, e.what());
      }
      have_type = true;
    } else if (kw == "printed-type") {
      cur->printed_type = rest;
    } else if (kw == "note") {
      cur->notes.push_back(rest);
    } else if (kw == "script") {
      auto [label, path] = split_eq(rest, origin, no);
      cur->scripts.push_back({label, base_dir / path});
    } else if (kw == "end") {
      if (cur->gens.empty() || cur->relators.empty() || !have_order || !have_type)
        throw CatalogError(origin, cur->line,
                           "group " + cur->id + " needs gen, rel, order and type records");
      cat.entries.push_back(std::move(*cur));
      cur.reset();
    } else {
      throw CatalogError(origin, no, "unknown record '" + kw + "'");
    }
  }
  if (cur)
    throw CatalogError(origin, cur->line, "group " + cur->id + " is not terminated by 'end'");

  // Words must parse and relators must use only the group's generators.
  for (const auto& e : cat.entries) {
    try {
      assignment(e);
      std::vector<std::string> texts;
      for (const auto& r : e.relators)
        texts.push_back(r.text);
      Presentation::parse(e.generator_names(), texts);
    } catch (const std::exception& ex) {
      throw CatalogError(origin, e.line, "group " + e.id + ": " + ex.what());
    }
  }
  return cat;
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw CatalogError(path.string(), 0, "cannot open catalog");
  std::stringstream ss;
  ss << in.rdbuf();
  auto cat = parse(ss.str(), path.parent_path(), path.string());
  cat.source = path;
  return cat;
}

const CatalogEntry* Catalog::find(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id)
      return &e;
  return nullptr;
}

std::map<std::string, TwistWord> assignment(const CatalogEntry& e) {
  const DefTable defs = standard_defs(2);
  std::map<std::string, TwistWord> out;
  for (const auto& [name, text] : e.gens)
    out.emplace(name, parse_word(text, 2, defs));
  return out;
}

bool Report::all_pass() const { return pass_count() == groups.size(); }

std::size_t Report::pass_count() const {
  std::size_t n = 0;
  for (const auto& g : groups)
    n += g.pass ? 1 : 0;
  return n;
}

CatalogVerifier::CatalogVerifier(const Catalog& catalog, ScriptLibrary& library,
                                 SymplecticConfig cfg)
  : catalog_(catalog), library_(library), cfg_(std::move(cfg)) {}

std::vector<std::string> CatalogVerifier::standard_assumptions() {
  return {
      "The Torelli group (kernel of the action on first homology) is torsion-free, so a "
      "word of finite order is determined by its matrix and matrix orders are exact.",
      "A non-trivial finite-order orientation-preserving homeomorphism of a closed surface "
      "has isolated fixed points of index +1; their number is 2 - trace of the homology "
      "action (Lefschetz).",
      "A point fixed by a generator of a cyclic subgroup is fixed by the whole subgroup; "
      "point stabilisers of a finite group action are cyclic.",
      "Homology classes of the Humphries curves are taken as listed in 'vectors'; any "
      "choice with the same intersection pattern is symplectically conjugate.",
  };
}

const InstanceVerdict& CatalogVerifier::script_verdict(const std::filesystem::path& path) {
  auto it = script_cache_.find(path);
  if (it != script_cache_.end())
    return it->second;
  InstanceVerdict v{path.string(), 2, false, std::nullopt, {}};
  std::optional<TwistWord> goal;
  try {
    auto src = ScriptSource::load(path);
    if (src.parametric())
      throw std::runtime_error("relator scripts must not be parametric");
    auto script = src.instantiate(2, {});
    goal = expand(script.lhs * formal_inverse(script.rhs), script.defs);
    auto verdicts = library_.check_source(src, 2);
    v = verdicts.at(0);
  } catch (const std::exception& e) {
    v.error = e.what();
  }
  goal_cache_[path] = goal;
  return script_cache_.emplace(path, std::move(v)).first->second;
}

GroupVerdict CatalogVerifier::verify(const CatalogEntry& e) {
  GroupVerdict g;
  g.id = e.id;
  g.iso = e.iso;
  g.claimed_order = e.order;
  g.claimed_type = e.type;
  g.printed_type = e.printed_type;
  g.notes = e.notes;
  const DefTable defs = standard_defs(2);

  std::map<std::string, TwistWord> assign;
  Presentation pres;
  try {
    assign = assignment(e);
    std::vector<std::string> texts, names;
    for (const auto& r : e.relators) {
      texts.push_back(r.text);
      names.push_back(r.name);
    }
    pres = Presentation::parse(e.generator_names(), texts, names);
  } catch (const std::exception& ex) {
    g.findings.push_back(ex.what());
    return g;
  }

  VerifyOptions opts;
  opts.defs = &defs;
  opts.certify = [&](std::size_t, const TwistWord& rel)
      -> std::optional<std::pair<std::string, bool>> {
    const TwistWord target = expand(rel, defs);
    for (const auto& ref : e.scripts) {
      const auto& v = script_verdict(ref.path);
      const auto& goal = goal_cache_.at(ref.path);
      if (goal && cyclically_equivalent(*goal, target)) {
        std::string id = v.id;
        if (!v.verified) {
          std::string why = v.error;
          if (v.failure)
            why = "step " + std::to_string(v.failure->step_index) + " (line " +
                  std::to_string(v.failure->line) + "): " + v.failure->diagnosis;
          g.findings.push_back("script " + ref.path.filename().string() + ": " + why);
        }
        return std::make_pair(id, v.verified);
      }
    }
    return std::nullopt;
  };
  g.presentation = verify_presentation(assign, pres, cfg_, opts);
  for (const auto& f : g.presentation.findings)
    g.findings.push_back(f);

  std::vector<SpMatrix> gens;
  for (const auto& name : pres.generators)
    gens.push_back(evaluate(assign.at(name), cfg_, &defs));
  try {
    auto table = closure(gens);
    g.invariants = invariants(table);
    g.signature = signature(table);
  } catch (const std::exception& ex) {
    g.findings.push_back(std::string("signature: ") + ex.what());
  }

  g.order_ok = g.presentation.closure_order && g.presentation.tc_order &&
               *g.presentation.closure_order == e.order && *g.presentation.tc_order == e.order;
  if (!g.order_ok)
    g.findings.push_back("order does not match the claimed " + std::to_string(e.order));
  g.type_ok = g.signature && *g.signature == e.type;
  if (g.signature && !g.type_ok)
    g.findings.push_back("signature " + g.signature->str() + " differs from the claimed " +
                         e.type.str());
  if (g.signature && g.printed_type && *g.printed_type != g.signature->str() &&
      *g.printed_type != g.signature->compressed())
    g.notes.push_back("printed type " + *g.printed_type + " does not match the derived " +
                      g.signature->str() + "; compared against " + e.type.str());
  g.pass = g.presentation.iso_certified && g.order_ok && g.type_ok;
  return g;
}

Report CatalogVerifier::run(const std::vector<std::string>& ids) {
  Report r;
  r.config = cfg_;
  r.genus = cfg_.genus;
  r.assumptions = standard_assumptions();
  if (ids.empty()) {
    for (const auto& e : catalog_.entries)
      r.groups.push_back(verify(e));
  } else {
    for (const auto& id : ids) {
      const auto* e = catalog_.find(id);
      if (!e)
        throw std::out_of_range("unknown group id '" + id + "'");
      r.groups.push_back(verify(*e));
    }
  }
  for (const auto& [path, v] : script_cache_)
    r.scripts.push_back(v);
  return r;
}

// ----------------------------------------------------------------- output

namespace {

nlohmann::ordered_json matrix_json(const SpMatrix& m) {
  auto rows = nlohmann::ordered_json::array();
  for (int r = 0; r < m.dim(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (int c = 0; c < m.dim(); ++c)
      row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

} // namespace

std::string to_json(const Report& r, int indent) {
  using json = nlohmann::ordered_json;
  json out = json::object();
  json header;
  header["genus"] = r.genus;
  header["form"] = matrix_json(r.config.form);
  header["vectors"] = r.config.vectors;
  header["sign_convention"] =
      "w_i acts on H_1 by x -> x + <x, v_i> v_i with <x, y> = x^T J y; "
      "words act as matrix products in reading order";
  header["assumptions"] = r.assumptions;
  out["_header"] = header;

  for (const auto& g : r.groups) {
    json j;
    j["iso"] = g.iso;
    j["order"] = g.claimed_order;
    j["tc_order"] = g.presentation.tc_order ? json(*g.presentation.tc_order) : json(nullptr);
    j["closure_order"] =
        g.presentation.closure_order ? json(*g.presentation.closure_order) : json(nullptr);
    j["signature"] = g.signature ? json(g.signature->str()) : json(nullptr);
    j["signature_compressed"] = g.signature ? json(g.signature->compressed()) : json(nullptr);
    j["claimed_signature"] = g.claimed_type.str();
    if (g.printed_type)
      j["printed_signature"] = *g.printed_type;
    auto rels = json::array();
    for (const auto& f : g.presentation.relators) {
      json rel;
      rel["name"] = f.name;
      rel["matrix_ok"] = f.matrix_ok;
      rel["script_ok"] = f.script_ok;
      rel["script"] = f.script_id ? json(*f.script_id) : json(nullptr);
      rels.push_back(rel);
    }
    j["relators"] = rels;
    if (g.invariants) {
      json inv;
      inv["order"] = g.invariants->order;
      json hist = json::object();
      for (const auto& [k, v] : g.invariants->order_histogram)
        hist[std::to_string(k)] = v;
      inv["order_histogram"] = hist;
      inv["center_order"] = g.invariants->center_order;
      inv["abelian"] = g.invariants->abelian;
      inv["derived_order"] = g.invariants->derived_order;
      j["invariants"] = inv;
    }
    j["findings"] = g.findings;
    j["notes"] = g.notes;
    j["verdict"] = g.pass ? "PASS" : "FAIL";
    out[g.id] = j;
  }
  return out.dump(indent);
}

std::string to_text(const Report& r) {
  std::ostringstream out;
  out << "homology: genus " << r.genus << ", J = " << to_string(r.config.form) << "\n";
  out << "curve classes:";
  for (std::size_t i = 0; i < r.config.vectors.size(); ++i) {
    out << " v" << i + 1 << "=(";
    for (std::size_t k = 0; k < r.config.vectors[i].size(); ++k)
      out << (k ? "," : "") << r.config.vectors[i][k];
    out << ")";
  }
  out << "\nconvention: w_i acts by x -> x + <x,v_i> v_i, <x,y> = x^T J y; words multiply in "
         "reading order\n";
  out << "assumptions:\n";
  for (const auto& a : r.assumptions)
    out << "  - " << a << "\n";
  out << "\n";
  for (const auto& g : r.groups) {
    out << (g.pass ? "PASS " : "FAIL ") << g.id << "  " << g.iso << "  order " << g.claimed_order;
    if (g.presentation.closure_order)
      out << "  closure " << *g.presentation.closure_order;
    if (g.presentation.tc_order)
      out << "  cosets " << *g.presentation.tc_order;
    out << "  type " << (g.signature ? g.signature->compressed() : "?") << "\n";
    for (const auto& f : g.presentation.relators)
      out << "    rel " << f.name << ": matrix " << (f.matrix_ok ? "ok" : "FAIL") << ", script "
          << (f.script_id ? *f.script_id : "-") << " " << (f.script_ok ? "ok" : "FAIL") << "\n";
    for (const auto& f : g.findings)
      out << "    ! " << f << "\n";
    for (const auto& n : g.notes)
      out << "    note: " << n << "\n";
  }
  out << "\n" << r.pass_count() << "/" << r.groups.size() << " PASS\n";
  return out.str();
}

} // namespace mcg2
