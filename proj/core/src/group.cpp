#include "mcg2/group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "mcg2/parse.hpp"

namespace mcg2 {

int FiniteGroupTable::element_order(int a) const {
  int n = 1;
  for (int p = a; p != identity(); p = product[p][a])
    ++n;
  return n;
}

int FiniteGroupTable::index_of(const SpMatrix& m) const {
  auto it = std::find(elements.begin(), elements.end(), m);
  return it == elements.end() ? -1 : static_cast<int>(it - elements.begin());
}

FiniteGroupTable closure(const std::vector<SpMatrix>& gens, std::size_t cap) {
  if (cap < 1)
    throw std::invalid_argument("cap must be positive");
  int n = gens.empty() ? 0 : gens.front().dim();
  for (const auto& g : gens)
    if (g.dim() != n)
      throw std::invalid_argument("generators of different dimension");

  FiniteGroupTable t;
  std::map<SpMatrix, int> index;
  auto intern = [&](const SpMatrix& m) {
    auto [it, fresh] = index.emplace(m, static_cast<int>(t.elements.size()));
    if (fresh) {
      if (t.elements.size() >= cap)
        throw CapExceeded("closure exceeds " + std::to_string(cap) + " elements", cap);
      t.elements.push_back(m);
    }
    return it->second;
  };
  intern(SpMatrix::identity(n));
  for (std::size_t i = 0; i < t.elements.size(); ++i)
    for (const auto& g : gens)
      intern(t.elements[i] * g);

  for (const auto& g : gens)
    t.generators.push_back(index.at(g));
  const std::size_t order = t.elements.size();
  t.product.assign(order, std::vector<int>(order));
  t.inverse.assign(order, -1);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      int p = index.at(t.elements[a] * t.elements[b]);
      t.product[a][b] = p;
      if (p == 0)
        t.inverse[a] = static_cast<int>(b);
    }
  return t;
}

std::string to_csv(const FiniteGroupTable& t) {
  std::ostringstream out;
  for (const auto& row : t.product) {
    for (std::size_t j = 0; j < row.size(); ++j)
      out << (j ? "," : "") << row[j];
    out << '\n';
  }
  return out.str();
}

GroupInvariants invariants(const FiniteGroupTable& t) {
  GroupInvariants inv;
  const int n = static_cast<int>(t.order());
  inv.order = t.order();
  for (int a = 0; a < n; ++a)
    ++inv.order_histogram[t.element_order(a)];
  for (int a = 0; a < n; ++a) {
    bool central = true;
    for (int b = 0; b < n && central; ++b)
      central = t.product[a][b] == t.product[b][a];
    if (central)
      ++inv.center_order;
  }
  inv.abelian = inv.center_order == inv.order;

  // Derived subgroup: closure of the commutator set under products.
  std::set<int> derived{0};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      derived.insert(t.product[t.product[t.inverse[a]][t.inverse[b]]][t.product[a][b]]);
  std::deque<int> queue(derived.begin(), derived.end());
  const std::vector<int> comms(derived.begin(), derived.end());
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int c : comms)
      if (derived.insert(t.product[x][c]).second)
        queue.push_back(t.product[x][c]);
  }
  inv.derived_order = derived.size();
  return inv;
}

CyclicPoset cyclic_subgroup_poset(const FiniteGroupTable& t) {
  const int n = static_cast<int>(t.order());
  std::map<std::vector<int>, int> seen; // elements -> smallest generator
  for (int a = 0; a < n; ++a) {
    std::vector<int> powers{0};
    for (int p = a; p != 0; p = t.product[p][a])
      powers.push_back(p);
    std::sort(powers.begin(), powers.end());
    seen.emplace(std::move(powers), a);
  }
  CyclicPoset poset;
  for (auto& [elems, gen] : seen)
    poset.subgroups.push_back({elems, gen});
  std::stable_sort(poset.subgroups.begin(), poset.subgroups.end(),
                   [](const CyclicSubgroup& x, const CyclicSubgroup& y) {
                     return x.order() < y.order();
                   });

  const std::size_t k = poset.subgroups.size();
  poset.contains.assign(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto& big = poset.subgroups[i].elements;
      const auto& small = poset.subgroups[j].elements;
      poset.contains[i][j] = std::includes(big.begin(), big.end(), small.begin(), small.end());
    }

  std::map<std::vector<int>, std::size_t> position;
  for (std::size_t i = 0; i < k; ++i)
    position.emplace(poset.subgroups[i].elements, i);
  poset.conjugacy_class.assign(k, -1);
  for (std::size_t i = 0; i < k; ++i) {
    if (poset.conjugacy_class[i] >= 0)
      continue;
    const int cls = poset.class_count++;
    for (int g = 0; g < n; ++g) {
      std::vector<int> conj;
      for (int h : poset.subgroups[i].elements)
        conj.push_back(t.product[t.product[g][h]][t.inverse[g]]);
      std::sort(conj.begin(), conj.end());
      poset.conjugacy_class[position.at(conj)] = cls;
    }
  }
  return poset;
}

Presentation Presentation::parse(const std::vector<std::string>& generators,
                                 const std::vector<std::string>& relators,
                                 std::vector<std::string> names) {
  Presentation p;
  p.generators = generators;
  std::set<std::string> distinct(generators.begin(), generators.end());
  if (distinct.size() != generators.size())
    throw std::invalid_argument("duplicate generator name");
  for (const auto& text : relators) {
    TwistWord w = parse_word_unchecked(text, 1);
    for (auto l : w)
      if (!l.is_name() || !distinct.count(std::string(l.symbol().name())))
        throw std::invalid_argument("relator '" + text + "' uses a letter that is not a generator");
    p.relators.push_back(std::move(w));
  }
  if (names.empty())
    names = relators;
  if (names.size() != relators.size())
    throw std::invalid_argument("relator names do not match relators");
  p.relator_names = std::move(names);
  return p;
}

// --------------------------------------------------------------- cosets

namespace {

class CosetTable {
public:
  CosetTable(int gens, std::size_t cap) : cols_(2 * gens), cap_(cap) { add_row(); }

  std::size_t enumerate(const std::vector<std::vector<int>>& relators) {
    for (std::size_t a = 0; a < parent_.size(); ++a) {
      if (parent_[a] != static_cast<int>(a))
        continue;
      for (const auto& r : relators) {
        scan_and_fill(static_cast<int>(a), r);
        if (parent_[a] != static_cast<int>(a))
          break;
      }
      if (parent_[a] != static_cast<int>(a))
        continue;
      for (int x = 0; x < cols_; ++x)
        if (at(static_cast<int>(a), x) < 0)
          define(static_cast<int>(a), x);
    }
    return live_;
  }

private:
  static int inv(int x) { return x ^ 1; }

  int& at(int coset, int col) { return table_[static_cast<std::size_t>(coset) * cols_ + col]; }

  void add_row() {
    parent_.push_back(static_cast<int>(parent_.size()));
    table_.resize(table_.size() + cols_, -1);
    ++live_;
  }

  void define(int a, int x) {
    if (live_ >= cap_)
      throw CapExceeded("coset enumeration exceeds " + std::to_string(cap_) + " cosets", cap_);
    int b = static_cast<int>(parent_.size());
    add_row();
    at(a, x) = b;
    at(b, inv(x)) = a;
  }

  void scan_and_fill(int a, const std::vector<int>& w) {
    if (w.empty())
      return;
    int f = a, b = a;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && at(f, w[i]) >= 0)
        f = at(f, w[i++]);
      if (i > j) {
        if (f != b)
          coincidence(f, b);
        return;
      }
      while (j >= i && at(b, inv(w[j])) >= 0)
        b = at(b, inv(w[j--]));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        at(f, w[i]) = b;
        at(b, inv(w[i])) = f;
        return;
      }
      define(f, w[i]);
    }
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r)
      r = parent_[r];
    while (parent_[c] != r) {
      int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(int k, int l, std::vector<int>& queue) {
    int p = rep(k), q = rep(l);
    if (p == q)
      return;
    int lo = std::min(p, q), hi = std::max(p, q);
    parent_[hi] = lo;
    --live_;
    queue.push_back(hi);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int g = queue[i];
      for (int x = 0; x < cols_; ++x) {
        int d = at(g, x);
        if (d < 0)
          continue;
        at(d, inv(x)) = -1;
        int m = rep(g), n = rep(d);
        if (at(m, x) >= 0)
          merge(n, at(m, x), queue);
        else if (at(n, inv(x)) >= 0)
          merge(m, at(n, inv(x)), queue);
        else {
          at(m, x) = n;
          at(n, inv(x)) = m;
        }
      }
    }
  }

  int cols_;
  std::size_t cap_;
  std::size_t live_ = 0;
  std::vector<int> parent_;
  std::vector<int> table_;
};

} // namespace

std::size_t todd_coxeter(const Presentation& p, std::size_t cap) {
  if (cap < 1)
    throw std::invalid_argument("cap must be positive");
  std::map<std::string, int> gen_index;
  for (std::size_t i = 0; i < p.generators.size(); ++i)
    gen_index.emplace(p.generators[i], static_cast<int>(i));
  std::vector<std::vector<int>> rels;
  for (const auto& r : p.relators) {
    std::vector<int> cols;
    for (auto l : free_reduce(r)) {
      auto it = gen_index.find(std::string(l.symbol().name()));
      if (!l.is_name() || it == gen_index.end())
        throw std::invalid_argument("relator letter is not a generator");
      cols.push_back(2 * it->second + (l.sign < 0 ? 1 : 0));
    }
    rels.push_back(std::move(cols));
  }
  if (p.generators.empty())
    return 1;
  CosetTable table(static_cast<int>(p.generators.size()), cap);
  return table.enumerate(rels);
}

TwistWord substitute(const TwistWord& abstract, const std::map<std::string, TwistWord>& assignment,
                     int genus) {
  TwistWord out(genus);
  for (auto l : abstract) {
    if (!l.is_name())
      throw std::invalid_argument("abstract word contains a generator letter");
    auto it = assignment.find(std::string(l.symbol().name()));
    if (it == assignment.end())
      throw std::invalid_argument("no word assigned to '" + std::string(l.symbol().name()) + "'");
    out *= l.sign > 0 ? it->second : formal_inverse(it->second);
  }
  return out;
}

PresentationReport verify_presentation(const std::map<std::string, TwistWord>& assignment,
                                       const Presentation& p, const SymplecticConfig& cfg,
                                       const VerifyOptions& opts) {
  PresentationReport rep;
  DefTable fallback = standard_defs(cfg.genus);
  const DefTable& defs = opts.defs ? *opts.defs : fallback;

  std::vector<SpMatrix> gens;
  for (const auto& g : p.generators) {
    auto it = assignment.find(g);
    if (it == assignment.end()) {
      rep.findings.push_back("generator '" + g + "' has no assigned word");
      return rep;
    }
    try {
      gens.push_back(evaluate(it->second, cfg, &defs));
    } catch (const std::exception& e) {
      rep.findings.push_back("generator '" + g + "': " + e.what());
      return rep;
    }
  }

  bool relators_ok = true;
  if (!opts.certify)
    rep.findings.push_back("no relator certifier: relators are checked by matrices only");
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    RelatorFinding f;
    f.name = p.relator_names[i];
    try {
      f.word = substitute(p.relators[i], assignment, cfg.genus);
      f.matrix_ok = evaluate(f.word, cfg, &defs).is_identity();
      if (!f.matrix_ok)
        rep.findings.push_back("relator " + f.name + " does not map to I");
      if (opts.certify) {
        if (auto c = opts.certify(i, f.word)) {
          f.script_id = c->first;
          f.script_ok = c->second;
          if (!f.script_ok)
            rep.findings.push_back("script " + c->first + " for relator " + f.name +
                                   " does not verify");
        } else {
          rep.findings.push_back("no script certifies relator " + f.name);
        }
      }
    } catch (const std::exception& e) {
      f.note = e.what();
      rep.findings.push_back("relator " + f.name + ": " + e.what());
    }
    relators_ok = relators_ok && f.matrix_ok && f.script_ok;
    rep.relators.push_back(std::move(f));
  }

  try {
    rep.closure_order = closure(gens, opts.closure_cap).order();
  } catch (const std::exception& e) {
    rep.findings.push_back(std::string("closure: ") + e.what());
  }
  try {
    rep.tc_order = todd_coxeter(p, opts.tc_cap);
  } catch (const std::exception& e) {
    rep.findings.push_back(std::string("coset enumeration: ") + e.what());
  }
  if (rep.closure_order && rep.tc_order && *rep.closure_order != *rep.tc_order)
    rep.findings.push_back("closure order " + std::to_string(*rep.closure_order) +
                           " differs from presented order " + std::to_string(*rep.tc_order));
  rep.iso_certified = relators_ok && rep.closure_order && rep.tc_order &&
                      *rep.closure_order == *rep.tc_order;
  return rep;
}

} // namespace mcg2
