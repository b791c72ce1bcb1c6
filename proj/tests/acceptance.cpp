// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <exception>
#include <functional>
#include <iostream>

#include "support/checks.hpp"

using mcg2::checks::Outcome;

namespace {

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

Outcome all_of(std::initializer_list<std::pair<const char*, std::function<Outcome()>>> parts) {
  Outcome out{true, ""};
  for (const auto& [label, f] : parts) {
    auto o = guarded(f);
    out.pass = out.pass && o.pass;
    out.detail += std::string(out.detail.empty() ? "" : " | ") + label + " " +
                  (o.pass ? "ok" : "FAIL") + " (" + o.detail + ")";
  }
  return out;
}

} // namespace

int main() {
  namespace c = mcg2::checks;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"periodic element orders", c::periodic_orders},
      {"catalog of 20 groups", c::catalog_all},
      {"generic-genus identities at g = 2, 3, 4", c::generic_identities},
      {"Humphries generators from z and eta", c::w_from_z_eta},
      {"GL(2,3) chain", c::gl23_chain},
      {"property suites",
       [] {
         return all_of({{"(a)", [] { return c::random_word_homomorphism(1000, 20240607); }},
                        {"(b)", c::script_steps_preserve_matrix},
                        {"(c)", [] { return c::conjugation_invariance(7); }},
                        {"(d)", c::fixed_point_sums},
                        {"(e)", c::riemann_hurwitz_all}});
       }},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [label, f] : criteria) {
    auto o = guarded(f);
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << ++n << ": " << label << " -- "
              << o.detail << std::endl;
  }
  return failures ? 1 : 0;
}
