#ifndef MCG2_TESTS_CHECKS_HPP
#define MCG2_TESTS_CHECKS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "mcg2/catalog.hpp"
#include "mcg2/word.hpp"

// Whole-pipeline checks shared by the acceptance driver and the gtest suites.
namespace mcg2::checks {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::filesystem::path data_dir();
std::filesystem::path scripts_dir();
Catalog load_catalog();

TwistWord random_word(std::mt19937_64& rng, int genus, std::size_t max_len);
/// Freely reduced word of exactly `len` letters.
TwistWord random_word_exact(std::mt19937_64& rng, int genus, std::size_t len);

/// Element-order histogram of GL(2, F_3), by brute force over all 81 matrices.
std::map<int, int> gl23_order_histogram();

Outcome periodic_orders();      // z0..z4 orders, z2^3 = z0 and z5^2 = z0
Outcome catalog_all();          // verify-group all
Outcome generic_identities();   // shift, conjugation, w-from-z and eta/xi scripts, g = 2..4
Outcome w_from_z_eta();       // w_i = z^{i+1} eta^-1 z^-i, i = 1..5
Outcome gl23_chain();           // sl3, b^2 c, ac = b, c^2, u-relations, histogram

Outcome random_word_homomorphism(std::size_t count, std::uint64_t seed);
Outcome script_steps_preserve_matrix();
Outcome conjugation_invariance(std::uint64_t seed);
Outcome fixed_point_sums();
Outcome riemann_hurwitz_all();

} // namespace mcg2::checks

#endif // MCG2_TESTS_CHECKS_HPP
