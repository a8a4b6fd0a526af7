#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "primearcs/rational.hpp"
#include "primearcs/sequences.hpp"

namespace primearcs {

/// Exact distribution of the counting function N(x) = #{p in (X, Y] : x in I_p(a_p)}.
struct LevelSetProfile {
    std::uint64_t X = 0;
    std::uint64_t Y = 0;
    Rational c;
    Rational nu;                  // 2c * H_{X,Y}
    std::vector<Rational> levels; // levels[k] = measure of {N = k}
};

struct SieveReport {
    LevelSetProfile profile;
    Rational alpha;                       // integral of (N - nu)^2
    Rational omega_measure;               // levels[0]
    std::optional<Rational> markov_bound; // alpha / nu^2; empty means +infinity (nu = 0)
};

/// Endpoint sweep over the arcs I_p(a_p), X < p <= Y.
LevelSetProfile level_sets(const NumeratorSequence& seq, std::uint64_t X, std::uint64_t Y);

/// Throws std::logic_error if the Markov inequality levels[0] <= alpha/nu^2 fails.
SieveReport alpha_and_markov(const LevelSetProfile& profile);

/// E over (a, b) uniform of the measure of I_{p1}(a) ∩ I_{p2}(b). Requires p1 < p2.
Rational pair_expectation(std::uint64_t p1, std::uint64_t p2, const Rational& c);

/// Ranges whose total arc count sum(p) exceeds this are refused by
/// omega_expectation_exact.
inline constexpr std::uint64_t kExactSweepArcLimit = 2'000'000;

/// Exact expectation, over the product measure on sequences, of the
/// uncovered measure of (X, Y]. Integrates prod_p (1 - k_p(x)/p), where
/// k_p(x) counts the arcs I_p(a) containing x, over the arrangement of all
/// arcs of all numerators.
Rational omega_expectation_exact(std::uint64_t X, std::uint64_t Y, const Rational& c);

struct MonteCarloEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Mean and standard error of the exact uncovered measure over `trials`
/// random sequences. Trial i draws from derive_seed(seed, i).
MonteCarloEstimate omega_expectation_mc(std::uint64_t X, std::uint64_t Y, const Rational& c,
                                        std::uint64_t trials, std::uint64_t seed);

}  // namespace primearcs
