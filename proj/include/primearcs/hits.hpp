#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "primearcs/rational.hpp"
#include "primearcs/sequences.hpp"

namespace primearcs {

/// A real number known to lie in [value - error_bound, value + error_bound].
struct RealApproximant {
    Rational value;
    Rational error_bound{0};
    std::string label;
};

/// Exact rational x; error bound 0.
RealApproximant exact_real(const Rational& x);

/// Continued-fraction convergent h/k of a named quadratic irrational
/// ("sqrt2" or "golden"), the first with certified error 1/(k k') <= eta,
/// where k' is the next convergent's denominator. eta must be > 0.
RealApproximant named_real(std::string_view name, const Rational& eta);

struct PrimeVerdict {
    std::uint64_t p;
    Rational distance;  // circle distance to a_p/p, or {x p} for fractional parts
    bool hit;
    bool ambiguous;
};

struct HitReport {
    std::uint64_t bound = 0;
    std::vector<std::uint64_t> hits;
    std::vector<std::uint64_t> ambiguous;
    double heuristic = 0.0;
    double ratio = 0.0;          // hits / heuristic, 0 when heuristic is 0
    double hit_reciprocal_sum = 0.0;
    std::vector<PrimeVerdict> rows;
};

/// Primes p <= bound with circle-distance(x, a_p/p) <= c/p for every real
/// in the approximant's interval. Primes whose verdict depends on the
/// unknown part of x are listed as ambiguous. heuristic = 2c sum 1/p.
HitReport hit_primes(const RealApproximant& x, const NumeratorSequence& seq, std::uint64_t bound);

/// Primes p <= bound with {x p} < c, certified over the approximant's
/// interval. heuristic = c pi(bound). Rejects eta*bound >= 1/4.
HitReport fractional_hits(const RealApproximant& x, const Rational& c, std::uint64_t bound);

struct LogLogHeuristic {
    double prime_sum;   // 2c sum_{p <= bound} 1/p
    double asymptotic;  // 2c (ln ln bound + 0.2615)
};

inline constexpr double kMertensConstant = 0.2614972128476428;

LogLogHeuristic loglog_heuristic(const Rational& c, std::uint64_t bound);

}  // namespace primearcs
