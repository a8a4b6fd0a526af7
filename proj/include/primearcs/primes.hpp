#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "primearcs/rational.hpp"

namespace primearcs {

/// All primes <= bound, ascending.
class PrimeTable {
public:
    PrimeTable(std::uint64_t bound, std::vector<std::uint64_t> primes)
        : bound_(bound), primes_(std::move(primes)) {}

    std::uint64_t bound() const { return bound_; }
    std::span<const std::uint64_t> primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }

    /// Primes p with lo < p <= hi (clamped to the table's bound).
    std::span<const std::uint64_t> range(std::uint64_t lo, std::uint64_t hi) const;
    bool contains(std::uint64_t n) const;

private:
    std::uint64_t bound_;
    std::vector<std::uint64_t> primes_;
};

inline constexpr std::uint64_t kMaxSieveBound = 4'000'000'000ULL;

/// Segmented sieve of Eratosthenes. Working memory is O(sqrt(bound))
/// plus one segment; the returned table itself holds pi(bound) entries.
PrimeTable sieve_range(std::uint64_t bound);

/// Visits every prime in [lo, hi] in ascending order without storing them.
void for_each_prime(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& visit);

/// pi(bound), counted segment by segment.
std::uint64_t count_primes(std::uint64_t bound);

/// Above this Y the exact harmonic sum is refused; use harmonic_sum().
inline constexpr std::uint64_t kExactHarmonicLimit = 10'000;

/// Exact H_{X,Y} = sum of 1/p over primes X < p <= Y. Only floor(X) and
/// floor(Y) matter. Empty ranges give 0. Requires 1 <= X < Y.
Rational harmonic_H(const Rational& X, const Rational& Y);

struct HarmonicValue {
    double value = 0.0;
    std::optional<Rational> exact;  // present when Y <= kExactHarmonicLimit
    std::string mode() const { return exact ? "exact" : "float64"; }
};

/// H_{X,Y}, exact when Y is small enough, binary64 otherwise.
HarmonicValue harmonic_sum(std::uint64_t X, std::uint64_t Y);

}  // namespace primearcs
