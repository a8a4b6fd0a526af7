#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "primearcs/arc.hpp"
#include "primearcs/primes.hpp"
#include "primearcs/random.hpp"
#include "primearcs/rational.hpp"

namespace primearcs {

enum class Method { random, greedy, blocks, constant, custom };

std::string_view to_string(Method m);
Method parse_method(std::string_view s);

struct Entry {
    std::uint64_t p;
    std::uint64_t a;
    friend bool operator==(const Entry&, const Entry&) = default;
};

/// A choice of one numerator a_p per prime, with the radius constant c.
class NumeratorSequence {
public:
    /// Validates 0 <= a_p < p, strictly ascending primes and c in (0, 1/2].
    /// Primality of the keys is not re-checked here.
    NumeratorSequence(Rational c, std::vector<Entry> entries, Method method,
                      std::optional<std::uint64_t> seed = std::nullopt);

    const Rational& c() const { return c_; }
    std::span<const Entry> entries() const { return entries_; }
    Method method() const { return method_; }
    std::optional<std::uint64_t> seed() const { return seed_; }

    std::optional<std::uint64_t> numerator(std::uint64_t p) const;
    /// Throws MissingPrime when p is absent.
    std::uint64_t at(std::uint64_t p) const;
    /// I_p(a_p) for every listed p in (X, Y]; throws MissingPrime if any
    /// prime of that range is absent.
    std::vector<Arc> arcs_in(std::uint64_t X, std::uint64_t Y) const;

    friend bool operator==(const NumeratorSequence&, const NumeratorSequence&) = default;

private:
    Rational c_;
    std::vector<Entry> entries_;
    Method method_;
    std::optional<std::uint64_t> seed_;
};

class MissingPrime : public std::invalid_argument {
public:
    explicit MissingPrime(std::uint64_t p)
        : std::invalid_argument("sequence lacks prime " + std::to_string(p)), prime(p) {}
    std::uint64_t prime;
};

class BudgetExhausted : public std::runtime_error {
public:
    explicit BudgetExhausted(std::size_t block)
        : std::runtime_error("budget exhausted at block " + std::to_string(block)), block(block) {}
    std::size_t block;  // 1-based
};

/// Uniform independent a_p for p <= bound, reproducible from seed.
NumeratorSequence random_sequence(std::uint64_t bound, const Rational& c, std::uint64_t seed);
/// Draws uniform numerators for the given primes from rng, in order.
std::vector<Entry> draw_numerators(std::span<const std::uint64_t> primes, Engine& rng);

/// a_p = 0 for every p <= bound; a negative control.
NumeratorSequence constant_sequence(std::uint64_t bound, const Rational& c);

/// a_p = nearest integer to p*x, reduced mod p (ties round up). Method custom.
NumeratorSequence nearest_sequence(const Rational& x, std::uint64_t bound, const Rational& c);

/// One greedy step: the smallest a in [0, p) maximizing the measure added
/// to `covered` by I_p(a). Returns a and its gain.
std::pair<std::uint64_t, Rational> greedy_step(const CoverageBuilder& covered, std::uint64_t p, const Rational& c);

/// Greedy over all primes <= bound, starting from the empty set.
NumeratorSequence greedy_sequence(std::uint64_t bound, const Rational& c);

struct Block {
    std::uint64_t start;  // X_n
    std::uint64_t end;    // X_{n+1}
    Rational epsilon;
    Rational achieved_uncovered;
    friend bool operator==(const Block&, const Block&) = default;
};

struct BlockSchedule {
    std::vector<Block> blocks;
};

struct BlockResult {
    NumeratorSequence sequence;
    BlockSchedule schedule;
};

/// Partitions the primes into consecutive ranges (X_n, X_{n+1}], running
/// greedy on a fresh covered set within each range until its uncovered
/// measure is <= epsilon_n. X_1 = start; primes <= start get a_p = 0.
/// Throws BudgetExhausted if max_bound is reached first.
BlockResult block_construction(std::span<const Rational> epsilons, const Rational& c,
                               std::uint64_t max_bound, std::uint64_t start = 1);

/// Exact measure of the complement of the union of I_p(a_p), X < p <= Y.
Rational uncovered_measure(const NumeratorSequence& seq, std::uint64_t X, std::uint64_t Y);
/// Same, for an explicit arc family.
Rational uncovered_measure(std::span<const Arc> arcs);

}  // namespace primearcs
