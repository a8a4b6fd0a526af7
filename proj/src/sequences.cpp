#include "primearcs/sequences.hpp"

#include <algorithm>

namespace primearcs {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::random: return "random";
        case Method::greedy: return "greedy";
        case Method::blocks: return "blocks";
        case Method::constant: return "constant";
        case Method::custom: return "custom";
    }
    return "custom";
}

Method parse_method(std::string_view s) {
    for (Method m : {Method::random, Method::greedy, Method::blocks, Method::constant, Method::custom})
        if (to_string(m) == s) return m;
    throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

NumeratorSequence::NumeratorSequence(Rational c, std::vector<Entry> entries, Method method,
                                     std::optional<std::uint64_t> seed)
    : c_(std::move(c)), entries_(std::move(entries)), method_(method), seed_(seed) {
    require_valid_c(c_);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.p < 2 || e.a >= e.p)
            throw std::invalid_argument("entry (" + std::to_string(e.p) + ", " + std::to_string(e.a) +
                                        ") violates 0 <= a_p < p");
        if (i > 0 && entries_[i - 1].p >= e.p)
            throw std::invalid_argument("entries must be strictly ascending in p");
    }
}

std::optional<std::uint64_t> NumeratorSequence::numerator(std::uint64_t p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, std::uint64_t v) { return e.p < v; });
    if (it == entries_.end() || it->p != p) return std::nullopt;
    return it->a;
}

std::uint64_t NumeratorSequence::at(std::uint64_t p) const {
    if (auto a = numerator(p)) return *a;
    throw MissingPrime(p);
}

std::vector<Arc> NumeratorSequence::arcs_in(std::uint64_t X, std::uint64_t Y) const {
    std::vector<Arc> arcs;
    if (Y <= X) return arcs;
    for_each_prime(X + 1, Y, [&](std::uint64_t p) { arcs.push_back(arc_of(p, at(p), c_)); });
    return arcs;
}

std::vector<Entry> draw_numerators(std::span<const std::uint64_t> primes, Engine& rng) {
    std::vector<Entry> out;
    out.reserve(primes.size());
    for (auto p : primes) out.push_back({p, uniform_below(rng, p)});
    return out;
}

NumeratorSequence random_sequence(std::uint64_t bound, const Rational& c, std::uint64_t seed) {
    auto table = sieve_range(bound);
    Engine rng = make_engine(seed);
    return NumeratorSequence(c, draw_numerators(table.primes(), rng), Method::random, seed);
}

NumeratorSequence constant_sequence(std::uint64_t bound, const Rational& c) {
    auto table = sieve_range(bound);
    std::vector<Entry> entries;
    for (auto p : table.primes()) entries.push_back({p, 0});
    return NumeratorSequence(c, std::move(entries), Method::constant);
}

NumeratorSequence nearest_sequence(const Rational& x, std::uint64_t bound, const Rational& c) {
    auto table = sieve_range(bound);
    std::vector<Entry> entries;
    const Rational half(1, 2);
    for (auto p : table.primes()) {
        mpz_class n = (x * Rational(static_cast<std::int64_t>(p)) + half).floor();
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p));
        entries.push_back({p, r.get_ui()});
    }
    return NumeratorSequence(c, std::move(entries), Method::custom);
}

std::pair<std::uint64_t, Rational> greedy_step(const CoverageBuilder& covered, std::uint64_t p,
                                               const Rational& c) {
    if (covered.covered() == Rational(1)) return {0, Rational(0)};
    return covered.best_numerator(p, c);
}

NumeratorSequence greedy_sequence(std::uint64_t bound, const Rational& c) {
    require_valid_c(c);
    auto table = sieve_range(bound);
    CoverageBuilder covered;
    std::vector<Entry> entries;
    entries.reserve(table.size());
    for (auto p : table.primes()) {
        auto [a, g] = greedy_step(covered, p, c);
        covered.add(arc_of(p, a, c));
        entries.push_back({p, a});
    }
    return NumeratorSequence(c, std::move(entries), Method::greedy);
}

BlockResult block_construction(std::span<const Rational> epsilons, const Rational& c,
                               std::uint64_t max_bound, std::uint64_t start) {
    require_valid_c(c);
    for (const auto& e : epsilons)
        if (e.sign() <= 0 || e >= Rational(1)) throw std::invalid_argument("each epsilon must be in (0,1)");
    if (max_bound < 2) throw std::invalid_argument("max_bound must be >= 2");
    auto table = sieve_range(max_bound);
    auto primes = table.primes();

    std::vector<Entry> entries;
    BlockSchedule schedule;
    std::size_t i = 0;
    for (; i < primes.size() && primes[i] <= start; ++i) entries.push_back({primes[i], 0});

    std::uint64_t X = start;
    for (std::size_t n = 0; n < epsilons.size(); ++n) {
        CoverageBuilder covered;
        bool done = false;
        for (; i < primes.size() && !done; ++i) {
            auto p = primes[i];
            auto [a, g] = greedy_step(covered, p, c);
            covered.add(arc_of(p, a, c));
            entries.push_back({p, a});
            if (covered.uncovered() <= epsilons[n]) {
                schedule.blocks.push_back({X, p, epsilons[n], covered.uncovered()});
                X = p;
                done = true;
            }
        }
        if (!done) throw BudgetExhausted(n + 1);
    }
    return {NumeratorSequence(c, std::move(entries), Method::blocks), std::move(schedule)};
}

Rational uncovered_measure(std::span<const Arc> arcs) {
    return Rational(1) - measure(normalize_union(arcs));
}

Rational uncovered_measure(const NumeratorSequence& seq, std::uint64_t X, std::uint64_t Y) {
    if (Y <= X) throw std::invalid_argument("uncovered_measure requires X < Y");
    return uncovered_measure(seq.arcs_in(X, Y));
}

}  // namespace primearcs
