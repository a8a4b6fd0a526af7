#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "primearcs/json_io.hpp"
#include "primearcs/sequences.hpp"

using namespace primearcs;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

// Replays greedy with normalize_union only: the best a for each prime
// from an exhaustive scan of all candidates.
std::vector<std::uint64_t> exhaustive_greedy(std::uint64_t bound, const Rational& c) {
    std::vector<Arc> prefix;
    std::vector<std::uint64_t> choice;
    const auto table = sieve_range(bound);
    for (auto p : table.primes()) {
        Rational base = measure(normalize_union(prefix));
        std::uint64_t best_a = 0;
        Rational best_gain = -1;
        for (std::uint64_t a = 0; a < p; ++a) {
            auto trial = prefix;
            trial.push_back(arc_of(p, a, c));
            Rational g = measure(normalize_union(trial)) - base;
            if (g > best_gain) {
                best_gain = g;
                best_a = a;
            }
        }
        prefix.push_back(arc_of(p, best_a, c));
        choice.push_back(best_a);
    }
    return choice;
}

}  // namespace

TEST_CASE("NumeratorSequence validation") {
    CHECK_THROWS_AS(NumeratorSequence(R(1, 2), {{3, 3}}, Method::custom), std::invalid_argument);
    CHECK_THROWS_AS(NumeratorSequence(R(1, 2), {{5, 1}, {3, 1}}, Method::custom), std::invalid_argument);
    CHECK_THROWS_AS(NumeratorSequence(R(1, 2), {{3, 1}, {3, 2}}, Method::custom), std::invalid_argument);
    CHECK_THROWS_AS(NumeratorSequence(R(3, 4), {{3, 1}}, Method::custom), std::invalid_argument);
    NumeratorSequence s(R(1, 2), {{2, 1}, {3, 2}}, Method::custom);
    CHECK(s.at(3) == 2);
    CHECK_FALSE(s.numerator(5).has_value());
    CHECK_THROWS_AS(s.at(5), MissingPrime);
}

TEST_CASE("random_sequence support and determinism") {
    for (std::uint64_t seed : {0ull, 1ull, 99ull, 123456789ull}) {
        auto s = random_sequence(2, R(1, 3), seed);
        REQUIRE(s.entries().size() == 1);
        CHECK(s.entries()[0].p == 2);
        CHECK(s.entries()[0].a < 2);
        CHECK(s.seed() == seed);
    }
    CHECK(random_sequence(1000, R(1, 2), 5) == random_sequence(1000, R(1, 2), 5));
    CHECK_FALSE(random_sequence(1000, R(1, 2), 5) == random_sequence(1000, R(1, 2), 6));
    CHECK_THROWS_AS(random_sequence(1, R(1, 2), 5), std::invalid_argument);
}

TEST_CASE("random_sequence frequency of a_p < p/2 is 1/2 +- 0.02") {
    auto s = random_sequence(10'000, R(1, 2), kDefaultSeed);
    std::size_t low = 0;
    for (const auto& e : s.entries()) low += 2 * e.a < e.p;
    double freq = static_cast<double>(low) / static_cast<double>(s.entries().size());
    CHECK(std::abs(freq - 0.5) <= 0.02);
}

TEST_CASE("uniform_below is unbiased for a non-power-of-two range") {
    Engine rng = make_engine(11);
    std::array<int, 3> counts{};
    const int n = 300'000;
    for (int i = 0; i < n; ++i) ++counts[uniform_below(rng, 3)];
    for (int k : counts) CHECK(std::abs(k / double(n) - 1.0 / 3.0) < 0.005);
}

TEST_CASE("greedy_sequence examples") {
    auto g2 = greedy_sequence(2, R(1, 4));
    REQUIRE(g2.entries().size() == 1);
    CHECK(g2.at(2) == 0);

    // a=0 sits inside the arc around 0 (gain 0); a=1 and a=2 both gain 1/6.
    auto g3 = greedy_sequence(3, R(1, 4));
    CHECK(g3.at(2) == 0);
    CHECK(g3.at(3) == 1);
    CoverageBuilder cov;
    cov.add(arc_of(2, 0, R(1, 4)));
    CHECK(cov.gain(arc_of(3, 0, R(1, 4))) == 0);
    CHECK(cov.gain(arc_of(3, 1, R(1, 4))) == R(1, 6));
    CHECK(cov.gain(arc_of(3, 2, R(1, 4))) == R(1, 6));

    CHECK_THROWS_AS(greedy_sequence(10, R(0)), std::invalid_argument);
}

TEST_CASE("greedy through 7 at c=1/2 matches the step-by-step exhaustive oracle") {
    auto g = greedy_sequence(7, R(1, 2));
    auto oracle = exhaustive_greedy(7, R(1, 2));
    std::vector<Arc> arcs;
    std::size_t i = 0;
    for (auto p : {2, 3, 5, 7}) {
        CHECK(g.at(p) == oracle[i]);
        arcs.push_back(arc_of(p, oracle[i++], R(1, 2)));
    }
    Rational oracle_covered = measure(normalize_union(arcs));
    CHECK(Rational(1) - uncovered_measure(g, 1, 7) == oracle_covered);

    // No sequence among all 2*3*5*7 does better than full coverage, and greedy
    // is within the range of the exhaustive family.
    Rational best = 0;
    for (std::uint64_t a2 = 0; a2 < 2; ++a2)
        for (std::uint64_t a3 = 0; a3 < 3; ++a3)
            for (std::uint64_t a5 = 0; a5 < 5; ++a5)
                for (std::uint64_t a7 = 0; a7 < 7; ++a7) {
                    std::vector<Arc> f{arc_of(2, a2, R(1, 2)), arc_of(3, a3, R(1, 2)), arc_of(5, a5, R(1, 2)),
                                       arc_of(7, a7, R(1, 2))};
                    best = max(best, measure(normalize_union(f)));
                }
    CHECK(oracle_covered <= best);
}

TEST_CASE("property: greedy choices match exhaustive replay and respect the gain bound") {
    for (const Rational& c : {R(1, 2), R(1, 4), R(1, 8), R(3, 10)}) {
        auto g = greedy_sequence(120, c);
        auto oracle = exhaustive_greedy(120, c);
        REQUIRE(g.entries().size() == oracle.size());
        CoverageBuilder cov;
        Rational prev = 0;
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            const auto& e = g.entries()[i];
            CHECK(e.a == oracle[i]);
            Rational gain = cov.gain(arc_of(e.p, e.a, c));
            CHECK(gain.sign() >= 0);
            CHECK(gain <= Rational(2) * c / Rational(static_cast<std::int64_t>(e.p)));
            cov.add(arc_of(e.p, e.a, c));
            CHECK(cov.covered() >= prev);
            prev = cov.covered();
        }
    }
}

TEST_CASE("block_construction examples") {
    std::vector<Rational> one{R(1, 2)};
    auto r1 = block_construction(one, R(1, 2), 100);
    REQUIRE(r1.schedule.blocks.size() == 1);
    CHECK(r1.schedule.blocks[0].start == 1);
    CHECK(r1.schedule.blocks[0].end <= 7);
    CHECK(r1.schedule.blocks[0].achieved_uncovered <= R(1, 2));

    std::vector<Rational> two{R(1, 2), R(1, 2)};
    auto r2 = block_construction(two, R(1, 2), 1000);
    REQUIRE(r2.schedule.blocks.size() == 2);
    CHECK(r2.schedule.blocks[1].start == r2.schedule.blocks[0].end);
    CHECK(r2.schedule.blocks[1].end <= 1000);

    std::vector<Rational> tiny{R(1, 1'000'000)};
    CHECK_THROWS_WITH_AS(block_construction(tiny, R(1, 100), 100), "budget exhausted at block 1", BudgetExhausted);
    std::vector<Rational> bad{R(1)};
    CHECK_THROWS_AS(block_construction(bad, R(1, 2), 100), std::invalid_argument);
}

TEST_CASE("block certificates reproduce from uncovered_measure") {
    std::vector<Rational> eps{R(1, 2), R(1, 2), R(2, 3)};
    auto r = block_construction(eps, R(1, 2), 100'000, 10);
    // Primes up to the starting point are filled with 0.
    for (auto p : {2, 3, 5, 7}) CHECK(r.sequence.at(p) == 0);
    std::uint64_t prev_end = 10;
    for (std::size_t n = 0; n < r.schedule.blocks.size(); ++n) {
        const auto& b = r.schedule.blocks[n];
        CHECK(b.start == prev_end);
        CHECK(b.end > b.start);
        CHECK(b.epsilon == eps[n]);
        CHECK(b.achieved_uncovered <= b.epsilon);
        CHECK(uncovered_measure(r.sequence, b.start, b.end) == b.achieved_uncovered);
        prev_end = b.end;
    }
    CHECK(r.sequence.entries().back().p == prev_end);
}

TEST_CASE("uncovered_measure examples") {
    for (std::uint64_t a = 0; a < 3; ++a) {
        NumeratorSequence s(R(1, 2), {{2, 0}, {3, a}}, Method::custom);
        CHECK(uncovered_measure(s, 2, 3) == R(2, 3));
    }
    NumeratorSequence s(R(1, 2), {{2, 0}, {3, 1}}, Method::custom);
    CHECK(uncovered_measure(s, 1, 3) == R(1, 4));
    CHECK(uncovered_measure(s, 3, 4) == 1);
    CHECK_THROWS_AS(uncovered_measure(s, 1, 5), MissingPrime);
    CHECK_THROWS_AS(uncovered_measure(s, 3, 3), std::invalid_argument);
}

TEST_CASE("constant and nearest sequences") {
    auto k = constant_sequence(50, R(1, 4));
    for (const auto& e : k.entries()) CHECK(e.a == 0);
    auto n = nearest_sequence(R(1, 3), 50, R(1, 2));
    for (const auto& e : n.entries()) CHECK(circle_distance(R(1, 3), R(e.a, e.p)) * Rational(e.p) <= R(1, 2));
    CHECK(n.at(3) == 1);
    CHECK(n.at(7) == 2);
}

TEST_CASE("property: JSON round trip reproduces the sequence") {
    std::vector<NumeratorSequence> samples{random_sequence(500, R(1, 3), 77), greedy_sequence(60, R(1, 2)),
                                           constant_sequence(30, R(1, 8))};
    for (const auto& s : samples) {
        auto back = sequence_from_json(json::parse(to_json(s).dump()));
        CHECK(back == s);
    }
    auto j = to_json(greedy_sequence(7, R(1, 2)));
    CHECK(j.dump() == R"({"c":"1/2","method":"greedy","seed":null,"entries":[[2,0],[3,1],[5,3],[7,5]]})");

    auto path = std::filesystem::temp_directory_path() / "primearcs_seq_roundtrip.json";
    save_sequence(path, samples[0]);
    CHECK(load_sequence(path) == samples[0]);
    std::filesystem::remove(path);
    CHECK_THROWS_WITH(load_sequence(path), "sequence file not found");
    CHECK_THROWS_AS(sequence_from_json(json::parse(R"({"c":"1/2","method":"x","entries":[]})")), std::invalid_argument);
}

TEST_CASE("property: best_numerator agrees with an exact scan of every candidate") {
    Engine rng = make_engine(404);
    // The last c has a denominator too large for machine fractions.
    const std::vector<Rational> cs{R(1, 2), R(1, 4), R(3, 10), R(1, 7),
                                   Rational::parse("1/12345678901234567890123")};
    for (const auto& c : cs)
        for (int round = 0; round < 6; ++round) {
            CoverageBuilder cov;
            auto table = sieve_range(400);
            for (auto p : table.primes()) {
                if (uniform_below(rng, 3) == 0) continue;
                Rational best_gain = -1;
                std::uint64_t best_a = 0;
                for (std::uint64_t a = 0; a < p; ++a) {
                    Rational g = cov.gain(arc_of(p, a, c));
                    if (g > best_gain) {
                        best_gain = g;
                        best_a = a;
                    }
                }
                auto [a, g] = cov.best_numerator(p, c);
                CHECK(a == best_a);
                CHECK(g == best_gain);
                cov.add(arc_of(p, uniform_below(rng, 2) ? a : uniform_below(rng, p), c));
            }
        }
}
