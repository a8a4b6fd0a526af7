#include "primearcs/sieve_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "primearcs/random.hpp"

namespace primearcs {

namespace {

struct Event {
    Rational pos;
    std::uint64_t p;
    int delta;  // +1 start, -1 end
};

// Ends before starts at equal positions, so closed arcs that merely touch
// never count as overlapping on a cell of positive length.
void sort_events(std::vector<Event>& ev) {
    std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
        if (auto c = a.pos <=> b.pos; c != 0) return c < 0;
        return a.delta < b.delta;
    });
}

void push_arc(std::vector<Event>& ev, const Arc& arc, std::uint64_t p) {
    for (auto& [lo, hi] : arc.segments()) {
        ev.push_back({lo, p, +1});
        ev.push_back({hi, p, -1});
    }
}

// Bounded-memory exact accumulator.
class Accumulator {
public:
    void add(Rational r) {
        pending_.push_back(std::move(r));
        if (pending_.size() >= 4096) flush();
    }
    Rational total() {
        flush();
        return total_;
    }

private:
    void flush() {
        if (pending_.empty()) return;
        pending_.push_back(total_);
        total_ = sum(pending_);
        pending_.clear();
    }
    std::vector<Rational> pending_;
    Rational total_{0};
};

std::vector<std::uint64_t> primes_between(std::uint64_t X, std::uint64_t Y) {
    std::vector<std::uint64_t> ps;
    if (Y > X) for_each_prime(X + 1, Y, [&](std::uint64_t p) { ps.push_back(p); });
    return ps;
}

}  // namespace

LevelSetProfile level_sets(const NumeratorSequence& seq, std::uint64_t X, std::uint64_t Y) {
    LevelSetProfile out;
    out.X = X;
    out.Y = Y;
    out.c = seq.c();
    auto ps = primes_between(X, Y);

    std::vector<Event> ev;
    ev.reserve(4 * ps.size());
    std::vector<Rational> nu_terms;
    for (auto p : ps) {
        push_arc(ev, arc_of(p, seq.at(p), seq.c()), p);
        nu_terms.push_back(Rational(2) * seq.c() / Rational(static_cast<std::int64_t>(p)));
    }
    out.nu = sum(nu_terms);
    sort_events(ev);

    std::vector<std::vector<Rational>> cells(ps.size() + 1);
    Rational cursor{0};
    std::size_t count = 0;
    for (const auto& e : ev) {
        if (e.pos > cursor) {
            cells[count].push_back(e.pos - cursor);
            cursor = e.pos;
        }
        count = e.delta > 0 ? count + 1 : count - 1;
    }
    if (cursor < Rational(1)) cells[count].push_back(Rational(1) - cursor);

    std::size_t top = 0;
    for (std::size_t k = 0; k < cells.size(); ++k)
        if (!cells[k].empty()) top = k;
    out.levels.reserve(top + 1);
    for (std::size_t k = 0; k <= top; ++k) out.levels.push_back(sum(cells[k]));
    return out;
}

SieveReport alpha_and_markov(const LevelSetProfile& profile) {
    SieveReport r;
    r.profile = profile;
    std::vector<Rational> terms;
    for (std::size_t k = 0; k < profile.levels.size(); ++k) {
        Rational dev = Rational(static_cast<std::int64_t>(k)) - profile.nu;
        terms.push_back(dev * dev * profile.levels[k]);
    }
    r.alpha = sum(terms);
    r.omega_measure = profile.levels.empty() ? Rational(0) : profile.levels[0];
    if (!profile.nu.is_zero()) {
        r.markov_bound = r.alpha / (profile.nu * profile.nu);
        if (r.omega_measure > *r.markov_bound)
            throw std::logic_error("Markov inequality violated: " + r.omega_measure.str() + " > " +
                                   r.markov_bound->str());
    }
    return r;
}

Rational pair_expectation(std::uint64_t p1, std::uint64_t p2, const Rational& c) {
    if (p1 >= p2) throw std::invalid_argument("pair_expectation requires p1 < p2");
    require_valid_c(c);
    std::vector<Arc> second;
    second.reserve(p2);
    for (std::uint64_t b = 0; b < p2; ++b) second.push_back(arc_of(p2, b, c));
    Accumulator acc;
    for (std::uint64_t a = 0; a < p1; ++a) {
        Arc first = arc_of(p1, a, c);
        for (const auto& s : second) {
            Rational m = intersect_measure(first, s);
            if (!m.is_zero()) acc.add(std::move(m));
        }
    }
    return acc.total() / Rational(static_cast<std::int64_t>(p1 * p2));
}

Rational omega_expectation_exact(std::uint64_t X, std::uint64_t Y, const Rational& c) {
    if (Y <= X) throw std::invalid_argument("omega_expectation_exact requires X < Y");
    require_valid_c(c);
    auto ps = primes_between(X, Y);
    std::uint64_t arcs = 0;
    for (auto p : ps) arcs += p;
    if (arcs > kExactSweepArcLimit)
        throw std::out_of_range("range too large for exact sweep: " + std::to_string(arcs) + " arcs (limit " +
                                std::to_string(kExactSweepArcLimit) + ")");

    std::vector<Event> ev;
    ev.reserve(2 * arcs + 2 * ps.size());
    for (auto p : ps)
        for (std::uint64_t a = 0; a < p; ++a) push_arc(ev, arc_of(p, a, c), p);
    sort_events(ev);

    std::unordered_map<std::uint64_t, int> covering;
    Rational survival{1};
    Rational cursor{0};
    Accumulator acc;
    for (const auto& e : ev) {
        if (e.pos > cursor) {
            acc.add((e.pos - cursor) * survival);
            cursor = e.pos;
        }
        const auto sp = static_cast<std::int64_t>(e.p);
        int& k = covering[e.p];
        if (e.delta > 0) {
            if (k != 0) throw std::logic_error("arcs of one prime overlap");
            survival *= Rational(sp - 1, sp);
        } else {
            survival *= Rational(sp, sp - 1);
        }
        k += e.delta;
    }
    if (cursor < Rational(1)) acc.add((Rational(1) - cursor) * survival);
    return acc.total();
}

MonteCarloEstimate omega_expectation_mc(std::uint64_t X, std::uint64_t Y, const Rational& c,
                                        std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (Y <= X) throw std::invalid_argument("omega_expectation_mc requires X < Y");
    require_valid_c(c);
    const auto ps = primes_between(X, Y);
    std::vector<double> samples(trials);
    parallel_for(trials, [&](std::size_t i) {
        Engine rng = make_engine(derive_seed(seed, i));
        std::vector<Arc> arcs;
        arcs.reserve(ps.size());
        for (const auto& e : draw_numerators(ps, rng)) arcs.push_back(arc_of(e.p, e.a, c));
        samples[i] = uncovered_measure(arcs).to_double();
    });
    MonteCarloEstimate out;
    out.trials = trials;
    out.seed = seed;
    double total = 0.0;
    for (double s : samples) total += s;
    out.mean = total / static_cast<double>(trials);
    if (trials > 1) {
        double ss = 0.0;
        for (double s : samples) ss += (s - out.mean) * (s - out.mean);
        out.standard_error = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
    }
    return out;
}

}  // namespace primearcs
