#include "primearcs/hits.hpp"

#include <cmath>
#include <stdexcept>

#include "primearcs/primes.hpp"

namespace primearcs {

RealApproximant exact_real(const Rational& x) { return {x, Rational(0), "rational " + x.str()}; }

RealApproximant named_real(std::string_view name, const Rational& eta) {
    if (eta.sign() <= 0) throw std::invalid_argument("named approximants need eta > 0");
    // Partial quotients: sqrt2 = [1; 2, 2, ...], golden = [1; 1, 1, ...].
    unsigned long tail;
    if (name == "sqrt2")
        tail = 2;
    else if (name == "golden")
        tail = 1;
    else
        throw std::invalid_argument("unknown named real '" + std::string(name) + "' (expected sqrt2 or golden)");

    mpz_class h_prev = 1, k_prev = 0;  // h_{-1}, k_{-1}
    mpz_class h = 1, k = 1;            // h_0 = a_0 = 1
    for (int guard = 0; guard < 100000; ++guard) {
        mpz_class h_next = tail * h + h_prev;
        mpz_class k_next = tail * k + k_prev;
        Rational err(mpz_class(1), mpz_class(k * k_next));
        if (err <= eta) return {Rational(h, k), err, std::string(name)};
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
    throw std::invalid_argument("eta too small");
}

namespace {

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> ps;
    for_each_prime(2, bound, [&](std::uint64_t p) { ps.push_back(p); });
    return ps;
}

void finish(HitReport& r) {
    r.ratio = r.heuristic > 0 ? static_cast<double>(r.hits.size()) / r.heuristic : 0.0;
}

}  // namespace

HitReport hit_primes(const RealApproximant& x, const NumeratorSequence& seq, std::uint64_t bound) {
    HitReport r;
    r.bound = bound;
    const Rational& eta = x.error_bound;
    for (auto p : primes_up_to(bound)) {
        const auto sp = static_cast<std::int64_t>(p);
        Rational d = circle_distance(x.value, Rational(static_cast<std::int64_t>(seq.at(p)), sp));
        Rational threshold = seq.c() / Rational(sp);
        PrimeVerdict v{p, d, false, false};
        if (d + eta <= threshold)
            v.hit = true;
        else if (!(d - eta > threshold))
            v.ambiguous = true;
        if (v.hit) {
            r.hits.push_back(p);
            r.hit_reciprocal_sum += 1.0 / static_cast<double>(p);
        }
        if (v.ambiguous) r.ambiguous.push_back(p);
        r.rows.push_back(std::move(v));
    }
    r.heuristic = loglog_heuristic(seq.c(), bound).prime_sum;
    finish(r);
    return r;
}

HitReport fractional_hits(const RealApproximant& x, const Rational& c, std::uint64_t bound) {
    require_valid_c(c);
    if (x.error_bound * Rational(static_cast<std::int64_t>(bound)) >= Rational(1, 4))
        throw std::invalid_argument("x too imprecise for this bound (need eta*bound < 1/4)");
    HitReport r;
    r.bound = bound;
    const mpz_class num = x.value.numerator();
    const mpz_class den = x.value.denominator();
    const Rational one(1);
    std::uint64_t prime_count = 0;
    for (auto p : primes_up_to(bound)) {
        ++prime_count;
        mpz_class rem = num * static_cast<unsigned long>(p);
        mpz_fdiv_r(rem.get_mpz_t(), rem.get_mpz_t(), den.get_mpz_t());
        Rational f(rem, den);
        Rational spread = x.error_bound * Rational(static_cast<std::int64_t>(p));
        // The true x p lies in [f - spread, f + spread] modulo an integer.
        PrimeVerdict v{p, f, false, false};
        if (f >= spread && f + spread < c)
            v.hit = true;
        else if (!(f >= c + spread && f + spread < one))
            v.ambiguous = true;
        if (v.hit) {
            r.hits.push_back(p);
            r.hit_reciprocal_sum += 1.0 / static_cast<double>(p);
        }
        if (v.ambiguous) r.ambiguous.push_back(p);
        r.rows.push_back(std::move(v));
    }
    r.heuristic = c.to_double() * static_cast<double>(prime_count);
    finish(r);
    return r;
}

LogLogHeuristic loglog_heuristic(const Rational& c, std::uint64_t bound) {
    if (bound < 2) throw std::invalid_argument("loglog_heuristic requires bound >= 2");
    const double two_c = 2.0 * c.to_double();
    double s = harmonic_sum(1, bound).value;
    double b = static_cast<double>(bound);
    return {two_c * s, two_c * (std::log(std::log(b)) + kMertensConstant)};
}

}  // namespace primearcs
