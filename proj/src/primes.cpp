#include "primearcs/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primearcs {

std::span<const std::uint64_t> PrimeTable::range(std::uint64_t lo, std::uint64_t hi) const {
    auto b = std::upper_bound(primes_.begin(), primes_.end(), lo);
    auto e = std::upper_bound(primes_.begin(), primes_.end(), hi);
    if (e < b) e = b;
    return {b, e};
}

bool PrimeTable::contains(std::uint64_t n) const {
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

namespace {

constexpr std::uint64_t kSegment = 1u << 18;

std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
    std::vector<char> composite(limit + 1, 0);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return out;
}

}  // namespace

void for_each_prime(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& visit) {
    if (hi > kMaxSieveBound) throw std::invalid_argument("sieve bound too large");
    if (hi < 2 || lo > hi) return;
    lo = std::max<std::uint64_t>(lo, 2);
    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi)));
    while (root * root > hi) --root;
    while ((root + 1) * (root + 1) <= hi) ++root;
    const auto base = small_primes(root);

    std::vector<char> sieve(kSegment);
    for (std::uint64_t low = lo; low <= hi; low += kSegment) {
        std::uint64_t high = std::min(low + kSegment - 1, hi);
        std::fill(sieve.begin(), sieve.end(), 1);
        for (std::uint32_t p : base) {
            std::uint64_t pp = std::uint64_t{p} * p;
            if (pp > high) break;
            std::uint64_t start = std::max(pp, (low + p - 1) / p * p);
            for (std::uint64_t j = start; j <= high; j += p) sieve[j - low] = 0;
        }
        for (std::uint64_t n = low; n <= high; ++n)
            if (sieve[n - low]) visit(n);
        if (high == hi) break;
    }
}

PrimeTable sieve_range(std::uint64_t bound) {
    if (bound < 2) throw std::invalid_argument("sieve_range: bound must be >= 2");
    std::vector<std::uint64_t> primes;
    if (bound >= 100) {
        double b = static_cast<double>(bound);
        primes.reserve(static_cast<std::size_t>(1.3 * b / std::log(b)));
    }
    for_each_prime(2, bound, [&](std::uint64_t p) { primes.push_back(p); });
    return PrimeTable(bound, std::move(primes));
}

std::uint64_t count_primes(std::uint64_t bound) {
    std::uint64_t n = 0;
    for_each_prime(2, bound, [&](std::uint64_t) { ++n; });
    return n;
}

namespace {

std::uint64_t to_bound(const Rational& r) {
    mpz_class f = r.floor();
    if (f < 0) return 0;
    if (!f.fits_ulong_p()) throw std::invalid_argument("harmonic range too large");
    return f.get_ui();
}

// Sum of 1/p over distinct primes. The denominators are coprime, so the
// binary-split (num, den) pair is already in lowest terms.
std::pair<mpz_class, mpz_class> reciprocal_sum(std::span<const std::uint64_t> ps) {
    if (ps.size() == 1) return {mpz_class(1), mpz_class(static_cast<unsigned long>(ps[0]))};
    auto mid = ps.size() / 2;
    auto [ln, ld] = reciprocal_sum(ps.subspan(0, mid));
    auto [rn, rd] = reciprocal_sum(ps.subspan(mid));
    return {ln * rd + rn * ld, ld * rd};
}

}  // namespace

Rational harmonic_H(const Rational& X, const Rational& Y) {
    if (X < Rational(1) || !(X < Y)) throw std::invalid_argument("harmonic_H requires 1 <= X < Y");
    std::uint64_t lo = to_bound(X), hi = to_bound(Y);
    if (hi > kExactHarmonicLimit)
        throw std::out_of_range("exact harmonic sum is limited to Y <= " + std::to_string(kExactHarmonicLimit));
    if (hi < 2 || hi <= lo) return Rational(0);
    std::vector<std::uint64_t> ps;
    for_each_prime(lo + 1, hi, [&](std::uint64_t p) { ps.push_back(p); });
    if (ps.empty()) return Rational(0);
    auto [n, d] = reciprocal_sum(ps);
    return Rational(n, d);
}

HarmonicValue harmonic_sum(std::uint64_t X, std::uint64_t Y) {
    if (X < 1 || X >= Y) throw std::invalid_argument("harmonic_sum requires 1 <= X < Y");
    HarmonicValue out;
    if (Y <= kExactHarmonicLimit) {
        out.exact = harmonic_H(Rational(static_cast<std::int64_t>(X)), Rational(static_cast<std::int64_t>(Y)));
        out.value = out.exact->to_double();
        return out;
    }
    // Ascending order, Neumaier-compensated.
    double s = 0.0, comp = 0.0;
    for_each_prime(X + 1, Y, [&](std::uint64_t p) {
        double t = 1.0 / static_cast<double>(p);
        double u = s + t;
        comp += std::fabs(s) >= std::fabs(t) ? (s - u) + t : (t - u) + s;
        s = u;
    });
    out.value = s + comp;
    return out;
}

}  // namespace primearcs
