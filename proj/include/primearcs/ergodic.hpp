#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "primearcs/sequences.hpp"

namespace primearcs {

using Complex = std::complex<double>;

/// e(t) = exp(2 pi i t).
Complex e(double t);

/// (1/p) sum_{n<p} e(-n a/p) e(x + n y), summed term by term with
/// compensation. Phases are reduced exactly: n a mod p in integers and
/// n y through its fractional part.
Complex s_direct(std::uint64_t p, std::uint64_t a, double x, double y);

/// Geometric-series closed form in d = y - a/p reduced to (-1/2, 1/2]:
/// e(x)/p * sin(pi p d)/sin(pi d) * e((p-1) d / 2). Falls back to
/// s_direct when |sin(pi d)| < kSingularThreshold.
Complex s_closed(std::uint64_t p, std::uint64_t a, double x, double y);

inline constexpr double kSingularThreshold = 1e-8;

/// d = y - a/p reduced to (-1/2, 1/2].
double reduced_offset(std::uint64_t p, std::uint64_t a, double y);

enum class EvalMethod { direct, closed };
std::string_view to_string(EvalMethod m);

struct ErgodicSample {
    std::uint64_t p;
    std::uint64_t a;
    double x;
    double y;
    Complex s;
    EvalMethod method;
    double distance;  // |d|, circle distance from y to a/p
    bool is_hit;      // p * distance <= c
};

/// One sample per listed prime, in the given order.
std::vector<ErgodicSample> convergence_series(const NumeratorSequence& seq, double x, double y,
                                              std::span<const std::uint64_t> primes);

struct SparsePrimeSet {
    std::vector<std::uint64_t> primes;
    double weight_sum = 0.0;  // sum of psi(p)/p over the set; psi = log for geometric
    std::string generator;
};

/// Geometric: the least prime above 4^n for each n >= 1, up to bound,
/// weighted by log p / p.
SparsePrimeSet sparse_geometric(std::uint64_t bound);

/// Least prime above 2^n for each n >= 1, up to bound, weighted by psi(p)/p
/// with psi one of "log", "loglog", "sqrtlog". Throws on other names.
SparsePrimeSet sparse_psi(std::uint64_t bound, std::string_view psi);

}  // namespace primearcs
