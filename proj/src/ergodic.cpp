#include "primearcs/ergodic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace primearcs {

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double t) {
        double u = sum + t;
        comp += std::fabs(sum) >= std::fabs(t) ? (sum - u) + t : (t - u) + sum;
        sum = u;
    }
    double value() const { return sum + comp; }
};

double unit_interval(double t) { return t - std::floor(t); }

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t least_prime_above(std::uint64_t t) {
    std::uint64_t n = t + 1;
    while (!is_prime_u64(n)) ++n;
    return n;
}

std::pair<Complex, EvalMethod> closed_with_method(std::uint64_t p, std::uint64_t a, double x, double y) {
    const double d = reduced_offset(p, a, y);
    const double sd = std::sin(std::numbers::pi * d);
    if (std::fabs(sd) < kSingularThreshold) return {s_direct(p, a, x, y), EvalMethod::direct};
    const double pd = static_cast<double>(p) * d;
    // sin(pi p d) is 2-periodic in p d; reduce before scaling by pi.
    const double reduced = pd - 2.0 * std::round(pd / 2.0);
    const double kernel = std::sin(std::numbers::pi * reduced) / (static_cast<double>(p) * sd);
    return {kernel * e(x + 0.5 * static_cast<double>(p - 1) * d), EvalMethod::closed};
}

}  // namespace

Complex e(double t) {
    double r = unit_interval(t);
    double angle = 2.0 * std::numbers::pi * r;
    return {std::cos(angle), std::sin(angle)};
}

Complex s_direct(std::uint64_t p, std::uint64_t a, double x, double y) {
    if (p == 0 || a >= p) throw std::invalid_argument("s_direct requires 0 <= a < p");
    const double yr = unit_interval(y);
    const double inv_p = 1.0 / static_cast<double>(p);
    CompensatedSum re, im;
    for (std::uint64_t n = 0; n < p; ++n) {
        const double nd = static_cast<double>(n);
        // n*y split into its rounded product and the exact rounding error.
        const double prod = nd * yr;
        const double err = std::fma(nd, yr, -prod);
        const double ny = (prod - std::floor(prod)) + err;
        const double twist = static_cast<double>((n * a) % p) * inv_p;
        const double angle = 2.0 * std::numbers::pi * (x + ny - twist);
        re.add(std::cos(angle));
        im.add(std::sin(angle));
    }
    return Complex(re.value(), im.value()) * inv_p;
}

double reduced_offset(std::uint64_t p, std::uint64_t a, double y) {
    const double pd = static_cast<double>(p);
    const double q = static_cast<double>(a) / pd;
    // Exact remainder of a - q p recovers the rounding error of a/p.
    const double residual = std::fma(-q, pd, static_cast<double>(a)) / pd;
    double d = (unit_interval(y) - q) - residual;
    if (d > 0.5) d -= 1.0;
    if (d <= -0.5) d += 1.0;
    return d;
}

Complex s_closed(std::uint64_t p, std::uint64_t a, double x, double y) {
    if (p == 0 || a >= p) throw std::invalid_argument("s_closed requires 0 <= a < p");
    return closed_with_method(p, a, x, y).first;
}

std::string_view to_string(EvalMethod m) { return m == EvalMethod::direct ? "direct" : "closed"; }

std::vector<ErgodicSample> convergence_series(const NumeratorSequence& seq, double x, double y,
                                              std::span<const std::uint64_t> primes) {
    const double c = seq.c().to_double();
    std::vector<ErgodicSample> out;
    out.reserve(primes.size());
    for (auto p : primes) {
        const auto a = seq.at(p);
        auto [s, method] = closed_with_method(p, a, x, y);
        const double dist = std::fabs(reduced_offset(p, a, y));
        out.push_back({p, a, x, y, s, method, dist, static_cast<double>(p) * dist <= c});
    }
    return out;
}

SparsePrimeSet sparse_geometric(std::uint64_t bound) {
    if (bound < 2) throw std::invalid_argument("sparse_geometric requires bound >= 2");
    SparsePrimeSet set;
    set.generator = "least prime > 4^n, n >= 1; weight log(p)/p";
    CompensatedSum w;
    for (std::uint64_t t = 4; t < bound; t *= 4) {
        std::uint64_t p = least_prime_above(t);
        if (p > bound) break;
        set.primes.push_back(p);
        w.add(std::log(static_cast<double>(p)) / static_cast<double>(p));
        if (t > bound / 4) break;
    }
    set.weight_sum = w.value();
    return set;
}

SparsePrimeSet sparse_psi(std::uint64_t bound, std::string_view psi) {
    if (bound < 2) throw std::invalid_argument("sparse_psi requires bound >= 2");
    double (*weight)(double);
    if (psi == "log")
        weight = [](double p) { return std::log(p); };
    else if (psi == "loglog")
        weight = [](double p) { return std::log(std::log(p)); };
    else if (psi == "sqrtlog")
        weight = [](double p) { return std::sqrt(std::log(p)); };
    else
        throw std::invalid_argument("unknown psi '" + std::string(psi) + "' (expected log, loglog or sqrtlog)");
    SparsePrimeSet set;
    set.generator = "least prime > 2^n, n >= 1; weight " + std::string(psi) + "(p)/p";
    CompensatedSum w;
    for (std::uint64_t t = 2; t < bound; t *= 2) {
        std::uint64_t p = least_prime_above(t);
        if (p > bound) break;
        set.primes.push_back(p);
        double dp = static_cast<double>(p);
        w.add(std::max(0.0, weight(dp)) / dp);
        if (t > bound / 2) break;
    }
    set.weight_sum = w.value();
    return set;
}

}  // namespace primearcs
