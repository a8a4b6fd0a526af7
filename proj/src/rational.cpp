#include "primearcs/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace primearcs {

Rational::Rational(std::int64_t n) : q_(static_cast<long>(n)) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
}

Rational::Rational(const mpz_class& n) : q_(n) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("malformed integer");
    mpz_class v(std::string(s), 10);
    return neg ? mpz_class(-v) : v;
}

Rational parse_decimal(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mpz_class ex = parse_integer(s.substr(e + 1));
        if (!ex.fits_slong_p() || abs(ex) > 100000) throw std::invalid_argument("exponent out of range");
        exponent = ex.get_si();
        s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("malformed decimal");
        digits = std::string(ip) + std::string(fp);
        exponent -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed decimal");
        digits = std::string(s);
    }
    mpz_class mant(digits, 10);
    if (neg) mant = -mant;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? Rational(mant, scale) : Rational(mpz_class(mant * scale));
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational");
    try {
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            mpz_class num = parse_integer(text.substr(0, slash));
            std::string_view ds = text.substr(slash + 1);
            if (!ds.empty() && ds.front() == '-') throw std::invalid_argument("negative denominator");
            mpz_class den = parse_integer(ds);
            if (den == 0) throw std::invalid_argument("zero denominator");
            return Rational(num, den);
        }
        if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
        return Rational(parse_integer(text));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("cannot parse rational '" + std::string(text) + "': " + e.what());
    }
}

std::string Rational::str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

Rational Rational::frac() const {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return Rational(r, q_.get_den());
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational sum(std::span<const Rational> terms) {
    if (terms.empty()) return Rational(0);
    // Unreduced (num, den) pairs; reduce once at the end.
    std::vector<std::pair<mpz_class, mpz_class>> level;
    level.reserve(terms.size());
    for (const auto& t : terms) level.emplace_back(t.numerator(), t.denominator());
    while (level.size() > 1) {
        std::vector<std::pair<mpz_class, mpz_class>> next;
        next.reserve(level.size() / 2 + 1);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            auto& [an, ad] = level[i];
            auto& [bn, bd] = level[i + 1];
            if (ad == bd)
                next.emplace_back(an + bn, ad);
            else
                next.emplace_back(an * bd + bn * ad, ad * bd);
        }
        if (level.size() % 2) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    return Rational(level[0].first, level[0].second);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace primearcs
