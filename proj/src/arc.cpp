#include "primearcs/arc.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace primearcs {

namespace {
const Rational kZero{0};
const Rational kOne{1};
const Rational kHalf{1, 2};

using i128 = __int128;

std::optional<std::pair<std::int64_t, std::int64_t>> as_small(const Rational& r) {
    const auto& q = r.raw();
    if (!mpz_fits_slong_p(q.get_num_mpz_t()) || !mpz_fits_slong_p(q.get_den_mpz_t())) return std::nullopt;
    return std::pair{mpz_get_si(q.get_num_mpz_t()), mpz_get_si(q.get_den_mpz_t())};
}
}  // namespace

Arc::Arc(const Rational& left, const Rational& length) : left_(left.frac()), length_(length) {
    if (length.sign() < 0 || length > kOne) throw std::invalid_argument("arc length must be in [0,1]");
}

bool Arc::contains(const Rational& x) const {
    return (x - left_).frac() <= length_ || length_ == kOne;
}

std::vector<std::pair<Rational, Rational>> Arc::segments() const {
    if (length_ == kOne) return {{kZero, kOne}};
    Rational r = right();
    if (r <= kOne) return {{left_, r}};
    return {{left_, kOne}, {kZero, r - kOne}};
}

void require_valid_c(const Rational& c) {
    if (c.sign() <= 0 || c > kHalf) throw std::invalid_argument("c must be in (0,1/2]");
}

Arc arc_of(std::uint64_t p, std::uint64_t a, const Rational& c) {
    if (p < 2) throw std::invalid_argument("arc_of: p must be a prime");
    if (a >= p) throw std::invalid_argument("arc_of: numerator must satisfy 0 <= a < p");
    require_valid_c(c);
    const auto sp = static_cast<std::int64_t>(p);
    Rational centre(static_cast<std::int64_t>(a), sp);
    Rational half = c / Rational(sp);
    return Arc(centre - half, half + half);
}

ArcUnion union_of_segments(std::vector<std::pair<Rational, Rational>> segments) {
    ArcUnion out;
    if (segments.empty()) return out;
    std::sort(segments.begin(), segments.end());
    std::vector<std::pair<Rational, Rational>> merged;
    merged.reserve(segments.size());
    for (auto& s : segments) {
        if (!merged.empty() && s.first <= merged.back().second) {
            if (s.second > merged.back().second) merged.back().second = std::move(s.second);
        } else {
            merged.push_back(std::move(s));
        }
    }
    if (merged.size() == 1 && merged[0].first.is_zero() && merged[0].second == kOne) {
        out.arcs_.emplace_back(kZero, kOne);
        return out;
    }
    bool wrap = merged.size() > 1 && merged.front().first.is_zero() && merged.back().second == kOne;
    std::size_t first = wrap ? 1 : 0;
    std::size_t last = wrap ? merged.size() - 1 : merged.size();
    out.arcs_.reserve(merged.size());
    for (std::size_t i = first; i < last; ++i)
        out.arcs_.emplace_back(merged[i].first, merged[i].second - merged[i].first);
    if (wrap) {
        const auto& tail = merged.back();
        const auto& head = merged.front();
        out.arcs_.emplace_back(tail.first, (kOne - tail.first) + head.second);
    }
    return out;
}

ArcUnion normalize_union(std::span<const Arc> arcs) {
    std::vector<std::pair<Rational, Rational>> segs;
    segs.reserve(arcs.size() + 1);
    for (const auto& a : arcs)
        for (auto& s : a.segments()) segs.push_back(std::move(s));
    return union_of_segments(std::move(segs));
}

bool ArcUnion::contains(const Rational& x) const {
    if (arcs_.empty()) return false;
    Rational y = x.frac();
    auto it = std::upper_bound(arcs_.begin(), arcs_.end(), y,
                               [](const Rational& v, const Arc& a) { return v < a.left(); });
    if (it != arcs_.begin() && std::prev(it)->contains(y)) return true;
    return arcs_.back().contains(y);
}

ArcUnion ArcUnion::complement() const {
    if (arcs_.empty()) return union_of_segments({{kZero, kOne}});
    std::vector<std::pair<Rational, Rational>> covered;
    for (const auto& a : arcs_)
        for (auto& s : a.segments()) covered.push_back(std::move(s));
    std::sort(covered.begin(), covered.end());
    std::vector<std::pair<Rational, Rational>> gaps;
    Rational cursor = kZero;
    for (const auto& [lo, hi] : covered) {
        if (lo > cursor) gaps.emplace_back(cursor, lo);
        cursor = max(cursor, hi);
    }
    if (cursor < kOne) gaps.emplace_back(cursor, kOne);
    return union_of_segments(std::move(gaps));
}

Rational measure(const ArcUnion& u) {
    std::vector<Rational> lengths;
    lengths.reserve(u.arcs().size());
    for (const auto& a : u.arcs()) lengths.push_back(a.length());
    return sum(lengths);
}

Rational intersect_measure(const Arc& a, const Arc& b) {
    Rational total = kZero;
    for (const auto& [alo, ahi] : a.segments())
        for (const auto& [blo, bhi] : b.segments()) {
            Rational lo = max(alo, blo), hi = min(ahi, bhi);
            if (hi > lo) total += hi - lo;
        }
    return total;
}

Rational circle_distance(const Rational& x, const Rational& y) {
    Rational f = (x - y).frac();
    Rational g = kOne - f;
    return f < g ? f : g;
}

Rational CoverageBuilder::overlap_segment(const Rational& lo, const Rational& hi) const {
    Rational total = kZero;
    auto it = std::upper_bound(segs_.begin(), segs_.end(), lo,
                               [](const Rational& v, const auto& s) { return v < s.second; });
    for (; it != segs_.end() && it->first < hi; ++it) {
        Rational a = max(lo, it->first), b = min(hi, it->second);
        if (b > a) total += b - a;
    }
    return total;
}

Rational CoverageBuilder::overlap(const Arc& arc) const {
    Rational total = kZero;
    for (const auto& [lo, hi] : arc.segments()) total += overlap_segment(lo, hi);
    return total;
}

Rational CoverageBuilder::gain(const Arc& arc) const { return arc.length() - overlap(arc); }

bool CoverageBuilder::touches(const Arc& arc) const {
    for (const auto& [lo, hi] : arc.segments()) {
        auto it = std::upper_bound(segs_.begin(), segs_.end(), lo,
                                   [](const Rational& v, const auto& s) { return v < s.second; });
        for (; it != segs_.end() && it->first < hi; ++it)
            if (max(lo, it->first) < min(hi, it->second)) return true;
    }
    return false;
}

void CoverageBuilder::add_segment(const Rational& lo, const Rational& hi) {
    // Segments whose closure meets [lo, hi] are absorbed.
    auto first = std::lower_bound(segs_.begin(), segs_.end(), lo,
                                  [](const auto& s, const Rational& v) { return s.second < v; });
    auto last = first;
    Rational nlo = lo, nhi = hi;
    while (last != segs_.end() && last->first <= hi) {
        nlo = min(nlo, last->first);
        nhi = max(nhi, last->second);
        ++last;
    }
    if (small_ok_) {
        auto sl = as_small(nlo), sh = as_small(nhi);
        if (sl && sh) {
            auto i = small_.begin() + (first - segs_.begin());
            auto j = small_.begin() + (last - segs_.begin());
            auto at = small_.erase(i, j);
            small_.insert(at, {Frac{sl->first, sl->second}, Frac{sh->first, sh->second}});
        } else {
            small_ok_ = false;
            small_.clear();
        }
    }
    auto pos = segs_.erase(first, last);
    segs_.insert(pos, {std::move(nlo), std::move(nhi)});
}

void CoverageBuilder::add(const Arc& arc) {
    covered_ += gain(arc);
    for (const auto& [lo, hi] : arc.segments()) add_segment(lo, hi);
}

Rational CoverageBuilder::exact_overlap(std::int64_t a, std::int64_t p, const Rational& c) const {
    return overlap(arc_of(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(a), c));
}

std::pair<std::uint64_t, Rational> CoverageBuilder::best_numerator(std::uint64_t p, const Rational& c) const {
    require_valid_c(c);
    if (p < 2) throw std::invalid_argument("p must be a prime");
    const auto sp = static_cast<std::int64_t>(p);
    const Rational full = Rational(2) * c / Rational(sp);
    auto cs = as_small(c);
    const bool fast = small_ok_ && cs && p < (1ull << 31) && cs->second < (1ll << 31);

    // Candidates are [(a - c)/p, (a + c)/p] for a = 0..p on the line; a = p
    // is the part of a = 0 near 1. Segments lie in [0, 1].
    std::vector<double> acc(p, 0.0);
    std::vector<char> touched(p, 0);
    if (fast) {
        const std::int64_t cn = cs->first, cd = cs->second, den = sp * cd;
        const double cdbl = static_cast<double>(cn) / static_cast<double>(cd);
        auto less = [](const Frac& x, const Frac& y) { return i128(x.n) * y.d < i128(y.n) * x.d; };
        for (const auto& [lo, hi] : small_) {
            if (!less(lo, hi)) continue;
            double flo = static_cast<double>(lo.n) / static_cast<double>(lo.d);
            double fhi = static_cast<double>(hi.n) / static_cast<double>(hi.d);
            auto first = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(double(sp) * flo - cdbl)) - 1);
            auto last = std::min<std::int64_t>(sp, static_cast<std::int64_t>(std::floor(double(sp) * fhi + cdbl)) + 2);
            for (std::int64_t a = first; a <= last; ++a) {
                Frac left{a * cd - cn, den}, right{a * cd + cn, den};
                const Frac& x = less(lo, left) ? left : lo;
                const Frac& y = less(right, hi) ? right : hi;
                if (!less(x, y)) continue;
                i128 num = i128(y.n) * x.d - i128(x.n) * y.d;
                i128 d = i128(x.d) * y.d;
                auto slot = static_cast<std::size_t>(a == sp ? 0 : a);
                acc[slot] += static_cast<double>(num) / static_cast<double>(d);
                touched[slot] = 1;
            }
        }
    } else {
        const Rational P(sp);
        for (const auto& [lo, hi] : segs_) {
            if (!(lo < hi)) continue;
            mpz_class first = (P * lo - c).floor();
            mpz_class last = (P * hi + c).floor() + 1;
            if (first < 0) first = 0;
            if (last > sp) last = sp;
            for (std::int64_t a = first.get_si(); a <= last.get_si(); ++a) {
                Rational x = max(lo, (Rational(a) - c) / P), y = min(hi, (Rational(a) + c) / P);
                if (!(x < y)) continue;
                auto slot = static_cast<std::size_t>(a == sp ? 0 : a);
                acc[slot] += (y - x).to_double();
                touched[slot] = 1;
            }
        }
    }

    // Any numerator without overlap attains 2c/p; the smallest one wins.
    for (std::uint64_t a = 0; a < p; ++a)
        if (!touched[a]) return {a, full};

    // Float overlaps screen the field; survivors are settled exactly.
    double lowest = *std::min_element(acc.begin(), acc.end());
    double cut = lowest * (1 + 1e-9) + 1e-300;
    std::optional<Rational> best;
    std::uint64_t best_a = 0;
    for (std::uint64_t a = 0; a < p; ++a) {
        if (acc[a] > cut) continue;
        Rational o = exact_overlap(static_cast<std::int64_t>(a), sp, c);
        if (!best || o < *best) {
            best = std::move(o);
            best_a = a;
        }
    }
    return {best_a, full - *best};
}

ArcUnion CoverageBuilder::to_union() const { return union_of_segments(segs_); }

}  // namespace primearcs
