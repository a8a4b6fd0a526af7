#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "primearcs/rational.hpp"

namespace primearcs {

/// Closed arc {left + t mod 1 : 0 <= t <= length} on the circle R/Z.
/// The arc may wrap through 0; length 1 is the whole circle.
class Arc {
public:
    /// left is reduced mod 1; throws std::invalid_argument unless 0 <= length <= 1.
    Arc(const Rational& left, const Rational& length);

    const Rational& left() const { return left_; }
    const Rational& length() const { return length_; }
    /// left + length, possibly > 1 when the arc wraps.
    Rational right() const { return left_ + length_; }
    bool wraps() const { return left_ + length_ > Rational(1); }

    /// Closed membership; x is reduced mod 1 first.
    bool contains(const Rational& x) const;

    /// The arc as one or two segments [lo, hi] inside [0, 1].
    std::vector<std::pair<Rational, Rational>> segments() const;

    friend bool operator==(const Arc&, const Arc&) = default;

private:
    Rational left_;
    Rational length_;
};

/// I_p(a) = [a/p - c/p, a/p + c/p] taken on the circle.
/// Requires 0 <= a < p and 0 < c <= 1/2.
Arc arc_of(std::uint64_t p, std::uint64_t a, const Rational& c);

/// Throws std::invalid_argument("c must be in (0,1/2]") otherwise.
void require_valid_c(const Rational& c);

/// Disjoint union of closed arcs in canonical form: sorted by left
/// endpoint, no two arcs touching or overlapping. An arc through 0, if
/// any, is the last one.
class ArcUnion {
public:
    ArcUnion() = default;

    std::span<const Arc> arcs() const { return arcs_; }
    bool empty() const { return arcs_.empty(); }

    bool contains(const Rational& x) const;
    /// Closure of the complement. Measures are complementary.
    ArcUnion complement() const;

    friend bool operator==(const ArcUnion&, const ArcUnion&) = default;

private:
    friend ArcUnion normalize_union(std::span<const Arc> arcs);
    friend ArcUnion union_of_segments(std::vector<std::pair<Rational, Rational>> segments);
    std::vector<Arc> arcs_;
};

ArcUnion normalize_union(std::span<const Arc> arcs);
/// Canonical union of closed segments [lo, hi] with 0 <= lo <= hi <= 1.
ArcUnion union_of_segments(std::vector<std::pair<Rational, Rational>> segments);

Rational measure(const ArcUnion& u);
Rational intersect_measure(const Arc& a, const Arc& b);
/// Circle distance from x to y, in [0, 1/2].
Rational circle_distance(const Rational& x, const Rational& y);

/// Incrementally grown covered set, used by the greedy constructions.
/// Stores disjoint sorted segments of [0, 1] and the running measure.
class CoverageBuilder {
public:
    /// Exact measure of arc \ covered.
    Rational gain(const Arc& arc) const;
    /// Exact measure of arc ∩ covered.
    Rational overlap(const Arc& arc) const;
    /// True if the arc meets the covered set in positive measure.
    bool touches(const Arc& arc) const;
    void add(const Arc& arc);

    /// The a in [0, p) maximizing gain(I_p(a)), smallest a on ties, with
    /// its exact gain.
    std::pair<std::uint64_t, Rational> best_numerator(std::uint64_t p, const Rational& c) const;

    const Rational& covered() const { return covered_; }
    Rational uncovered() const { return Rational(1) - covered_; }
    ArcUnion to_union() const;

private:
    struct Frac {
        std::int64_t n, d;
    };

    Rational overlap_segment(const Rational& lo, const Rational& hi) const;
    void add_segment(const Rational& lo, const Rational& hi);
    Rational exact_overlap(std::int64_t a, std::int64_t p, const Rational& c) const;

    std::vector<std::pair<Rational, Rational>> segs_;
    // Same segments as machine fractions while every endpoint fits.
    std::vector<std::pair<Frac, Frac>> small_;
    bool small_ok_ = true;
    Rational covered_{0};
};

}  // namespace primearcs
