#pragma once

#include "cantor/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace cantor {

enum class Slot : std::uint8_t { keep, gap };

// A (p,q,r) similitude family on [0,1]: each step splits an interval into r
// equal parts, keeps the p slots flagged keep and deletes the q gap slots.
// First and last slots are always kept, so 0 and 1 belong to the limit set.
struct IfsSpec {
    int p = 2;
    int q = 1;
    int r = 3;
    std::vector<Slot> gap_pattern;

    // derived lookup tables, filled by make_spec
    std::vector<int> keep_slots;    // slot index of the i-th kept branch
    std::vector<int> keeps_before;  // keeps_before[slot] = kept slots left of `slot`

    bool operator==(const IfsSpec& o) const {
        return p == o.p && q == o.q && r == o.r && gap_pattern == o.gap_pattern;
    }
};

namespace detail {

inline void fill_tables(IfsSpec& s) {
    s.keep_slots.clear();
    s.keeps_before.assign(static_cast<std::size_t>(s.r) + 1, 0);
    int count = 0;
    for (int i = 0; i < s.r; ++i) {
        s.keeps_before[static_cast<std::size_t>(i)] = count;
        if (s.gap_pattern[static_cast<std::size_t>(i)] == Slot::keep) {
            s.keep_slots.push_back(i);
            ++count;
        }
    }
    s.keeps_before[static_cast<std::size_t>(s.r)] = count;
}

// Default deletion placement: alternating interior slots first (1,3,5,...),
// then remaining interior slots left to right.
inline std::vector<Slot> default_pattern(int q, int r) {
    std::vector<Slot> pat(static_cast<std::size_t>(r), Slot::keep);
    int placed = 0;
    for (int i = 1; i < r - 1 && placed < q; i += 2) {
        pat[static_cast<std::size_t>(i)] = Slot::gap;
        ++placed;
    }
    for (int i = 2; i < r - 1 && placed < q; i += 2) {
        if (pat[static_cast<std::size_t>(i)] == Slot::keep) {
            pat[static_cast<std::size_t>(i)] = Slot::gap;
            ++placed;
        }
    }
    return pat;
}

}  // namespace detail

inline IfsSpec make_spec(int p, int q, int r,
                         std::optional<std::vector<Slot>> pattern = std::nullopt) {
    if (p < 1 || q < 1) throw std::invalid_argument("make_spec: p and q must be >= 1");
    if (p + q != r) throw std::invalid_argument("make_spec: p+q must equal r");
    if (p < 2)
        throw std::invalid_argument("make_spec: p must be >= 2 to retain both endpoints");

    IfsSpec s;
    s.p = p;
    s.q = q;
    s.r = r;
    s.gap_pattern = pattern ? std::move(*pattern) : detail::default_pattern(q, r);

    if (static_cast<int>(s.gap_pattern.size()) != r)
        throw std::invalid_argument("make_spec: gap_pattern length must equal r");
    int keeps = 0;
    for (Slot slot : s.gap_pattern)
        if (slot == Slot::keep) ++keeps;
    if (keeps != p)
        throw std::invalid_argument("make_spec: gap_pattern must retain exactly p slots");
    if (s.gap_pattern.front() != Slot::keep || s.gap_pattern.back() != Slot::keep)
        throw std::invalid_argument("make_spec: first and last slots must be retained");

    detail::fill_tables(s);
    return s;
}

inline IfsSpec triadic_spec() { return make_spec(2, 1, 3); }

// s = log p / log r, exact when p is a rational power of r.
inline ExactReal hausdorff_dimension(const IfsSpec& spec,
                                     int precision_digits = kDefaultPrecisionDigits) {
    return log_ratio(Rational(spec.p), Rational(spec.r), precision_digits);
}

enum class IntervalKind { retained, gap };

struct RationalInterval {
    Rational lo;
    Rational hi;
    IntervalKind kind = IntervalKind::retained;

    Rational length() const { return hi - lo; }
    bool operator==(const RationalInterval& o) const {
        return lo == o.lo && hi == o.hi && kind == o.kind;
    }
};

// Level-n stage of the construction: the p^n retained intervals F_{nk} plus
// every gap deleted at levels 1..n (adjacent gap slots of one level merge).
struct CantorApproximation {
    IfsSpec spec;
    int level = 0;
    std::vector<RationalInterval> retained;
    std::vector<RationalInterval> gaps;
};

inline constexpr std::int64_t kDefaultIntervalCap = 1 << 20;

inline CantorApproximation level(const IfsSpec& spec, int n,
                                 std::int64_t interval_cap = kDefaultIntervalCap) {
    if (n < 0) throw std::invalid_argument("level: n must be >= 0");
    {
        std::int64_t total = 1;
        for (int i = 0; i < n; ++i) {
            total *= spec.p;
            if (total > interval_cap)
                throw resource_error("level: p^n exceeds interval cap");
        }
    }

    CantorApproximation approx;
    approx.spec = spec;
    approx.level = n;
    approx.retained = {RationalInterval{Rational(0), Rational(1), IntervalKind::retained}};

    const Rational rr(spec.r);
    for (int lvl = 1; lvl <= n; ++lvl) {
        std::vector<RationalInterval> next;
        next.reserve(approx.retained.size() * static_cast<std::size_t>(spec.p));
        for (const auto& iv : approx.retained) {
            const Rational sub = iv.length() / rr;
            int i = 0;
            while (i < spec.r) {
                if (spec.gap_pattern[static_cast<std::size_t>(i)] == Slot::keep) {
                    next.push_back({iv.lo + sub * i, iv.lo + sub * (i + 1),
                                    IntervalKind::retained});
                    ++i;
                } else {
                    int j = i;
                    while (j < spec.r &&
                           spec.gap_pattern[static_cast<std::size_t>(j)] == Slot::gap)
                        ++j;
                    approx.gaps.push_back({iv.lo + sub * i, iv.lo + sub * j,
                                           IntervalKind::gap});
                    i = j;
                }
            }
        }
        approx.retained = std::move(next);
    }
    std::sort(approx.gaps.begin(), approx.gaps.end(),
              [](const RationalInterval& a, const RationalInterval& b) { return a.lo < b.lo; });
    return approx;
}

namespace detail {

// Position of y in [0,1] against the slot pattern of one subdivision step.
// Boundary points prefer a kept slot, so gap endpoints classify as retained.
struct SlotHit {
    bool in_keep = false;
    int slot = 0;          // kept slot entered (when in_keep)
    int keep_ordinal = 0;  // index of that slot among kept slots
    Rational rescaled;     // coordinate within the entered slot
    int gap_begin = 0;     // maximal run of gap slots (when !in_keep)
    int gap_end = 0;       // one past the last gap slot of the run
};

inline SlotHit locate_slot(const IfsSpec& spec, const Rational& y) {
    const Rational scaled = y * spec.r;
    Integer fl = numerator(scaled) / denominator(scaled);
    int slot = fl.convert_to<int>();
    const bool on_boundary = (scaled == Rational(fl));

    SlotHit hit;
    if (on_boundary && slot > 0) {
        // y sits between slot-1 and slot
        if (slot < spec.r && spec.gap_pattern[static_cast<std::size_t>(slot)] == Slot::keep) {
            hit.in_keep = true;
            hit.slot = slot;
            hit.rescaled = Rational(0);
        } else {
            hit.in_keep = true;  // last slot is always keep, so slot-1 works for y=1
            hit.slot = slot - 1;
            hit.rescaled = Rational(1);
            if (spec.gap_pattern[static_cast<std::size_t>(hit.slot)] != Slot::keep)
                hit.in_keep = false;
        }
        if (!hit.in_keep) {
            // interior boundary of a merged gap run
            int b = slot - 1;
            while (b > 0 && spec.gap_pattern[static_cast<std::size_t>(b - 1)] == Slot::gap) --b;
            int e = slot;
            while (e < spec.r && spec.gap_pattern[static_cast<std::size_t>(e)] == Slot::gap) ++e;
            hit.gap_begin = b;
            hit.gap_end = e;
            return hit;
        }
    } else {
        if (slot >= spec.r) slot = spec.r - 1;  // y == 1
        if (spec.gap_pattern[static_cast<std::size_t>(slot)] == Slot::keep) {
            hit.in_keep = true;
            hit.slot = slot;
            hit.rescaled = scaled - slot;
        } else {
            int b = slot;
            while (b > 0 && spec.gap_pattern[static_cast<std::size_t>(b - 1)] == Slot::gap) --b;
            int e = slot;
            while (e < spec.r && spec.gap_pattern[static_cast<std::size_t>(e)] == Slot::gap) ++e;
            hit.gap_begin = b;
            hit.gap_end = e;
            return hit;
        }
    }
    hit.keep_ordinal = spec.keeps_before[static_cast<std::size_t>(hit.slot)];
    return hit;
}

}  // namespace detail

struct Membership {
    enum class Kind { in_set, in_gap, undecided };
    Kind kind = Kind::undecided;
    int level = 0;                       // level decided at (or max_level if undecided)
    std::optional<RationalInterval> gap; // the containing gap, endpoints included
};

// Digit-walk membership test. InC is proven when the rescaled coordinate
// revisits a previous state (the expansion is periodic in retained branches).
inline Membership membership(const IfsSpec& spec, const Rational& x, int max_level = 64) {
    if (x < 0 || x > 1) throw std::domain_error("membership: x must lie in [0,1]");

    Rational y = x;
    Rational lo(0), len(1);
    std::map<Rational, int> seen;
    for (int lvl = 1; lvl <= max_level; ++lvl) {
        if (seen.count(y)) return {Membership::Kind::in_set, lvl - 1, std::nullopt};
        seen.emplace(y, lvl);

        auto hit = detail::locate_slot(spec, y);
        const Rational sub = len / spec.r;
        if (!hit.in_keep) {
            RationalInterval gap{lo + sub * hit.gap_begin, lo + sub * hit.gap_end,
                                 IntervalKind::gap};
            return {Membership::Kind::in_gap, lvl, gap};
        }
        lo += sub * hit.slot;
        len = sub;
        y = hit.rescaled;
    }
    return {Membership::Kind::undecided, max_level, std::nullopt};
}

}  // namespace cantor
