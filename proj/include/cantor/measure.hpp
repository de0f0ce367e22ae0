#pragma once

#include "cantor/cantor_set.hpp"
#include "cantor/numeric.hpp"

#include <optional>
#include <vector>

namespace cantor {

// One clopen cover interval with both diameter notions. The non-archimedean
// diameter is scale^s, kept symbolic as p^(-n) via p = r^s.
struct CoverElement {
    RationalInterval interval;
    Rational euclid_diameter;
    Rational na_diameter;
    Rational scale_used;
};

struct MeasureReport {
    IfsSpec spec;
    std::vector<RationalInterval> target;
    int level = 0;
    std::vector<CoverElement> cover;
    Integer cover_count = 0;
    Rational mu_s_sum;
    Rational mu_v_sum;
    ExactReal s_used;
};

namespace detail {

// Depth of `iv` as a canonical retained interval, or nullopt.
inline std::optional<int> canonical_level_of(const IfsSpec& spec, const RationalInterval& iv,
                                             int max_depth = 128) {
    if (iv.lo > iv.hi || iv.lo < 0 || iv.hi > 1) return std::nullopt;
    Rational lo(0), hi(1);
    for (int m = 0; m <= max_depth; ++m) {
        if (iv.lo == lo && iv.hi == hi) return m;
        Rational sub = (hi - lo) / spec.r;
        if (iv.hi - iv.lo > sub) return std::nullopt;
        bool descended = false;
        for (int slot : spec.keep_slots) {
            Rational slo = lo + sub * slot;
            Rational shi = slo + sub;
            if (iv.lo >= slo && iv.hi <= shi) {
                lo = slo;
                hi = shi;
                descended = true;
                break;
            }
        }
        if (!descended) return std::nullopt;
    }
    return std::nullopt;
}

// Level-n canonical refinement of a level-m retained interval.
inline void refine_interval(const IfsSpec& spec, const RationalInterval& iv, int depth,
                            std::vector<RationalInterval>& out, std::int64_t cap) {
    if (depth == 0) {
        if (static_cast<std::int64_t>(out.size()) >= cap)
            throw resource_error("measure: cover size exceeds interval cap");
        out.push_back({iv.lo, iv.hi, IntervalKind::retained});
        return;
    }
    Rational sub = (iv.hi - iv.lo) / spec.r;
    for (int slot : spec.keep_slots) {
        RationalInterval child{iv.lo + sub * slot, iv.lo + sub * (slot + 1),
                               IntervalKind::retained};
        refine_interval(spec, child, depth - 1, out, cap);
    }
}

inline std::vector<CoverElement> canonical_cover(const IfsSpec& spec,
                                                 const std::vector<RationalInterval>& target,
                                                 int n, std::int64_t cap) {
    std::vector<RationalInterval> refined;
    for (const auto& iv : target) {
        auto m = canonical_level_of(spec, iv);
        if (!m)
            throw std::invalid_argument("measure: target interval is not canonical");
        if (*m > n)
            throw std::invalid_argument("measure: target level exceeds cover level n");
        refine_interval(spec, iv, n - *m, refined, cap);
    }
    std::vector<CoverElement> cover;
    cover.reserve(refined.size());
    const Rational diam = rational_pow(Rational(1, spec.r), n);
    const Rational na = rational_pow(Rational(1, spec.p), n);  // diam^s with p = r^s
    for (auto& iv : refined) cover.push_back({iv, diam, na, diam});
    return cover;
}

}  // namespace detail

// Hausdorff s-measure upper estimate over the canonical level-n cover:
// sum of (euclidean diameter)^s, evaluated symbolically as count * p^(-n).
inline MeasureReport hausdorff_measure_estimate(const IfsSpec& spec,
                                                const std::vector<RationalInterval>& target,
                                                int n,
                                                std::int64_t cap = kDefaultIntervalCap,
                                                int precision = kDefaultPrecisionDigits) {
    MeasureReport rep;
    rep.spec = spec;
    rep.target = target;
    rep.level = n;
    rep.s_used = hausdorff_dimension(spec, precision);
    rep.cover = detail::canonical_cover(spec, target, n, cap);
    rep.cover_count = Integer(rep.cover.size());
    rep.mu_s_sum = 0;
    const Rational pn = rational_pow(Rational(1, spec.p), n);
    for (const auto& el : rep.cover) {
        (void)el;
        rep.mu_s_sum += pn;  // (r^-n)^s = p^-n by Eq-(2)-style substitution
    }
    rep.mu_v_sum = rep.mu_s_sum;
    return rep;
}

// Valued measure over the same canonical clopen cover: sum of non-archimedean
// diameters eps_i^s with eps_i = interval length.
inline MeasureReport valued_measure_estimate(const IfsSpec& spec,
                                             const std::vector<RationalInterval>& target,
                                             int n,
                                             std::int64_t cap = kDefaultIntervalCap,
                                             int precision = kDefaultPrecisionDigits) {
    MeasureReport rep;
    rep.spec = spec;
    rep.target = target;
    rep.level = n;
    rep.s_used = hausdorff_dimension(spec, precision);
    rep.cover = detail::canonical_cover(spec, target, n, cap);
    rep.cover_count = Integer(rep.cover.size());
    rep.mu_v_sum = 0;
    for (const auto& el : rep.cover) rep.mu_v_sum += el.na_diameter;
    rep.mu_s_sum = rep.mu_v_sum;
    return rep;
}

struct ConvergenceRow {
    int n = 0;
    Integer count;
    Rational mu_s;
    Rational mu_v;
    Rational ratio;  // mu_v / mu_s, 1 for canonical covers
};

inline std::vector<ConvergenceRow> measure_convergence_table(
    const IfsSpec& spec, const std::vector<RationalInterval>& target, int n_max,
    std::int64_t cap = kDefaultIntervalCap) {
    if (n_max < 1) throw std::invalid_argument("measure_convergence_table: n_max must be >= 1");
    std::vector<ConvergenceRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        auto hs = hausdorff_measure_estimate(spec, target, n, cap);
        auto vs = valued_measure_estimate(spec, target, n, cap);
        ConvergenceRow row;
        row.n = n;
        row.count = hs.cover_count;
        row.mu_s = hs.mu_s_sum;
        row.mu_v = vs.mu_v_sum;
        row.ratio = row.mu_s == 0 ? Rational(0) : row.mu_v / row.mu_s;
        rows.push_back(row);
    }
    return rows;
}

// Level sums p^n * r^(-n s') for a deliberately wrong exponent: diverges for
// s' < s and vanishes for s' > s, the dimension-selection property.
inline std::vector<Real> exponent_level_sums(const IfsSpec& spec, const Real& s_prime,
                                             int n_max) {
    std::vector<Real> sums;
    const Real lp = log(Real(spec.p));
    const Real lr = log(Real(spec.r));
    for (int n = 1; n <= n_max; ++n) {
        using std::exp;
        sums.push_back(exp(Real(n) * (lp - s_prime * lr)));
    }
    return sums;
}

inline std::vector<RationalInterval> whole_set_target() {
    return {RationalInterval{Rational(0), Rational(1), IntervalKind::retained}};
}

}  // namespace cantor
