#pragma once

#include "cantor/cantor_set.hpp"
#include "cantor/numeric.hpp"
#include "cantor/staircase.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cantor {

// A scale: the resolution threshold below which reals behave as relative
// infinitesimals.
struct Scale {
    Rational epsilon;

    explicit Scale(Rational eps) : epsilon(std::move(eps)) {
        if (epsilon <= 0 || epsilon >= 1)
            throw std::domain_error("Scale: epsilon must lie in (0,1)");
    }
};

struct ValuedInfinitesimal {
    Rational x_tilde;
    Rational epsilon;
    ExactReal v;   // log_{1/eps}(eps/x_tilde)
    Real lambda;   // x_tilde / eps, in (0,1]
};

// v(x~) = log_{eps^-1}(eps/x~); v = 0 iff x~ = eps, and x~ = eps^(1+v).
inline ValuedInfinitesimal infinitesimal_valuation(const Rational& x_tilde, const Scale& scale,
                                                   int precision = kDefaultPrecisionDigits) {
    if (x_tilde <= 0 || x_tilde > scale.epsilon)
        throw std::domain_error(
            "infinitesimal_valuation: x_tilde must satisfy 0 < x_tilde <= epsilon");
    ExactReal v = log_ratio(scale.epsilon / x_tilde, Rational(1) / scale.epsilon, precision);
    return {x_tilde, scale.epsilon, std::move(v), to_real(x_tilde / scale.epsilon)};
}

struct AxiomPairResult {
    Rational x1;
    Rational x2;
    bool valid = false;           // pair satisfies 0 < x1 <= x2, x1+x2 < eps
    bool positivity = false;      // (a) v >= 0, zero only at x = eps
    bool scaling = false;         // (b) v(ax) + log_{eps^-1} a == v(x)
    bool strong_triangle = false; // (c) v(x1+x2) <= max(v(x1), v(x2))
};

struct AxiomReport {
    Rational epsilon;
    std::vector<AxiomPairResult> pairs;
    int invalid_count = 0;
    bool all_pass = false;
    // Scalars of the ground field carry the trivial valuation, so v(ax)=v(x)
    // holds after discarding the log_{eps^-1} a term; we verify the
    // compensated identity, which is the exact content at finite scale.
    std::string scaling_convention = "v(a*x) + log_{1/eps}(a) == v(x)";
};

inline AxiomReport ultrametric_axiom_report(
    const Scale& scale, const std::vector<std::pair<Rational, Rational>>& samples,
    int precision = kDefaultPrecisionDigits,
    const std::vector<Rational>& alpha_samples = {Rational(2), Rational(1, 2), Rational(3)}) {
    AxiomReport report;
    report.epsilon = scale.epsilon;
    const Real tol = real_pow(Real(10), Real(-precision));

    bool all = true;
    for (const auto& [a, b] : samples) {
        AxiomPairResult res;
        res.x1 = a;
        res.x2 = b;
        if (!(a > 0 && a <= b && a + b < scale.epsilon)) {
            ++report.invalid_count;
            report.pairs.push_back(res);
            continue;
        }
        res.valid = true;

        auto v1 = infinitesimal_valuation(a, scale, precision);
        auto v2 = infinitesimal_valuation(b, scale, precision);
        auto vsum = infinitesimal_valuation(a + b, scale, precision);

        res.positivity = v1.v.value() >= 0 && v2.v.value() >= 0 &&
                         (a == scale.epsilon || v1.v.value() > 0);

        res.scaling = true;
        const Real log_inv_eps = log(1 / to_real(scale.epsilon));
        for (const Rational& alpha : alpha_samples) {
            Rational scaled = alpha * a;
            if (scaled <= 0 || scaled > scale.epsilon) continue;
            auto va = infinitesimal_valuation(scaled, scale, precision);
            Real compensated = va.v.value() + log(to_real(alpha)) / log_inv_eps;
            if (abs(compensated - v1.v.value()) > tol) res.scaling = false;
        }

        Real vmax = v1.v.value() > v2.v.value() ? v1.v.value() : v2.v.value();
        res.strong_triangle = vsum.v.value() <= vmax + tol;

        all = all && res.positivity && res.scaling && res.strong_triangle;
        report.pairs.push_back(res);
    }
    report.all_pass = all;
    return report;
}

// Level-n gaps with their constant staircase values: the valued zero-set
// 0_n: the origin together with the level-n gap values.
struct ValuedZeroSet {
    IfsSpec spec;
    int level = 0;
    std::vector<std::pair<RationalInterval, Rational>> entries;
    bool generalized = false;  // true when p != 2 (values from the generalized staircase)
};

inline ValuedZeroSet valued_zero_set(const IfsSpec& spec, int n) {
    if (n < 1) throw std::invalid_argument("valued_zero_set: n must be >= 1");
    ValuedZeroSet zs;
    zs.spec = spec;
    zs.level = n;
    zs.generalized = spec.p != 2;

    auto approx = level(spec, n);
    Rational prev(-1);
    for (const auto& gap : approx.gaps) {
        Rational mid = (gap.lo + gap.hi) / 2;
        auto val = cantor_function(spec, mid, n + 8);
        if (!val.exact)
            throw std::runtime_error("valued_zero_set: gap value not resolved");
        if (val.y <= prev)
            throw std::runtime_error("valued_zero_set: values not strictly increasing");
        prev = val.y;
        zs.entries.emplace_back(gap, val.y);
    }
    return zs;
}

// ||F_nk|| = r^(-n s) = p^(-n), identical for every level-n retained interval.
inline Rational interval_norm(const IfsSpec& spec, int n) {
    if (n < 0) throw std::invalid_argument("interval_norm: n must be >= 0");
    return Rational(1, boost::multiprecision::pow(Integer(spec.p), static_cast<unsigned>(n)));
}

// The alpha_n / s0 data of the valuation's general form v = alpha_n eps^s0.
struct ValuationProfile {
    std::vector<Real> alpha_values;
    Real s0;

    static ValuationProfile default_for(const IfsSpec& spec,
                                        int precision = kDefaultPrecisionDigits) {
        return {{Real(1)}, hausdorff_dimension(spec, precision).value()};
    }
};

// ||x|| = eps^s for x in C: the infimum over the profile of alpha_n eps^s0.
// Exact (p^-m) when eps = r^-m and the profile is the default one.
inline ExactReal point_norm(const Rational& x, const Scale& scale, const IfsSpec& spec,
                            const ValuationProfile& profile, int verify_level = 64,
                            int precision = kDefaultPrecisionDigits) {
    auto member = membership(spec, x, verify_level);
    if (member.kind != Membership::Kind::in_set)
        throw std::domain_error("point_norm: x not verified to lie in C");
    if (profile.alpha_values.empty())
        throw std::invalid_argument("point_norm: profile must be nonempty");

    const Real eps = to_real(scale.epsilon);
    Real best = profile.alpha_values.front() * real_pow(eps, profile.s0);
    for (const Real& a : profile.alpha_values) {
        Real cand = a * real_pow(eps, profile.s0);
        if (cand < best) best = cand;
    }

    // exactness: default profile with eps an integer power of 1/r
    const Real s = hausdorff_dimension(spec, precision).value();
    if (profile.alpha_values.size() == 1 && profile.alpha_values.front() == 1 &&
        profile.s0 == s) {
        auto m = log_ratio(scale.epsilon, Rational(1, spec.r), precision);
        if (m.is_exact() && denominator(*m.exact) == 1) {
            long mm = numerator(*m.exact).convert_to<long>();
            if (mm >= 0) return ExactReal::from_rational(rational_pow(Rational(1, spec.p), mm));
        }
    }
    return ExactReal::from_approx(best);
}

inline ExactReal point_norm(const Rational& x, const Scale& scale, const IfsSpec& spec,
                            int precision = kDefaultPrecisionDigits) {
    return point_norm(x, scale, spec, ValuationProfile::default_for(spec, precision), 64,
                      precision);
}

// Tree ultrametric between two C-points: p^-m where m is the depth of the
// deepest canonical retained interval containing both.
inline Rational separation_norm(const IfsSpec& spec, const Rational& a, const Rational& b,
                                int max_level = 256) {
    if (a == b) return Rational(0);
    Rational ya = a, yb = b;
    for (int m = 0; m < max_level; ++m) {
        auto ha = detail::locate_slot(spec, ya);
        auto hb = detail::locate_slot(spec, yb);
        if (!ha.in_keep || !hb.in_keep || ha.slot != hb.slot)
            return rational_pow(Rational(1, spec.p), m);
        ya = ha.rescaled;
        yb = hb.rescaled;
    }
    throw std::runtime_error("separation_norm: points not separated within max_level");
}

struct NeighborPair {
    Rational x;
    Real exponent;
    Real x_plus;   // x^(1+exponent)
    Real x_minus;  // x^(1-exponent)
};

// X+- = x * x^(+-exponent); exponent 0 degenerates to x = x * x^0.
inline NeighborPair multiplicative_neighbors(const Rational& x, const Real& exponent) {
    if (x <= 0 || x >= 1)
        throw std::domain_error("multiplicative_neighbors: x must lie in (0,1)");
    if (exponent < 0)
        throw std::domain_error("multiplicative_neighbors: exponent must be >= 0");
    const Real xr = to_real(x);
    return {x, exponent, real_pow(xr, 1 + exponent), real_pow(xr, 1 - exponent)};
}

// Finite-k data of the limiting neighbour construction: the level-k retained
// interval bracketing x, the r^k / p^k scaled gaps on both sides, and the
// finite-k sigma / X' approximants. The balance identity
// (sum of staircase-scaled gaps) == (sum of x-scaled gaps) holds exactly at
// every k because both sums telescope to 1.
struct NeighborLimit {
    RationalInterval bracket;
    Rational staircase_left;   // value at bracket.lo
    Rational staircase_right;  // value at bracket.hi
    Rational scaled_gap_plus;   // r^k (x_+ - x)
    Rational scaled_gap_minus;  // r^k (x - x_-)
    Rational staircase_gap_plus;   // p^k (X~_+ - X~)
    Rational staircase_gap_minus;  // p^k (X~ - X~_-)
    Real sigma_plus;
    Real sigma_minus;
    Real xprime_plus;
    Real xprime_minus;
    Rational balance_residual;  // exactly 0
};

inline NeighborLimit neighbor_limit_construction(const IfsSpec& spec, const Rational& x,
                                                 int k) {
    if (k < 1) throw std::invalid_argument("neighbor_limit_construction: k must be >= 1");

    // descend k levels; x must stay in retained intervals
    Rational y = x, lo(0), len(1);
    for (int lvl = 1; lvl <= k; ++lvl) {
        auto hit = detail::locate_slot(spec, y);
        if (!hit.in_keep)
            throw std::domain_error("neighbor_limit_construction: x lies in a gap");
        lo += len / spec.r * hit.slot;
        len /= spec.r;
        y = hit.rescaled;
    }
    RationalInterval bracket{lo, lo + len, IntervalKind::retained};

    auto fx = cantor_function(spec, x, k + 256);
    auto fl = cantor_function(spec, bracket.lo, k + 256);
    auto fr = cantor_function(spec, bracket.hi, k + 256);
    if (!fx.exact || !fl.exact || !fr.exact)
        throw std::runtime_error("neighbor_limit_construction: staircase values not resolved");

    const Rational rk = rational_pow(Rational(spec.r), k);
    const Rational pk = rational_pow(Rational(spec.p), k);

    NeighborLimit out;
    out.bracket = bracket;
    out.staircase_left = fl.y;
    out.staircase_right = fr.y;
    out.scaled_gap_plus = rk * (bracket.hi - x);
    out.scaled_gap_minus = rk * (x - bracket.lo);
    out.staircase_gap_plus = pk * (fr.y - fx.y);
    out.staircase_gap_minus = pk * (fx.y - fl.y);

    using std::exp;
    const Real kk(k);
    out.sigma_plus = exp(to_real(out.scaled_gap_plus) / kk);
    out.sigma_minus = exp(to_real(out.scaled_gap_minus) / kk);
    out.xprime_plus = exp(to_real(out.staircase_gap_plus) / kk);
    out.xprime_minus = exp(to_real(out.staircase_gap_minus) / kk);

    out.balance_residual = (out.staircase_gap_plus + out.staircase_gap_minus) -
                           (out.scaled_gap_plus + out.scaled_gap_minus);
    return out;
}

}  // namespace cantor
