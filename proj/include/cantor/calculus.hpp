#pragma once

#include "cantor/cantor_set.hpp"
#include "cantor/numeric.hpp"
#include "cantor/staircase.hpp"
#include "cantor/valuation.hpp"

#include <functional>
#include <vector>

namespace cantor {

using RealFn = std::function<Real(const Real&)>;

struct LogDerivativeResult {
    Real x;
    Real h;
    Real value;          // central difference of log f in log coordinates
    Real two_sided_gap;  // |right-sided - left-sided|
};

inline const Real& default_log_step() {
    static const Real h("1e-6");
    return h;
}

// Scale-invariant derivative d log f / d log x by central differences in
// log coordinates. Exact (up to roundoff) for power laws.
inline LogDerivativeResult scale_derivative(const RealFn& f, const Real& x,
                                            const Real& h = default_log_step()) {
    if (x <= 0) throw std::domain_error("scale_derivative: x must be positive");
    if (h <= 0) throw std::domain_error("scale_derivative: h must be positive");

    using std::exp;
    using std::log;
    const Real f_plus = f(x * exp(h));
    const Real f_mid = f(x);
    const Real f_minus = f(x * exp(-h));
    if (f_plus <= 0 || f_mid <= 0 || f_minus <= 0)
        throw std::domain_error("scale_derivative: f must be positive near x");

    const Real right = (log(f_plus) - log(f_mid)) / h;
    const Real left = (log(f_mid) - log(f_minus)) / h;
    return {x, h, (log(f_plus) - log(f_minus)) / (2 * h), abs(right - left)};
}

struct LocalConstancyReport {
    int level = 0;
    Rational max_gap_variation;        // max over gaps of staircase spread, exactly 0
    std::vector<Rational> gap_values;  // constant value per gap, left to right
    std::vector<Rational> cross_gap_jumps;
};

// x dv/dx = 0 on every gap: the staircase is constant across each clopen
// piece, while the value set over all gaps stays non-constant globally.
inline LocalConstancyReport locally_constant_check(const IfsSpec& spec, int n) {
    if (n < 1) throw std::invalid_argument("locally_constant_check: n must be >= 1");
    auto approx = level(spec, n);

    LocalConstancyReport rep;
    rep.level = n;
    rep.max_gap_variation = 0;
    for (const auto& gap : approx.gaps) {
        Rational mid = (gap.lo + gap.hi) / 2;
        auto vl = cantor_function(spec, gap.lo, n + 64);
        auto vm = cantor_function(spec, mid, n + 64);
        auto vr = cantor_function(spec, gap.hi, n + 64);
        if (!vl.exact || !vm.exact || !vr.exact)
            throw std::runtime_error("locally_constant_check: gap value not resolved");
        Rational lo = vl.y, hi = vl.y;
        for (const Rational& v : {vm.y, vr.y}) {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
        if (hi - lo > rep.max_gap_variation) rep.max_gap_variation = hi - lo;
        rep.gap_values.push_back(vm.y);
    }
    for (std::size_t i = 1; i < rep.gap_values.size(); ++i)
        rep.cross_gap_jumps.push_back(rep.gap_values[i] - rep.gap_values[i - 1]);
    return rep;
}

struct ValuationDerivativeSample {
    Rational x;
    bool valid = false;
    Real value;  // dv / d log_{1/eps} x^{-1}, equals 1 on (0, eps)
};

// v(x) = log_{1/eps}(eps/x) differentiated against u = log_{1/eps}(1/x);
// v = u - 1 identically, so the derivative is 1. Base convention is
// log_{1/eps}, matching the valuation definition.
inline std::vector<ValuationDerivativeSample> valuation_derivative_check(
    const Scale& scale, const std::vector<Rational>& samples,
    const Real& h = default_log_step()) {
    using std::log;
    const Real log_inv_eps = log(1 / to_real(scale.epsilon));
    const Real eps = to_real(scale.epsilon);

    std::vector<ValuationDerivativeSample> out;
    for (const Rational& xq : samples) {
        ValuationDerivativeSample res;
        res.x = xq;
        if (xq <= 0 || xq > scale.epsilon) {
            out.push_back(res);
            continue;
        }
        res.valid = true;
        const Real x = to_real(xq);
        auto v_of_u = [&](const Real& u) {
            // x(u) = eps^u; v = log(eps/x)/log(1/eps)
            Real xu = real_pow(eps, u);
            return log(eps / xu) / log_inv_eps;
        };
        const Real u0 = log(1 / x) / log_inv_eps;
        res.value = (v_of_u(u0 + h) - v_of_u(u0 - h)) / (2 * h);
        out.push_back(res);
    }
    return out;
}

// First-order mean-value residual in log coordinates:
// |log f(X) - log f(X0) - f'(X0) * norm_gap|, f' the scale derivative.
// Decays quadratically in norm_gap when norm_gap = log(X/X0).
inline Real mvt_residual(const RealFn& f, const Real& x0, const Real& x, const Real& norm_gap,
                         const Real& h = default_log_step()) {
    using std::log;
    const Real fx = f(x);
    const Real fx0 = f(x0);
    if (fx <= 0 || fx0 <= 0)
        throw std::domain_error("mvt_residual: f must be positive at X and X0");
    if (x == x0) return Real(0);
    const Real fp = scale_derivative(f, x0, h).value;
    return abs(log(fx) - log(fx0) - fp * norm_gap);
}

struct IntegralResult {
    Rational epsilon;
    Real v_epsilon;
    Real value;  // 1 - epsilon + v_epsilon
};

// The corrected unit integral: scales below eps are replaced by the valued
// scale eps^(1+v(eps)), contributing v(eps) in place of the lost tail.
inline IntegralResult corrected_integral(const Rational& epsilon, const Real& v_epsilon) {
    if (epsilon <= 0 || epsilon >= 1)
        throw std::domain_error("corrected_integral: epsilon must lie in (0,1)");
    if (v_epsilon < 0)
        throw std::domain_error("corrected_integral: v_epsilon must be >= 0");
    return {epsilon, v_epsilon, Real(1) - to_real(epsilon) + v_epsilon};
}

// Exact-rational route for rational v(eps).
inline Rational corrected_integral_exact(const Rational& epsilon, const Rational& v_epsilon) {
    if (epsilon <= 0 || epsilon >= 1)
        throw std::domain_error("corrected_integral: epsilon must lie in (0,1)");
    if (v_epsilon < 0)
        throw std::domain_error("corrected_integral: v_epsilon must be >= 0");
    return Rational(1) - epsilon + v_epsilon;
}

}  // namespace cantor
