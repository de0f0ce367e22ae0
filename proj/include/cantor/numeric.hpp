#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cantor {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 50 decimal digits; log/exp/pow on this type are accurate to ~45 digits,
// which bounds the supported precision request below.
using Real = boost::multiprecision::cpp_dec_float_50;

inline constexpr int kMaxPrecisionDigits = 45;
inline constexpr int kDefaultPrecisionDigits = 30;

// Thrown when a construction would exceed a configured size cap.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Real to_real(const Rational& x) {
    return Real(numerator(x)) / Real(denominator(x));
}

inline Rational rational_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (exp < 0) {
        if (base == 0) throw std::domain_error("rational_pow: 0 to negative power");
        return Rational(1) / rational_pow(base, -exp);
    }
    Integer n = boost::multiprecision::pow(numerator(base), static_cast<unsigned>(exp));
    Integer d = boost::multiprecision::pow(denominator(base), static_cast<unsigned>(exp));
    return Rational(n, d);
}

inline Real real_pow(const Real& base, const Real& exp) {
    using std::pow;
    return pow(base, exp);
}

// A real number that is tracked exactly as a rational when the computation
// could certify exactness (e.g. log_9 3 = 1/2), and as a precision-tracked
// approximation otherwise.
struct ExactReal {
    Real approx;
    std::optional<Rational> exact;

    bool is_exact() const { return exact.has_value(); }
    const Real& value() const { return approx; }

    static ExactReal from_rational(Rational r) {
        return ExactReal{to_real(r), std::move(r)};
    }
    static ExactReal from_approx(Real v) { return ExactReal{std::move(v), std::nullopt}; }
};

// Base-b positional expansion: a finite prefix plus an optional suffix
// repeated forever. `truncated` marks expansions cut off before the
// periodic structure could be detected.
struct DigitSequence {
    int base = 10;
    std::vector<int> digits;     // non-repeating prefix
    std::vector<int> repeating;  // empty when absent
    bool truncated = false;

    bool has_repeating_suffix() const { return !repeating.empty(); }
};

namespace detail {

inline bool contains_digit(const std::vector<int>& v, int d) {
    for (int x : v)
        if (x == d) return true;
    return false;
}

// State cap for period detection; denominators whose remainder orbit could
// exceed this are expanded by truncation instead.
inline constexpr long kPeriodDetectionCap = 1 << 20;

}  // namespace detail

// Base-r expansion of x in [0,1] by exact long division. Rational inputs are
// eventually periodic; when the period is found the result reconstructs x
// exactly. Ambiguous (terminating) expansions resolve to the digit-1-free
// form when one exists, else the terminating one.
inline DigitSequence digits_base_r(const Rational& x, int base, int count) {
    if (base < 2) throw std::invalid_argument("digits_base_r: base must be >= 2");
    if (count < 1) throw std::invalid_argument("digits_base_r: count must be >= 1");
    if (x < 0 || x > 1) throw std::domain_error("digits_base_r: x must lie in [0,1]");

    DigitSequence out;
    out.base = base;

    if (x == 1) {
        out.repeating = {base - 1};
        return out;
    }

    const Integer den = denominator(x);
    const bool detect_period = den <= detail::kPeriodDetectionCap;

    Integer rem = numerator(x);
    std::map<Integer, std::size_t> seen;
    std::vector<int> raw;
    bool terminated = false;
    std::size_t period_start = 0;
    bool periodic = false;

    const std::size_t limit = detect_period
        ? static_cast<std::size_t>(den) + 1
        : static_cast<std::size_t>(count);

    for (std::size_t i = 0; i < limit; ++i) {
        if (rem == 0) {
            terminated = true;
            break;
        }
        if (detect_period) {
            auto it = seen.find(rem);
            if (it != seen.end()) {
                periodic = true;
                period_start = it->second;
                break;
            }
            seen.emplace(rem, i);
        }
        rem *= base;
        Integer digit = rem / den;
        rem %= den;
        raw.push_back(digit.convert_to<int>());
    }

    if (periodic) {
        out.digits.assign(raw.begin(), raw.begin() + static_cast<long>(period_start));
        out.repeating.assign(raw.begin() + static_cast<long>(period_start), raw.end());
        return out;
    }

    if (!terminated) {
        out.digits = std::move(raw);
        out.digits.resize(static_cast<std::size_t>(count), 0);
        out.truncated = true;
        return out;
    }

    // Terminating expansion: the only ambiguous case. Alternative form drops
    // one from the last digit and repeats (base-1) forever.
    bool term_has_one = detail::contains_digit(raw, 1);
    bool alt_exists = !raw.empty();
    bool alt_has_one = true;
    std::vector<int> alt_prefix;
    if (alt_exists) {
        alt_prefix = raw;
        alt_prefix.back() -= 1;
        alt_has_one = detail::contains_digit(alt_prefix, 1) || (base - 1 == 1);
    }

    if (term_has_one && alt_exists && !alt_has_one) {
        out.digits = std::move(alt_prefix);
        out.repeating = {base - 1};
        return out;
    }

    out.digits = std::move(raw);
    if (static_cast<int>(out.digits.size()) < count)
        out.digits.resize(static_cast<std::size_t>(count), 0);
    return out;
}

// Exact value of a digit expansion, repeating suffix summed in closed form.
inline Rational value_from_digits(const DigitSequence& d) {
    if (d.base < 2) throw std::invalid_argument("value_from_digits: base must be >= 2");
    const Rational b(d.base);
    Rational acc(0);
    Rational scale(1);
    for (int digit : d.digits) {
        if (digit < 0 || digit >= d.base)
            throw std::invalid_argument("value_from_digits: digit out of range");
        scale /= b;
        acc += Rational(digit) * scale;
    }
    if (!d.repeating.empty()) {
        Integer rep_num = 0;
        for (int digit : d.repeating) {
            if (digit < 0 || digit >= d.base)
                throw std::invalid_argument("value_from_digits: digit out of range");
            rep_num = rep_num * d.base + digit;
        }
        Integer cycle = boost::multiprecision::pow(Integer(d.base),
                                                   static_cast<unsigned>(d.repeating.size())) - 1;
        acc += scale * Rational(rep_num, cycle);
    }
    return acc;
}

namespace detail {

// Continued-fraction search for a small rational k with a = b^k, verified
// exactly by integer exponentiation.
inline std::optional<Rational> detect_exact_log_ratio(const Rational& a, const Rational& b,
                                                      const Real& t) {
    if (a == 1) return Rational(0);
    if (a == b) return Rational(1);

    constexpr long kMaxDen = 128;
    constexpr long kMaxNum = 512;
    const Real tol("1e-40");

    Real x = t;
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // convergents h/k
    for (int iter = 0; iter < 40; ++iter) {
        Real fl = floor(x);
        if (fl > Real(kMaxNum) || fl < Real(-kMaxNum)) break;
        long long ai = fl.convert_to<long long>();
        long long h2 = ai * h1 + h0;
        long long k2 = ai * k1 + k0;
        if (k2 > kMaxDen || h2 > kMaxNum || h2 < -kMaxNum) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        if (k1 > 0) {
            Real cand = Real(h1) / Real(k1);
            if (abs(t - cand) < tol) {
                if (rational_pow(a, k1) == rational_pow(b, h1))
                    return Rational(h1, k1);
                break;
            }
        }
        Real frac = x - fl;
        if (frac == 0) break;
        x = 1 / frac;
    }
    return std::nullopt;
}

}  // namespace detail

// log(a)/log(b) with absolute error <= 10^(-precision_digits); returns the
// exact rational exponent when a = b^k is certified.
inline ExactReal log_ratio(const Rational& a, const Rational& b,
                           int precision_digits = kDefaultPrecisionDigits) {
    if (a <= 0 || b <= 0) throw std::domain_error("log_ratio: arguments must be positive");
    if (b == 1) throw std::domain_error("log_ratio: base argument must differ from 1");
    if (precision_digits < 1 || precision_digits > kMaxPrecisionDigits)
        throw std::invalid_argument("log_ratio: precision_digits out of supported range");

    Real la = log(to_real(a));
    Real lb = log(to_real(b));
    Real t = la / lb;

    if (auto exact = detail::detect_exact_log_ratio(a, b, t))
        return ExactReal::from_rational(*exact);
    return ExactReal::from_approx(t);
}

}  // namespace cantor
