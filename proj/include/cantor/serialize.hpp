#pragma once

#include "cantor/cantor_set.hpp"
#include "cantor/numeric.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <string>

namespace cantor {

// Rationals print as "num/den", always with the denominator ("1/1").
inline std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << '/' << denominator(r);
    return os.str();
}

inline std::string real_to_string(const Real& v, int precision = kDefaultPrecisionDigits) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

inline std::string exact_real_to_string(const ExactReal& v,
                                        int precision = kDefaultPrecisionDigits) {
    return v.is_exact() ? rational_to_string(*v.exact) : real_to_string(v.approx, precision);
}

// Accepts "num/den", plain integers, and decimal literals ("0.25", "1e-3").
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");

    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }

    std::string mantissa = text;
    long exponent10 = 0;
    auto epos = text.find_first_of("eE");
    if (epos != std::string::npos) {
        mantissa = text.substr(0, epos);
        exponent10 = std::stol(text.substr(epos + 1));
    }

    bool negative = false;
    std::size_t start = 0;
    if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
        negative = mantissa[0] == '-';
        start = 1;
    }

    Integer num = 0;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (std::size_t i = start; i < mantissa.size(); ++i) {
        char c = mantissa[i];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("parse_rational: bad number");
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else {
            throw std::invalid_argument("parse_rational: bad character in number");
        }
    }
    if (!seen_digit) throw std::invalid_argument("parse_rational: no digits");

    Rational value(num);
    long shift = exponent10 - frac_digits;
    if (shift > 0)
        value *= rational_pow(Rational(10), shift);
    else if (shift < 0)
        value /= rational_pow(Rational(10), -shift);
    return negative ? -value : value;
}

inline void to_json(nlohmann::json& j, const IfsSpec& spec) {
    nlohmann::json pattern = nlohmann::json::array();
    for (Slot s : spec.gap_pattern) pattern.push_back(s == Slot::keep ? "keep" : "gap");
    j = nlohmann::json{{"p", spec.p}, {"q", spec.q}, {"r", spec.r}, {"gap_pattern", pattern}};
}

inline void from_json(const nlohmann::json& j, IfsSpec& spec) {
    int p = j.at("p").get<int>();
    int q = j.at("q").get<int>();
    int r = j.at("r").get<int>();
    std::optional<std::vector<Slot>> pattern;
    if (j.contains("gap_pattern") && !j.at("gap_pattern").is_null()) {
        std::vector<Slot> pat;
        for (const auto& entry : j.at("gap_pattern")) {
            std::string s = entry.get<std::string>();
            if (s == "keep")
                pat.push_back(Slot::keep);
            else if (s == "gap")
                pat.push_back(Slot::gap);
            else
                throw std::invalid_argument("IfsSpec: gap_pattern entries must be keep|gap");
        }
        pattern = std::move(pat);
    }
    spec = make_spec(p, q, r, std::move(pattern));
}

}  // namespace cantor
