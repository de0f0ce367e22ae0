#pragma once

#include "cantor/cantor_set.hpp"
#include "cantor/numeric.hpp"

#include <map>
#include <vector>

namespace cantor {

struct StaircaseValue {
    Rational x;
    Rational y;
    bool exact = false;
    int level_resolved = 0;
};

// Generalized devil's staircase: base-r digits of x are mapped through the
// gap pattern to kept-branch ordinals read as base-p digits of y. Points in
// gaps take the constant value determined by the expansion cut at the gap.
inline StaircaseValue cantor_function(const IfsSpec& spec, const Rational& x,
                                      int max_level = 64) {
    if (x < 0 || x > 1) throw std::domain_error("cantor_function: x must lie in [0,1]");

    std::vector<int> branch_digits;
    std::map<Rational, std::size_t> seen;
    Rational y = x;

    for (int lvl = 1; lvl <= max_level; ++lvl) {
        auto it = seen.find(y);
        if (it != seen.end()) {
            DigitSequence ds;
            ds.base = spec.p;
            ds.digits.assign(branch_digits.begin(),
                             branch_digits.begin() + static_cast<long>(it->second));
            ds.repeating.assign(branch_digits.begin() + static_cast<long>(it->second),
                                branch_digits.end());
            return {x, value_from_digits(ds), true, lvl - 1};
        }
        seen.emplace(y, branch_digits.size());

        auto hit = detail::locate_slot(spec, y);
        if (!hit.in_keep) {
            DigitSequence ds;
            ds.base = spec.p;
            ds.digits = branch_digits;
            Rational value = value_from_digits(ds) +
                             Rational(spec.keeps_before[static_cast<std::size_t>(hit.gap_begin)]) /
                                 rational_pow(Rational(spec.p), lvl);
            return {x, value, true, lvl};
        }
        branch_digits.push_back(hit.keep_ordinal);
        y = hit.rescaled;
    }

    DigitSequence ds;
    ds.base = spec.p;
    ds.digits = branch_digits;
    return {x, value_from_digits(ds), false, max_level};
}

// Staircase rise across the j-th retained level-k interval; equals p^(-k).
inline Rational staircase_increment(const IfsSpec& spec, int k, int j) {
    if (k < 1) throw std::domain_error("staircase_increment: k must be >= 1");
    Integer count = boost::multiprecision::pow(Integer(spec.p), static_cast<unsigned>(k));
    if (j < 1 || Integer(j) > count)
        throw std::domain_error("staircase_increment: j out of range");

    auto approx = level(spec, k);
    const auto& iv = approx.retained[static_cast<std::size_t>(j - 1)];
    auto left = cantor_function(spec, iv.lo, k + 64);
    auto right = cantor_function(spec, iv.hi, k + 64);
    if (!left.exact || !right.exact)
        throw std::runtime_error("staircase_increment: endpoint value not resolved");
    return right.y - left.y;
}

namespace detail {

// Terminating base-b digits of y, when den(y) divides b^k.
inline std::optional<std::vector<int>> terminating_digits(const Rational& y, int base) {
    std::vector<int> digits;
    Rational cur = y;
    for (int i = 0; i < 4096 && cur != 0; ++i) {
        cur *= base;
        Integer fl = numerator(cur) / denominator(cur);
        digits.push_back(fl.convert_to<int>());
        cur -= Rational(fl);
    }
    if (cur != 0) return std::nullopt;
    return digits;
}

}  // namespace detail

// Preimage of y under the staircase: the full constancy gap when y is a
// terminating base-p value in (0,1), a single point otherwise.
inline RationalInterval inverse_staircase(const IfsSpec& spec, const Rational& y,
                                          int max_level = 256) {
    if (y < 0 || y > 1) throw std::domain_error("inverse_staircase: y must lie in [0,1]");
    if (y == 0) return {Rational(0), Rational(0), IntervalKind::retained};
    if (y == 1) return {Rational(1), Rational(1), IntervalKind::retained};

    if (auto digits = detail::terminating_digits(y, spec.p)) {
        // Descend kept branches for all but the last digit, then take the gap
        // between kept branches b-1 and b of the final subdivision.
        Rational lo(0), len(1);
        for (std::size_t i = 0; i + 1 < digits->size(); ++i) {
            int slot = spec.keep_slots[static_cast<std::size_t>((*digits)[i])];
            lo += len / spec.r * slot;
            len /= spec.r;
        }
        int b = digits->back();
        int left_slot = spec.keep_slots[static_cast<std::size_t>(b - 1)];
        int right_slot = spec.keep_slots[static_cast<std::size_t>(b)];
        Rational sub = len / spec.r;
        return {lo + sub * (left_slot + 1), lo + sub * right_slot, IntervalKind::gap};
    }

    DigitSequence ds = digits_base_r(y, spec.p, max_level);
    DigitSequence mapped;
    mapped.base = spec.r;
    for (int b : ds.digits)
        mapped.digits.push_back(spec.keep_slots[static_cast<std::size_t>(b)]);
    for (int b : ds.repeating)
        mapped.repeating.push_back(spec.keep_slots[static_cast<std::size_t>(b)]);
    Rational x = value_from_digits(mapped);
    return {x, x, IntervalKind::retained};
}

}  // namespace cantor
