// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failing criteria.

#include "cantor/cantor.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <string>

using namespace cantor;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!pass) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1: |s - log2/log3| <= 1e-25 at default precision, under 1 second.
void criterion_dimension() {
    auto t0 = std::chrono::steady_clock::now();
    auto s = hausdorff_dimension(triadic_spec());
    double elapsed = seconds_since(t0);
    const Real reference("0.6309297535714574370995271143427608542995856401318804279");
    bool pass = abs(s.value() - reference) <= Real("1e-25") && elapsed < 1.0;
    report(1, "Hausdorff dimension of the triadic set", pass,
           "err=" + real_to_string(abs(s.value() - reference), 6));
}

// 2: mu_s = mu_v = 1 exactly for n = 1..12, under 5 seconds.
void criterion_measure_identity() {
    auto t0 = std::chrono::steady_clock::now();
    auto rows = measure_convergence_table(triadic_spec(), whole_set_target(), 12);
    bool pass = rows.size() == 12;
    for (const auto& row : rows)
        pass = pass && row.mu_s == Rational(1) && row.mu_v == Rational(1) &&
               row.ratio == Rational(1);
    pass = pass && seconds_since(t0) < 5.0;
    report(2, "measure identity mu_s = mu_v = 1 for n = 1..12", pass);
}

// 3: triadic zero-sets and interval norm, exact.
void criterion_zero_sets() {
    auto spec = triadic_spec();
    bool pass = true;

    auto z1 = valued_zero_set(spec, 1);
    pass = pass && z1.entries.size() == 1 &&
           z1.entries[0].first.lo == Rational(1, 3) &&
           z1.entries[0].first.hi == Rational(2, 3) &&
           z1.entries[0].second == Rational(1, 2);

    auto z2 = valued_zero_set(spec, 2);
    pass = pass && z2.entries.size() == 3;
    if (pass) {
        const Rational los[] = {Rational(1, 9), Rational(3, 9), Rational(7, 9)};
        const Rational his[] = {Rational(2, 9), Rational(6, 9), Rational(8, 9)};
        for (int i = 0; i < 3; ++i) {
            pass = pass && z2.entries[static_cast<std::size_t>(i)].first.lo == los[i] &&
                   z2.entries[static_cast<std::size_t>(i)].first.hi == his[i] &&
                   z2.entries[static_cast<std::size_t>(i)].second == Rational(i + 1, 4);
        }
    }

    pass = pass && interval_norm(spec, 2) == Rational(1, 4);
    report(3, "valued zero-sets 0_1, 0_2 and ||F_2i|| = 1/4", pass);
}

// 4: staircase increment = 2^-k, brute force k <= 6, spot checks to k = 10.
void criterion_increment() {
    auto spec = triadic_spec();
    bool pass = true;
    for (int k = 1; k <= 6 && pass; ++k)
        for (int j = 1; j <= (1 << k) && pass; ++j)
            pass = staircase_increment(spec, k, j) == rational_pow(Rational(1, 2), k);
    for (int k = 7; k <= 10 && pass; ++k) {
        pass = staircase_increment(spec, k, 1) == rational_pow(Rational(1, 2), k) &&
               staircase_increment(spec, k, 1 << (k - 1)) == rational_pow(Rational(1, 2), k) &&
               staircase_increment(spec, k, 1 << k) == rational_pow(Rational(1, 2), k);
    }
    report(4, "staircase increment law 2^-k", pass);
}

// 5: ultrametric axioms on 10^4 random admissible pairs per scale, plus the
// reconstruction bound |eps^(1+v) - x| <= 1e-28.
void criterion_ultrametric() {
    std::mt19937_64 rng(20090417);
    bool pass = true;
    const Real recon_tol("1e-28");

    for (const Rational& eps : {Rational(1, 3), Rational(1, 9), Rational(1, 100)}) {
        Scale scale(eps);
        std::vector<std::pair<Rational, Rational>> pairs;
        pairs.reserve(10000);
        for (int i = 0; i < 10000; ++i) {
            // x1 <= x2 with x1 + x2 < eps
            long d = std::uniform_int_distribution<long>(1000, 1000000)(rng);
            long cap = d / 3;
            long n1 = std::uniform_int_distribution<long>(1, cap)(rng);
            long n2 = std::uniform_int_distribution<long>(n1, cap)(rng);
            pairs.emplace_back(Rational(n1, d) * eps, Rational(n2, d) * eps);
        }
        auto rep = ultrametric_axiom_report(scale, pairs);
        pass = pass && rep.all_pass && rep.invalid_count == 0;

        for (int i = 0; i < 200; ++i) {
            const auto& [x1, x2] = pairs[static_cast<std::size_t>(i * 37)];
            auto v = infinitesimal_valuation(x1, scale);
            Real rebuilt = real_pow(to_real(eps), 1 + v.v.value());
            pass = pass && abs(rebuilt - to_real(x1)) <= recon_tol;
        }
    }
    report(5, "ultrametric axioms + reconstruction on 3x10^4 pairs", pass);
}

// 6: local constancy is exactly 0 for n <= 10 while values stay non-constant.
void criterion_local_constancy() {
    auto spec = triadic_spec();
    bool pass = true;
    for (int n = 1; n <= 10; ++n) {
        auto rep = locally_constant_check(spec, n);
        pass = pass && rep.max_gap_variation == Rational(0);
        pass = pass && rep.gap_values.size() >= 1;
    }
    auto z = valued_zero_set(spec, 2);
    pass = pass && z.entries.front().second != z.entries.back().second;
    report(6, "local constancy (exact 0) with global non-constancy", pass);
}

// 7: level sums with exponent s +- 0.05 are strictly monotone for n = 1..10.
void criterion_dimension_selection() {
    auto spec = triadic_spec();
    const Real s = hausdorff_dimension(spec).value();
    bool pass = true;
    auto low = exponent_level_sums(spec, s - Real("0.05"), 10);
    for (std::size_t i = 1; i < low.size(); ++i) pass = pass && low[i] > low[i - 1];
    auto high = exponent_level_sums(spec, s + Real("0.05"), 10);
    for (std::size_t i = 1; i < high.size(); ++i) pass = pass && high[i] < high[i - 1];
    report(7, "dimension selection: monotone divergence/vanishing at s +- 0.05", pass);
}

// 8: calculus checks.
void criterion_calculus() {
    bool pass = true;

    for (const Real& a : {Real(-2), Real("0.5"), Real(3)}) {
        auto r = scale_derivative([a](const Real& x) { return real_pow(x, a); }, Real("0.37"));
        pass = pass && abs(r.value - a) <= Real("1e-6");
    }

    auto absr = scale_derivative([](const Real& x) { return abs(x); }, Real("1e-6"));
    auto absl = scale_derivative([](const Real& x) { return abs(-x); }, Real("1e-6"));
    pass = pass && abs(absr.value - absl.value) <= Real("1e-6") &&
           absr.two_sided_gap <= Real("1e-6");

    pass = pass && corrected_integral_exact(Rational(1, 1000), Rational(1, 2)) ==
                       Rational(1499, 1000);
    pass = pass && corrected_integral(Rational(1, 1000), Real("0.5")).value == Real("1.499");

    RealFn f = [](const Real& x) {
        using std::exp;
        using std::log;
        Real t = log(x);
        return exp(t * t);
    };
    using std::exp;
    const Real x0("0.4"), g("0.02");
    Real ratio = mvt_residual(f, x0, x0 * exp(g), g) /
                 mvt_residual(f, x0, x0 * exp(g / 2), g / 2);
    pass = pass && ratio >= Real("3.5") && ratio <= Real("4.5");

    report(8, "calculus: power-law derivatives, |x| smoothing, corrected integral, MVT ratio",
           pass);
}

}  // namespace

int main() {
    criterion_dimension();
    criterion_measure_identity();
    criterion_zero_sets();
    criterion_increment();
    criterion_ultrametric();
    criterion_local_constancy();
    criterion_dimension_selection();
    criterion_calculus();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << "\n";
    return failures;
}
