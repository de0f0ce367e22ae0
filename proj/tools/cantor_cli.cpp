// Command-line front end: construct Cantor approximations, evaluate the
// staircase, valuations, zero-sets, norms, neighbours, measures and the
// scale-invariant calculus, emitting CSV or JSON tables.

#include <CLI11.hpp>
#include <json.hpp>

#include "cantor/cantor.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace cantor;
using nlohmann::json;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void print_table(const Table& t, const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& row : t.rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
            arr.push_back(obj);
        }
        std::cout << arr.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        std::cout << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            std::cout << row[i] << (i + 1 < row.size() ? "," : "\n");
}

struct Config {
    int p = 2, q = 1, r = 3;
    std::string pattern;  // "keep,gap,keep", empty = default placement
    int precision = kDefaultPrecisionDigits;
    int level_cap = 20;
    std::string format = "csv";
};

std::vector<Slot> parse_pattern(const std::string& text) {
    std::vector<Slot> pat;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (tok == "keep")
            pat.push_back(Slot::keep);
        else if (tok == "gap")
            pat.push_back(Slot::gap);
        else
            throw std::invalid_argument("pattern entries must be keep|gap");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return pat;
}

Config load_config(int argc, char** argv) {
    Config cfg;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) throw std::invalid_argument("cannot open config file");
            json j;
            in >> j;
            cfg.p = j.value("p", cfg.p);
            cfg.q = j.value("q", cfg.q);
            cfg.r = j.value("r", cfg.r);
            cfg.precision = j.value("precision", cfg.precision);
            cfg.level_cap = j.value("level_cap", cfg.level_cap);
            cfg.format = j.value("format", cfg.format);
            if (j.contains("gap_pattern")) {
                std::string pat;
                for (const auto& e : j.at("gap_pattern")) {
                    if (!pat.empty()) pat += ",";
                    pat += e.get<std::string>();
                }
                cfg.pattern = pat;
            }
        }
    }
    return cfg;
}

IfsSpec spec_from(const Config& cfg) {
    std::optional<std::vector<Slot>> pat;
    if (!cfg.pattern.empty()) pat = parse_pattern(cfg.pattern);
    return make_spec(cfg.p, cfg.q, cfg.r, std::move(pat));
}

void check_level(int n, const Config& cfg) {
    if (n > cfg.level_cap) throw resource_error("level exceeds configured level cap");
}

RealFn catalog_function(const std::string& name, const Rational& param, const IfsSpec& spec,
                        const std::string& table_path) {
    if (name == "power") {
        Real a = to_real(param);
        return [a](const Real& x) { return real_pow(x, a); };
    }
    if (name == "abs") {
        return [](const Real& x) { return abs(x); };
    }
    if (name == "const") {
        Real c = to_real(param);
        return [c](const Real& x) { (void)x; return c; };
    }
    if (name == "logquad") {
        return [](const Real& x) {
            using std::exp;
            using std::log;
            Real t = log(x);
            return exp(t * t);
        };
    }
    if (name == "staircase") {
        return [spec](const Real& x) {
            Rational xq = parse_rational(x.str(40));
            if (xq < 0) xq = 0;
            if (xq > 1) xq = 1;
            return to_real(cantor_function(spec, xq, 48).y);
        };
    }
    if (name == "table") {
        std::ifstream in(table_path);
        if (!in) throw std::invalid_argument("cannot open table file");
        std::vector<std::pair<Real, Real>> pts;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto comma = line.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("table rows must be x,y");
            pts.emplace_back(Real(line.substr(0, comma)), Real(line.substr(comma + 1)));
        }
        if (pts.size() < 2) throw std::invalid_argument("table needs at least two points");
        return [pts](const Real& x) {
            if (x <= pts.front().first) return pts.front().second;
            for (std::size_t i = 1; i < pts.size(); ++i) {
                if (x <= pts[i].first) {
                    const auto& [x0, y0] = pts[i - 1];
                    const auto& [x1, y1] = pts[i];
                    return cantor::Real(y0 + (y1 - y0) * (x - x0) / (x1 - x0));
                }
            }
            return pts.back().second;
        };
    }
    throw std::invalid_argument("unknown function: " + name +
                                " (expected power|abs|const|logquad|staircase|table)");
}

std::string format_staircase_value(const StaircaseValue& v, int precision) {
    if (v.exact) return rational_to_string(v.y);
    return real_to_string(to_real(v.y), precision);
}

int run(int argc, char** argv) {
    Config cfg = load_config(argc, argv);

    CLI::App app{"Scale-invariant analysis on zero-measure Cantor sets"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "JSON config mirroring the common flags");
    app.add_option("--p", cfg.p, "retained intervals per step");
    app.add_option("--q", cfg.q, "deleted intervals per step");
    app.add_option("--r", cfg.r, "subdivision count (p+q)");
    app.add_option("--pattern", cfg.pattern, "slot pattern, e.g. keep,gap,keep");
    app.add_option("--precision", cfg.precision, "decimal digits for real output")
        ->check(CLI::Range(6, kMaxPrecisionDigits));
    app.add_option("--level-cap", cfg.level_cap, "maximum construction level");
    app.add_option("--format", cfg.format, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    // construct
    auto* construct = app.add_subcommand("construct", "level-n retained and gap intervals");
    int construct_level = 1;
    construct->add_option("--level", construct_level, "construction level n")->required();

    // staircase
    auto* staircase = app.add_subcommand("staircase", "Cantor function values");
    std::string staircase_x;
    int staircase_samples = 0;
    int staircase_max_level = 64;
    staircase->add_option("--x", staircase_x, "single rational query point");
    staircase->add_option("--samples", staircase_samples, "uniform sample count (incl. ends)");
    staircase->add_option("--max-level", staircase_max_level, "resolution bound");

    // valuation
    auto* valuation = app.add_subcommand("valuation", "valuation of a relative infinitesimal");
    std::string val_eps, val_x;
    valuation->add_option("--epsilon", val_eps, "scale in (0,1)")->required();
    valuation->add_option("--x", val_x, "infinitesimal 0 < x <= epsilon")->required();

    // zeroset
    auto* zeroset = app.add_subcommand("zeroset", "valued zero-set 0_n: gap intervals + values");
    int zeroset_level = 1;
    zeroset->add_option("--level", zeroset_level, "level n")->required();

    // norm
    auto* norm = app.add_subcommand("norm", "interval norm or point norm ||x||");
    int norm_interval_level = -1;
    std::string norm_x, norm_eps;
    norm->add_option("--interval-level", norm_interval_level, "level n for ||F_nk||");
    norm->add_option("--x", norm_x, "point of C");
    norm->add_option("--epsilon", norm_eps, "scale for the point norm");

    // neighbors
    auto* neighbors = app.add_subcommand("neighbors", "multiplicative neighbours of x");
    std::string nb_x, nb_exp;
    int nb_limit_k = 0;
    neighbors->add_option("--x", nb_x, "base point in (0,1)")->required();
    neighbors->add_option("--exponent", nb_exp, "valuation exponent >= 0");
    neighbors->add_option("--limit-k", nb_limit_k, "finite-k limit construction instead");

    // measure
    auto* measure = app.add_subcommand("measure", "measure convergence table for C");
    int measure_level = 8;
    std::string measure_exponent;
    measure->add_option("--level", measure_level, "max level n")->required();
    measure->add_option("--exponent", measure_exponent,
                        "deliberately wrong exponent s' for the dimension scan");

    // derivative
    auto* derivative = app.add_subcommand("derivative", "scale-invariant logarithmic derivative");
    std::string der_fn = "power", der_param = "1", der_x, der_h = "1e-6", der_eps, der_table;
    derivative->add_option("--fn", der_fn, "power|abs|const|logquad|staircase|table|valuation");
    derivative->add_option("--param", der_param, "function parameter (exponent a, constant c)");
    derivative->add_option("--x", der_x, "evaluation point")->required();
    derivative->add_option("--step", der_h, "log-coordinate step");
    derivative->add_option("--epsilon", der_eps, "scale (fn=valuation)");
    derivative->add_option("--table", der_table, "piecewise-linear table file (fn=table)");

    // mvt
    auto* mvt = app.add_subcommand("mvt", "mean-value residual in log coordinates");
    std::string mvt_fn = "power", mvt_param = "2", mvt_x0, mvt_gap, mvt_table;
    mvt->add_option("--fn", mvt_fn, "power|const|logquad|staircase|table");
    mvt->add_option("--param", mvt_param, "function parameter");
    mvt->add_option("--x0", mvt_x0, "expansion point")->required();
    mvt->add_option("--gap", mvt_gap, "norm gap ||X - X0||")->required();
    mvt->add_option("--table", mvt_table, "piecewise-linear table file (fn=table)");

    // integral
    auto* integral = app.add_subcommand("integral", "corrected unit integral 1 - eps + v(eps)");
    std::string int_eps, int_v = "0";
    integral->add_option("--epsilon", int_eps, "scale in (0,1)")->required();
    integral->add_option("--v", int_v, "valuation v(epsilon) >= 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const int prec = cfg.precision;
    IfsSpec spec = spec_from(cfg);
    Table out;

    if (*construct) {
        check_level(construct_level, cfg);
        auto approx = level(spec, construct_level);
        out.columns = {"kind", "lo", "hi"};
        for (const auto& iv : approx.retained)
            out.add_row({"retained", rational_to_string(iv.lo), rational_to_string(iv.hi)});
        for (const auto& iv : approx.gaps)
            out.add_row({"gap", rational_to_string(iv.lo), rational_to_string(iv.hi)});
    } else if (*staircase) {
        out.columns = {"x", "y"};
        if (!staircase_x.empty()) {
            Rational x = parse_rational(staircase_x);
            auto v = cantor_function(spec, x, staircase_max_level);
            out.add_row({rational_to_string(x), format_staircase_value(v, prec)});
        } else {
            if (staircase_samples < 2)
                throw std::invalid_argument("staircase: need --x or --samples >= 2");
            for (int i = 0; i < staircase_samples; ++i) {
                Rational x(i, staircase_samples - 1);
                auto v = cantor_function(spec, x, staircase_max_level);
                out.add_row({rational_to_string(x), format_staircase_value(v, prec)});
            }
        }
    } else if (*valuation) {
        Scale scale(parse_rational(val_eps));
        auto v = infinitesimal_valuation(parse_rational(val_x), scale, prec);
        out.columns = {"epsilon", "x", "lambda", "v"};
        out.add_row({rational_to_string(v.epsilon), rational_to_string(v.x_tilde),
                     real_to_string(v.lambda, prec), exact_real_to_string(v.v, prec)});
    } else if (*zeroset) {
        check_level(zeroset_level, cfg);
        auto zs = valued_zero_set(spec, zeroset_level);
        out.columns = {"level", "gap_lo", "gap_hi", "value"};
        for (const auto& [gap, value] : zs.entries)
            out.add_row({std::to_string(zs.level), rational_to_string(gap.lo),
                         rational_to_string(gap.hi), rational_to_string(value)});
    } else if (*norm) {
        if (norm_interval_level >= 0) {
            check_level(norm_interval_level, cfg);
            out.columns = {"level", "interval_norm"};
            out.add_row({std::to_string(norm_interval_level),
                         rational_to_string(interval_norm(spec, norm_interval_level))});
        } else if (!norm_x.empty() && !norm_eps.empty()) {
            Scale scale(parse_rational(norm_eps));
            auto v = point_norm(parse_rational(norm_x), scale, spec, prec);
            out.columns = {"x", "epsilon", "norm"};
            out.add_row({norm_x, rational_to_string(scale.epsilon),
                         exact_real_to_string(v, prec)});
        } else {
            throw std::invalid_argument("norm: need --interval-level or both --x and --epsilon");
        }
    } else if (*neighbors) {
        Rational x = parse_rational(nb_x);
        if (nb_limit_k > 0) {
            check_level(nb_limit_k, cfg);
            auto lim = neighbor_limit_construction(spec, x, nb_limit_k);
            out.columns = {"x_minus", "x_plus", "scaled_gap_minus", "scaled_gap_plus",
                           "staircase_gap_minus", "staircase_gap_plus", "sigma_minus",
                           "sigma_plus", "balance_residual"};
            out.add_row({rational_to_string(lim.bracket.lo), rational_to_string(lim.bracket.hi),
                         rational_to_string(lim.scaled_gap_minus),
                         rational_to_string(lim.scaled_gap_plus),
                         rational_to_string(lim.staircase_gap_minus),
                         rational_to_string(lim.staircase_gap_plus),
                         real_to_string(lim.sigma_minus, prec),
                         real_to_string(lim.sigma_plus, prec),
                         rational_to_string(lim.balance_residual)});
        } else {
            if (nb_exp.empty()) throw std::invalid_argument("neighbors: need --exponent");
            auto nb = multiplicative_neighbors(x, to_real(parse_rational(nb_exp)));
            out.columns = {"x", "exponent", "x_plus", "x_minus"};
            out.add_row({rational_to_string(x), real_to_string(nb.exponent, prec),
                         real_to_string(nb.x_plus, prec), real_to_string(nb.x_minus, prec)});
        }
    } else if (*measure) {
        check_level(measure_level, cfg);
        if (!measure_exponent.empty()) {
            Real sp = to_real(parse_rational(measure_exponent));
            auto sums = exponent_level_sums(spec, sp, measure_level);
            out.columns = {"n", "level_sum"};
            for (int n = 1; n <= measure_level; ++n)
                out.add_row({std::to_string(n),
                             real_to_string(sums[static_cast<std::size_t>(n - 1)], prec)});
        } else {
            auto rows = measure_convergence_table(spec, whole_set_target(), measure_level);
            out.columns = {"n", "count", "mu_s", "mu_v", "ratio"};
            for (const auto& row : rows)
                out.add_row({std::to_string(row.n), row.count.str(),
                             rational_to_string(row.mu_s), rational_to_string(row.mu_v),
                             rational_to_string(row.ratio)});
        }
    } else if (*derivative) {
        if (der_fn == "valuation") {
            if (der_eps.empty()) throw std::invalid_argument("derivative: need --epsilon");
            Scale scale(parse_rational(der_eps));
            auto res = valuation_derivative_check(scale, {parse_rational(der_x)},
                                                  to_real(parse_rational(der_h)));
            out.columns = {"x", "valid", "dv_dlog_inv_x"};
            out.add_row({der_x, res[0].valid ? "true" : "false",
                         res[0].valid ? real_to_string(res[0].value, prec) : ""});
        } else {
            auto f = catalog_function(der_fn, parse_rational(der_param), spec, der_table);
            auto res = scale_derivative(f, to_real(parse_rational(der_x)),
                                        to_real(parse_rational(der_h)));
            out.columns = {"x", "h", "value", "two_sided_gap"};
            out.add_row({real_to_string(res.x, prec), real_to_string(res.h, prec),
                         real_to_string(res.value, prec),
                         real_to_string(res.two_sided_gap, prec)});
        }
    } else if (*mvt) {
        auto f = catalog_function(mvt_fn, parse_rational(mvt_param), spec, mvt_table);
        Real x0 = to_real(parse_rational(mvt_x0));
        Real gap = to_real(parse_rational(mvt_gap));
        using std::exp;
        Real x = x0 * exp(gap);
        Real res = mvt_residual(f, x0, x, gap);
        out.columns = {"x0", "x", "norm_gap", "residual"};
        out.add_row({real_to_string(x0, prec), real_to_string(x, prec),
                     real_to_string(gap, prec), real_to_string(res, prec)});
    } else if (*integral) {
        auto res = corrected_integral(parse_rational(int_eps), to_real(parse_rational(int_v)));
        out.columns = {"epsilon", "v_epsilon", "value"};
        out.add_row({rational_to_string(res.epsilon), real_to_string(res.v_epsilon, prec),
                     real_to_string(res.value, prec)});
    }

    print_table(out, cfg.format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cantor::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
