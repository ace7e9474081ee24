#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opk/acceptance.hpp"
#include "opk/opk.hpp"

// Command-line front end: one subcommand per verified claim cluster, JSON
// reports with sorted keys and exact "p/q" rationals. Exit codes: 0 all
// checks pass, 1 a verification failed, 2 usage or resource error.
namespace opk::cli {

using nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Validated invocation: subcommand plus its typed parameters.
struct CommandPlan {
    std::string subcommand;
    int n = 0;
    int max_weight = 5;
    int order = 0;       // series truncation order; 0 = derive from input
    int rec_order = 2;   // recurrence guessing shape
    int rec_degree = 20;
    int exact_upto = 3;
    long terms = 300;
    bool check_nonboundary = false;
    bool invert_input = false;
    bool guess = false;
    std::string method = "lagrange";
    std::string profile = "quick";
    std::string format = "json";
    std::string coeffs;
    std::string gp_file;
    std::string out_path;
    std::string export_matrix;
    std::vector<std::uint64_t> primes{kPrime1, kPrime2};
    std::size_t budget = 1'000'000;
};

namespace detail {

inline TruncatedSeries series_from_spec(const std::string& spec, int order) {
    std::ifstream f(spec);
    if (f.good()) return read_series(f, order);
    // otherwise: comma-separated dense coefficient list starting at t^0
    TruncatedSeries s(order);
    std::stringstream ss(spec);
    std::string tok;
    std::size_t i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i > static_cast<std::size_t>(order)) break;
        s.set(i++, rat_from_string(tok));
    }
    return s;
}

inline json series_to_json(const TruncatedSeries& s) {
    json arr = json::array();
    for (int i = 0; i <= s.order(); ++i)
        if (s[static_cast<std::size_t>(i)] != 0)
            arr.push_back({i, to_string(s[static_cast<std::size_t>(i)])});
    return arr;
}

inline void emit(const CommandPlan& plan, const json& report, std::ostream& out) {
    std::string text;
    if (plan.format == "json") {
        text = report.dump(2) + "\n";
    } else if (plan.format == "csv" && report.contains("coefficients")) {
        std::ostringstream ss;
        ss << "exponent,coefficient\n";
        for (const auto& pair : report["coefficients"])
            ss << pair[0].get<long>() << "," << pair[1].get<std::string>() << "\n";
        text = ss.str();
    } else {  // text
        std::ostringstream ss;
        for (auto it = report.begin(); it != report.end(); ++it)
            ss << it.key() << ": " << it.value().dump() << "\n";
        text = ss.str();
    }
    if (!plan.out_path.empty()) {
        std::ofstream f(plan.out_path);
        if (!f) throw UsageError("cannot open output file: " + plan.out_path);
        f << text;
    } else {
        out << text;
    }
}

inline json positivity_to_json(const PositivityReport& rep) {
    json steps = json::array();
    for (const auto& s : rep.steps) {
        json w = json::array();
        for (const auto& [k, v] : s.witnesses) w.push_back({k, v});
        steps.push_back({{"index", s.index},
                         {"claim", s.claim},
                         {"method", s.method},
                         {"status", s.pass ? "pass" : "fail"},
                         {"witnesses", w}});
    }
    return json{{"all_pass", rep.all_pass},
                {"analytic_scope", rep.analytic_scope},
                {"steps", steps},
                {"terms", rep.terms}};
}

}  // namespace detail

inline CommandPlan parse(const std::vector<std::string>& argv) {
    CommandPlan plan;
    CLI::App app{"exact verification lab for operadic boundary formulas, dimension series, "
                 "and inverse-series positivity"};
    app.require_subcommand(1);

    if (const char* env = std::getenv("OPK_BUDGET")) plan.budget = std::strtoull(env, nullptr, 10);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", plan.format, "json|text|csv")->default_str("json");
        sub->add_option("--out", plan.out_path, "write the report to a file");
        sub->add_option("--budget", plan.budget, "enumeration budget per slice");
    };
    auto add_n = [&](CLI::App* sub) {
        sub->add_option("--n", plan.n, "generator arity, n >= 2")->required()->check(CLI::Range(2, 64));
    };

    auto* vb = app.add_subcommand("verify-boundary", "check d(nu) = n! mu^(n+1) symbolically");
    add_n(vb);
    add_common(vb);

    auto* cy = app.add_subcommand("cycle", "build the weight-(n+2) cycle and test it");
    add_n(cy);
    cy->add_flag("--check-nonboundary", plan.check_nonboundary, "solve d(x) = c_n exactly");
    add_common(cy);

    auto* inv = app.add_subcommand("invert", "compositional inverse of a series");
    inv->add_option("--coeffs", plan.coeffs, "series file, or dense list c0,c1,... of exact rationals")
        ->required();
    inv->add_option("--order", plan.order, "truncation order")->required()->check(CLI::PositiveNumber);
    inv->add_option("--method", plan.method, "lagrange|newton|both")->default_str("lagrange");
    add_common(inv);

    auto* gap = app.add_subcommand("gap", "generator-series gap of the minimal model");
    gap->add_option("--gp-file", plan.gp_file, "Poincare series file (exponent coefficient lines)")
        ->required();
    add_n(gap);
    gap->add_option("--order", plan.order, "truncation order (default: as read)");
    add_common(gap);

    auto* sn = app.add_subcommand("scan-negative", "first negative coefficient of a series");
    sn->add_option("--coeffs", plan.coeffs, "series file, or dense list c0,c1,...")->required();
    sn->add_option("--order", plan.order, "truncation order")->required()->check(CLI::PositiveNumber);
    sn->add_flag("--invert", plan.invert_input, "scan the compositional inverse instead");
    add_common(sn);

    auto* po = app.add_subcommand("poincare", "dimension series by consequence-matrix corank");
    add_n(po);
    po->add_option("--max-weight", plan.max_weight, "largest weight (default 5)");
    po->add_option("--primes", [&plan](const std::vector<std::string>& vals) {
          plan.primes.clear();
          std::stringstream ss(vals.at(0));
          std::string tok;
          while (std::getline(ss, tok, ',')) plan.primes.push_back(std::strtoull(tok.c_str(), nullptr, 10));
          return !plan.primes.empty();
      }, "comma-separated primes below 2^62");
    po->add_option("--exact-upto", plan.exact_upto, "confirm ranks over Q up to this weight (default 3)");
    po->add_option("--export-matrix", plan.export_matrix, "write triplet files PREFIX.w<k>.txt");
    add_common(po);

    auto* rc = app.add_subcommand("recurrence", "verify or re-guess the three-term recurrence");
    rc->add_flag("--guess", plan.guess, "guess from the data instead of verifying");
    rc->add_flag("--verify", [](std::int64_t) {}, "verify the embedded recurrence (default)");
    rc->add_option("--order", plan.rec_order, "guess: recurrence order (default 2)");
    rc->add_option("--degree", plan.rec_degree, "guess: coefficient degree (default 20)");
    rc->add_option("--terms", plan.terms, "number of sequence terms (default 300)");
    add_common(rc);

    auto* ra = app.add_subcommand("radius", "radius-of-convergence identities");
    add_common(ra);

    auto* ps = app.add_subcommand("positivity", "machine-checked positivity certificate");
    ps->add_option("--terms", plan.terms, "certificate range N (default 300)");
    add_common(ps);

    auto* all = app.add_subcommand("run-all", "run the acceptance checks");
    all->add_option("--profile", plan.profile, "quick|full")->default_str("quick");
    add_common(all);

    std::vector<std::string> args(argv.rbegin(), argv.rend());  // CLI11 wants reversed args
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    plan.subcommand = app.get_subcommands().front()->get_name();
    return plan;
}

inline int execute(const CommandPlan& plan, std::ostream& out) {
    json rep{{"tool", "opk"}, {"version", kVersion}, {"check", plan.subcommand}};
    bool ok = true;

    if (plan.subcommand == "verify-boundary") {
        auto r = verify_boundary_formula(plan.n, plan.budget);
        ok = r.pass();
        rep["n"] = plan.n;
        rep["status"] = ok ? "pass" : "fail";
        rep["rhs_coefficient"] = to_string(r.coefficient);
        rep["lhs_terms"] = r.formula_holds ? 1 : 0;
        rep["one_trees"] = r.one_trees;
        rep["zero_trees"] = r.zero_trees;
        rep["b0_empty"] = r.b0_empty;
        rep["b1_unique_comb"] = r.b1_is_comb;
        if (r.first_mismatch)
            rep["first_mismatch"] = format_compact(Alphabet::cobar(plan.n), *r.first_mismatch);
    } else if (plan.subcommand == "cycle") {
        Alphabet a = Alphabet::cobar(plan.n);
        TreePolynomial cn = cycle_cn(plan.n, plan.budget);
        bool dz = differential(a, cn).is_zero();
        Integer expect = factorial(static_cast<unsigned long>(plan.n - 1));
        if (plan.n % 2 == 0) expect = -expect;
        Rational wc = cn.coeff(whistle_blower(a, plan.n));
        ok = dz && (wc == Rational(expect));
        rep["n"] = plan.n;
        rep["cycle_terms"] = cn.size();
        rep["differential_zero"] = dz;
        rep["wn_coefficient"] = to_string(wc);
        rep["wn_expected"] = to_string(expect);
        if (plan.check_nonboundary) {
            auto q = is_boundary(a, cn, plan.budget);
            ok = ok && !q.solvable;
            rep["nonboundary"] = json{{"solvable", q.solvable},
                                      {"rank", q.rank},
                                      {"rank_augmented", q.rank_augmented},
                                      {"basis_size", q.basis_size}};
        }
        rep["status"] = ok ? "pass" : "fail";
    } else if (plan.subcommand == "invert") {
        TruncatedSeries f = detail::series_from_spec(plan.coeffs, plan.order);
        json methods = json::object();
        TruncatedSeries result(plan.order);
        if (plan.method == "lagrange" || plan.method == "both") {
            result = lagrange_invert(f);
            methods["lagrange"] = true;
        }
        if (plan.method == "newton" || plan.method == "both") {
            TruncatedSeries gn = newton_invert(f);
            if (plan.method == "both") {
                ok = (gn == result);
                rep["methods_agree"] = ok;
            } else {
                result = gn;
            }
            methods["newton"] = true;
        }
        rep["coefficients"] = detail::series_to_json(result);
        rep["status"] = ok ? "pass" : "fail";
    } else if (plan.subcommand == "gap") {
        std::ifstream f(plan.gp_file);
        if (!f) throw UsageError("cannot read series file: " + plan.gp_file);
        int order = plan.order;
        if (order == 0) {
            std::ifstream probe(plan.gp_file);
            std::string line;
            long m = 1;
            while (std::getline(probe, line)) {
                std::istringstream ls(line);
                long e;
                if (ls >> e) m = std::max(m, e);
            }
            order = static_cast<int>(m);
        }
        TruncatedSeries gp = read_series(f, order);
        TruncatedSeries ge = minimal_model_generators(gp);
        auto gr = detect_gap(ge, plan.n);
        rep["n"] = plan.n;
        rep["generator_series"] = detail::series_to_json(ge);
        json weights = json::array();
        for (const auto& c : gr.weight_coeffs) weights.push_back(to_string(c));
        rep["weight_coefficients"] = weights;
        rep["gap_start"] = gr.q ? json(*gr.q) : json(nullptr);
        rep["gap_length"] = gr.d;
        rep["nonzero_after"] = gr.nonzero_after;
        rep["status"] = "pass";
    } else if (plan.subcommand == "scan-negative") {
        TruncatedSeries f = detail::series_from_spec(plan.coeffs, plan.order);
        TruncatedSeries target = plan.invert_input ? newton_invert(f) : f;
        auto neg = scan_negative(target);
        rep["first_negative_index"] = neg ? json(*neg) : json(nullptr);
        rep["status"] = "pass";
    } else if (plan.subcommand == "poincare") {
        auto ds = poincare_series(plan.n, plan.max_weight, plan.primes, plan.exact_upto,
                                  std::max<std::size_t>(plan.budget, 100'000));
        ok = ds.primes_agree;
        json weights = json::array();
        for (const auto& w : ds.weights) {
            json ranks = json::object();
            for (const auto& [p, r] : w.rank_by_prime) ranks[std::to_string(p)] = r;
            json rec{{"weight", w.w},
                     {"free", to_string(w.free)},
                     {"consequences", to_string(w.consequences)},
                     {"rank", ranks},
                     {"dim", to_string(w.dim)}};
            if (w.rank_exact) rec["rank_exact"] = *w.rank_exact;
            weights.push_back(rec);
        }
        rep["n"] = plan.n;
        rep["weights"] = weights;
        rep["series"] = detail::series_to_json(ds.series);
        rep["primes_agree"] = ds.primes_agree;
        rep["status"] = ok ? "pass" : "fail";
        if (!plan.export_matrix.empty()) {
            for (int w = 2; w <= plan.max_weight; ++w) {
                std::ofstream mf(plan.export_matrix + ".w" + std::to_string(w) + ".txt");
                write_matrix_triplets(mf, build_consequence_matrix(plan.n, w));
            }
        }
    } else if (plan.subcommand == "recurrence") {
        Recurrence rec = telescoped_recurrence();
        SequenceTable a = a_table(plan.terms);
        if (plan.guess) {
            auto guessed = guess_recurrence(a.values, plan.rec_order, plan.rec_degree);
            ok = guessed.has_value();
            rep["found"] = ok;
            if (guessed) {
                bool equiv = residual_equivalent(*guessed, rec);
                ok = ok && equiv;
                rep["residual_equivalent_to_embedded"] = equiv;
                json polys = json::array();
                for (const auto& s : guessed->s) {
                    json coeffs = json::array();
                    for (const auto& c : s.coeffs()) coeffs.push_back(to_string(c));
                    polys.push_back(coeffs);
                }
                rep["coefficient_polynomials"] = polys;
            }
        } else {
            auto res = residual_check(rec, a.values, 2, plan.terms);
            ok = res.all_zero;
            rep["residual_zero"] = res.all_zero;
            if (res.first_nonzero_n) rep["first_nonzero_n"] = *res.first_nonzero_n;
            auto roots = char_roots(rec);
            if (roots) {
                rep["lambda_minus"] = to_string(roots->first);
                rep["lambda_plus"] = to_string(roots->second);
            }
        }
        rep["status"] = ok ? "pass" : "fail";
    } else if (plan.subcommand == "radius") {
        auto f = radius_facts();
        ok = f.pass();
        rep["derivative_factors"] = f.derivative_factors;
        rep["critical_value_identity"] = f.critical_value_identity;
        rep["lambda_minus_times_radius_is_one"] = f.lambda_minus_inverse;
        rep["radius"] = to_string(f.radius);
        rep["status"] = ok ? "pass" : "fail";
    } else if (plan.subcommand == "positivity") {
        auto r = positivity_certificate(plan.terms);
        ok = r.all_pass;
        rep.update(detail::positivity_to_json(r));
        rep["status"] = ok ? "pass" : "fail";
    } else if (plan.subcommand == "run-all") {
        auto profile = (plan.profile == "full") ? acceptance::Profile::kFull : acceptance::Profile::kQuick;
        if (plan.profile != "full" && plan.profile != "quick")
            throw UsageError("unknown profile: " + plan.profile);
        auto results = acceptance::run(profile);
        json arr = json::array();
        for (const auto& c : results) {
            ok = ok && c.pass;
            arr.push_back({{"index", c.index},
                           {"name", c.name},
                           {"status", c.pass ? "pass" : "fail"},
                           {"detail", c.detail}});
        }
        rep["criteria"] = arr;
        rep["profile"] = plan.profile;
        rep["status"] = ok ? "pass" : "fail";
    } else {
        throw UsageError("unknown subcommand: " + plan.subcommand);
    }

    detail::emit(plan, rep, out);
    return ok ? 0 : 1;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        CommandPlan plan = parse(args);
        return execute(plan, out);
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 2;
    }
}

}  // namespace opk::cli
