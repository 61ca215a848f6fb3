#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "lpoly.hpp"

using namespace lpoly;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_config = 2;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& t : split(s, ',')) out.push_back(parse_rational(t));
    if (out.empty()) throw ParseError("empty list '" + s + "'");
    return out;
}

std::pair<unsigned, unsigned> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const unsigned v = static_cast<unsigned>(std::stoul(s));
            return {v, v};
        }
        return {static_cast<unsigned>(std::stoul(s.substr(0, dots))),
                static_cast<unsigned>(std::stoul(s.substr(dots + 2)))};
    } catch (const std::exception&) {
        throw ParseError("bad range '" + s + "' (expected N or A..B)");
    }
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LORENTZ_POLY_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ParseError("LORENTZ_POLY_SEED must be an unsigned integer");
        }
    }
    return 0;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
    std::string selector;
    std::string n_range = "1..12";
    std::size_t trials = 1000;
    std::optional<std::uint64_t> seed;
    std::string q_list;
    std::string p_list;
    std::string format = "json";
    std::string output;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string negative_control;
    std::string witness;
    double budget = 0.01;
    double rel_tol = 1e-12;
    bool runtime = false;
};

int verify_witness(const VerifyArgs& a) {
    std::ifstream in(a.witness);
    if (!in) throw ParseError("cannot read witness '" + a.witness + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("witness is not valid JSON: ") + e.what());
    }
    Witness w = witness_from_json(j);
    if (!a.selector.empty() && a.selector != "all") w.theorem = parse_theorem(a.selector);
    const Verdict v = recheck(w);
    emit(dump(to_json(v)), a.output);
    return v.outcome == Outcome::fails ? exit_failure : exit_ok;
}

std::vector<ExponentPair> exponent_pairs(const VerifyArgs& a) {
    if (a.q_list.empty() && a.p_list.empty()) return default_exponent_pairs();
    std::vector<Exponent> qs;
    for (const auto& s : split(a.q_list.empty() ? "1" : a.q_list, ',')) qs.push_back(parse_exponent(s));
    std::vector<ExponentPair> out;
    for (const auto& q : qs) {
        if (q.is_infinite()) throw ParseError("q must be finite");
        if (a.p_list.empty()) {
            out.push_back({q, Exponent::infinity()});
            continue;
        }
        for (const auto& s : split(a.p_list, ',')) {
            const Exponent p = parse_exponent(s);
            if (!p.is_infinite() && *p.finite <= *q.finite) throw ParseError("each p must exceed q");
            out.push_back({q, p});
        }
    }
    return out;
}

int run_verify(const VerifyArgs& a) {
    if (!a.witness.empty()) return verify_witness(a);
    if (a.selector.empty()) throw ParseError("verify needs a theorem selector or --witness");
    if (a.format != "json" && a.format != "csv" && a.format != "text") throw ParseError("unknown format '" + a.format + "'");

    std::vector<TheoremId> theorems;
    if (a.selector == "all") theorems = all_theorems();
    else theorems.push_back(parse_theorem(a.selector));

    BatchConfig base;
    std::tie(base.n_lo, base.n_hi) = parse_range(a.n_range);
    if (base.n_lo < 1 || base.n_hi < base.n_lo) throw ParseError("n range must satisfy 1 <= a <= b");
    if (a.trials < 1) throw ParseError("--trials must be >= 1");
    base.trials = a.trials;
    base.seed = a.seed.value_or(default_seed());
    base.jobs = std::max(1u, a.jobs);
    base.exponents = exponent_pairs(a);
    base.check.rel_tol = a.rel_tol;
    if (!a.negative_control.empty()) {
        if (a.negative_control != "monotone-only") throw ParseError("unknown negative control '" + a.negative_control + "'");
        if (theorems.size() != 1 || theorems[0] != TheoremId::markov_monotone_realzeros)
            throw ParseError("--negative-control monotone-only applies to thm2.5");
        base.generator_override = ClassKind::monotone_only;
    }

    std::vector<Report> reports;
    for (auto t : theorems) {
        BatchConfig cfg = base;
        cfg.theorem = t;
        reports.push_back(batch_verify(cfg));
    }

    bool ok = true;
    for (const auto& r : reports) ok = ok && report_ok(r, a.budget);

    if (a.format == "json") {
        json j;
        j["seed"] = base.seed;
        j["n"] = {base.n_lo, base.n_hi};
        j["trials"] = base.trials;
        j["checkers"] = reports.size();
        j["ok"] = ok;
        json arr = json::array();
        for (const auto& r : reports) {
            json rj = to_json(r, a.runtime);
            rj["ok"] = report_ok(r, a.budget);
            arr.push_back(rj);
        }
        j["reports"] = arr;
        emit(dump(j), a.output);
    } else if (a.format == "csv") {
        std::string text = csv_header();
        for (const auto& r : reports) text += to_csv_rows(r);
        emit(text, a.output);
    } else {
        std::string text;
        for (const auto& r : reports) text += to_text(r);
        emit(text, a.output);
    }

    // Unexpected failures: dump the first witness for re-checking.
    for (const auto& r : reports) {
        if (r.expected_violation || !r.first_failure_trial) continue;
        const json w = to_json(witness_of(r.records[*r.first_failure_trial], r.theorem));
        if (a.output.empty()) {
            std::cerr << "failure witness:\n" << dump(w);
        } else {
            const std::string path = a.output + "." + witness_id(r.theorem, *r.first_failure_trial) + ".witness.json";
            emit(dump(w), path);
            std::cerr << "failure witness written to " << path << "\n";
        }
    }
    return ok ? exit_ok : exit_failure;
}

// --- degree ---------------------------------------------------------------

struct DegreeArgs {
    std::string coeffs;
    std::string roots;
    std::string pairs;
    std::string leading = "1";
    std::string family;
    std::string interval = "-1,1";
    std::optional<unsigned> cap;
    bool show_coeffs = false;
    std::string format = "text";
};

PowerPoly degree_input(const DegreeArgs& a, std::optional<std::tuple<unsigned, Rational, Rational>>& fam) {
    const int given = !a.coeffs.empty() + (!a.roots.empty() || !a.pairs.empty()) + !a.family.empty();
    if (given != 1) throw ParseError("give exactly one of --coeffs, --roots/--pairs, --family");
    if (!a.coeffs.empty()) return PowerPoly(parse_rational_list(a.coeffs));
    if (!a.family.empty()) {
        std::optional<unsigned> n;
        std::optional<Rational> center, eps;
        for (const auto& kv : split(a.family, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ParseError("family entries look like key=value");
            const std::string key = kv.substr(0, eq);
            const std::string val = kv.substr(eq + 1);
            if (key == "n") n = static_cast<unsigned>(parse_rational(val).get_num().get_ui());
            else if (key == "a") center = parse_rational(val);
            else if (key == "eps") eps = parse_rational(val);
            else throw ParseError("unknown family key '" + key + "'");
        }
        if (!n || !center || !eps) throw ParseError("family needs n, a and eps");
        if (!(*eps > 0 && *eps <= 1) || !(*center > -1 && *center < 1) || *n < 1)
            throw ParseError("family needs n >= 1, -1 < a < 1, 0 < eps <= 1");
        fam = std::make_tuple(*n, *center, *eps);
        return ellipse_family(*n, *center, *eps);
    }
    std::vector<RealRoot> real;
    if (!a.roots.empty())
        for (const auto& r : parse_rational_list(a.roots)) real.push_back({r, 1});
    std::vector<ComplexPair> pairs;
    for (const auto& p : split(a.pairs, ',')) {
        const auto colon = p.find(':');
        if (colon == std::string::npos) throw ParseError("pairs look like re:im");
        const Rational im = parse_rational(p.substr(colon + 1));
        if (im == 0) throw ParseError("a conjugate pair needs im != 0");
        pairs.push_back({parse_rational(p.substr(0, colon)), abs_r(im), 1});
    }
    return from_factors(real, pairs, parse_rational(a.leading));
}

int run_degree(const DegreeArgs& a) {
    std::optional<std::tuple<unsigned, Rational, Rational>> fam;
    const PowerPoly f = degree_input(a, fam);
    if (f.is_zero()) throw ParseError("the zero polynomial has no Lorentz degree");
    const auto iv = parse_rational_list(a.interval);
    if (iv.size() != 2 || !(iv[0] < iv[1])) throw ParseError("--interval needs a,b with a < b");
    std::optional<Rational> eps;
    if (fam) eps = std::get<2>(*fam);
    const unsigned n = static_cast<unsigned>(std::max(f.degree(), 1));
    const unsigned cap = std::max(a.cap.value_or(fam ? default_degree_cap(std::get<0>(*fam), eps) : default_degree_cap(n)),
                                  static_cast<unsigned>(std::max(f.degree(), 0)));
    const auto res = lorentz_degree(f, iv[0], iv[1], cap);
    std::optional<double> normalized;
    if (fam && res.is_finite()) normalized = res.degree * to_double(*eps * *eps) / std::get<0>(*fam);

    if (a.format == "json") {
        json j;
        j["poly"] = to_json(f);
        j["interval"] = {to_string(iv[0]), to_string(iv[1])};
        j["cap"] = cap;
        j["result"] = to_string(res);
        if (res.is_finite()) {
            j["degree"] = res.degree;
            j["sign"] = res.sign;
        }
        if (normalized) j["normalized"] = *normalized;
        if (a.show_coeffs && res.form) j["lorentz_coeffs"] = rationals_to_json(res.form->coeffs());
        std::cout << dump(j);
    } else {
        std::cout << to_string(res) << "\n";
        if (normalized) std::cout << "normalized " << format_double(*normalized) << "\n";
        if (a.show_coeffs && res.form) {
            std::cout << "coeffs";
            for (const auto& c : res.form->coeffs()) std::cout << ' ' << to_string(c);
            std::cout << "\n";
        }
    }
    return exit_ok;
}

// --- search / profile / growth --------------------------------------------

struct SearchArgs {
    std::string cls;
    unsigned n = 3;
    std::size_t iters = 1000;
    std::optional<std::uint64_t> seed;
    std::string strategy = "random";
    std::string format = "json";
    std::string output;
};

int run_search(const SearchArgs& a) {
    const ClassTag tag{parse_class(a.cls), a.n};
    if (a.n < 1) throw ParseError("--n must be >= 1");
    const auto res = maximize_ratio(tag, parse_strategy(a.strategy), a.iters, a.seed.value_or(default_seed()));
    if (a.format == "json") {
        emit(dump(to_json(res)), a.output);
    } else {
        std::ostringstream os;
        os << "best_ratio " << format_double(res.best_ratio) << "\nbound " << format_double(res.bound) << "\ngap "
           << format_double(res.gap) << "\nbest_poly " << res.best.poly << "\n";
        emit(os.str(), a.output);
    }
    return exit_ok;
}

struct ProfileArgs {
    std::string cls;
    unsigned n = 8;
    std::size_t trials = 200;
    std::optional<std::uint64_t> seed;
    std::string format = "csv";
    std::string output;
};

int run_profile(const ProfileArgs& a) {
    if (a.n < 1) throw ParseError("--n must be >= 1");
    const auto prof = pointwise_profile({parse_class(a.cls), a.n}, a.trials, a.seed.value_or(default_seed()));
    emit(a.format == "json" ? dump(to_json(prof)) : profile_csv(prof), a.output);
    return exit_ok;
}

struct GrowthArgs {
    std::string n = "1";
    std::string a = "0";
    std::string eps = "1,1/2,1/4,1/8";
    std::string format = "csv";
    std::string output;
};

int run_growth(const GrowthArgs& g) {
    std::vector<unsigned> ns;
    for (const auto& r : parse_rational_list(g.n)) {
        if (r.get_den() != 1 || r < 1) throw ParseError("--n entries must be positive integers");
        ns.push_back(static_cast<unsigned>(r.get_num().get_ui()));
    }
    const auto rows = degree_growth_experiment(ns, parse_rational_list(g.a), parse_rational_list(g.eps));
    emit(g.format == "json" ? dump(to_json(rows)) : growth_csv(rows), g.output);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lorentz-representation polynomial inequalities: exact checks and experiments"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Randomized verification of the inequality checkers");
    verify->add_option("theorem", va.selector,
                       "thm2.1 thm2.2 thm2.3 thm2.4 thm2.5 lem3.3 lem3.4 erdos bernstein-monotone | all");
    verify->add_option("--n", va.n_range, "Degree range A..B")->capture_default_str();
    verify->add_option("--trials", va.trials, "Trials per checker")->capture_default_str();
    verify->add_option("--seed", va.seed, "Base seed (default: $LORENTZ_POLY_SEED or 0)");
    verify->add_option("--q", va.q_list, "Comma-separated q values (default 1/2,1,2,3)");
    verify->add_option("--p", va.p_list, "Comma-separated p values, inf allowed (default q+1/2,2q,inf)");
    verify->add_option("--format", va.format, "json | csv | text")->capture_default_str();
    verify->add_option("--output", va.output, "Output path (default stdout)");
    verify->add_option("--jobs", va.jobs, "Worker threads")->capture_default_str();
    verify->add_option("--negative-control", va.negative_control, "monotone-only (thm2.5 only)");
    verify->add_option("--witness", va.witness, "Re-check a witness JSON file");
    verify->add_option("--indeterminate-budget", va.budget, "Allowed indeterminate fraction")->capture_default_str();
    verify->add_option("--rel-tol", va.rel_tol, "Quadrature tolerance")->capture_default_str();
    verify->add_flag("--runtime", va.runtime, "Include runtime in JSON (breaks byte-identical output)");

    DegreeArgs da;
    auto* degree = app.add_subcommand("degree", "Lorentz degree on an interval");
    degree->add_option("--coeffs", da.coeffs, "Ascending coefficients, e.g. 1,0,1");
    degree->add_option("--roots", da.roots, "Real roots, e.g. 2,-3/2");
    degree->add_option("--pairs", da.pairs, "Conjugate pairs re:im, e.g. 0:1");
    degree->add_option("--leading", da.leading, "Leading coefficient for --roots/--pairs")->capture_default_str();
    degree->add_option("--family", da.family, "((x-a)^2+eps^2(1-a^2))^n as n=..,a=..,eps=..");
    degree->add_option("--interval", da.interval, "a,b")->capture_default_str();
    degree->add_option("--cap", da.cap, "Degree cap (default ceil(10n/eps^2) or 64n)");
    degree->add_flag("--show-coeffs", da.show_coeffs, "Print the minimal-degree coefficients");
    degree->add_option("--format", da.format, "text | json")->capture_default_str();

    SearchArgs sa;
    auto* search = app.add_subcommand("search", "Maximize the class ratio");
    search->add_option("--class", sa.cls, "Class name")->required();
    search->add_option("--n", sa.n, "Degree")->capture_default_str();
    search->add_option("--iters", sa.iters, "Iterations")->capture_default_str();
    search->add_option("--seed", sa.seed, "Seed (default: $LORENTZ_POLY_SEED or 0)");
    search->add_option("--strategy", sa.strategy, "random | coordinate-descent")->capture_default_str();
    search->add_option("--format", sa.format, "json | text")->capture_default_str();
    search->add_option("--output", sa.output, "Output path");

    ProfileArgs pa;
    auto* profile = app.add_subcommand("profile", "Pointwise |f'(x)|/||f|| profile on a Chebyshev grid");
    profile->add_option("--class", pa.cls, "Class name")->required();
    profile->add_option("--n", pa.n, "Degree")->capture_default_str();
    profile->add_option("--trials", pa.trials, "Samples")->capture_default_str();
    profile->add_option("--seed", pa.seed, "Seed (default: $LORENTZ_POLY_SEED or 0)");
    profile->add_option("--format", pa.format, "csv | json")->capture_default_str();
    profile->add_option("--output", pa.output, "Output path");

    GrowthArgs ga;
    auto* growth = app.add_subcommand("growth", "Lorentz-degree growth of ((x-a)^2+eps^2(1-a^2))^n");
    growth->add_option("--n", ga.n, "Comma-separated n")->capture_default_str();
    growth->add_option("--a", ga.a, "Comma-separated a")->capture_default_str();
    growth->add_option("--eps", ga.eps, "Comma-separated eps")->capture_default_str();
    growth->add_option("--format", ga.format, "csv | json")->capture_default_str();
    growth->add_option("--output", ga.output, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (*verify) return run_verify(va);
        if (*degree) return run_degree(da);
        if (*search) return run_search(sa);
        if (*profile) return run_profile(pa);
        if (*growth) return run_growth(ga);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const NonPositiveP& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const ClassViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_config;
}
