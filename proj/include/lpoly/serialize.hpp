#pragma once

// JSON and CSV forms of reports, witnesses and experiment tables.
// Rationals are written as "num/den" strings; floats travel with their mode
// and error bound.

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "lpoly/search.hpp"

namespace lpoly {

using json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json rationals_to_json(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(to_string(r));
    return out;
}

inline std::vector<Rational> rationals_from_json(const json& j) {
    std::vector<Rational> out;
    for (const auto& s : j) {
        if (s.is_string()) out.push_back(parse_rational(s.get<std::string>()));
        else if (s.is_number_integer()) out.push_back(Rational(s.get<long>()));
        else throw ParseError("expected rational string, got " + s.dump());
    }
    return out;
}

inline json to_json(const Factorization& fz) {
    json j;
    j["leading"] = to_string(fz.leading);
    json real = json::array();
    for (const auto& r : fz.real_roots) real.push_back({{"value", to_string(r.value)}, {"multiplicity", r.multiplicity}});
    j["real_roots"] = real;
    json pairs = json::array();
    for (const auto& c : fz.complex_pairs)
        pairs.push_back({{"re", to_string(c.re)}, {"im", to_string(c.im)}, {"multiplicity", c.multiplicity}});
    j["complex_pairs"] = pairs;
    return j;
}

inline Factorization factorization_from_json(const json& j) {
    Factorization fz;
    fz.leading = parse_rational(j.at("leading").get<std::string>());
    for (const auto& r : j.value("real_roots", json::array()))
        fz.real_roots.push_back({parse_rational(r.at("value").get<std::string>()), r.value("multiplicity", 1u)});
    for (const auto& c : j.value("complex_pairs", json::array()))
        fz.complex_pairs.push_back({parse_rational(c.at("re").get<std::string>()),
                                    parse_rational(c.at("im").get<std::string>()), c.value("multiplicity", 1u)});
    return fz;
}

/// {coeffs: [...ascending...], factors?: {...}}
inline json to_json(const PowerPoly& f) {
    json j;
    j["coeffs"] = rationals_to_json(f.coeffs());
    if (f.factors()) j["factors"] = to_json(*f.factors());
    return j;
}

inline PowerPoly poly_from_json(const json& j) {
    PowerPoly f(rationals_from_json(j.at("coeffs")));
    if (j.contains("factors")) {
        const Factorization fz = factorization_from_json(j.at("factors"));
        if (expand(fz) != f) throw ParseError("witness factors do not expand to its coefficients");
        f = from_factors(fz);
    }
    return f;
}

inline json to_json(const NormValue& v) {
    json j;
    j["value"] = v.value;
    j["mode"] = to_string(v.mode);
    j["error_bound"] = v.error_bound;
    if (v.mode == NormMode::exact) {
        j["exact"] = to_string(v.lower);
    } else {
        j["lower"] = to_string(v.lower);
        j["upper"] = to_string(v.upper);
    }
    if (v.argmax) j["argmax"] = to_string(*v.argmax);
    return j;
}

inline std::string exponent_string(const Exponent& e) { return e.is_infinite() ? "inf" : to_string(*e.finite); }

inline json to_json(const Verdict& v) {
    json j;
    j["theorem"] = theorem_name(v.theorem);
    j["n"] = v.n;
    if (v.q) j["q"] = exponent_string(*v.q);
    if (v.p) j["p"] = exponent_string(*v.p);
    j["outcome"] = to_string(v.outcome);
    j["holds"] = v.holds();
    j["ratio"] = v.ratio;
    j["factor"] = v.factor;
    j["slack"] = v.slack;
    j["equality_within"] = v.equality_within;
    j["exact"] = v.exact;
    j["equality"] = v.equality;
    j["near_equality"] = v.near_equality;
    if (!v.equality_family.empty()) j["equality_family"] = v.equality_family;
    if (v.proof_chain_holds) j["proof_chain_holds"] = *v.proof_chain_holds;
    j["lhs"] = to_json(v.lhs);
    j["rhs_bound"] = to_json(v.rhs_bound);
    j["class_evidence"] = {{"answer", to_string(v.class_evidence.answer)},
                           {"basis", v.class_evidence.basis == Membership::Basis::constructive ? "constructive" : "numeric"}};
    if (!v.notes.empty()) j["notes"] = v.notes;
    return j;
}

// ---------------------------------------------------------------------------
// Witness files

struct Witness {
    PowerPoly poly;
    TheoremId theorem = TheoremId::nikolskii_lorentz;
    ClassKind kind = ClassKind::lorentz_nonneg;
    unsigned n = 1;
    std::uint64_t seed = 0;
    std::size_t trial = 0;
    std::optional<ExponentPair> exponents;
    std::optional<std::pair<Rational, Rational>> interval;
    std::optional<PowerPoly> derivative;
};

inline Witness witness_of(const TrialRecord& r, TheoremId theorem) {
    Witness w;
    w.poly = r.sample.poly;
    w.theorem = theorem;
    w.kind = r.sample.tag.kind;
    w.n = r.spec.n;
    w.seed = r.spec.seed;
    w.trial = r.spec.index;
    w.exponents = r.spec.exponents;
    w.interval = r.spec.interval;
    if (r.sample.derivative && r.sample.derivative->factors()) w.derivative = r.sample.derivative;
    return w;
}

inline std::string witness_id(TheoremId t, std::size_t trial) { return theorem_name(t) + "-" + std::to_string(trial); }

inline json to_json(const Witness& w) {
    json j = to_json(w.poly);
    j["class"] = class_name(w.kind);
    j["n"] = w.n;
    j["seed"] = w.seed;
    j["theorem"] = theorem_name(w.theorem);
    j["trial"] = w.trial;
    j["id"] = witness_id(w.theorem, w.trial);
    if (w.exponents) {
        j["q"] = exponent_string(w.exponents->q);
        j["p"] = exponent_string(w.exponents->p);
    }
    if (w.interval) j["interval"] = {to_string(w.interval->first), to_string(w.interval->second)};
    if (w.derivative) j["derivative"] = to_json(*w.derivative);
    return j;
}

inline Witness witness_from_json(const json& j) {
    Witness w;
    w.poly = poly_from_json(j);
    w.kind = parse_class(j.at("class").get<std::string>());
    w.n = j.value("n", static_cast<unsigned>(std::max(w.poly.degree(), 1)));
    w.seed = j.value("seed", std::uint64_t{0});
    w.trial = j.value("trial", std::size_t{0});
    w.theorem = j.contains("theorem") ? parse_theorem(j.at("theorem").get<std::string>()) : [&] {
        for (auto t : all_theorems())
            if (theorem_class(t) == w.kind) return t;
        throw ParseError("witness class has no matching theorem");
    }();
    if (j.contains("q")) {
        const Exponent q = parse_exponent(j.at("q").get<std::string>());
        const Exponent p = j.contains("p") ? parse_exponent(j.at("p").get<std::string>()) : Exponent::infinity();
        w.exponents = ExponentPair{q, p};
    }
    if (j.contains("interval")) {
        const auto& iv = j.at("interval");
        w.interval = std::make_pair(parse_rational(iv.at(0).get<std::string>()), parse_rational(iv.at(1).get<std::string>()));
    }
    if (j.contains("derivative")) w.derivative = poly_from_json(j.at("derivative"));
    return w;
}

/// Re-runs the witness's checker with class enforcement on.
inline Verdict recheck(const Witness& w, const CheckOptions& opt = {}) {
    if (theorem_uses_exponents(w.theorem) && !w.exponents) throw ParseError("witness needs q (and p) for " + theorem_name(w.theorem));
    TrialSpec t;
    t.index = w.trial;
    t.n = w.n;
    t.seed = w.seed;
    t.exponents = w.exponents;
    t.interval = w.interval;
    if (w.theorem == TheoremId::lemma_endpoint && !t.interval) t.interval = std::make_pair(Rational(-1), Rational(1));
    ClassSample s;
    s.tag = {w.kind, w.n};
    s.poly = w.poly;
    s.derivative = w.derivative;
    return run_checker(w.theorem, s, t, opt);
}

// ---------------------------------------------------------------------------
// Reports

inline json trial_summary(const Report& r, std::size_t i) {
    const TrialRecord& rec = r.records.at(i);
    json j;
    j["witness_id"] = witness_id(r.theorem, i);
    j["verdict"] = to_json(rec.verdict);
    j["witness"] = to_json(witness_of(rec, r.theorem));
    return j;
}

inline json to_json(const Report& r, bool include_runtime = false) {
    json j;
    j["theorem"] = theorem_name(r.theorem);
    j["class"] = class_name(r.generator);
    j["expected_violation"] = r.expected_violation;
    j["trials"] = r.trials;
    j["holds"] = r.holds;
    j["failures"] = r.failures;
    j["indeterminates"] = r.indeterminates;
    j["equalities"] = r.equalities;
    j["near_equalities"] = r.near_equalities;
    j["exact_decisions"] = r.exact_decisions;
    j["proof_chain_failures"] = r.chain_failures;
    j["ok"] = report_ok(r);
    if (r.expected_violation)
        j["note"] = r.failures > 0 ? "violation found with the wrong class (expected)" : "no violation found";
    if (r.max_ratio_trial) j["max_ratio"] = trial_summary(r, *r.max_ratio_trial);
    if (r.min_slack_trial) j["min_slack"] = trial_summary(r, *r.min_slack_trial);
    if (r.first_failure_trial) j["first_failure"] = trial_summary(r, *r.first_failure_trial);
    if (include_runtime) j["runtime_ms"] = r.runtime_ms;
    return j;
}

inline std::string csv_header() { return "theorem,n,trial,ratio,bound,slack,holds,equality_within,witness_id\n"; }

/// One row per trial; `bound` is the constant the ratio is compared with.
inline std::string to_csv_rows(const Report& r) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const Verdict& v = r.records[i].verdict;
        os << theorem_name(r.theorem) << ',' << v.n << ',' << i << ',' << format_double(v.ratio) << ','
           << format_double(v.factor) << ',' << format_double(v.slack) << ',' << to_string(v.outcome) << ','
           << format_double(v.equality_within) << ',' << witness_id(r.theorem, i) << '\n';
    }
    return os.str();
}

inline std::string to_text(const Report& r) {
    std::ostringstream os;
    os << theorem_name(r.theorem) << " [" << class_name(r.generator) << "] trials=" << r.trials << " holds=" << r.holds
       << " failures=" << r.failures << " indeterminate=" << r.indeterminates << " equalities=" << r.equalities;
    if (r.max_ratio_trial) {
        const Verdict& v = r.records[*r.max_ratio_trial].verdict;
        os << " max ratio/factor=" << format_double(v.factor > 0 ? v.ratio / v.factor : 0.0);
    }
    if (r.expected_violation) os << (r.failures > 0 ? " (expected violation found)" : " (no violation found)");
    os << (report_ok(r) ? " OK" : " FAIL") << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Experiments

inline json to_json(const SearchResult& s) {
    json j;
    j["class"] = class_name(s.tag.kind);
    j["n"] = s.tag.n;
    j["strategy"] = to_string(s.strategy);
    j["iterations"] = s.iterations;
    j["seed"] = s.seed;
    j["best_ratio"] = s.best_ratio;
    j["bound"] = s.bound;
    j["gap"] = s.gap;
    j["best_poly"] = to_json(s.best.poly);
    json hist = json::array();
    for (const auto& [it, ratio] : s.history) hist.push_back({it, ratio});
    j["history"] = hist;
    return j;
}

inline std::string profile_csv(const Profile& p) {
    std::ostringstream os;
    os << "x,max_ratio,envelope,c_emp\n";
    for (const auto& r : p.rows)
        os << format_double(r.x) << ',' << format_double(r.max_ratio) << ',' << format_double(r.envelope) << ','
           << format_double(r.c_emp) << '\n';
    return os.str();
}

inline json to_json(const Profile& p) {
    json j;
    j["class"] = class_name(p.tag.kind);
    j["n"] = p.tag.n;
    j["trials"] = p.trials;
    j["seed"] = p.seed;
    j["c_emp_max"] = p.c_emp_max;
    j["max_ratio"] = p.max_ratio;
    j["cap_en_over_2"] = p.cap;
    json rows = json::array();
    for (const auto& r : p.rows)
        rows.push_back({{"x", r.x}, {"max_ratio", r.max_ratio}, {"envelope", r.envelope}, {"c_emp", r.c_emp}});
    j["rows"] = rows;
    return j;
}

inline std::string growth_csv(const std::vector<DegreeGrowthRow>& rows) {
    std::ostringstream os;
    os << "n,a,eps,d,normalized,status\n";
    for (const auto& r : rows) {
        os << r.n << ',' << to_string(r.a) << ',' << to_string(r.eps) << ',';
        if (r.d_found.is_finite()) os << r.d_found.degree;
        os << ',';
        if (r.normalized) os << format_double(*r.normalized);
        os << ',' << r.status() << '\n';
    }
    return os.str();
}

inline json to_json(const std::vector<DegreeGrowthRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json j{{"n", r.n}, {"a", to_string(r.a)}, {"eps", to_string(r.eps)}, {"cap", r.cap},
               {"d", to_string(r.d_found)}, {"status", r.status()}};
        if (r.normalized) j["normalized"] = *r.normalized;
        out.push_back(j);
    }
    return out;
}

}  // namespace lpoly
