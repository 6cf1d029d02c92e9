#include "jtheta/report.hpp"

#include <algorithm>
#include <sstream>

namespace jtheta {

Json ReportEnvelope::to_json() const {
    Json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["status"] = status;
    j["payload"] = payload;
    j["elapsed"] = elapsed;
    j["tool_version"] = tool_version;
    return j;
}

Json cyclo_to_json(const CycloNumber& a) {
    Json j;
    j["order"] = a.order();
    Json num = Json::array(), den = Json::array();
    for (auto& c : a.coeffs()) {
        num.push_back(c.num());
        den.push_back(c.den());
    }
    j["num"] = num;
    j["den"] = den;
    return j;
}

CycloNumber cyclo_from_json(const Json& j) {
    long long order = j.at("order").get<long long>();
    auto num = j.at("num");
    auto den = j.at("den");
    if (num.size() != den.size()) throw std::domain_error("cyclo json: num/den length mismatch");
    std::vector<std::pair<long long, Rational>> terms;
    for (size_t k = 0; k < num.size(); ++k)
        terms.emplace_back((long long)k, Rational(num[k].get<long long>(), den[k].get<long long>()));
    CycloNumber r = canonical_from_terms(order, terms);
    return r;
}

Json rational_to_json(const Rational& q) { return Json::array({q.num(), q.den()}); }

Rational rational_from_json(const Json& j) {
    return Rational(j.at(0).get<long long>(), j.at(1).get<long long>());
}

Json series_to_json(const FracQSeries& s) {
    Json j;
    j["denom"] = s.denom();
    j["prec"] = s.prec();
    Json entries = Json::array();
    for (auto& [e, v] : s.terms()) entries.push_back(Json::array({e, v.num(), v.den()}));
    j["entries"] = entries;
    return j;
}

FracQSeries series_from_json(const Json& j) {
    FracQSeries s(j.at("denom").get<long long>(), j.at("prec").get<long long>());
    for (auto& e : j.at("entries"))
        s.set(e.at(0).get<long long>(), Rational(e.at(1).get<long long>(), e.at(2).get<long long>()));
    return s;
}

Json qzseries_to_json(const JacobiQZSeries& s) {
    Json j;
    j["denom"] = s.denom();
    j["prec"] = s.prec();
    Json entries = Json::array();
    for (auto& [k, v] : s.terms()) entries.push_back(Json::array({k.first, k.second, v.num(), v.den()}));
    j["entries"] = entries;
    return j;
}

Json jacobi_form_to_json(const JacobiFormCoeffs& f) {
    Json j;
    j["weight"] = f.weight();
    j["index"] = f.index();
    j["level"] = f.level();
    j["prec"] = f.prec_disc();
    j["cusp"] = f.cusp();
    Json entries = Json::array();
    for (auto& [n, r, v] : f.entries()) entries.push_back(Json::array({n, r, v.num(), v.den()}));
    j["entries"] = entries;
    return j;
}

JacobiFormCoeffs jacobi_form_from_json(const Json& j) {
    const Json& src = j.contains("payload") ? j.at("payload") : j;
    JacobiFormCoeffs f(src.at("weight").get<long long>(), src.at("index").get<long long>(),
                       src.at("level").get<long long>(), src.at("prec").get<long long>(),
                       src.value("cusp", true));
    for (auto& e : src.at("entries"))
        f.set_entry(e.at(0).get<long long>(), e.at(1).get<long long>(),
                    Rational(e.at(2).get<long long>(), e.at(3).get<long long>()));
    return f;
}

Json theta_components_to_json(const ThetaComponents& h) {
    Json j;
    j["index"] = h.index;
    j["weight"] = h.weight;
    j["level"] = h.level;
    j["prec"] = h.prec_disc;
    j["cusp"] = h.cusp;
    Json comps = Json::array();
    for (auto& c : h.comps) comps.push_back(series_to_json(c));
    j["components"] = comps;
    return j;
}

Json halfint_to_json(const HalfIntForm& f) {
    Json j;
    j["kappa_num"] = f.kappa_num;
    j["L"] = f.L;
    j["bound"] = f.bound;
    j["support_rule"] = f.rule == SupportRule::AllStored ? "all_stored" : "up_to_bound";
    Json entries = Json::array();
    for (auto& [n, v] : f.coeffs) entries.push_back(Json::array({n, v.num(), v.den()}));
    j["entries"] = entries;
    return j;
}

HalfIntForm halfint_from_json(const Json& j) {
    const Json& src = j.contains("payload") ? j.at("payload") : j;
    HalfIntForm f;
    f.kappa_num = src.value("kappa_num", 5LL);
    f.L = src.at("L").get<long long>();
    // without a support rule the data only certifies coefficients up to the
    // bound, so zero verdicts get flagged rather than trusted
    std::string rule = src.value("support_rule", std::string("up_to_bound"));
    if (rule == "all_stored")
        f.rule = SupportRule::AllStored;
    else if (rule == "up_to_bound")
        f.rule = SupportRule::UpToBound;
    else
        throw std::domain_error("halfint json: unknown support_rule");
    long long max_n = 0;
    for (auto& e : src.at("entries")) max_n = std::max(max_n, e.at(0).get<long long>());
    f.bound = src.value("bound", max_n);
    for (auto& e : src.at("entries"))
        f.set(e.at(0).get<long long>(), Rational(e.at(1).get<long long>(), e.at(2).get<long long>()));
    f.validate();
    return f;
}

Json gauss_report_to_json(const GaussVerifyReport& r) {
    Json j;
    j["cmax"] = r.cmax;
    j["checked"] = r.checked;
    Json fails = Json::array();
    for (auto& f : r.failures) fails.push_back(Json::array({f[0], f[1], f[2]}));
    j["failures"] = fails;
    Json cases;
    cases["odd"] = r.counters.odd;
    cases["c2_odd_b"] = r.counters.c2_odd_b;
    cases["c2_zero"] = r.counters.c2_zero;
    cases["c4_even_b"] = r.counters.c4_even_b;
    cases["c4_zero"] = r.counters.c4_zero;
    cases["content_zero"] = r.counters.content_zero;
    cases["content_reduced"] = r.counters.content_reduced;
    cases["shift_reduced"] = r.counters.shift_reduced;
    j["cases"] = cases;
    return j;
}

Json scan_report_to_json(const ScanReport& r) {
    Json j;
    j["max_index"] = r.max_index;
    j["include_even_m2"] = r.include_even_m2;
    j["cells"] = r.cells;
    j["passes"] = r.passes;
    j["rank_checks"] = r.rank_checks;
    j["crt_checks"] = r.crt_checks;
    j["crt_failures"] = r.crt_failures;
    j["api_cross_checks"] = r.api_cross_checks;
    j["partition_ok"] = r.partition_ok;
    Json fails = Json::array();
    for (auto& f : r.failures) {
        Json e;
        e["m1"] = f.m1;
        e["m2"] = f.m2;
        e["nu0"] = f.nu0;
        e["l"] = f.l;
        e["rows"] = f.rows;
        e["rank"] = f.rank;
        e["reason"] = f.reason;
        fails.push_back(e);
    }
    j["failures"] = fails;
    Json splits = Json::array();
    for (auto& s : r.splits) {
        Json e;
        e["m1"] = s.m1;
        e["m2"] = s.m2;
        e["classes"] = s.classes;
        e["l_count"] = s.l_count;
        e["cells"] = s.cells;
        e["rank_checks"] = s.rank_checks;
        e["partition_ok"] = s.partition_ok;
        e["admitting_levels"] = s.admitting_levels;
        splits.push_back(e);
    }
    j["splits"] = splits;
    return j;
}

Json epsilon_sweep_to_json(const EpsilonSweepReport& r) {
    Json j;
    j["N_max"] = r.N_max;
    j["m2_max"] = r.m2_max;
    j["combos"] = r.combos;
    j["diffs_checked"] = r.diffs_checked;
    j["pairs_checked"] = r.pairs_checked;
    j["vanishing_pairs"] = r.vanishing_pairs;
    j["api_cross_checks"] = r.api_cross_checks;
    Json f1 = Json::array(), f2 = Json::array();
    for (auto& f : r.identity_failures) f1.push_back(Json::array({f[0], f[1], f[2], f[3]}));
    for (auto& f : r.vanishing_failures) f2.push_back(Json::array({f[0], f[1], f[2], f[3]}));
    j["identity_failures"] = f1;
    j["vanishing_failures"] = f2;
    return j;
}

Json sieve_result_to_json(const SieveResult& r) {
    Json j;
    j["ok"] = r.ok;
    if (!r.ok) j["diagnosis"] = r.diagnosis;
    j["g"] = halfint_to_json(r.g);
    Json exps = Json::array();
    for (auto& [p, i] : r.exponents) exps.push_back(Json::array({p, i}));
    j["exponents"] = exps;
    Json steps = Json::array();
    for (auto& s : r.trace.steps) {
        Json e;
        e["op"] = s.op;
        e["prime"] = s.prime;
        e["j"] = s.j;
        e["i"] = s.i;
        e["level_L"] = s.level_L;
        e["level"] = s.level_expr;
        e["verdict"] = s.verdict;
        steps.push_back(e);
    }
    Json trace;
    trace["steps"] = steps;
    trace["final_level_L"] = r.trace.final_level_L;
    trace["verdicts_exact"] = r.trace.verdicts_exact;
    j["trace"] = trace;
    return j;
}

Json nonvanishing_to_json(const NonvanishingReport& r) {
    Json j;
    j["index"] = r.index;
    j["prec"] = r.prec_disc;
    j["nonzero_mu"] = r.nonzero_mu;
    j["has_coprime_mu"] = r.has_coprime_mu;
    if (r.split_supplied) {
        j["m1"] = r.m1;
        j["m2"] = r.m2;
        j["has_alt_mu"] = r.has_alt_mu;
    }
    j["consistent"] = r.consistent;
    return j;
}

Json witness_to_json(const WitnessMatrix& w) {
    Json j;
    j["p"] = w.p;
    j["mu"] = w.mu;
    j["D"] = w.D;
    j["T"] = Json::array({Json::array({w.T(0, 0).to_double(), w.T(0, 1).to_double()}),
                          Json::array({w.T(1, 0).to_double(), w.T(1, 1).to_double()})});
    Json exact = Json::array();
    for (int i = 0; i < 2; ++i)
        exact.push_back(Json::array({rational_to_json(w.T(i, 0)), rational_to_json(w.T(i, 1))}));
    j["T_exact"] = exact;
    j["fourDet"] = w.four_det().num();
    j["positive_definite"] = w.positive_definite();
    return j;
}

std::string gauss_report_to_csv(const GaussVerifyReport& r) {
    std::ostringstream os;
    os << "key,value\n";
    os << "cmax," << r.cmax << "\n";
    os << "checked," << r.checked << "\n";
    os << "failures," << r.failures.size() << "\n";
    os << "case_odd," << r.counters.odd << "\n";
    os << "case_c2_odd_b," << r.counters.c2_odd_b << "\n";
    os << "case_c2_zero," << r.counters.c2_zero << "\n";
    os << "case_c4_even_b," << r.counters.c4_even_b << "\n";
    os << "case_c4_zero," << r.counters.c4_zero << "\n";
    os << "content_zero," << r.counters.content_zero << "\n";
    os << "content_reduced," << r.counters.content_reduced << "\n";
    os << "shift_reduced," << r.counters.shift_reduced << "\n";
    return os.str();
}

std::string scan_report_to_csv(const ScanReport& r) {
    std::ostringstream os;
    os << "m1,m2,classes,l_count,cells,rank_checks,partition_ok\n";
    for (auto& s : r.splits)
        os << s.m1 << "," << s.m2 << "," << s.classes << "," << s.l_count << "," << s.cells << ","
           << s.rank_checks << "," << (s.partition_ok ? 1 : 0) << "\n";
    return os.str();
}

}  // namespace jtheta
