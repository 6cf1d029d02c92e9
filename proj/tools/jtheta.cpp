// Command-line surface: every verification driver with machine-readable
// JSON reports (stdout) and a one-line human summary (stderr).
// Exit codes: 0 pass, 1 verification failure, 2 usage or input error.
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "jtheta/report.hpp"

namespace {

using namespace jtheta;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

Json read_json_input(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return Json::parse(ss.str());
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return Json::parse(ss.str());
}

std::complex<double> parse_complex(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::vector<long long> parse_list(const std::string& s) {
    std::vector<long long> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) v.push_back(std::stoll(item));
    return v;
}

int emit(ReportEnvelope env, const Timer& timer, const std::string& format,
         const std::string& csv = "") {
    env.elapsed = timer.seconds();
    if (format == "csv" && !csv.empty()) {
        std::cout << csv;
    } else {
        std::cout << env.to_json().dump(2) << "\n";
    }
    std::cerr << env.command << ": " << env.status << " (" << env.elapsed << "s)\n";
    return env.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Gauss-sum / theta-matrix / Jacobi-form verification tool"};
    app.require_subcommand(1);
    int jobs = (int)std::max(1u, std::thread::hardware_concurrency());
    std::string format = "json";
    app.add_option("--jobs", jobs, "worker count for scan drivers (default: available parallelism)");
    app.add_option("--format", format, "output format: json or csv (scan tables)")
        ->check(CLI::IsMember({"json", "csv"}));

    // gauss
    auto* gauss = app.add_subcommand("gauss", "generalized quadratic Gauss sums");
    gauss->require_subcommand(1);
    long long ga = 1, gb = 0, gc = 1;
    bool gexact = false, gnumeric = false;
    auto* geval = gauss->add_subcommand("eval", "evaluate G(a,b,c)");
    geval->add_option("--a", ga)->required();
    geval->add_option("--b", gb)->required();
    geval->add_option("--c", gc)->required();
    geval->add_flag("--exact", gexact, "emit only the exact value");
    geval->add_flag("--numeric", gnumeric, "emit only the numeric value");
    long long gcmax = 200;
    auto* gverify = gauss->add_subcommand("verify", "closed form vs direct sum");
    gverify->add_option("--cmax", gcmax, "largest modulus, default 200");

    // epsilon matrix
    auto* epsilon = app.add_subcommand("epsilon", "theta-transformation coefficients");
    epsilon->require_subcommand(1);
    long long eN = 1, em1 = 1, em2 = 1, el = 1, enu0 = -1;
    auto* ematrix = epsilon->add_subcommand("matrix", "epsilon matrix dump");
    ematrix->add_option("--N", eN)->required();
    ematrix->add_option("--m1", em1)->required();
    ematrix->add_option("--m2", em2)->required();
    ematrix->add_option("--l", el);
    ematrix->add_option("--nu0", enu0, "dump the square-class matrix of nu0 instead");

    // square-classes
    auto* sq = app.add_subcommand("square-classes", "square classes mod 2 m1 m2");
    long long sm1 = 1, sm2 = 1, snu0 = -1;
    sq->add_option("--m1", sm1)->required();
    sq->add_option("--m2", sm2)->required();
    sq->add_option("--nu0", snu0, "a single class; default all");

    // rank scan
    auto* rank = app.add_subcommand("rank", "maximal-rank verification");
    rank->require_subcommand(1);
    auto* rscan = rank->add_subcommand("scan", "scan all indices, splits, classes, units");
    long long rmax = 105;
    std::string rlevels;
    bool reven = false, rnocrt = false;
    rscan->add_option("--max-index", rmax);
    rscan->add_option("--levels", rlevels, "comma-separated odd levels; default all odd square-free");
    rscan->add_flag("--include-even-m2", reven);
    rscan->add_flag("--no-crt-check", rnocrt);

    // jacobi
    auto* jac = app.add_subcommand("jacobi", "Jacobi form operations");
    jac->require_subcommand(1);
    std::string jform = "phi10_1";
    long long jprec = 81;
    auto* jconstruct = jac->add_subcommand("construct", "build a test form");
    jconstruct->add_option("--form", jform)->check(CLI::IsMember({"phi10_1"}));
    jconstruct->add_option("--prec", jprec, "discriminant bound");
    std::string jinput;
    long long jell = 2;
    auto* jvell = jac->add_subcommand("vell", "index-raising operator");
    jvell->add_option("--input", jinput)->required();
    jvell->add_option("--ell", jell)->required();
    std::string dinput;
    auto* jdecomp = jac->add_subcommand("decompose", "theta components");
    jdecomp->add_option("--input", dinput)->required();
    std::string cinput, csplit;
    auto* jcheck = jac->add_subcommand("check", "nonvanishing of primitive components");
    jcheck->add_option("--input", cinput)->required();
    jcheck->add_option("--split", csplit, "m1,m2");
    auto* jtrans = jac->add_subcommand("transform-check", "numeric transformation law");
    long long tN = 1, tm = 1, tterms = 64, tprec = 420;
    std::string ttau = "0,1", tz = "0,0";
    double ttol = 1e-6, ttail = 1e-8;
    jtrans->add_option("--N", tN);
    jtrans->add_option("--m", tm);
    jtrans->add_option("--tau", ttau, "complex as re,im");
    jtrans->add_option("--z", tz, "complex as re,im");
    jtrans->add_option("--tol", ttol);
    jtrans->add_option("--tail-tol", ttail);
    jtrans->add_option("--terms", tterms);
    jtrans->add_option("--prec", tprec, "component precision for the form check");

    // halfint
    auto* half = app.add_subcommand("halfint", "half-integral weight sieve");
    half->require_subcommand(1);
    auto* hsieve = half->add_subcommand("sieve", "the inductive coefficient sieve");
    std::string hinput;
    long long hL = 0, hLf = 2, hbound = 0;
    hsieve->add_option("--input", hinput)->required();
    hsieve->add_option("--L", hL, "override the level in the input");
    hsieve->add_option("--Lf", hLf)->required();
    hsieve->add_option("--bound", hbound, "override the bound in the input");

    // witness
    auto* wit = app.add_subcommand("witness", "binary quadratic witness matrix");
    long long wp = 3, wmu = 1, wD = 11;
    wit->add_option("--p", wp)->required();
    wit->add_option("--mu", wmu)->required();
    wit->add_option("--D", wD)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Timer timer;
    try {
        if (geval->parsed()) {
            ReportEnvelope env;
            env.command = "gauss eval";
            env.parameters = {{"a", ga}, {"b", gb}, {"c", gc}};
            GaussSumSpec spec{ga, gb, gc};
            CycloNumber direct = gauss_direct(spec);
            CycloNumber closed = gauss_closed(spec);
            env.status = (direct == closed) ? "pass" : "fail";
            Json payload;
            payload["spec"] = env.parameters;
            if (!gnumeric || gexact) payload["exact"] = cyclo_to_json(closed);
            if (!gexact || gnumeric) {
                auto v = embed(closed);
                payload["numeric"] = Json::array({v.real(), v.imag()});
            }
            payload["direct_equals_closed"] = direct == closed;
            env.payload = payload;
            return emit(env, timer, format);
        }
        if (gverify->parsed()) {
            ReportEnvelope env;
            env.command = "gauss verify";
            env.parameters = {{"cmax", gcmax}, {"jobs", jobs}};
            auto rep = gauss_verify_range(gcmax, jobs);
            env.status = rep.all_pass() ? "pass" : "fail";
            env.payload = gauss_report_to_json(rep);
            return emit(env, timer, format, gauss_report_to_csv(rep));
        }
        if (ematrix->parsed()) {
            ReportEnvelope env;
            env.command = "epsilon matrix";
            env.parameters = {{"N", eN}, {"m1", em1}, {"m2", em2}, {"l", el}};
            EpsilonContext ctx = make_epsilon_context(eN, em1, em2, el);
            Json payload;
            payload["context"] = {{"N", ctx.N}, {"m1", ctx.m1}, {"m2", ctx.m2},
                                  {"M", ctx.M},   {"Mbar", ctx.Mbar}, {"l", ctx.l}};
            long long two_m = 2 * ctx.m();
            if (enu0 >= 0) {
                env.parameters["nu0"] = enu0;
                auto sc = square_class(em1, em2, enu0);
                CycloMatrix m = build_class_matrix(ctx, enu0);
                payload["rows_nu"] = sc.members;
                Json rows = Json::array();
                for (Eigen::Index i = 0; i < m.rows(); ++i) {
                    Json row = Json::array();
                    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(cyclo_to_json(m(i, j)));
                    rows.push_back(row);
                }
                payload["matrix"] = rows;
                payload["rank"] = exact_rank(m);
                payload["max_rank"] = verify_max_rank(ctx, enu0);
            } else {
                Json rows = Json::array();
                for (long long nu = 0; nu < two_m; ++nu) {
                    Json row = Json::array();
                    for (long long mu = 0; mu < two_m; ++mu)
                        row.push_back(cyclo_to_json(epsilon_def(ctx, nu, mu)));
                    rows.push_back(row);
                }
                payload["matrix"] = rows;
            }
            ReportEnvelope out = env;
            out.payload = payload;
            return emit(out, timer, format);
        }
        if (sq->parsed()) {
            ReportEnvelope env;
            env.command = "square-classes";
            env.parameters = {{"m1", sm1}, {"m2", sm2}};
            Json payload;
            bool all_ok = true;
            auto one = [&](long long nu0) {
                auto sc = square_class(sm1, sm2, nu0);
                long long predicted = square_class_predicted_size(sm1, sm2, nu0);
                bool ok = (long long)sc.members.size() == predicted;
                all_ok = all_ok && ok;
                Json e;
                e["nu0"] = sc.nu0;
                e["members"] = sc.members;
                e["size"] = sc.members.size();
                e["predicted"] = predicted;
                e["ok"] = ok;
                return e;
            };
            if (snu0 >= 0) {
                env.parameters["nu0"] = snu0;
                payload = one(snu0);
            } else {
                Json classes = Json::array();
                std::vector<char> seen(2 * sm1 * sm2, 0);
                for (long long nu0 = 0; nu0 < 2 * sm1 * sm2; ++nu0) {
                    if (seen[nu0]) continue;
                    auto e = one(nu0);
                    for (auto& mem : e["members"]) seen[mem.get<long long>()] = 1;
                    classes.push_back(e);
                }
                payload["classes"] = classes;
            }
            env.payload = payload;
            env.status = all_ok ? "pass" : "fail";
            return emit(env, timer, format);
        }
        if (rscan->parsed()) {
            ReportEnvelope env;
            env.command = "rank scan";
            ScanOptions opt;
            opt.max_index = rmax;
            if (!rlevels.empty()) opt.levels = parse_list(rlevels);
            opt.include_even_m2 = reven;
            opt.crt_check = !rnocrt;
            opt.jobs = jobs;
            env.parameters = {{"max_index", rmax},
                              {"levels", rlevels.empty() ? "all odd square-free" : rlevels},
                              {"include_even_m2", reven},
                              {"jobs", jobs}};
            auto rep = scan_max_rank(opt);
            env.status = rep.all_pass() ? "pass" : "fail";
            env.payload = scan_report_to_json(rep);
            return emit(env, timer, format, scan_report_to_csv(rep));
        }
        if (jconstruct->parsed()) {
            ReportEnvelope env;
            env.command = "jacobi construct";
            env.parameters = {{"form", jform}, {"prec", jprec}};
            env.payload = jacobi_form_to_json(construct_phi_10_1(jprec));
            return emit(env, timer, format);
        }
        if (jvell->parsed()) {
            ReportEnvelope env;
            env.command = "jacobi vell";
            env.parameters = {{"input", jinput}, {"ell", jell}};
            auto phi = jacobi_form_from_json(read_json_input(jinput));
            env.payload = jacobi_form_to_json(V_ell(phi, jell));
            return emit(env, timer, format);
        }
        if (jdecomp->parsed()) {
            ReportEnvelope env;
            env.command = "jacobi decompose";
            env.parameters = {{"input", dinput}};
            auto phi = jacobi_form_from_json(read_json_input(dinput));
            env.payload = theta_components_to_json(theta_decompose(phi));
            return emit(env, timer, format);
        }
        if (jcheck->parsed()) {
            ReportEnvelope env;
            env.command = "jacobi check";
            env.parameters = {{"input", cinput}};
            auto phi = jacobi_form_from_json(read_json_input(cinput));
            std::optional<std::pair<long long, long long>> split;
            if (!csplit.empty()) {
                auto v = parse_list(csplit);
                if (v.size() != 2) throw std::domain_error("--split expects m1,m2");
                split = std::make_pair(v[0], v[1]);
                env.parameters["split"] = csplit;
            }
            auto rep = check_primitive_nonvanishing(phi, split);
            env.status = rep.consistent ? "pass" : "fail";
            env.payload = nonvanishing_to_json(rep);
            return emit(env, timer, format);
        }
        if (jtrans->parsed()) {
            ReportEnvelope env;
            env.command = "jacobi transform-check";
            env.parameters = {{"N", tN}, {"m", tm}, {"tau", ttau}, {"z", tz},
                              {"tol", ttol}, {"tail_tol", ttail}, {"terms", tterms}};
            auto tau = parse_complex(ttau);
            auto z = parse_complex(tz);
            auto tl = theta_transform_check(tm, tN, tau, z, ttail, tterms);
            Json payload;
            payload["theta_law"] = {{"max_residual", tl.max_residual},
                                    {"tail_bound", tl.max_tail_bound},
                                    {"comparisons", tl.comparisons},
                                    {"tail_ok", tl.tail_ok}};
            bool pass = tl.tail_ok && tl.max_residual < ttol;
            if (tN == 1) {
                auto h = theta_decompose(construct_phi_10_1(tprec));
                auto cr = component_transform_check(h, tN, tau, ttail);
                payload["component_relation"] = {{"max_residual", cr.max_residual},
                                                 {"tail_bound", cr.max_tail_bound},
                                                 {"comparisons", cr.comparisons},
                                                 {"tail_ok", cr.tail_ok}};
                pass = pass && cr.tail_ok && cr.max_residual < ttol;
            }
            env.status = pass ? "pass" : "fail";
            env.payload = payload;
            return emit(env, timer, format);
        }
        if (hsieve->parsed()) {
            ReportEnvelope env;
            env.command = "halfint sieve";
            env.parameters = {{"input", hinput}, {"Lf", hLf}};
            auto f = halfint_from_json(read_json_input(hinput));
            if (hL > 0) f.L = hL;
            if (hbound > 0) f.bound = hbound;
            env.parameters["L"] = f.L;
            env.parameters["bound"] = f.bound;
            auto res = run_sieve(f, hLf);
            env.status = res.ok ? (res.trace.verdicts_exact ? "pass" : "warn") : "fail";
            env.payload = sieve_result_to_json(res);
            return emit(env, timer, format);
        }
        if (wit->parsed()) {
            ReportEnvelope env;
            env.command = "witness";
            env.parameters = {{"p", wp}, {"mu", wmu}, {"D", wD}};
            auto w = build_witness(wp, wmu, wD);
            bool ok = w.four_det() == Rational(wD) && w.positive_definite();
            env.status = ok ? "pass" : "fail";
            env.payload = witness_to_json(w);
            return emit(env, timer, format);
        }
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "no subcommand\n";
    return 2;
}
