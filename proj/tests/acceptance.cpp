// Acceptance suite: one pass/fail line per criterion, exit nonzero on any
// failure. Every tolerance is pinned here; nothing defers to later runs.
#include <chrono>
#include <complex>
#include <cstdio>
#include <thread>
#include <vector>

#include "jtheta/gauss.hpp"
#include "jtheta/halfint.hpp"
#include "jtheta/jacobi.hpp"
#include "jtheta/theta_matrix.hpp"

using namespace jtheta;

namespace {

int g_failures = 0;

struct Criterion {
    int id;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    void report(bool pass, const std::string& what, const std::string& detail) const {
        std::printf("[%s] criterion %2d: %s (%s, %.2fs)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
                    detail.c_str(), seconds());
        std::fflush(stdout);
        if (!pass) ++g_failures;
    }
};

std::string fmt(long long v) { return std::to_string(v); }

// Independent re-verification of the sieve postconditions, recomputed from
// the input and output tables alone.
bool sieve_posts_hold(const HalfIntForm& f, long long Lf, const SieveResult& r) {
    if (!r.ok) return false;
    long long fourL = 4 * f.L;
    auto Lfac = factorize(f.L);
    long long Lfp = factorize(Lf).radical();
    // the staged primes are exactly the primes of L coprime to Lf, in order
    std::vector<long long> expect_p;
    for (auto& [p, e] : Lfac.factors)
        if (Lf % p != 0) expect_p.push_back(p);
    if (expect_p.size() != r.exponents.size()) return false;
    long long P = 1, lvl = f.L * Lfp * Lfp;
    for (size_t k = 0; k < expect_p.size(); ++k) {
        auto [p, i] = r.exponents[k];
        if (p != expect_p[k]) return false;
        if (i < 0 || i > Lfac.exponent_of(p)) return false;  // (iii)
        for (int t = 0; t < i; ++t) P *= p;
        lvl *= p * p;
        for (int t = 0; t < i; ++t) lvl /= p;
    }
    if (r.g.L != lvl || r.trace.final_level_L != lvl) return false;  // level formula
    for (auto& [n, v] : r.g.coeffs)
        if (std::gcd(n, fourL) > 1) return false;  // (i)
    for (long long n = 1; n <= r.g.bound; ++n) {   // (ii)
        if (std::gcd(n, fourL) != 1) continue;
        Rational want = (P * n <= f.bound) ? f.coeff(P * n) : Rational();
        if (!(r.g.coeff(n) == want)) return false;
    }
    return true;
}

HalfIntForm synth(long long L, long long bound,
                  std::initializer_list<std::pair<long long, long long>> cs) {
    HalfIntForm f;
    f.kappa_num = 5;
    f.L = L;
    f.bound = bound;
    for (auto& [n, v] : cs) f.set(n, Rational(v, 1 + (n % 3)));
    return f;
}

}  // namespace

int main() {
    int jobs = (int)std::max(1u, std::thread::hardware_concurrency());

    {  // 1: closed form equals the direct sum for every triple with c <= 200
        Criterion c{1};
        auto rep = gauss_verify_range(200, jobs);
        long long expect = 0;
        for (long long cc = 1; cc <= 200; ++cc) expect += cc * (cc + 1);
        bool pass = rep.all_pass() && rep.checked == expect && c.seconds() < 60.0;
        c.report(pass, "gauss_closed == gauss_direct exactly, c <= 200",
                 "checked=" + fmt(rep.checked) + " failures=" + fmt((long long)rep.failures.size()));

        // 2: every closed-form case exercised at least 1000 times in that sweep
        Criterion c2{2};
        auto& k = rep.counters;
        bool pass2 = k.odd >= 1000 && k.c2_odd_b >= 1000 && k.c2_zero >= 1000 &&
                     k.c4_even_b >= 1000 && k.c4_zero >= 1000;
        c2.report(pass2, "all five closed-form cases exercised >= 1000 times",
                  "odd=" + fmt(k.odd) + " c2_odd_b=" + fmt(k.c2_odd_b) + " c2_zero=" + fmt(k.c2_zero) +
                      " c4_even_b=" + fmt(k.c4_even_b) + " c4_zero=" + fmt(k.c4_zero));
    }

    {  // 3 and 4: epsilon identity and the vanishing property, exhaustively
        Criterion c{3};
        auto rep = epsilon_sweep(45, 21, true);
        bool pass = rep.identity_failures.empty() && rep.combos > 0 && c.seconds() < 120.0;
        c.report(pass, "epsilon_def == epsilon_closed exactly, N <= 45, m2 <= 21",
                 "combos=" + fmt(rep.combos) + " pairs=" + fmt(rep.pairs_checked) +
                     " diffs=" + fmt(rep.diffs_checked));
        Criterion c4{4};
        bool pass4 = rep.vanishing_failures.empty() && rep.vanishing_pairs > 0;
        c4.report(pass4, "epsilon vanishes whenever gcd(nu, m1) > 1 against unit mu",
                  "vanishing_pairs=" + fmt(rep.vanishing_pairs) +
                      " failures=" + fmt((long long)rep.vanishing_failures.size()));
    }

    {  // 5: the rank engine over every index, split, class and unit l
        Criterion c{5};
        ScanOptions opt;
        opt.max_index = 105;
        opt.jobs = jobs;
        opt.crt_check = true;
        auto rep = scan_max_rank(opt);
        bool pass = rep.all_pass() && rep.cells == rep.passes && rep.crt_checks > 0 &&
                    c.seconds() < 300.0;
        c.report(pass, "maximal rank + CRT factorization, square-free index <= 105",
                 "cells=" + fmt(rep.cells) + " rank_checks=" + fmt(rep.rank_checks) +
                     " crt_checks=" + fmt(rep.crt_checks) + " failures=" +
                     fmt((long long)rep.failures.size()));
    }

    {  // 6: square-class cardinality 2^t'
        Criterion c{6};
        long long classes = 0;
        bool pass = true;
        for (long long m = 1; m <= 210 && pass; ++m) {
            if (!is_square_free(m)) continue;
            for (long long nu0 = 0; nu0 < 2 * m; ++nu0) {
                ++classes;
                if ((long long)square_class(1, m, nu0).members.size() !=
                    square_class_predicted_size(1, m, nu0)) {
                    pass = false;
                    break;
                }
            }
        }
        pass = pass && c.seconds() < 10.0;
        c.report(pass, "square-class cardinality equals 2^t', m <= 210", "classes=" + fmt(classes));
    }

    JacobiFormCoeffs phi = construct_phi_10_1(81);

    {  // 7: decompose/recombine round trip through discriminant 80
        Criterion c{7};
        bool pass = theta_recombine(theta_decompose(phi), 81) == phi;
        long long forms = 1;
        for (long long ell : {2LL, 3LL, 5LL, 7LL}) {
            auto vi = V_ell(phi, ell);
            pass = pass && theta_recombine(theta_decompose(vi), vi.prec_disc()) == vi;
            ++forms;
        }
        c.report(pass, "theta decompose/recombine identity through 4mn - r^2 <= 80",
                 "forms=" + fmt(forms));
    }

    {  // 8: a nonzero primitive component for phi and its V images
        Criterion c{8};
        bool pass = true;
        auto r0 = check_primitive_nonvanishing(phi);
        pass = pass && r0.has_coprime_mu && r0.consistent;
        long long checked = 1;
        for (long long ell : {3LL, 5LL, 7LL}) {
            auto r = check_primitive_nonvanishing(V_ell(phi, ell), std::make_pair(1LL, ell));
            pass = pass && r.has_coprime_mu && r.consistent;
            ++checked;
        }
        c.report(pass, "nonzero h_mu with gcd(mu, 2m) = 1 for phi_10_1 and V_l images",
                 "forms=" + fmt(checked));
    }

    {  // 9: transformation-law numerics
        Criterion c{9};
        double worst_theta = 0, worst_tail = 0;
        bool pass = true;
        for (long long m : {1LL, 3LL}) {
            for (auto tau : {std::complex<double>(0, 1), std::complex<double>(0, 2)}) {
                for (auto z : {std::complex<double>(0, 0), std::complex<double>(0.3, 0.2)}) {
                    auto r = theta_transform_check(m, 1, tau, z, 1e-8);
                    worst_theta = std::max(worst_theta, r.max_residual);
                    worst_tail = std::max(worst_tail, r.max_tail_bound);
                    pass = pass && r.tail_ok && r.max_residual < 1e-6;
                }
            }
        }
        auto h = theta_decompose(construct_phi_10_1(420));
        double worst_h = 0;
        for (auto tau : {std::complex<double>(0, 1), std::complex<double>(0, 2)}) {
            auto r = component_transform_check(h, 1, tau, 1e-8);
            worst_h = std::max(worst_h, r.max_residual);
            pass = pass && r.tail_ok && r.max_residual < 1e-6;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "theta_residual=%.2e component_residual=%.2e tail=%.1e",
                      worst_theta, worst_h, worst_tail);
        c.report(pass, "transformation law residual < 1e-6 with tail bound < 1e-8", buf);
    }

    {  // 10: sieve postconditions on synthetic inputs + the worked traces
        Criterion c{10};
        std::vector<std::pair<HalfIntForm, long long>> inputs;
        for (long long L : {3LL, 9LL, 15LL, 45LL}) {
            for (long long Lf : {2LL, 6LL}) {
                // A: support coprime to 4L: every exponent comes out 0
                inputs.push_back({synth(L, 400, {{1, 1}, {49, 3}, {77, -2}}), Lf});
                // B: support on one power of a staged prime
                if (Lf == 2)
                    inputs.push_back({synth(L, 500, {{3, 1}, {21, 2}, {33, 1}}), Lf});
                else
                    inputs.push_back({synth(L, 500, {{5, 1}, {35, 2}, {55, 1}}), Lf});
                // C: deeper descent where the level allows it, mixed support otherwise
                if (Lf == 2) {
                    if (L % 9 == 0)
                        inputs.push_back({synth(L, 700, {{9, 1}, {63, 5}}), Lf});  // i_3 = 2
                    else if (L % 5 == 0)
                        inputs.push_back({synth(L, 700, {{15, 1}, {105, 4}}), Lf});  // i_3 = i_5 = 1
                    else
                        inputs.push_back({synth(L, 700, {{3, 1}, {21, 4}, {147, 2}}), Lf});
                } else {
                    // mixed support: coefficients at gcd(n, 4L) > 1 are sieved away
                    inputs.push_back({synth(L, 700, {{7, 2}, {77, 1}, {91, -1}, {25, 3}}), Lf});
                }
            }
        }
        bool pass = inputs.size() >= 20;
        long long ran = 0;
        for (auto& [f, Lf] : inputs) {
            auto r = run_sieve(f, Lf);
            bool ok = sieve_posts_hold(f, Lf, r);
            pass = pass && ok;
            ++ran;
        }
        // worked trace 1: L = 3, Lf = 2, a(3) = a(9) = 1
        {
            HalfIntForm f;
            f.kappa_num = 5;
            f.L = 3;
            f.bound = 40;
            f.set(3, Rational(1));
            f.set(9, Rational(1));
            auto r = run_sieve(f, 2);
            pass = pass && r.ok && r.exponents == std::vector<std::pair<long long, int>>{{3, 1}} &&
                   r.g.coeff(1) == Rational(1) && r.trace.final_level_L == 36 &&
                   r.trace.steps.size() == 4 && r.trace.steps[1].verdict == "zero" &&
                   r.trace.steps[2].op == "descend" && r.trace.steps[3].verdict == "nonzero" &&
                   sieve_posts_hold(f, 2, r);
        }
        // worked trace 2: L = 15, Lf = 2, support on 3|n with gcd(n,5) = 1
        {
            HalfIntForm f;
            f.kappa_num = 5;
            f.L = 15;
            f.bound = 60;
            f.set(3, Rational(1));
            f.set(9, Rational(1));
            f.set(21, Rational(1));
            auto r = run_sieve(f, 2);
            pass = pass && r.ok &&
                   r.exponents == std::vector<std::pair<long long, int>>{{3, 1}, {5, 0}} &&
                   r.g.coeff(1) == Rational(1) && r.g.coeff(7) == Rational(1) &&
                   r.trace.final_level_L == 15LL * 4 * 3 * 25 && sieve_posts_hold(f, 2, r);
        }
        c.report(pass, "sieve postconditions + level formula on synthetic inputs",
                 "inputs=" + fmt(ran) + " + 2 worked traces");
    }

    {  // 11: witness arithmetic on 100 valid triples
        Criterion c{11};
        bool pass = true;
        long long done = 0;
        std::vector<long long> primes{3, 5, 7, 11, 13};
        for (long long p : primes) {
            for (long long mu = 0; mu < 2 * p && done < 100; ++mu) {
                for (long long k = 1; k <= 4 && done < 100; ++k) {
                    long long D = 4 * p * k - mod_norm(mu * mu, 4 * p);
                    if (D <= 0) continue;
                    auto w = build_witness(p, mu, D);
                    bool half_integral = w.T(0, 0).is_integer() && w.T(1, 1).is_integer() &&
                                         (w.T(0, 1) * Rational(2)).is_integer() &&
                                         w.T(0, 1) == w.T(1, 0);
                    pass = pass && w.four_det() == Rational(D) && w.positive_definite() &&
                           half_integral;
                    ++done;
                }
            }
        }
        pass = pass && done >= 100;
        c.report(pass, "4 det(T) = D, symmetric half-integral positive definite", "triples=" + fmt(done));
    }

    if (g_failures == 0) {
        std::printf("acceptance: all 11 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
}
