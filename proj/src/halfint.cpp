#include "jtheta/halfint.hpp"

#include <numeric>
#include <sstream>

namespace jtheta {

void HalfIntForm::validate() const {
    if (kappa_num < 5 || kappa_num % 2 == 0)
        throw std::domain_error("half-integral form: weight numerator must be odd and >= 5");
    if (L < 1) throw std::domain_error("half-integral form: L must be positive");
    if (bound < 0) throw std::domain_error("half-integral form: bound must be nonnegative");
    for (auto& [n, v] : coeffs) {
        if (n < 1 || n > bound) throw std::domain_error("half-integral form: exponent outside [1, bound]");
        if (v.is_zero()) throw std::domain_error("half-integral form: stored zero coefficient");
    }
}

static void require_prime(long long p, const char* who) {
    auto f = factorize(std::max(p, 1LL));
    if (p < 2 || f.factors.size() != 1 || f.factors.front().second != 1)
        throw std::domain_error(std::string(who) + ": p must be prime");
}

HalfIntForm op_V(const HalfIntForm& f, long long p) {
    require_prime(p, "op_V");
    HalfIntForm r;
    r.kappa_num = f.kappa_num;
    r.L = f.L * p;
    r.bound = f.bound * p;
    r.rule = f.rule;
    for (auto& [n, v] : f.coeffs) r.coeffs[n * p] = v;
    return r;
}

HalfIntForm op_U(const HalfIntForm& f, long long p) {
    require_prime(p, "op_U");
    HalfIntForm r;
    r.kappa_num = f.kappa_num;
    r.L = f.L;  // level unchanged at the coefficient-table granularity
    r.bound = f.bound / p;
    r.rule = f.rule;
    for (auto& [n, v] : f.coeffs)
        if (n % p == 0 && n / p <= r.bound) r.coeffs[n / p] = v;
    return r;
}

HalfIntForm sieve_coprime(const HalfIntForm& f, long long S) {
    if (S < 1 || !is_square_free(S)) throw std::domain_error("sieve_coprime: S must be square-free");
    HalfIntForm r;
    r.kappa_num = f.kappa_num;
    r.L = f.L * S * S;
    r.bound = f.bound;
    r.rule = f.rule;
    for (auto& [n, v] : f.coeffs)
        if (std::gcd(n, S) == 1) r.coeffs[n] = v;
    return r;
}

HalfIntForm descend(const HalfIntForm& f, long long p) {
    require_prime(p, "descend");
    if (f.L % p != 0) throw std::domain_error("descend: p must divide the level");
    for (auto& [n, v] : f.coeffs)
        if (n % p != 0)
            throw std::domain_error("descend: hypothesis violated, a(" + std::to_string(n) +
                                    ") nonzero with p not dividing n");
    HalfIntForm r;
    r.kappa_num = f.kappa_num;
    r.L = f.L / p;
    r.bound = f.bound / p;
    r.rule = f.rule;
    for (auto& [n, v] : f.coeffs)
        if (n / p <= r.bound) r.coeffs[n / p] = v;
    return r;
}

namespace {

std::string verdict_of(const HalfIntForm& f) {
    bool z = f.stored_zero();
    if (f.zero_is_exact()) return z ? "zero" : "nonzero";
    return z ? "zero up to bound" : "nonzero up to bound";
}

std::string level_expr(long long L4) {
    std::ostringstream os;
    os << "4*" << L4;
    return os.str();
}

}  // namespace

SieveResult run_sieve(const HalfIntForm& f, long long Lf) {
    f.validate();
    SieveResult res;
    if (f.stored_zero()) throw std::domain_error("run_sieve: input form is zero");
    long long fourL = 4 * f.L;
    if (Lf < 2 || Lf % 2 != 0 || fourL % Lf != 0)
        throw std::domain_error("run_sieve: Lf must be an even divisor of 4L");
    for (auto& [n, v] : f.coeffs)
        if (std::gcd(n, Lf) > 1)
            throw std::domain_error("run_sieve: hypothesis violated, a(" + std::to_string(n) +
                                    ") nonzero with gcd(n, Lf) > 1");

    Factorization Lfac = factorize(f.L);
    long long Lfp = factorize(Lf).radical();
    std::vector<std::pair<long long, int>> stage_primes;  // (p, alpha) with p | L, p coprime to Lf
    for (auto& [p, e] : Lfac.factors)
        if (Lf % p != 0) stage_primes.emplace_back(p, e);

    res.trace.verdicts_exact = f.zero_is_exact();

    HalfIntForm cur = sieve_coprime(f, Lfp);
    res.trace.steps.push_back({"coprime-sieve", Lfp, 0, 0, cur.L, level_expr(cur.L), verdict_of(cur)});
    if (cur.stored_zero()) {
        res.ok = false;
        res.diagnosis = "initial sieve vanished although the input satisfies the support hypothesis";
        return res;
    }

    long long j = 0;
    for (auto& [p, alpha] : stage_primes) {
        ++j;
        HalfIntForm base = cur;
        bool found = false;
        for (int i = 0; i <= alpha; ++i) {
            if (i > 0) {
                // previous stage vanished: its support sat on multiples of p
                base = descend(base, p);
                res.trace.steps.push_back(
                    {"descend", p, j, i, base.L, level_expr(base.L), verdict_of(base)});
            }
            HalfIntForm cand = sieve_coprime(base, p);
            res.trace.steps.push_back(
                {"coprime-sieve", p, j, i, cand.L, level_expr(cand.L), verdict_of(cand)});
            if (!cand.stored_zero()) {
                cur = cand;
                res.exponents.emplace_back(p, i);
                found = true;
                break;
            }
        }
        if (!found) {
            // every stage vanished; for a genuine nonzero form this cannot
            // happen (a form supported on multiples of a prime away from the
            // level is zero), so the input data is inconsistent
            res.ok = false;
            res.diagnosis = "all stages for p = " + std::to_string(p) +
                            " vanished; no nonzero form of this level has such a table";
            return res;
        }
    }

    res.g = cur;
    res.trace.final_level_L = cur.L;

    // posts
    long long P = 1;
    for (auto& [p, i] : res.exponents)
        for (int t = 0; t < i; ++t) P *= p;
    long long expected_L = f.L * Lfp * Lfp;
    for (auto& [p, i] : res.exponents) {
        if (i < 0 || i > Lfac.exponent_of(p)) {
            res.ok = false;
            res.diagnosis = "exponent outside [0, alpha]";
            return res;
        }
        expected_L *= p * p;
        for (int t = 0; t < i; ++t) {
            if (expected_L % p != 0) {
                res.ok = false;
                res.diagnosis = "level formula leaves the integers";
                return res;
            }
            expected_L /= p;
        }
    }
    if (cur.L != expected_L) {
        res.ok = false;
        res.diagnosis = "final level does not match 4 L Lf'^2 prod p^(2-i)";
        return res;
    }
    for (auto& [n, v] : res.g.coeffs) {
        if (std::gcd(n, fourL) > 1) {
            res.ok = false;
            res.diagnosis = "output supported at gcd(n, 4L) > 1";
            return res;
        }
    }
    for (long long n = 1; n <= res.g.bound; ++n) {
        if (std::gcd(n, fourL) != 1) continue;
        if (!(res.g.coeff(n) == (P * n <= f.bound ? f.coeff(P * n) : Rational()))) {
            res.ok = false;
            res.diagnosis = "output coefficients do not match a(f, prod p^i * n)";
            return res;
        }
    }
    res.ok = true;
    return res;
}

}  // namespace jtheta
