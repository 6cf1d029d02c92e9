// Coefficient-level operators on half-integral-weight expansions and the
// inductive sieve with level bookkeeping and an audit trace.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "jtheta/arith.hpp"
#include "jtheta/rational.hpp"

namespace jtheta {

enum class SupportRule {
    AllStored,   // every nonzero coefficient is stored; zero tests are exact
    UpToBound,   // coefficients beyond the bound are unknown; verdicts are flagged
};

// Coefficient table of a half-integral weight cusp form of weight
// kappa_num/2 and level 4L, with support bound B.
struct HalfIntForm {
    long long kappa_num = 5;  // odd; weight kappa_num/2
    long long L = 1;          // full level is 4L
    long long bound = 0;      // entries stored for n <= bound
    SupportRule rule = SupportRule::AllStored;
    std::map<long long, Rational> coeffs;  // n -> a(n), zero entries omitted

    Rational coeff(long long n) const {
        auto it = coeffs.find(n);
        return it == coeffs.end() ? Rational() : it->second;
    }
    void set(long long n, const Rational& v) {
        if (n < 1 || n > bound) return;
        if (v.is_zero())
            coeffs.erase(n);
        else
            coeffs[n] = v;
    }
    bool stored_zero() const { return coeffs.empty(); }
    // Exactly zero (true/false), or unknown beyond the bound (flagged by caller).
    bool zero_is_exact() const { return rule == SupportRule::AllStored; }
    void validate() const;
};

// (f|V_p)(tau) = f(p tau): a(result, np) = a(f, n); level times p.
HalfIntForm op_V(const HalfIntForm& f, long long p);

// (f|U_p): a(result, n) = a(f, np); support bound divides by p.
HalfIntForm op_U(const HalfIntForm& f, long long p);

// Keep only coefficients with gcd(n, S) = 1; level times S^2.
HalfIntForm sieve_coprime(const HalfIntForm& f, long long S);

// g(tau) = f(tau/p): a(result, n) = a(f, np); requires a(f, n) = 0 for all
// p not dividing n (rejected with a witness) and p | L; level divides by p.
HalfIntForm descend(const HalfIntForm& f, long long p);

struct SieveStep {
    std::string op;       // "coprime-sieve" | "descend"
    long long prime = 0;
    long long j = 0;      // stage index over the primes of M_f (0 = initial sieve)
    long long i = 0;      // descent depth within the stage
    long long level_L = 0;  // resulting level is 4 * level_L
    std::string level_expr;
    std::string verdict;  // "nonzero" | "zero" | "nonzero up to bound" | "zero up to bound"
};

struct SieveTrace {
    std::vector<SieveStep> steps;
    long long final_level_L = 0;
    bool verdicts_exact = true;
};

struct SieveResult {
    bool ok = false;             // posts verified; false means inconsistency diagnosed
    std::string diagnosis;       // set when ok is false
    HalfIntForm g;
    std::vector<std::pair<long long, int>> exponents;  // (p_j, i_j)
    SieveTrace trace;
};

// The three-stage inductive sieve: strips the primes of Lf, then for each
// prime p | L coprime to Lf alternates coprime-sieve and descend until a
// stage survives. Posts verified on the output table:
//   (1) a(g, n) = 0 whenever gcd(n, 4L) > 1,
//   (2) a(g, n) = a(f, prod p_j^(i_j) n) for gcd(n, 4L) = 1,
//   (3) 0 <= i_j <= alpha_j, and the level formula 4 L Lf'^2 prod p^(2-i_j).
SieveResult run_sieve(const HalfIntForm& f, long long Lf);

}  // namespace jtheta
