// Generalized quadratic Gauss sums G(a,b,c) = sum_{l mod c} e_c(a l^2 + b l):
// a brute-force evaluator, a closed-form evaluator, and an exhaustive
// cross-verification driver.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "jtheta/cyclotomic.hpp"

namespace jtheta {

struct GaussSumSpec {
    long long a = 0;
    long long b = 0;
    long long c = 1;  // c >= 1
};

// How often each branch of the closed-form evaluation fired.
struct GaussCaseCounters {
    long long odd = 0;           // c odd, gcd(a,c)=1: eps_c sqrt(c) (a/c) e_c(-psi(a) b^2)
    long long c2_odd_b = 0;      // c = 2 mod 4, b odd: 2 G(2a, b, c/2)
    long long c2_zero = 0;       // c = 2 mod 4, b even: 0
    long long c4_even_b = 0;     // c = 0 mod 4, b even: (1+i) eps_a^-1 sqrt(c) (a/c)
    long long c4_zero = 0;       // c = 0 mod 4, b odd: 0
    long long content_zero = 0;      // gcd(a,c) does not divide b
    long long content_reduced = 0;   // gcd(a,c) divides b, factor it out
    long long shift_reduced = 0;     // b even, completed the square to b = 0

    GaussCaseCounters& operator+=(const GaussCaseCounters& o);
};

// Exact term-by-term summation, returned in order lcm(8, c).
CycloNumber gauss_direct(const GaussSumSpec& s);

// Closed-form evaluation; exactly equals gauss_direct on every input.
CycloNumber gauss_closed(const GaussSumSpec& s, GaussCaseCounters* counters = nullptr);

struct GaussVerifyReport {
    long long cmax = 0;
    long long checked = 0;
    std::vector<std::array<long long, 3>> failures;  // (a, b, c), capped
    bool all_pass() const { return failures.empty(); }
    GaussCaseCounters counters;
};

// Exhaustive check gauss_direct == gauss_closed for 1 <= c <= cmax,
// 0 <= a, b < c plus the degenerate representative a = c. Equality is
// decided exactly in the group algebra of order lcm(8, c).
GaussVerifyReport gauss_verify_range(long long cmax, int jobs = 1);

}  // namespace jtheta
