// Integer and modular arithmetic primitives: factorization by trial
// division (inputs are desk-scale), Jacobi/Kronecker symbols, modular
// inverses. All functions are pure.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace jtheta {

struct Factorization {
    long long value = 1;
    // (prime, exponent) pairs, primes strictly increasing, exponents >= 1
    std::vector<std::pair<long long, int>> factors;

    long long radical() const {
        long long r = 1;
        for (auto& [p, e] : factors) r *= p;
        return r;
    }
    int exponent_of(long long p) const {
        for (auto& [q, e] : factors)
            if (q == p) return e;
        return 0;
    }
};

Factorization factorize(long long n);
bool is_square_free(long long n);

// Euler phi, via factorization.
long long euler_phi(long long n);

// Jacobi symbol (a/n) for odd n >= 1.
int jacobi_symbol(long long a, long long n);

// Kronecker symbol (a/n) for n >= 1; extends the Jacobi symbol to even
// lower entries via the standard (a/2) rules.
int kronecker_symbol(long long a, long long n);

// Inverse of a modulo n, in [0, n). Throws std::domain_error when
// gcd(a, n) > 1.
long long mod_inverse(long long a, long long n);

long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);

// a mod n normalized into [0, n).
inline long long mod_norm(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

// a*b mod n without overflow for |operands| < 2^62.
inline long long mulmod_ll(long long a, long long b, long long n) {
    return static_cast<long long>(static_cast<__int128>(a) * b % n);
}

// a^e mod n, e >= 0.
long long powmod_ll(long long a, long long e, long long n);

// Divisors of n in increasing order.
std::vector<long long> divisors(long long n);

// Square-free divisors of n in increasing order.
std::vector<long long> square_free_divisors(long long n);

}  // namespace jtheta
