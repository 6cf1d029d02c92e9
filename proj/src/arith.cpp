#include "jtheta/arith.hpp"

#include <algorithm>
#include <numeric>

namespace jtheta {

Factorization factorize(long long n) {
    if (n <= 0) throw std::domain_error("factorize: n must be positive");
    Factorization f;
    f.value = n;
    long long m = n;
    for (long long p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            f.factors.emplace_back(p, e);
        }
    }
    if (m > 1) f.factors.emplace_back(m, 1);
    return f;
}

bool is_square_free(long long n) {
    auto f = factorize(n);
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const auto& pe) { return pe.second == 1; });
}

long long euler_phi(long long n) {
    auto f = factorize(n);
    long long phi = 1;
    for (auto& [p, e] : f.factors) {
        phi *= p - 1;
        for (int i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

int jacobi_symbol(long long a, long long n) {
    if (n <= 0 || n % 2 == 0) throw std::domain_error("jacobi_symbol: n must be positive odd");
    a = mod_norm(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int kronecker_symbol(long long a, long long n) {
    if (n <= 0) throw std::domain_error("kronecker_symbol: n must be positive");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        long long r = mod_norm(a, 8);
        if (r == 3 || r == 5) result = -result;
    }
    return result * jacobi_symbol(a, n);
}

long long mod_inverse(long long a, long long n) {
    if (n <= 0) throw std::domain_error("mod_inverse: n must be positive");
    long long r0 = n, r1 = mod_norm(a, n);
    long long s0 = 0, s1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw std::domain_error("mod_inverse: not invertible");
    return mod_norm(s0, n);
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }
long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

long long powmod_ll(long long a, long long e, long long n) {
    long long r = 1 % n;
    a = mod_norm(a, n);
    while (e > 0) {
        if (e & 1) r = mulmod_ll(r, a, n);
        a = mulmod_ll(a, a, n);
        e >>= 1;
    }
    return r;
}

std::vector<long long> divisors(long long n) {
    auto f = factorize(n);
    std::vector<long long> ds{1};
    for (auto& [p, e] : f.factors) {
        size_t sz = ds.size();
        long long pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<long long> square_free_divisors(long long n) {
    auto f = factorize(n);
    std::vector<long long> ds{1};
    for (auto& [p, e] : f.factors) {
        size_t sz = ds.size();
        for (size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * p);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

}  // namespace jtheta
