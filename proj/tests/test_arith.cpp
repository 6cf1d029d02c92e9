#include <doctest.h>

#include <random>

#include "jtheta/arith.hpp"

using namespace jtheta;

TEST_CASE("factorize basics") {
    CHECK(factorize(1).factors.empty());
    auto f12 = factorize(12);
    CHECK(f12.factors == std::vector<std::pair<long long, int>>{{2, 2}, {3, 1}});
    auto f105 = factorize(105);
    CHECK(f105.factors == std::vector<std::pair<long long, int>>{{3, 1}, {5, 1}, {7, 1}});
    CHECK_THROWS_AS(factorize(0), std::domain_error);
}

TEST_CASE("factorize round-trip up to 10^6") {
    for (long long n = 1; n <= 1000000; ++n) {
        auto f = factorize(n);
        long long prod = 1;
        long long last_p = 0;
        for (auto& [p, e] : f.factors) {
            CHECK(p > last_p);
            CHECK(e >= 1);
            last_p = p;
            for (int i = 0; i < e; ++i) prod *= p;
        }
        if (prod != n) {
            REQUIRE(prod == n);  // report once, not 10^6 assertions
        }
    }
}

TEST_CASE("is_square_free") {
    CHECK(is_square_free(1));
    CHECK(is_square_free(15));
    CHECK_FALSE(is_square_free(12));
}

TEST_CASE("jacobi symbol examples and multiplicativity") {
    CHECK(jacobi_symbol(1, 3) == 1);
    // (2/15) via Euler's criterion mod 3 and mod 5: 2 is a nonresidue mod both
    auto euler = [](long long a, long long p) {
        long long r = powmod_ll(a, (p - 1) / 2, p);
        return r == 1 ? 1 : (r == p - 1 ? -1 : 0);
    };
    CHECK(jacobi_symbol(2, 15) == euler(2, 3) * euler(2, 5));
    CHECK(jacobi_symbol(2, 15) == 1);

    std::mt19937 rng(7);
    for (int t = 0; t < 500; ++t) {
        long long n = 2 * (rng() % 200) + 1;
        long long a = rng() % 400, b = rng() % 400;
        CHECK(jacobi_symbol(a * b, n) == jacobi_symbol(a, n) * jacobi_symbol(b, n));
    }
    CHECK_THROWS_AS(jacobi_symbol(1, 4), std::domain_error);
    CHECK_THROWS_AS(jacobi_symbol(1, 0), std::domain_error);
}

TEST_CASE("kronecker symbol by the (a/2) factor rules") {
    // independent oracle: peel the 2-part with the standard (a/2) rule
    auto oracle = [](long long a, long long n) {
        int r = 1;
        while (n % 2 == 0) {
            n /= 2;
            if (a % 2 == 0) return 0;
            long long m = mod_norm(a, 8);
            if (m == 3 || m == 5) r = -r;
        }
        return r * jacobi_symbol(a, n);
    };
    for (long long a = -20; a <= 20; ++a)
        for (long long n = 1; n <= 48; ++n) CHECK(kronecker_symbol(a, n) == oracle(a, n));
    // (3/4) = (3/2)^2 = (-1)^2 = 1 under the standard rules
    CHECK(kronecker_symbol(3, 4) == 1);
    CHECK(kronecker_symbol(3, 2) == -1);
    CHECK(kronecker_symbol(2, 2) == 0);
    // odd lower entries match the Jacobi symbol
    for (long long a = 0; a < 30; ++a)
        for (long long n = 1; n <= 29; n += 2) CHECK(kronecker_symbol(a, n) == jacobi_symbol(a, n));
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(1, 5) == 1);
    // brute-force oracles
    auto brute = [](long long a, long long n) -> long long {
        for (long long x = 0; x < n; ++x)
            if (mod_norm(a * x, n) == 1) return x;
        return -1;
    };
    CHECK(mod_inverse(3, 20) == brute(3, 20));
    CHECK(mod_inverse(3, 20) == 7);
    CHECK(mod_inverse(4, 7) == brute(4, 7));
    CHECK(mod_inverse(4, 7) == 2);
    CHECK_THROWS_AS(mod_inverse(6, 20), std::domain_error);

    std::mt19937 rng(11);
    for (int t = 0; t < 2000; ++t) {
        long long n = 2 + rng() % 5000;
        long long a = rng() % n;
        if (std::gcd(a, n) != 1) {
            CHECK_THROWS_AS(mod_inverse(a, n), std::domain_error);
        } else {
            CHECK(mod_norm(a * mod_inverse(a, n), n) == 1);
        }
    }
}

TEST_CASE("divisor helpers") {
    CHECK(divisors(12) == std::vector<long long>{1, 2, 3, 4, 6, 12});
    CHECK(square_free_divisors(12) == std::vector<long long>{1, 2, 3, 6});
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(420) == 96);
}
