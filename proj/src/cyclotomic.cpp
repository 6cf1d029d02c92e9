#include "jtheta/cyclotomic.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <unordered_map>

namespace jtheta {

namespace {

// ---------------------------------------------------------------------------
// Per-order context: cyclotomic polynomial, reduction rows, roots, fold plan.

struct FoldLevel {
    long long pe = 1;         // p^e
    long long p = 1;
    long long pstep = 1;      // p^(e-1)
    long long phi_pe = 1;     // phi(p^e)
    long long rest = 1;       // product of later levels
    long long inv_rest = 0;   // inv(rest mod pe) mod pe
    long long inv_pe = 0;     // inv(pe mod rest) mod rest (1 if rest == 1)
};

struct Context {
    long long n = 1;
    long long phi = 1;
    std::vector<long long> poly;  // cyclotomic polynomial, degree phi, monic
    std::vector<FoldLevel> levels;

    // x^e mod Phi_n for e in [phi, red_top]; built lazily.
    bool red_built = false;
    long long red_top = 0;
    std::vector<std::vector<long long>> red_rows;

    bool roots_built = false;
    std::vector<std::complex<double>> roots;
};

std::vector<long long> poly_cyclotomic(long long n, std::map<long long, std::vector<long long>>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    // (x^n - 1) / prod_{d|n, d<n} Phi_d, exact integer division.
    std::vector<long long> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (long long d : divisors(n)) {
        if (d == n) continue;
        auto phid = poly_cyclotomic(d, memo);
        // divide num by phid (monic), in place
        std::vector<long long> quot(num.size() - phid.size() + 1, 0);
        for (long long i = (long long)quot.size() - 1; i >= 0; --i) {
            long long c = num[i + phid.size() - 1];
            quot[i] = c;
            if (c == 0) continue;
            for (size_t j = 0; j < phid.size(); ++j)
                num[i + j] -= c * phid[j];
        }
        num = quot;
    }
    memo[n] = num;
    return num;
}

std::mutex g_ctx_mutex;
std::unordered_map<long long, std::unique_ptr<Context>> g_ctx;
std::map<long long, std::vector<long long>> g_poly_memo;

const Context& context(long long n) {
    std::lock_guard<std::mutex> lock(g_ctx_mutex);
    auto it = g_ctx.find(n);
    if (it != g_ctx.end()) return *it->second;
    auto c = std::make_unique<Context>();
    c->n = n;
    c->phi = euler_phi(n);
    c->poly = poly_cyclotomic(n, g_poly_memo);
    auto f = factorize(n);
    long long rest = n;
    for (auto& [p, e] : f.factors) {
        FoldLevel lv;
        lv.p = p;
        lv.pe = 1;
        for (int i = 0; i < e; ++i) lv.pe *= p;
        lv.pstep = lv.pe / p;
        lv.phi_pe = lv.pstep * (p - 1);
        rest /= lv.pe;
        lv.rest = rest;
        lv.inv_rest = (rest % lv.pe == 0) ? 0 : mod_inverse(rest % lv.pe, lv.pe);
        lv.inv_pe = rest > 1 ? mod_inverse(lv.pe % rest, rest) : 0;
        c->levels.push_back(lv);
    }
    auto [pos, ok] = g_ctx.emplace(n, std::move(c));
    (void)ok;
    return *pos->second;
}

// Reduction rows live behind the same lock; callers get a stable reference
// because contexts are never evicted.
const Context& context_with_red(long long n) {
    const Context& cc = context(n);
    std::lock_guard<std::mutex> lock(g_ctx_mutex);
    Context& c = const_cast<Context&>(cc);
    if (!c.red_built) {
        long long phi = c.phi;
        c.red_top = std::max(n - 1, 2 * phi - 2);
        if (c.red_top < phi) c.red_top = phi - 1;  // n == 1: no rows
        c.red_rows.clear();
        if (c.red_top >= phi) {
            std::vector<long long> row(phi);
            for (long long j = 0; j < phi; ++j) row[j] = -c.poly[j];  // x^phi
            c.red_rows.push_back(row);
            for (long long e = phi + 1; e <= c.red_top; ++e) {
                const auto& prev = c.red_rows.back();
                std::vector<long long> nxt(phi, 0);
                long long top = prev[phi - 1];
                for (long long j = phi - 1; j >= 1; --j) nxt[j] = prev[j - 1];
                if (top != 0) {
                    const auto& rp = c.red_rows[0];
                    for (long long j = 0; j < phi; ++j) {
                        __int128 v = (__int128)nxt[j] + (__int128)top * rp[j];
                        nxt[j] = checked_narrow(v);
                    }
                }
                c.red_rows.push_back(std::move(nxt));
            }
        }
        c.red_built = true;
    }
    return c;
}

const Context& context_with_roots(long long n) {
    const Context& cc = context(n);
    std::lock_guard<std::mutex> lock(g_ctx_mutex);
    Context& c = const_cast<Context&>(cc);
    if (!c.roots_built) {
        c.roots.resize(n);
        for (long long k = 0; k < n; ++k) {
            double t = 2.0 * M_PI * double(k) / double(n);
            c.roots[k] = {std::cos(t), std::sin(t)};
        }
        c.roots_built = true;
    }
    return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// CycloNumber

CycloNumber canonical_from_terms(long long n, std::span<const std::pair<long long, Rational>> terms) {
    const Context& c = context_with_red(n);
    CycloNumber r;
    r.order_ = n;
    r.coeffs_.assign(c.phi, Rational());
    for (auto& [e0, q] : terms) {
        if (q.is_zero()) continue;
        long long e = mod_norm(e0, n);
        if (e < c.phi) {
            r.coeffs_[e] += q;
        } else {
            const auto& row = c.red_rows[e - c.phi];
            for (long long j = 0; j < c.phi; ++j)
                if (row[j] != 0) r.coeffs_[j] += q * Rational(row[j]);
        }
    }
    return r;
}

CycloNumber CycloNumber::zero(long long order) {
    if (order <= 0) throw std::domain_error("cyclotomic order must be positive");
    CycloNumber r;
    r.order_ = order;
    r.coeffs_.assign(euler_phi(order), Rational());
    return r;
}

CycloNumber CycloNumber::one(long long order) { return from_rational(Rational(1), order); }

CycloNumber CycloNumber::from_rational(const Rational& q, long long order) {
    CycloNumber r = zero(order);
    r.coeffs_[0] = q;
    return r;
}

bool CycloNumber::is_rational() const {
    for (size_t j = 1; j < coeffs_.size(); ++j)
        if (!coeffs_[j].is_zero()) return false;
    return true;
}

Rational CycloNumber::rational_value() const {
    if (!is_rational()) throw std::domain_error("not a rational value");
    return coeffs_[0];
}

CycloNumber root_of_unity(long long n, long long k) {
    if (n <= 0) throw std::domain_error("root_of_unity: order must be positive");
    std::pair<long long, Rational> t{mod_norm(k, n), Rational(1)};
    return canonical_from_terms(n, std::span(&t, 1));
}

CycloNumber change_order(const CycloNumber& a, long long n) {
    if (n <= 0 || n % a.order() != 0)
        throw std::domain_error("change_order: target order must be a multiple of the source order");
    if (n == a.order()) return a;
    long long s = n / a.order();
    std::vector<std::pair<long long, Rational>> terms;
    for (size_t j = 0; j < a.coeffs().size(); ++j)
        if (!a.coeffs()[j].is_zero()) terms.emplace_back((long long)j * s, a.coeffs()[j]);
    return canonical_from_terms(n, terms);
}

static std::pair<CycloNumber, CycloNumber> promoted(const CycloNumber& a, const CycloNumber& b) {
    if (a.order() == b.order()) return {a, b};
    long long n = lcm_ll(a.order(), b.order());
    return {change_order(a, n), change_order(b, n)};
}

CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
    auto [x, y] = promoted(a, b);
    CycloNumber r = x;
    for (size_t j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] += y.coeffs_[j];
    return r;
}

CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
    auto [x, y] = promoted(a, b);
    CycloNumber r = x;
    for (size_t j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] -= y.coeffs_[j];
    return r;
}

CycloNumber CycloNumber::operator-() const {
    CycloNumber r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
    auto [x, y] = promoted(a, b);
    long long n = x.order();
    long long phi = (long long)x.coeffs_.size();
    std::vector<Rational> prod(2 * phi - 1 > 0 ? 2 * phi - 1 : 1);
    for (long long i = 0; i < phi; ++i) {
        if (x.coeffs_[i].is_zero()) continue;
        for (long long j = 0; j < phi; ++j) {
            if (y.coeffs_[j].is_zero()) continue;
            prod[i + j] += x.coeffs_[i] * y.coeffs_[j];
        }
    }
    std::vector<std::pair<long long, Rational>> terms;
    for (size_t e = 0; e < prod.size(); ++e)
        if (!prod[e].is_zero()) terms.emplace_back((long long)e, prod[e]);
    return canonical_from_terms(n, terms);
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
    auto [x, y] = promoted(a, b);
    return x.coeffs_ == y.coeffs_;
}

CycloNumber CycloNumber::scaled(const Rational& q) const {
    CycloNumber r = *this;
    for (auto& c : r.coeffs_) c *= q;
    return r;
}

CycloNumber CycloNumber::pow(long long e) const {
    if (e < 0) return inverse(pow(-e));
    CycloNumber r = CycloNumber::one(order_);
    CycloNumber base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

CycloNumber conjugate(const CycloNumber& a) {
    long long n = a.order();
    std::vector<std::pair<long long, Rational>> terms;
    for (size_t j = 0; j < a.coeffs().size(); ++j)
        if (!a.coeffs()[j].is_zero()) terms.emplace_back(mod_norm(-(long long)j, n), a.coeffs()[j]);
    return canonical_from_terms(n, terms);
}

std::complex<double> embed(const CycloNumber& a) {
    const Context& c = context_with_roots(a.order());
    std::complex<double> s = 0.0;
    for (size_t j = 0; j < a.coeffs().size(); ++j)
        if (!a.coeffs()[j].is_zero()) s += a.coeffs()[j].to_double() * c.roots[j];
    return s;
}

CycloNumber eps_factor(long long m) {
    if (mod_norm(m, 2) == 0) throw std::domain_error("eps_factor: m must be odd");
    return mod_norm(m, 4) == 1 ? CycloNumber::one(4) : root_of_unity(4, 1);
}

CycloNumber cyclo_sqrt(long long c) {
    if (c <= 0) throw std::domain_error("cyclo_sqrt: argument must be positive");
    auto f = factorize(c);
    long long s = 1, fodd = 1;
    int two_odd = 0;
    for (auto& [p, e] : f.factors) {
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2 == 1) {
            if (p == 2)
                two_odd = 1;
            else
                fodd *= p;
        }
    }
    long long order = lcm_ll(8, fodd);
    CycloNumber r = CycloNumber::from_rational(Rational(s), order);
    if (two_odd) {
        // sqrt(2) = zeta_8 + zeta_8^-1
        CycloNumber s2 = root_of_unity(8, 1) + root_of_unity(8, 7);
        r *= change_order(s2, order);
    }
    if (fodd > 1) {
        // sqrt(fodd) = eps^-1 * sum_l zeta^(l^2), the quadratic Gauss sum value
        std::vector<std::pair<long long, Rational>> terms;
        long long sc = order / fodd;
        for (long long l = 0; l < fodd; ++l)
            terms.emplace_back(mod_norm(l * l, fodd) * sc, Rational(1));
        CycloNumber g = canonical_from_terms(order, terms);
        CycloNumber epsinv = mod_norm(fodd, 4) == 1 ? CycloNumber::one(4) : root_of_unity(4, 3);
        r *= g * change_order(epsinv, order);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Primality and modular helpers

namespace detail {

bool is_prime_u64(unsigned long long x) {
    if (x < 2) return false;
    for (unsigned long long p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (x % p == 0) return x == p;
    }
    unsigned long long d = x - 1;
    int r = 0;
    while (d % 2 == 0) { d /= 2; ++r; }
    auto mulmod = [&](unsigned long long a, unsigned long long b) {
        return (unsigned long long)((unsigned __int128)a * b % x);
    };
    auto powmod = [&](unsigned long long a, unsigned long long e) {
        unsigned long long res = 1;
        a %= x;
        while (e) {
            if (e & 1) res = mulmod(res, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return res;
    };
    for (unsigned long long a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        unsigned long long v = powmod(a, d);
        if (v == 1 || v == x - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            v = mulmod(v, v);
            if (v == x - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace {
std::mutex g_mod_mutex;
std::map<std::pair<long long, int>, std::unique_ptr<ModOrderCtx>> g_mod_ctx;
}  // namespace

const ModOrderCtx& mod_order_ctx(long long n, int idx) {
    std::lock_guard<std::mutex> lock(g_mod_mutex);
    auto key = std::make_pair(n, idx);
    auto it = g_mod_ctx.find(key);
    if (it != g_mod_ctx.end()) return *it->second;

    auto f = factorize(n);
    int found = 0;
    long long q = 0;
    for (long long k = (1000000 / n) + 1;; ++k) {
        long long cand = n * k + 1;
        if (!is_prime_u64((unsigned long long)cand)) continue;
        if (found == idx) { q = cand; break; }
        ++found;
    }
    auto ctx = std::make_unique<ModOrderCtx>();
    ctx->n = n;
    ctx->q = q;
    long long omega = 0;
    for (long long a = 2;; ++a) {
        long long w = powmod_ll(a, (q - 1) / n, q);
        if (w == 1) continue;
        bool full_order = true;
        for (auto& [p, e] : f.factors) {
            if (powmod_ll(w, n / p, q) == 1) { full_order = false; break; }
        }
        if (full_order) { omega = w; break; }
    }
    ctx->pow.resize(n);
    long long v = 1;
    for (long long k = 0; k < n; ++k) {
        ctx->pow[k] = v;
        v = mulmod_ll(v, omega, q);
    }
    auto [pos, ok] = g_mod_ctx.emplace(key, std::move(ctx));
    (void)ok;
    return *pos->second;
}

int rank_mod_q(std::vector<std::vector<long long>> m, long long q) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pr = rank;
        while (pr < rows && m[pr][col] % q == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[rank], m[pr]);
        long long inv = mod_inverse(mod_norm(m[rank][col], q), q);
        for (size_t r2 = rank + 1; r2 < rows; ++r2) {
            long long f = mulmod_ll(mod_norm(m[r2][col], q), inv, q);
            if (f == 0) continue;
            for (size_t j = col; j < cols; ++j)
                m[r2][j] = mod_norm(m[r2][j] - mulmod_ll(f, m[rank][j], q), q);
        }
        ++rank;
    }
    return (int)rank;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Inverse by modular inversion + rational reconstruction, verified exactly.

namespace {

// Polynomial inverse of a modulo the cyclotomic polynomial, over F_q.
// Returns empty when the reduction is degenerate for this prime.
std::optional<std::vector<long long>> poly_inv_mod_q(const std::vector<long long>& a_int,
                                                     const std::vector<long long>& phi_poly,
                                                     long long q) {
    size_t deg = phi_poly.size() - 1;
    std::vector<long long> r0(phi_poly.begin(), phi_poly.end());
    for (auto& c : r0) c = mod_norm(c, q);
    std::vector<long long> r1(deg, 0);
    for (size_t j = 0; j < a_int.size() && j < deg; ++j) r1[j] = mod_norm(a_int[j], q);
    std::vector<long long> s0(1, 0), s1(1, 1);
    auto degree = [](const std::vector<long long>& p) {
        for (long long i = (long long)p.size() - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return (long long)-1;
    };
    while (true) {
        long long d1 = degree(r1);
        if (d1 < 0) return std::nullopt;  // common factor with Phi mod q
        if (d1 == 0) break;
        long long d0 = degree(r0);
        // divide r0 by r1
        std::vector<long long> rem = r0;
        std::vector<long long> quot(d0 - d1 + 1, 0);
        long long lead_inv = mod_inverse(mod_norm(r1[d1], q), q);
        for (long long i = d0; i >= d1; --i) {
            long long c = mulmod_ll(mod_norm(rem[i], q), lead_inv, q);
            if (c == 0) continue;
            quot[i - d1] = c;
            for (long long j = 0; j <= d1; ++j)
                rem[i - d1 + j] = mod_norm(rem[i - d1 + j] - mulmod_ll(c, r1[j], q), q);
        }
        rem.resize(std::max<long long>(d1, 1));
        // s0 - quot*s1
        std::vector<long long> s2(std::max(s0.size(), quot.size() + s1.size() - 1), 0);
        for (size_t j = 0; j < s0.size(); ++j) s2[j] = s0[j];
        for (size_t i = 0; i < quot.size(); ++i) {
            if (quot[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j)
                s2[i + j] = mod_norm(s2[i + j] - mulmod_ll(quot[i], s1[j], q), q);
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    long long c_inv = mod_inverse(mod_norm(r1[0], q), q);
    std::vector<long long> res(deg, 0);
    for (size_t j = 0; j < s1.size() && j < deg; ++j) res[j] = mulmod_ll(mod_norm(s1[j], q), c_inv, q);
    return res;
}

std::optional<Rational> rational_reconstruct(__int128 r, __int128 m) {
    __int128 a0 = m, a1 = r;
    __int128 x0 = 0, x1 = 1;
    __int128 half = m / 2;
    __int128 bound = (__int128)std::sqrt((long double)half);
    while (bound > 1 && bound * bound > half) --bound;
    while ((bound + 1) * (bound + 1) <= half) ++bound;
    if (bound < 1) bound = 1;
    while (a1 > bound) {
        __int128 qq = a0 / a1;
        __int128 t = a0 - qq * a1;
        a0 = a1;
        a1 = t;
        t = x0 - qq * x1;
        x0 = x1;
        x1 = t;
    }
    __int128 num = a1, den = x1;
    if (den < 0) { num = -num; den = -den; }
    if (den == 0 || den > bound) return std::nullopt;
    if (num > int128(INT64_MAX) || num < int128(INT64_MIN) || den > int128(INT64_MAX)) return std::nullopt;
    long long n64 = (long long)num, d64 = (long long)den;
    if (std::gcd(n64 < 0 ? -n64 : n64, d64) != 1) return std::nullopt;
    return Rational(n64, d64);
}

long long next_inverse_prime(long long after) {
    long long c = after + 1;
    while (!detail::is_prime_u64((unsigned long long)c)) ++c;
    return c;
}

}  // namespace

CycloNumber inverse(const CycloNumber& a) {
    if (a.is_zero()) throw std::domain_error("division by zero in cyclotomic field");
    long long n = a.order();
    const Context& ctx = context(n);
    // clear denominators: a = A / d with A integral
    long long d = 1;
    for (auto& c : a.coeffs()) d = lcm_ll(d, c.den());
    std::vector<long long> A(a.coeffs().size());
    for (size_t j = 0; j < A.size(); ++j)
        A[j] = checked_narrow((int128)a.coeffs()[j].num() * (d / a.coeffs()[j].den()));

    // sliding window of the two most recent usable primes; reconstruction
    // succeeds once the window product dominates the true coefficients, and
    // every candidate is verified exactly before it is returned
    const long long prime_base = (1LL << 61);
    std::vector<long long> primes;
    std::vector<std::vector<long long>> residues;
    long long last = prime_base;
    for (int attempt = 0; attempt < 10; ++attempt) {
        long long q = next_inverse_prime(last);
        last = q;
        auto inv_q = poly_inv_mod_q(A, ctx.poly, q);
        if (!inv_q) continue;
        primes.push_back(q);
        residues.push_back(std::move(*inv_q));
        if (primes.size() > 2) {
            primes.erase(primes.begin());
            residues.erase(residues.begin());
        }

        std::vector<std::pair<long long, Rational>> terms;
        bool ok = true;
        __int128 m = primes[0];
        std::vector<__int128> crt(residues[0].begin(), residues[0].end());
        if (primes.size() == 2) {
            __int128 p0 = primes[0], p1 = primes[1];
            long long inv01 = mod_inverse(mod_norm((long long)(p0 % p1), primes[1]), primes[1]);
            for (size_t j = 0; j < crt.size(); ++j) {
                long long r1 = residues[1][j];
                long long diff = mod_norm(r1 - (long long)(crt[j] % p1), primes[1]);
                crt[j] = crt[j] + p0 * (__int128)mulmod_ll(diff, inv01, primes[1]);
            }
            m = p0 * p1;
        }
        for (size_t j = 0; j < crt.size() && ok; ++j) {
            auto rc = rational_reconstruct(crt[j], m);
            if (!rc) { ok = false; break; }
            if (!rc->is_zero()) terms.emplace_back((long long)j, *rc);
        }
        if (!ok) continue;
        CycloNumber cand = canonical_from_terms(n, terms);
        // cand should be A^-1 with A = d*a, so cand * a == 1/d
        if (cand * a == CycloNumber::from_rational(Rational(1, d), n)) {
            return cand.scaled(Rational(d));
        }
    }
    throw overflow_error("cyclotomic inverse: reconstruction failed (inverse outside the 64-bit range)");
}

CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) {
    auto [x, y] = promoted(a, b);
    return x * inverse(y);
}

// ---------------------------------------------------------------------------
// Group-algebra zero test

namespace groupalg {

namespace {

bool is_zero_rec(const std::vector<FoldLevel>& levels, size_t idx, std::span<const long long> w,
                 FoldWorkspace& ws, size_t depth) {
    long long m = (long long)w.size();
    if (m == 1) return w[0] == 0;
    const FoldLevel& lv = levels[idx];
    long long q = lv.pe, m2 = m / q;
    auto& buf = ws.bufs[depth];
    buf.assign(m, 0);
    for (long long k = 0; k < m; ++k) {
        if (w[k] == 0) continue;
        long long u = (k % q) * lv.inv_rest % q;
        long long v = m2 > 1 ? (k % m2) * lv.inv_pe % m2 : 0;
        buf[u * m2 + v] += w[k];
    }
    for (long long u = q - 1; u >= lv.phi_pe; --u) {
        long long* row = buf.data() + u * m2;
        bool nonzero = false;
        for (long long t = 0; t < m2; ++t)
            if (row[t] != 0) { nonzero = true; break; }
        if (!nonzero) continue;
        for (long long i = 1; i < lv.p; ++i) {
            long long* tgt = buf.data() + (u - i * lv.pstep) * m2;
            for (long long t = 0; t < m2; ++t) tgt[t] -= row[t];
        }
    }
    for (long long u = 0; u < lv.phi_pe; ++u) {
        std::span<const long long> row(buf.data() + u * m2, (size_t)m2);
        bool nonzero = false;
        for (long long t = 0; t < m2; ++t)
            if (row[t] != 0) { nonzero = true; break; }
        if (!nonzero) continue;
        // the row buffer is consumed by the recursion's own scratch levels
        std::vector<long long> copy(row.begin(), row.end());
        if (!is_zero_rec(levels, idx + 1, copy, ws, depth + 1)) return false;
    }
    return true;
}

}  // namespace

bool is_zero(long long n, std::span<const long long> w, FoldWorkspace& ws) {
    if ((long long)w.size() != n) throw std::invalid_argument("groupalg::is_zero: length mismatch");
    if (n == 1) return w[0] == 0;
    const Context& c = context(n);
    if (ws.bufs.size() < c.levels.size()) ws.bufs.resize(c.levels.size());
    return is_zero_rec(c.levels, 0, w, ws, 0);
}

bool is_zero_sparse(long long n, std::span<const std::pair<long long, long long>> terms,
                    FoldWorkspace& ws) {
    ws.dense.assign(n, 0);
    for (auto& [e, v] : terms) ws.dense[mod_norm(e, n)] += v;
    return is_zero(n, ws.dense, ws);
}

}  // namespace groupalg

// ---------------------------------------------------------------------------
// Matrices

CycloMatrix cyclo_matrix_zero(long long order, Eigen::Index rows, Eigen::Index cols) {
    CycloMatrix m(rows, cols);
    CycloNumber z = CycloNumber::zero(order);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = z;
    return m;
}

static long long matrix_order(const CycloMatrix& m) {
    long long n = 1;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) n = lcm_ll(n, m(i, j).order());
    return n;
}

// Lower bound for the rank via reduction mod a prime q = 1 (mod n); equals
// the exact rank whenever it reaches min(rows, cols).
static std::optional<int> modular_rank_lower_bound(const CycloMatrix& m, long long n, int idx) {
    const auto& ctx = detail::mod_order_ctx(n, idx);
    long long q = ctx.q;
    std::vector<std::vector<long long>> mm(m.rows(), std::vector<long long>(m.cols(), 0));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const CycloNumber& e = m(i, j);
            long long scal = n / e.order();
            long long acc = 0;
            for (size_t k = 0; k < e.coeffs().size(); ++k) {
                const Rational& c = e.coeffs()[k];
                if (c.is_zero()) continue;
                if (c.den() % q == 0) return std::nullopt;
                long long v = mulmod_ll(mod_norm(c.num(), q), mod_inverse(mod_norm(c.den(), q), q), q);
                acc = mod_norm(acc + mulmod_ll(v, ctx.pow[(long long)k * scal % n], q), q);
            }
            mm[i][j] = acc;
        }
    }
    return detail::rank_mod_q(std::move(mm), q);
}

// Common rational content of a row, stripped so coefficients stay small.
// Row scaling by a nonzero rational leaves the rank unchanged.
static void strip_row_content(std::vector<CycloNumber>& row) {
    long long g = 0, l = 1;
    for (auto& e : row)
        for (auto& c : e.coeffs()) {
            if (c.is_zero()) continue;
            g = std::gcd(g, c.num() < 0 ? -c.num() : c.num());
            l = lcm_ll(l, c.den());
        }
    if (g == 0 || (g == 1 && l == 1)) return;
    Rational scale(l, g);
    for (auto& e : row) e = e.scaled(scale);
}

// Fraction-free Gaussian elimination with first-nonzero pivoting: each
// update is row_j <- pivot * row_j - a_jc * row_pivot, a row replacement
// plus a row scaling. Coefficient overflow throws rather than wrapping.
static int exact_rank_elimination(const CycloMatrix& m, long long n) {
    size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<CycloNumber>> a(rows);
    for (size_t i = 0; i < rows; ++i) {
        a[i].reserve(cols);
        for (size_t j = 0; j < cols; ++j) a[i].push_back(change_order(m(i, j), n));
        strip_row_content(a[i]);
    }
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pr = rank;
        while (pr < rows && a[pr][col].is_zero()) ++pr;
        if (pr == rows) continue;
        std::swap(a[rank], a[pr]);
        const CycloNumber& piv = a[rank][col];
        for (size_t r2 = rank + 1; r2 < rows; ++r2) {
            if (a[r2][col].is_zero()) continue;
            CycloNumber f = a[r2][col];
            for (size_t j = col; j < cols; ++j) a[r2][j] = piv * a[r2][j] - f * a[rank][j];
            strip_row_content(a[r2]);
        }
        ++rank;
    }
    return (int)rank;
}

int exact_rank(const CycloMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    long long n = matrix_order(m);
    int r0 = (int)std::min(m.rows(), m.cols());
    for (int idx = 0; idx < 3; ++idx) {
        auto lb = modular_rank_lower_bound(m, n, idx);
        if (lb && *lb == r0) return r0;
    }
    return exact_rank_elimination(m, n);
}

CycloMatrix kronecker_product(const CycloMatrix& a, const CycloMatrix& b) {
    CycloMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

Eigen::MatrixXcd embed_matrix(const CycloMatrix& m) {
    Eigen::MatrixXcd r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = embed(m(i, j));
    return r;
}

int float_svd_rank(const CycloMatrix& m, double threshold) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(embed_matrix(m));
    auto sv = svd.singularValues();
    double top = sv.size() ? sv(0) : 0.0;
    double cut = threshold * std::max(1.0, top);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++r;
    return r;
}

}  // namespace jtheta
