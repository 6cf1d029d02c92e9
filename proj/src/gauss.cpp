#include "jtheta/gauss.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace jtheta {

GaussCaseCounters& GaussCaseCounters::operator+=(const GaussCaseCounters& o) {
    odd += o.odd;
    c2_odd_b += o.c2_odd_b;
    c2_zero += o.c2_zero;
    c4_even_b += o.c4_even_b;
    c4_zero += o.c4_zero;
    content_zero += o.content_zero;
    content_reduced += o.content_reduced;
    shift_reduced += o.shift_reduced;
    return *this;
}

namespace {

// Value algebra over CycloNumber, everything expressed in one ambient order.
struct CycloAlg {
    using Value = CycloNumber;
    long long amb;
    std::map<long long, Value> sq_cache;

    explicit CycloAlg(long long n) : amb(n) {}
    Value zero() { return CycloNumber::zero(amb); }
    Value one() { return CycloNumber::one(amb); }
    Value root(long long c, long long k) { return root_of_unity(amb, mod_norm(k, c) * (amb / c)); }
    Value scal(const Value& x, long long k) { return x.scaled(Rational(k)); }
    Value mul(const Value& x, const Value& y) { return x * y; }
    Value sqrt2() { return root(8, 1) + root(8, 7); }
    Value one_plus_i() { return one() + root(4, 1); }
    Value eps_inv(long long x) { return mod_norm(x, 4) == 1 ? one() : root(4, 3); }
    // eps_m sqrt(m) = sum_l zeta_m^(l^2), m odd
    Value square_gauss(long long m) {
        auto it = sq_cache.find(m);
        if (it != sq_cache.end()) return it->second;
        std::vector<std::pair<long long, Rational>> terms;
        long long sc = amb / m;
        for (long long l = 0; l < m; ++l) terms.emplace_back(mod_norm(l * l, m) * sc, Rational(1));
        Value v = canonical_from_terms(amb, terms);
        sq_cache.emplace(m, v);
        return v;
    }
};

// Value algebra over sparse integer group-algebra vectors (exponent, coeff).
struct VecAlg {
    using Value = std::vector<std::pair<long long, long long>>;
    long long amb;
    std::vector<long long> scratch;
    std::vector<long long> touched;
    std::map<long long, Value> sq_cache;

    explicit VecAlg(long long n) : amb(n), scratch(n, 0) {}
    Value zero() { return {}; }
    Value one() { return {{0, 1}}; }
    Value root(long long c, long long k) { return {{mod_norm(k, c) * (amb / c), 1}}; }
    Value scal(Value x, long long k) {
        if (k == 0) return {};
        for (auto& t : x) t.second *= k;
        return x;
    }
    Value merge(const Value& x) {
        touched.clear();
        for (auto& [e, v] : x) {
            scratch[e] += v;
            touched.push_back(e);
        }
        Value r;
        for (long long e : touched) {
            if (scratch[e] != 0) {
                r.emplace_back(e, scratch[e]);
                scratch[e] = 0;
            }
        }
        return r;
    }
    Value mul(const Value& x, const Value& y) {
        Value prod;
        prod.reserve(x.size() * y.size());
        for (auto& [e1, v1] : x)
            for (auto& [e2, v2] : y) {
                long long e = e1 + e2;
                if (e >= amb) e -= amb;
                prod.emplace_back(e, v1 * v2);
            }
        return merge(prod);
    }
    Value sqrt2() { return {{amb / 8, 1}, {7 * (amb / 8), 1}}; }
    Value one_plus_i() { return {{0, 1}, {amb / 4, 1}}; }
    Value eps_inv(long long x) {
        if (mod_norm(x, 4) == 1) return one();
        return {{3 * (amb / 4), 1}};
    }
    Value square_gauss(long long m) {
        auto it = sq_cache.find(m);
        if (it != sq_cache.end()) return it->second;
        Value terms;
        long long sc = amb / m;
        for (long long l = 0; l < m; ++l) terms.emplace_back(mod_norm(l * l, m) * sc, 1);
        Value v = merge(terms);
        sq_cache.emplace(m, v);
        return v;
    }
};

// The closed-form decision tree, shared by both algebras: content rule,
// then the five closed-form cases, with the even-b complete-the-square
// reduction feeding the b = 0 cases.
template <class Alg>
typename Alg::Value closed_eval(long long a, long long b, long long c, Alg& alg,
                                GaussCaseCounters& cnt) {
    if (c == 1) return alg.one();
    a = mod_norm(a, c);
    b = mod_norm(b, c);
    long long g = std::gcd(a, c);  // a == 0 gives g = c
    if (g > 1) {
        if (b % g != 0) {
            ++cnt.content_zero;
            return alg.zero();
        }
        ++cnt.content_reduced;
        return alg.scal(closed_eval(a / g, b / g, c / g, alg, cnt), g);
    }
    if (c % 2 == 1) {
        ++cnt.odd;
        long long psi = mod_inverse(mod_norm(4 * a, c), c);
        long long shift = mod_norm(-mulmod_ll(mulmod_ll(psi, b, c), b, c), c);
        int chi = jacobi_symbol(a, c);
        auto v = alg.mul(alg.root(c, shift), alg.square_gauss(c));
        return chi == 1 ? v : alg.scal(v, -1);
    }
    if (c % 4 == 2) {
        if (b % 2 == 1) {
            ++cnt.c2_odd_b;
            return alg.scal(closed_eval(mod_norm(2 * a, c / 2), b, c / 2, alg, cnt), 2);
        }
        if (b != 0) ++cnt.shift_reduced;
        ++cnt.c2_zero;
        return alg.zero();
    }
    // c = 0 mod 4, a odd; separate the odd part first so the closed-form
    // case only ever sees a 2-power modulus (for composite even c the
    // symbol (a/c) read literally is off by a sign, G(7,0,12) being the
    // smallest counterexample)
    long long e2 = 0, codd = c;
    while (codd % 2 == 0) {
        codd /= 2;
        ++e2;
    }
    long long c1 = c / codd;
    if (codd > 1)
        return alg.mul(closed_eval(codd * a, b, c1, alg, cnt),
                       closed_eval(c1 * a, b, codd, alg, cnt));
    if (b % 2 == 1) {
        ++cnt.c4_zero;
        return alg.zero();
    }
    long long shift = 0;
    if (b != 0) {
        ++cnt.shift_reduced;
        long long abar = mod_inverse(a, c);
        long long h = (b / 2) % c;
        shift = mod_norm(-mulmod_ll(mulmod_ll(abar, h, c), h, c), c);
    }
    ++cnt.c4_even_b;
    int chi = kronecker_symbol(a, c);
    long long s = 1;
    for (long long i = 0; i < e2 / 2; ++i) s *= 2;
    auto v = alg.mul(alg.one_plus_i(), alg.eps_inv(a));
    v = alg.scal(v, s * chi);
    if (e2 % 2) v = alg.mul(v, alg.sqrt2());
    if (shift) v = alg.mul(v, alg.root(c, shift));
    return v;
}

struct PerC {
    long long checked = 0;
    GaussCaseCounters cnt;
    std::vector<std::array<long long, 3>> failures;
};

PerC verify_one_c(long long c) {
    PerC out;
    long long n = lcm_ll(8, c);
    long long sc = n / c;
    VecAlg alg(n);
    groupalg::FoldWorkspace ws;
    std::vector<std::pair<long long, long long>> terms;
    terms.reserve(2 * c + 8);
    for (long long a = 0; a <= c; ++a) {  // a = c is the degenerate representative
        for (long long b = 0; b < c; ++b) {
            terms.clear();
            long long s = 0, d = mod_norm(a + b, c), step = mod_norm(2 * a, c);
            for (long long l = 0; l < c; ++l) {
                terms.emplace_back(s * sc, 1);
                s += d;
                if (s >= c) s -= c;
                d += step;
                if (d >= c) d -= c;
            }
            auto v = closed_eval(a, b, c, alg, out.cnt);
            for (auto& [e, coef] : v) terms.emplace_back(e, -coef);
            ++out.checked;
            if (!groupalg::is_zero_sparse(n, terms, ws)) out.failures.push_back({a, b, c});
        }
    }
    return out;
}

}  // namespace

CycloNumber gauss_direct(const GaussSumSpec& spec) {
    if (spec.c < 1) throw std::domain_error("gauss_direct: c must be positive");
    long long c = spec.c;
    long long n = lcm_ll(8, c);
    long long sc = n / c;
    long long a = mod_norm(spec.a, c), b = mod_norm(spec.b, c);
    std::vector<long long> counts(c, 0);
    long long s = 0, d = mod_norm(a + b, c), step = mod_norm(2 * a, c);
    for (long long l = 0; l < c; ++l) {
        ++counts[s];
        s += d;
        if (s >= c) s -= c;
        d += step;
        if (d >= c) d -= c;
    }
    std::vector<std::pair<long long, Rational>> terms;
    for (long long e = 0; e < c; ++e)
        if (counts[e] != 0) terms.emplace_back(e * sc, Rational(counts[e]));
    return canonical_from_terms(n, terms);
}

CycloNumber gauss_closed(const GaussSumSpec& spec, GaussCaseCounters* counters) {
    if (spec.c < 1) throw std::domain_error("gauss_closed: c must be positive");
    GaussCaseCounters local;
    GaussCaseCounters& cnt = counters ? *counters : local;
    CycloAlg alg(lcm_ll(8, spec.c));
    return closed_eval(spec.a, spec.b, spec.c, alg, cnt);
}

GaussVerifyReport gauss_verify_range(long long cmax, int jobs) {
    if (cmax < 1) throw std::domain_error("gauss_verify_range: cmax must be positive");
    std::vector<PerC> results(cmax);
    if (jobs < 1) jobs = 1;
    jobs = (int)std::min<long long>(jobs, cmax);
    if (jobs == 1) {
        for (long long c = 1; c <= cmax; ++c) results[c - 1] = verify_one_c(c);
    } else {
        std::atomic<long long> next(1);
        auto worker = [&]() {
            while (true) {
                long long c = next.fetch_add(1);
                if (c > cmax) break;
                results[c - 1] = verify_one_c(c);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    GaussVerifyReport rep;
    rep.cmax = cmax;
    for (auto& r : results) {
        rep.checked += r.checked;
        rep.counters += r.cnt;
        for (auto& f : r.failures)
            if (rep.failures.size() < 64) rep.failures.push_back(f);
    }
    return rep;
}

}  // namespace jtheta
