#include "jtheta/jacobi.hpp"

#include <algorithm>
#include <cmath>

namespace jtheta {

namespace {

constexpr double TWO_PI = 6.283185307179586476925286766559;

std::complex<double> cexp2pi(std::complex<double> x) {
    return std::exp(std::complex<double>(0.0, TWO_PI) * x);
}

// Principal square root, argument in (-pi/2, pi/2].
std::complex<double> sqrt_branch(std::complex<double> w) { return std::sqrt(w); }

// w^(s/2) for odd s, computed as (sqrt w)^s to keep one branch choice.
std::complex<double> half_odd_power(std::complex<double> w, long long s) {
    std::complex<double> root = sqrt_branch(w);
    std::complex<double> r = 1.0;
    long long e = s < 0 ? -s : s;
    std::complex<double> base = root;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return s < 0 ? 1.0 / r : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// JacobiFormCoeffs

Rational JacobiFormCoeffs::coeff(long long n, long long r) const {
    long long D = 4 * index_ * n - r * r;
    if (D >= prec_) throw std::out_of_range("jacobi coefficient beyond precision bound");
    if (cusp_ && D <= 0) return Rational();
    auto it = table_.find({D, mod_norm(r, 2 * index_)});
    return it == table_.end() ? Rational() : it->second;
}

void JacobiFormCoeffs::set_entry(long long n, long long r, const Rational& v) {
    if (n < 0) throw std::domain_error("jacobi table: n must be nonnegative");
    long long D = 4 * index_ * n - r * r;
    if (D >= prec_) return;
    if (cusp_ && D <= 0) {
        if (!v.is_zero()) throw std::domain_error("cusp form with nonzero coefficient at 4mn - r^2 <= 0");
        return;
    }
    auto key = std::make_pair(D, mod_norm(r, 2 * index_));
    auto it = table_.find(key);
    if (it != table_.end()) {
        if (!(it->second == v))
            throw std::domain_error("inconsistent table: (n=" + std::to_string(n) +
                                    ", r=" + std::to_string(r) + ") contradicts the stored class value");
        return;
    }
    if (!v.is_zero()) table_.emplace(key, v);
}

std::vector<std::tuple<long long, long long, Rational>> JacobiFormCoeffs::entries() const {
    std::vector<std::tuple<long long, long long, Rational>> out;
    for (auto& [key, v] : table_) {
        auto [D, rbar] = key;
        long long num = D + rbar * rbar;
        long long r = rbar;
        if (num % (4 * index_) != 0 || num < 0) {
            r = rbar - 2 * index_;
            num = D + r * r;
        }
        out.emplace_back(num / (4 * index_), r, v);
    }
    return out;
}

bool operator==(const JacobiFormCoeffs& a, const JacobiFormCoeffs& b) {
    long long p = std::min(a.prec_, b.prec_);
    auto trunc = [p](const JacobiFormCoeffs& f) {
        std::map<std::pair<long long, long long>, Rational> t;
        for (auto& [k, v] : f.table_)
            if (k.first < p) t.emplace(k, v);
        return t;
    };
    return a.index_ == b.index_ && trunc(a) == trunc(b);
}

// ---------------------------------------------------------------------------
// Theta decomposition

ThetaComponents theta_decompose(const JacobiFormCoeffs& phi) {
    long long m = phi.index();
    ThetaComponents h;
    h.index = m;
    h.weight = phi.weight();
    h.level = phi.level();
    h.prec_disc = phi.prec_disc();
    h.cusp = phi.cusp();
    h.comps.assign(2 * m, FracQSeries(4 * m, phi.prec_disc()));
    for (auto& [key, v] : phi.table()) {
        auto [D, rbar] = key;
        h.comps[rbar].set(D, v);
    }
    return h;
}

JacobiFormCoeffs theta_recombine(const ThetaComponents& h, long long prec_disc) {
    long long m = h.index;
    if ((long long)h.comps.size() != 2 * m)
        throw std::domain_error("theta_recombine: expected exactly 2m components");
    long long prec = std::min(prec_disc, h.prec_disc);
    JacobiFormCoeffs phi(h.weight, m, h.level, prec, h.cusp);
    for (long long mu = 0; mu < 2 * m; ++mu) {
        for (auto& [D, v] : h.comps[mu].terms()) {
            if (D >= prec) break;
            if ((D + mu * mu) % (4 * m) != 0)
                throw std::domain_error("theta_recombine: component exponent off the slot lattice");
            // representative with n >= 0: r = mu or mu - 2m
            long long n = (D + mu * mu) / (4 * m);
            long long r = mu;
            if (n < 0) {
                r = mu - 2 * m;
                n = (D + r * r) / (4 * m);
            }
            if (n < 0) throw std::domain_error("theta_recombine: no representable (n, r) for entry");
            phi.set_entry(n, r, v);
        }
    }
    return phi;
}

// ---------------------------------------------------------------------------
// Test form and V_ell

JacobiFormCoeffs construct_phi_10_1(long long prec_disc) {
    if (prec_disc < 4) throw std::domain_error("construct_phi_10_1: prec must be >= 4");
    long long n_max = (prec_disc + 1) / 4 + 2;
    long long qprec = 24 * (n_max + 1);
    FracQSeries e18 = eta(qprec).pow(18);
    JacobiQZSeries th2 = jacobi_theta(qprec / 3 + 8).pow(2);
    JacobiQZSeries prod = th2.mul_q(e18);  // denominator 24, integral exponents
    JacobiFormCoeffs phi(10, 1, 1, prec_disc, true);
    for (auto& [key, v] : prod.terms()) {
        auto [e, r2] = key;
        if (e % 24 != 0 || r2 % 2 != 0) throw std::logic_error("phi_10_1: non-integral exponent");
        long long n = e / 24, r = r2 / 2;
        if (4 * n - r * r < prec_disc) phi.set_entry(n, r, v);
    }
    return phi;
}

JacobiFormCoeffs V_ell(const JacobiFormCoeffs& phi, long long ell) {
    auto f = factorize(std::max(ell, 1LL));
    if (ell < 2 || f.factors.size() != 1 || f.factors.front().second != 1)
        throw std::domain_error("V_ell: ell must be prime");
    long long m = phi.index(), k = phi.weight();
    long long ml = m * ell;
    long long prec = phi.prec_disc();
    JacobiFormCoeffs out(k, ml, phi.level(), prec, phi.cusp());
    long long dpow = 1;
    for (long long i = 0; i < k - 1; ++i) dpow *= ell;

    auto value_at = [&](long long n, long long r) {
        Rational v = phi.coeff(n * ell, r);  // d = 1
        if (n % ell == 0 && mod_norm(r, ell) == 0) v += phi.coeff(n / ell, r / ell) * Rational(dpow);
        return v;
    };

    // enumerate canonical classes (D, rbar) with a representative n >= 0
    for (long long rbar = 0; rbar < 2 * ml; ++rbar) {
        for (long long D = phi.cusp() ? 1 : -rbar * rbar; D < prec; ++D) {
            if ((D + rbar * rbar) % (4 * ml) != 0) continue;
            long long n = (D + rbar * rbar) / (4 * ml);
            long long r = rbar;
            if (n < 0) continue;
            Rational v = value_at(n, r);
            out.set_entry(n, r, v);
            // the theta-expansion dependence must hold for the second
            // representative as well; a mismatch is an implementation bug
            long long r2 = rbar - 2 * ml;
            long long n2 = (D + r2 * r2) / (4 * ml);
            if (n2 >= 0) {
                Rational v2 = value_at(n2, r2);
                if (!(v2 == v))
                    throw std::logic_error("V_ell: theta-expansion invariant violated");
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Non-vanishing report

NonvanishingReport check_primitive_nonvanishing(const JacobiFormCoeffs& phi,
                                                std::optional<std::pair<long long, long long>> split) {
    if (phi.is_zero()) throw std::domain_error("check_primitive_nonvanishing: form is zero up to precision");
    long long m = phi.index();
    if (!is_square_free(m)) throw std::domain_error("check_primitive_nonvanishing: index must be square-free");
    NonvanishingReport rep;
    rep.index = m;
    rep.prec_disc = phi.prec_disc();
    if (split) {
        rep.split_supplied = true;
        rep.m1 = split->first;
        rep.m2 = split->second;
        if (rep.m1 * rep.m2 != m) throw std::domain_error("split must factor the index");
    }
    ThetaComponents h = theta_decompose(phi);
    for (long long mu = 0; mu < 2 * m; ++mu) {
        if (h.comps[mu].is_zero()) continue;
        rep.nonzero_mu.push_back(mu);
        if (std::gcd(mu, 2 * m) == 1) rep.has_coprime_mu = true;
        if (rep.split_supplied && (2 * rep.m2) % std::gcd(mu, 2 * m) != 0) rep.has_alt_mu = true;
    }
    rep.consistent = rep.split_supplied ? (rep.has_coprime_mu || rep.has_alt_mu) : rep.has_coprime_mu;
    return rep;
}

// ---------------------------------------------------------------------------
// Numeric transformation checks

namespace {

// Theta_{mu,m}(tau, z) = sum_n e((2mn+mu)^2/(4m) tau + (2mn+mu) z)
std::pair<std::complex<double>, double> theta_series_eval(long long mu, long long m,
                                                          std::complex<double> tau,
                                                          std::complex<double> z, long long terms) {
    std::complex<double> s = 0.0;
    double last = 0.0;
    for (long long n = -terms; n <= terms; ++n) {
        double r = double(2 * m * n + mu);
        std::complex<double> expo = (r * r) / double(4 * m) * tau + r * z;
        std::complex<double> term = cexp2pi(expo);
        s += term;
        if (n == terms || n == -terms) last = std::max(last, std::abs(term));
    }
    // terms decay super-geometrically; the boundary magnitude times a safe
    // constant bounds the tail
    return {s, 8.0 * (last + 1e-300)};
}

std::complex<double> epsilon_embed(long long N, long long m, long long nu, long long mu) {
    return embed(gauss_direct({N, 2 * (nu - mu), 4 * m})) / double(4 * m);
}

}  // namespace

TransformCheckResult theta_transform_check(long long m, long long N, std::complex<double> tau,
                                           std::complex<double> z, double tail_tol, long long terms) {
    TransformCheckResult res;
    // The character sum eps_m(nu, mu) is the coefficient matrix for the
    // action tau -> tau/(-N tau + 1), i.e. c = -N, d = 1 (the same
    // orientation in which the component relation is written); with
    // c = +N the observed matrix is the complex conjugate.
    std::complex<double> ctd = -double(N) * tau + 1.0;
    std::complex<double> tau2 = tau / ctd;
    std::complex<double> z2 = z / ctd;
    std::complex<double> autfac = half_odd_power(ctd, -1) *
                                  cexp2pi(double(m) * double(N) * z * z / ctd);
    std::vector<std::complex<double>> eps(2 * m * 2 * m);
    for (long long nu = 0; nu < 2 * m; ++nu)
        for (long long mu = 0; mu < 2 * m; ++mu) eps[nu * 2 * m + mu] = epsilon_embed(N, m, nu, mu);
    for (long long mu = 0; mu < 2 * m; ++mu) {
        auto [lhs_theta, tail1] = theta_series_eval(mu, m, tau2, z2, terms);
        std::complex<double> lhs = lhs_theta * autfac;
        std::complex<double> rhs = 0.0;
        double tail2 = 0.0;
        for (long long nu = 0; nu < 2 * m; ++nu) {
            auto [t, tl] = theta_series_eval(nu, m, tau, z, terms);
            rhs += eps[nu * 2 * m + mu] * t;
            tail2 += tl;
        }
        res.max_residual = std::max(res.max_residual, std::abs(lhs - rhs));
        res.max_tail_bound = std::max(res.max_tail_bound, std::max(std::abs(tail1), tail2));
        ++res.comparisons;
    }
    res.tail_ok = res.max_tail_bound <= tail_tol;
    return res;
}

TransformCheckResult component_transform_check(const ThetaComponents& h, long long N,
                                               std::complex<double> tau, double tail_tol) {
    TransformCheckResult res;
    long long m = h.index;
    long long k = h.weight;
    std::complex<double> w = -double(N) * tau + 1.0;
    std::complex<double> tau2 = tau / w;
    std::complex<double> pre = half_odd_power(w, -(2 * k - 1));
    std::vector<std::complex<double>> hval(2 * m), hval2(2 * m);
    for (long long mu = 0; mu < 2 * m; ++mu) {
        auto e1 = numeric_eval(h.comps[mu], tau);
        auto e2 = numeric_eval(h.comps[mu], tau2);
        hval[mu] = e1.value;
        hval2[mu] = e2.value;
        res.max_tail_bound = std::max({res.max_tail_bound, e1.tail_bound, e2.tail_bound});
    }
    // The coefficient matrix is unitary with eps^-1 = conj(eps); the true
    // relation pairs eps with the transformed components:
    //   sum_mu eps(nu, mu) (-N tau + 1)^(-k+1/2) h_mu(tau/(-N tau + 1)) = h_nu(tau).
    for (long long nu = 0; nu < 2 * m; ++nu) {
        std::complex<double> lhs = 0.0;
        for (long long mu = 0; mu < 2 * m; ++mu)
            lhs += epsilon_embed(N, m, nu, mu) * (pre * hval2[mu]);
        res.max_residual = std::max(res.max_residual, std::abs(lhs - hval[nu]));
        ++res.comparisons;
    }
    res.tail_ok = res.max_tail_bound <= tail_tol;
    return res;
}

// ---------------------------------------------------------------------------
// Witness arithmetic

Rational WitnessMatrix::four_det() const {
    Rational det = T(0, 0) * T(1, 1) - T(0, 1) * T(1, 0);
    return det * Rational(4);
}

bool WitnessMatrix::positive_definite() const {
    Rational det = T(0, 0) * T(1, 1) - T(0, 1) * T(1, 0);
    return Rational(0) < T(0, 0) && Rational(0) < det;
}

WitnessMatrix build_witness(long long p, long long mu, long long D) {
    if (p < 3 || p % 2 == 0 || factorize(p).factors.size() != 1 || factorize(p).factors[0].second != 1)
        throw std::domain_error("build_witness: p must be an odd prime");
    if (D <= 0) throw std::domain_error("build_witness: D must be positive");
    if (mod_norm(D + mu * mu, 4 * p) != 0)
        throw std::domain_error("build_witness: D = -mu^2 mod 4p violated");
    WitnessMatrix w;
    w.p = p;
    w.mu = mu;
    w.D = D;
    w.T(0, 0) = Rational((D + mu * mu) / (4 * p));
    w.T(0, 1) = Rational(mu, 2);
    w.T(1, 0) = Rational(mu, 2);
    w.T(1, 1) = Rational(p);
    return w;
}

}  // namespace jtheta
