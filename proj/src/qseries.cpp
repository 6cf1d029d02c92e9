#include "jtheta/qseries.hpp"

#include <algorithm>
#include <cmath>

#include "jtheta/arith.hpp"

namespace jtheta {

namespace {

constexpr double TWO_PI = 6.283185307179586476925286766559;

std::complex<double> cexp2pi(double x) {
    return {std::cos(TWO_PI * x), std::sin(TWO_PI * x)};
}

}  // namespace

// ---------------------------------------------------------------------------
// FracQSeries

Rational FracQSeries::coeff(long long e) const {
    if (e >= prec_) throw std::out_of_range("series coefficient beyond guaranteed precision");
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Rational() : it->second;
}

void FracQSeries::set(long long e, const Rational& v) {
    if (e >= prec_) return;
    if (v.is_zero())
        coeffs_.erase(e);
    else
        coeffs_[e] = v;
}

FracQSeries FracQSeries::with_denom(long long d) const {
    if (d % denom_ != 0) throw std::domain_error("denominator must be a multiple");
    long long s = d / denom_;
    FracQSeries r(d, prec_ * s);
    for (auto& [e, v] : coeffs_) r.coeffs_[e * s] = v;
    return r;
}

FracQSeries FracQSeries::truncated(long long prec) const {
    FracQSeries r(denom_, std::min(prec, prec_));
    for (auto& [e, v] : coeffs_) {
        if (e >= r.prec_) break;
        r.coeffs_[e] = v;
    }
    return r;
}

FracQSeries FracQSeries::scaled(const Rational& q) const {
    FracQSeries r(denom_, prec_);
    if (q.is_zero()) return r;
    for (auto& [e, v] : coeffs_) r.coeffs_[e] = v * q;
    return r;
}

FracQSeries FracQSeries::shifted(long long e0) const {
    FracQSeries r(denom_, prec_ + e0);
    for (auto& [e, v] : coeffs_) r.coeffs_[e + e0] = v;
    return r;
}

static std::pair<FracQSeries, FracQSeries> common_denom(const FracQSeries& a, const FracQSeries& b) {
    long long d = lcm_ll(a.denom(), b.denom());
    return {a.with_denom(d), b.with_denom(d)};
}

FracQSeries operator+(const FracQSeries& a0, const FracQSeries& b0) {
    auto [a, b] = common_denom(a0, b0);
    FracQSeries r(a.denom(), std::min(a.prec(), b.prec()));
    for (auto& [e, v] : a.terms())
        if (e < r.prec()) r.set(e, v);
    for (auto& [e, v] : b.terms())
        if (e < r.prec()) r.set(e, r.coeff(e) + v);
    return r;
}

FracQSeries operator-(const FracQSeries& a, const FracQSeries& b) { return a + b.scaled(Rational(-1)); }

FracQSeries operator*(const FracQSeries& a0, const FracQSeries& b0) {
    auto [a, b] = common_denom(a0, b0);
    // a is exact below prec(a), so the product is trusted below
    // min(prec(a) + lead(b), prec(b) + lead(a))
    long long prec = std::min(a.prec() + b.lead(), b.prec() + a.lead());
    FracQSeries r(a.denom(), prec);
    for (auto& [e1, v1] : a.terms()) {
        if (e1 + b.lead() >= prec) break;
        for (auto& [e2, v2] : b.terms()) {
            long long e = e1 + e2;
            if (e >= prec) break;
            r.set(e, r.coeff(e) + v1 * v2);
        }
    }
    return r;
}

bool operator==(const FracQSeries& a0, const FracQSeries& b0) {
    auto [a, b] = common_denom(a0, b0);
    long long p = std::min(a.prec(), b.prec());
    return a.truncated(p).terms() == b.truncated(p).terms();
}

FracQSeries FracQSeries::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    FracQSeries base = *this;
    // 1 with the precision a power of this series can support
    FracQSeries r(denom_, prec_ + std::max<long long>(0, (e - 1)) * lead());
    r.set(0, Rational(1));
    long long left = e;
    while (left > 0) {
        if (left & 1) r = r * base;
        left >>= 1;
        if (left) base = base * base;
    }
    return r;
}

FracQSeries FracQSeries::inverse() const {
    if (coeffs_.empty()) throw std::domain_error("inverse of a series with no visible leading term");
    long long L = lead();
    Rational c0inv = coeffs_.begin()->second.inverse();
    // f known below prec, lead L: 1/f is trusted below prec - 2L
    long long prec = prec_ - 2 * L;
    FracQSeries r(denom_, prec);
    if (-L >= prec) return r;
    r.set(-L, c0inv);
    // (r * f)(k + L) = 0 for k > -L: solve for r(k) term by term
    for (long long k = -L + 1; k < prec; ++k) {
        Rational acc;
        for (auto it = std::next(coeffs_.begin()); it != coeffs_.end(); ++it) {
            long long idx = k + L - it->first;
            if (idx < -L) break;
            acc += it->second * r.coeff(idx);
        }
        r.set(k, -(acc * c0inv));
    }
    return r;
}

SeriesEval FracQSeries::eval(std::complex<double> tau) const { return numeric_eval(*this, tau); }

// ---------------------------------------------------------------------------
// JacobiQZSeries

Rational JacobiQZSeries::coeff(long long e, long long r2) const {
    if (e >= prec_) throw std::out_of_range("series coefficient beyond guaranteed precision");
    auto it = coeffs_.find({e, r2});
    return it == coeffs_.end() ? Rational() : it->second;
}

void JacobiQZSeries::set(long long e, long long r2, const Rational& v) {
    if (e >= prec_) return;
    if (v.is_zero())
        coeffs_.erase({e, r2});
    else
        coeffs_[{e, r2}] = v;
}

JacobiQZSeries JacobiQZSeries::with_denom(long long d) const {
    if (d % denom_ != 0) throw std::domain_error("denominator must be a multiple");
    long long s = d / denom_;
    JacobiQZSeries r(d, prec_ * s);
    for (auto& [k, v] : coeffs_) r.coeffs_[{k.first * s, k.second}] = v;
    return r;
}

JacobiQZSeries JacobiQZSeries::truncated(long long prec) const {
    JacobiQZSeries r(denom_, std::min(prec, prec_));
    for (auto& [k, v] : coeffs_) {
        if (k.first >= r.prec_) break;
        r.coeffs_[k] = v;
    }
    return r;
}

JacobiQZSeries JacobiQZSeries::scaled(const Rational& q) const {
    JacobiQZSeries r(denom_, prec_);
    if (q.is_zero()) return r;
    for (auto& [k, v] : coeffs_) r.coeffs_[k] = v * q;
    return r;
}

JacobiQZSeries JacobiQZSeries::zeta_negated() const {
    JacobiQZSeries r(denom_, prec_);
    for (auto& [k, v] : coeffs_) r.coeffs_[{k.first, -k.second}] = v;
    return r;
}

static std::pair<JacobiQZSeries, JacobiQZSeries> common_denom(const JacobiQZSeries& a,
                                                              const JacobiQZSeries& b) {
    long long d = lcm_ll(a.denom(), b.denom());
    return {a.with_denom(d), b.with_denom(d)};
}

JacobiQZSeries operator+(const JacobiQZSeries& a0, const JacobiQZSeries& b0) {
    auto [a, b] = common_denom(a0, b0);
    JacobiQZSeries r(a.denom(), std::min(a.prec(), b.prec()));
    for (auto& [k, v] : a.terms())
        if (k.first < r.prec()) r.set(k.first, k.second, v);
    for (auto& [k, v] : b.terms())
        if (k.first < r.prec()) r.set(k.first, k.second, r.coeff(k.first, k.second) + v);
    return r;
}

JacobiQZSeries operator-(const JacobiQZSeries& a, const JacobiQZSeries& b) {
    return a + b.scaled(Rational(-1));
}

JacobiQZSeries operator*(const JacobiQZSeries& a0, const JacobiQZSeries& b0) {
    auto [a, b] = common_denom(a0, b0);
    long long prec = std::min(a.prec() + b.lead(), b.prec() + a.lead());
    JacobiQZSeries r(a.denom(), prec);
    for (auto& [k1, v1] : a.terms()) {
        if (k1.first + b.lead() >= prec) break;
        for (auto& [k2, v2] : b.terms()) {
            long long e = k1.first + k2.first;
            if (e >= prec) continue;
            long long r2 = k1.second + k2.second;
            r.set(e, r2, r.coeff(e, r2) + v1 * v2);
        }
    }
    return r;
}

JacobiQZSeries JacobiQZSeries::mul_q(const FracQSeries& f) const {
    long long d = lcm_ll(denom_, f.denom());
    JacobiQZSeries a = with_denom(d);
    FracQSeries b = f.with_denom(d);
    long long prec = std::min(a.prec() + b.lead(), b.prec() + a.lead());
    JacobiQZSeries r(d, prec);
    for (auto& [k1, v1] : a.terms()) {
        if (k1.first + b.lead() >= prec) break;
        for (auto& [e2, v2] : b.terms()) {
            long long e = k1.first + e2;
            if (e >= prec) break;
            r.set(e, k1.second, r.coeff(e, k1.second) + v1 * v2);
        }
    }
    return r;
}

bool operator==(const JacobiQZSeries& a0, const JacobiQZSeries& b0) {
    auto [a, b] = common_denom(a0, b0);
    long long p = std::min(a.prec(), b.prec());
    return a.truncated(p).terms() == b.truncated(p).terms();
}

JacobiQZSeries JacobiQZSeries::pow(long long e) const {
    if (e < 0) throw std::domain_error("negative power of a two-variable series");
    JacobiQZSeries base = *this;
    JacobiQZSeries r(denom_, prec_ + std::max<long long>(0, (e - 1)) * lead());
    r.set(0, 0, Rational(1));
    long long left = e;
    while (left > 0) {
        if (left & 1) r = r * base;
        left >>= 1;
        if (left) base = base * base;
    }
    return r;
}

SeriesEval JacobiQZSeries::eval(std::complex<double> tau, std::complex<double> z) const {
    return numeric_eval(*this, tau, z);
}

// ---------------------------------------------------------------------------
// Constructions

FracQSeries eta(long long prec) {
    if (prec < 1) throw std::domain_error("eta: prec must be >= 1");
    FracQSeries r(24, prec);
    r.set(1, Rational(1));  // q^(1/24)
    // factors with 24n + 1 >= prec only touch exponents beyond the guarantee
    for (long long n = 1; 24 * n + 1 < prec; ++n) {
        FracQSeries f(24, prec);
        f.set(0, Rational(1));
        f.set(24 * n, Rational(-1));
        r = r * f;
    }
    return r;
}

JacobiQZSeries jacobi_theta(long long prec) {
    if (prec < 1) throw std::domain_error("jacobi_theta: prec must be >= 1");
    JacobiQZSeries r(8, prec);
    for (long long n = 0;; ++n) {
        long long e = (2 * n + 1) * (2 * n + 1);
        if (e >= prec) break;
        Rational sign((n % 2 == 0) ? 1 : -1);
        r.set(e, 2 * n + 1, sign);
        r.set(e, -(2 * n + 1), -sign);
    }
    return r;
}

FracQSeries eisenstein(int k, long long prec) {
    if (k != 4 && k != 6) throw std::domain_error("eisenstein: k must be 4 or 6");
    FracQSeries r(1, prec);
    r.set(0, Rational(1));
    long long factor = (k == 4) ? 240 : -504;
    for (long long n = 1; n < prec; ++n) {
        long long sigma = 0;
        for (long long d = 1; d <= n; ++d)
            if (n % d == 0) sigma += (k == 4) ? d * d * d : d * d * d * d * d;
        r.set(n, Rational(factor * sigma));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Numeric evaluation

SeriesEval numeric_eval(const FracQSeries& s, std::complex<double> tau) {
    if (tau.imag() <= 0) throw std::domain_error("numeric_eval: Im(tau) must be positive");
    SeriesEval out;
    double maxc = 1.0;
    for (auto& [e, v] : s.terms()) {
        out.value += v.to_double() * cexp2pi(double(e) / double(s.denom()) * tau.real()) *
                     std::exp(-TWO_PI * double(e) / double(s.denom()) * tau.imag());
        maxc = std::max(maxc, std::abs(v.to_double()));
    }
    double r = std::exp(-TWO_PI * tau.imag() / double(s.denom()));
    out.tail_bound = maxc * std::pow(r, double(s.prec())) / (1.0 - r);
    return out;
}

SeriesEval numeric_eval(const JacobiQZSeries& s, std::complex<double> tau, std::complex<double> z) {
    if (tau.imag() <= 0) throw std::domain_error("numeric_eval: Im(tau) must be positive");
    SeriesEval out;
    double maxc = 1.0, maxr = 0.0;
    for (auto& [k, v] : s.terms()) {
        double e = double(k.first) / double(s.denom());
        double rr = double(k.second) / 2.0;
        std::complex<double> term = v.to_double() * cexp2pi(e * tau.real() + rr * z.real()) *
                                    std::exp(-TWO_PI * (e * tau.imag() + rr * z.imag()));
        out.value += term;
        maxc = std::max(maxc, std::abs(v.to_double()));
        maxr = std::max(maxr, std::abs(rr));
    }
    double r = std::exp(-TWO_PI * tau.imag() / double(s.denom()));
    double zfac = std::exp(TWO_PI * maxr * std::abs(z.imag()));
    out.tail_bound = maxc * zfac * std::pow(r, double(s.prec())) / (1.0 - r);
    return out;
}

}  // namespace jtheta
