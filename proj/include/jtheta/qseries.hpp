// Truncated formal expansions in fractional powers of q (and the elliptic
// variable) with exact rational coefficients. Exponents are integers over
// an explicit denominator; precision is a guarantee threshold: every
// operation computes how far its result can be trusted.
#pragma once

#include <complex>
#include <map>
#include <utility>

#include "jtheta/rational.hpp"

namespace jtheta {

struct SeriesEval {
    std::complex<double> value{0.0, 0.0};
    double tail_bound = 0.0;
    bool within(double tol) const { return tail_bound <= tol; }
};

// One-variable series: sum of coeff(e) q^(e/denom) over stored e < prec.
class FracQSeries {
public:
    FracQSeries() = default;
    FracQSeries(long long denom, long long prec) : denom_(denom), prec_(prec) {
        if (denom < 1) throw std::domain_error("series denominator must be positive");
    }

    long long denom() const { return denom_; }
    long long prec() const { return prec_; }
    const std::map<long long, Rational>& terms() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    // Lowest possibly-nonzero exponent (prec when zero up to prec).
    long long lead() const { return coeffs_.empty() ? prec_ : coeffs_.begin()->first; }

    // Coefficient of q^(e/denom). Throws beyond the guaranteed precision.
    Rational coeff(long long e) const;

    void set(long long e, const Rational& v);

    // Re-expresses the series over a denominator multiple.
    FracQSeries with_denom(long long d) const;
    FracQSeries truncated(long long prec) const;
    FracQSeries scaled(const Rational& q) const;
    FracQSeries shifted(long long e) const;  // multiply by q^(e/denom)

    friend FracQSeries operator+(const FracQSeries& a, const FracQSeries& b);
    friend FracQSeries operator-(const FracQSeries& a, const FracQSeries& b);
    friend FracQSeries operator*(const FracQSeries& a, const FracQSeries& b);
    friend bool operator==(const FracQSeries& a, const FracQSeries& b);

    FracQSeries pow(long long e) const;
    // Multiplicative inverse; requires an invertible leading coefficient.
    FracQSeries inverse() const;

    SeriesEval eval(std::complex<double> tau) const;

private:
    long long denom_ = 1;
    long long prec_ = 0;
    std::map<long long, Rational> coeffs_;
};

// Two-variable series: coeff(e, r2) q^(e/denom) zeta^(r2/2) with zeta = e(z).
class JacobiQZSeries {
public:
    JacobiQZSeries() = default;
    JacobiQZSeries(long long denom, long long prec) : denom_(denom), prec_(prec) {
        if (denom < 1) throw std::domain_error("series denominator must be positive");
    }

    long long denom() const { return denom_; }
    long long prec() const { return prec_; }
    const std::map<std::pair<long long, long long>, Rational>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    long long lead() const { return coeffs_.empty() ? prec_ : coeffs_.begin()->first.first; }

    Rational coeff(long long e, long long r2) const;
    void set(long long e, long long r2, const Rational& v);

    JacobiQZSeries with_denom(long long d) const;
    JacobiQZSeries truncated(long long prec) const;
    JacobiQZSeries scaled(const Rational& q) const;
    JacobiQZSeries zeta_negated() const;  // z -> -z

    friend JacobiQZSeries operator+(const JacobiQZSeries& a, const JacobiQZSeries& b);
    friend JacobiQZSeries operator-(const JacobiQZSeries& a, const JacobiQZSeries& b);
    friend JacobiQZSeries operator*(const JacobiQZSeries& a, const JacobiQZSeries& b);
    JacobiQZSeries mul_q(const FracQSeries& f) const;
    friend bool operator==(const JacobiQZSeries& a, const JacobiQZSeries& b);

    JacobiQZSeries pow(long long e) const;

    SeriesEval eval(std::complex<double> tau, std::complex<double> z) const;

private:
    long long denom_ = 1;
    long long prec_ = 0;
    std::map<std::pair<long long, long long>, Rational> coeffs_;
};

// Dedekind eta: q^(1/24) prod (1 - q^n); denominator 24, guaranteed below
// prec (in 1/24 steps).
FracQSeries eta(long long prec);

// Odd Jacobi theta sum_n (-1)^n q^((2n+1)^2/8) zeta^((2n+1)/2); denominator 8.
JacobiQZSeries jacobi_theta(long long prec);

// Normalized Eisenstein series E4 or E6, denominator 1.
FracQSeries eisenstein(int k, long long prec);

SeriesEval numeric_eval(const FracQSeries& s, std::complex<double> tau);
SeriesEval numeric_eval(const JacobiQZSeries& s, std::complex<double> tau, std::complex<double> z);

}  // namespace jtheta
