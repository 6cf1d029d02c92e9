// Exact arithmetic in cyclotomic fields of arbitrary order.
//
// A CycloNumber is stored canonically: order n and a coefficient vector of
// exact rationals in the power basis 1, z, ..., z^(phi(n)-1) of Q(zeta_n),
// reduced modulo the n-th cyclotomic polynomial. Two equal field elements
// always have identical coefficient vectors, so equality is a vector
// compare.
//
// A separate group-algebra layer (jtheta::groupalg) works with plain
// integer vectors indexed by exponents mod n and provides an exact zero
// test without full canonicalization; the large verification sweeps are
// built on it.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "jtheta/arith.hpp"
#include "jtheta/rational.hpp"

namespace jtheta {

class CycloNumber {
public:
    // Zero in the rationals (order 1).
    CycloNumber() : order_(1), coeffs_(1) {}

    static CycloNumber zero(long long order);
    static CycloNumber one(long long order);
    static CycloNumber from_rational(const Rational& q, long long order = 1);

    long long order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }
    bool is_rational() const;
    // The rational part; throws unless is_rational().
    Rational rational_value() const;

    friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b);
    friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b);
    friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
    // Field division; throws std::domain_error on zero divisor.
    friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b);
    CycloNumber operator-() const;
    friend bool operator==(const CycloNumber& a, const CycloNumber& b);
    friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

    CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
    CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
    CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

    CycloNumber scaled(const Rational& q) const;
    CycloNumber pow(long long e) const;

private:
    friend CycloNumber canonical_from_terms(long long, std::span<const std::pair<long long, Rational>>);
    long long order_;
    std::vector<Rational> coeffs_;
};

// Exact zeta_n^k (k taken mod n).
CycloNumber root_of_unity(long long n, long long k);

// Same field element re-expressed in the larger field of order n;
// requires order(a) | n.
CycloNumber change_order(const CycloNumber& a, long long n);

// Complex conjugate (the automorphism zeta -> zeta^-1).
CycloNumber conjugate(const CycloNumber& a);

// Multiplicative inverse, computed by modular inversion plus rational
// reconstruction and verified exactly before returning.
CycloNumber inverse(const CycloNumber& a);

// Numerical embedding zeta_n -> exp(2 pi i / n).
std::complex<double> embed(const CycloNumber& a);

// eps_m = 1 for m = 1 mod 4, i for m = 3 mod 4; m must be odd.
CycloNumber eps_factor(long long m);

// Exact square root of a positive integer, represented inside a
// cyclotomic field: sqrt of the odd square-free part is eps_c^-1 G(1,0,c),
// sqrt(2) = zeta_8 + zeta_8^-1.
CycloNumber cyclo_sqrt(long long c);

// Canonicalize a sparse group-algebra combination sum q_i zeta_n^{e_i}.
CycloNumber canonical_from_terms(long long n, std::span<const std::pair<long long, Rational>> terms);

// ---------------------------------------------------------------------------
// Matrices

using CycloMatrix = Eigen::Matrix<CycloNumber, Eigen::Dynamic, Eigen::Dynamic>;

// All-zero matrix with every entry carrying the given order.
CycloMatrix cyclo_matrix_zero(long long order, Eigen::Index rows, Eigen::Index cols);

// Rank over the cyclotomic field. Decided by exact Gaussian elimination
// with first-nonzero pivoting; a modular full-rank certificate (rank over
// F_q, q = 1 mod n, is a lower bound for the exact rank) short-circuits
// the common full-rank case.
int exact_rank(const CycloMatrix& m);

// Entry ((i*rowsB + k, j*colsB + l)) = A(i,j) * B(k,l).
CycloMatrix kronecker_product(const CycloMatrix& a, const CycloMatrix& b);

Eigen::MatrixXcd embed_matrix(const CycloMatrix& m);

// Float singular-value rank of the embedded matrix (test oracle).
int float_svd_rank(const CycloMatrix& m, double threshold = 1e-8);

// ---------------------------------------------------------------------------
// Group-algebra layer

namespace groupalg {

struct FoldWorkspace {
    std::vector<std::vector<long long>> bufs;
    std::vector<long long> dense;
};

// Exact test of sum_k w[k] zeta_n^k == 0, for dense w of length n.
// Reduces level by level through the prime-power tensor decomposition of
// Q(zeta_n); no rounding anywhere.
bool is_zero(long long n, std::span<const long long> w, FoldWorkspace& ws);

// Same test for a sparse combination sum_i v_i zeta_n^{e_i}.
bool is_zero_sparse(long long n, std::span<const std::pair<long long, long long>> terms,
                    FoldWorkspace& ws);

}  // namespace groupalg

// ---------------------------------------------------------------------------
// Modular evaluation contexts (rank certificates and fast scans)

namespace detail {

struct ModOrderCtx {
    long long n = 1;
    long long q = 0;               // prime, q = 1 mod n
    std::vector<long long> pow;    // pow[k] = omega^k mod q, omega of exact order n
};

// The idx-th deterministic modular context for order n (idx = 0, 1, 2...).
const ModOrderCtx& mod_order_ctx(long long n, int idx);

// Rank of a dense matrix over F_q (rows of equal length, entries in [0,q)).
int rank_mod_q(std::vector<std::vector<long long>> m, long long q);

bool is_prime_u64(unsigned long long x);

}  // namespace detail

}  // namespace jtheta

// Minimal Eigen scalar traits so CycloNumber can live in Eigen matrices.
namespace Eigen {
template <typename BinaryOp>
struct ScalarBinaryOpTraits<jtheta::CycloNumber, jtheta::CycloNumber, BinaryOp> {
    typedef jtheta::CycloNumber ReturnType;
};
template <>
struct NumTraits<jtheta::CycloNumber> {
    using Real = jtheta::CycloNumber;
    using NonInteger = jtheta::CycloNumber;
    using Literal = jtheta::CycloNumber;
    using Nested = jtheta::CycloNumber;
    enum {
        IsComplex = 1,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 64
    };
    static inline int digits10() { return 0; }
};
}  // namespace Eigen
