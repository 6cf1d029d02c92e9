// Jacobi-form coefficient tables, theta decomposition/recombination, the
// eta^18 theta^2 test form, the V_ell index-raising operator, the
// non-vanishing check for primitive theta components, numeric
// transformation-law verification, and witness-matrix arithmetic.
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "jtheta/qseries.hpp"
#include "jtheta/theta_matrix.hpp"

namespace jtheta {

// Coefficient table c(n, r) of a Jacobi form of weight k, index m. Values
// are stored under the canonical key (D, r mod 2m) with D = 4mn - r^2,
// which is exactly the invariance class forced by the theta expansion.
class JacobiFormCoeffs {
public:
    JacobiFormCoeffs() = default;
    JacobiFormCoeffs(long long weight, long long index, long long level, long long prec_disc,
                     bool cusp = true)
        : weight_(weight), index_(index), level_(level), prec_(prec_disc), cusp_(cusp) {
        if (index < 1) throw std::domain_error("jacobi form index must be positive");
    }

    long long weight() const { return weight_; }
    long long index() const { return index_; }
    long long level() const { return level_; }
    long long prec_disc() const { return prec_; }
    bool cusp() const { return cusp_; }
    bool is_zero() const { return table_.empty(); }

    // c(n, r); exact for 4 m n - r^2 < prec_disc, throws beyond.
    Rational coeff(long long n, long long r) const;

    // Insert c(n, r) = v; rejects entries that contradict an already stored
    // value of the same (D, r mod 2m) class.
    void set_entry(long long n, long long r, const Rational& v);

    // Canonical entries as (n, r, value) with r in [0, 2m).
    std::vector<std::tuple<long long, long long, Rational>> entries() const;

    const std::map<std::pair<long long, long long>, Rational>& table() const { return table_; }

    friend bool operator==(const JacobiFormCoeffs& a, const JacobiFormCoeffs& b);

private:
    long long weight_ = 0;
    long long index_ = 1;
    long long level_ = 1;
    long long prec_ = 0;
    bool cusp_ = true;
    std::map<std::pair<long long, long long>, Rational> table_;  // (D, rbar) -> value
};

struct ThetaComponents {
    long long index = 1;
    long long weight = 0;
    long long level = 1;
    long long prec_disc = 0;
    bool cusp = true;
    std::vector<FracQSeries> comps;  // 2m series, denominator 4m, exponent = D
};

// Split phi into its 2m theta components: h_mu carries c(n, r) for
// r = mu (mod 2m) at exponent D = 4mn - mu^2.
ThetaComponents theta_decompose(const JacobiFormCoeffs& phi);

// Multiply each h_mu by Theta_{mu,m} and sum; exact inverse of
// theta_decompose up to the precision bound.
JacobiFormCoeffs theta_recombine(const ThetaComponents& h, long long prec_disc);

// The weight-10 index-1 cusp form eta^18 theta^2 with c(1,1)=1, c(1,0)=-2.
JacobiFormCoeffs construct_phi_10_1(long long prec_disc);

// Index-raising operator: c'(n,r) = sum_{d | (n,r,ell)} d^(k-1) c(n ell/d^2, r/d).
JacobiFormCoeffs V_ell(const JacobiFormCoeffs& phi, long long ell);

struct NonvanishingReport {
    long long index = 1;
    long long prec_disc = 0;
    std::vector<long long> nonzero_mu;
    bool has_coprime_mu = false;  // some h_mu != 0 with gcd(mu, 2m) = 1
    bool has_alt_mu = false;      // some h_mu != 0 with gcd(mu, 2m) not dividing 2 m2
    bool split_supplied = false;
    long long m1 = 1, m2 = 1;
    bool consistent = false;
};

// Decompose and report which components are nonzero up to the precision
// bound, flagging whether a component with unit residue survives (or, for
// a supplied split, one whose residue class does not divide 2 m2).
NonvanishingReport check_primitive_nonvanishing(const JacobiFormCoeffs& phi,
                                                std::optional<std::pair<long long, long long>> split = {});

struct TransformCheckResult {
    double max_residual = 0.0;
    double max_tail_bound = 0.0;
    int comparisons = 0;
    bool tail_ok = true;
};

// Numeric check of the theta transformation law under gamma = [[1,0],[N,1]]
// at one sample point: both sides summed to the requested number of terms.
TransformCheckResult theta_transform_check(long long m, long long N, std::complex<double> tau,
                                           std::complex<double> z, double tail_tol, long long terms = 64);

// Numeric check of the component relation
// (-N tau + 1)^(-k+1/2) h_mu(tau / (-N tau + 1)) = sum_nu eps(nu,mu) h_nu(tau).
TransformCheckResult component_transform_check(const ThetaComponents& h, long long N,
                                               std::complex<double> tau, double tail_tol);

struct WitnessMatrix {
    Eigen::Matrix<Rational, 2, 2> T;
    long long p = 3, mu = 1, D = 11;
    Rational four_det() const;
    bool positive_definite() const;
};

// T = ((D + mu^2)/(4p), mu/2; mu/2, p); requires D > 0, D = -mu^2 mod 4p.
WitnessMatrix build_witness(long long p, long long mu, long long D);

}  // namespace jtheta
