// Theta-transformation coefficient matrices over square classes, their
// Kronecker factorization, and the exact maximal-rank verification scan.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "jtheta/cyclotomic.hpp"
#include "jtheta/gauss.hpp"

namespace jtheta {

// Parameters (N, m1, m2, M = N/m1, Mbar, l) with N odd, m1 | N square-free,
// m2 square-free coprime to N, M*Mbar = 1 mod 4 m2, gcd(l, 2 m2) = 1.
struct EpsilonContext {
    long long N = 1;
    long long m1 = 1;
    long long m2 = 1;
    long long M = 1;
    long long Mbar = 1;
    long long l = 1;

    long long m() const { return m1 * m2; }
};

// Validates every invariant; throws std::domain_error on violation.
EpsilonContext make_epsilon_context(long long N, long long m1, long long m2, long long l = 1);

struct SquareClass {
    long long m1 = 1;
    long long m2 = 1;
    long long nu0 = 0;
    std::vector<long long> members;  // sorted residues nu mod 2 m1 m2 with nu^2 = nu0^2 mod 4 m1 m2
};

SquareClass square_class(long long m1, long long m2, long long nu0);

// 2^t' with t' = #{p | m1 m2 : p does not divide nu0}.
long long square_class_predicted_size(long long m1, long long m2, long long nu0);

// eps_{m1 m2}(nu, mu) from the defining character sum, as
// (1/4m) G(N, 2(nu - mu), 4m); exact, total.
CycloNumber epsilon_def(const EpsilonContext& ctx, long long nu, long long mu);

// Closed form: 0 unless m1 | (nu - mu), otherwise
// (1/(2 sqrt(m2))) (1+i) eps_M^-1 (4m2/M) e_{4m2}(-Mbar (nu-mu)^2 / m1^2).
// Agrees with epsilon_def exactly on every admissible input.
CycloNumber epsilon_closed(const EpsilonContext& ctx, long long nu, long long mu);

// Class matrix M_{nu0}: rows over the square class of nu0 (sorted), columns
// over units mod 2 m1 m2 (increasing), entry e_{4m2}(l (nu-mu)^2 / m1^2)
// when m1 | (nu - mu) and 0 otherwise. Requires gcd(nu0, m1) = 1.
CycloMatrix build_class_matrix(const EpsilonContext& ctx, long long nu0);

struct CrtFactors {
    CycloMatrix A;
    CycloMatrix B;
    // kron(A,B)(i, j) == M(row_perm[i], col_perm[j])
    std::vector<long long> row_perm;
    std::vector<long long> col_perm;
    long long split_prime = 0;
};

// Tensor factorization of the class matrix along one prime of m1 (0/1
// selector factor) or of m2 (dense character factor with twisted l).
CrtFactors crt_factorize(const EpsilonContext& ctx, long long nu0, long long split_prime);

// exact_rank(build_class_matrix) == |square class|.
bool verify_max_rank(const EpsilonContext& ctx, long long nu0);

// ---------------------------------------------------------------------------
// Scan drivers

struct ScanOptions {
    long long max_index = 105;
    std::vector<long long> levels;     // N list; empty = all odd square-free <= max_index
    bool include_even_m2 = false;
    int jobs = 1;
    bool crt_check = true;
    long long api_sample_stride = 101;  // every k-th rank cell re-checked through the public ops
};

struct ScanFailure {
    long long m1 = 0, m2 = 0, nu0 = 0, l = 0;
    long long rows = 0, rank = 0;
    std::string reason;
};

struct SplitSummary {
    long long m1 = 0, m2 = 0;
    long long classes = 0;
    long long l_count = 0;
    long long cells = 0;
    long long rank_checks = 0;
    bool partition_ok = true;
    std::vector<long long> admitting_levels;
};

struct ScanReport {
    long long max_index = 0;
    bool include_even_m2 = false;
    long long cells = 0;
    long long passes = 0;
    long long rank_checks = 0;
    long long crt_checks = 0;
    long long crt_failures = 0;
    long long api_cross_checks = 0;
    bool partition_ok = true;
    std::vector<ScanFailure> failures;  // capped at 64
    std::vector<SplitSummary> splits;
    bool all_pass() const { return failures.empty() && crt_failures == 0 && partition_ok; }
};

// The maximal-rank scan: every square-free index m1*m2 up to max_index,
// every admissible split, every class representative nu0 with
// gcd(nu0, m1) = 1, every unit l mod 4 m2.
ScanReport scan_max_rank(const ScanOptions& opt);

// ---------------------------------------------------------------------------
// Epsilon identity sweep (definition vs closed form, and the vanishing property)

struct EpsilonSweepReport {
    long long N_max = 0, m2_max = 0;
    long long combos = 0;
    long long diffs_checked = 0;
    long long pairs_checked = 0;
    long long vanishing_pairs = 0;
    long long api_cross_checks = 0;
    std::vector<std::array<long long, 4>> identity_failures;  // (N, m1, m2, d)
    std::vector<std::array<long long, 4>> vanishing_failures;     // (N, m1, m2, d)
    bool all_pass() const { return identity_failures.empty() && vanishing_failures.empty(); }
};

// For every odd N <= N_max, square-free m1 | N, square-free m2 <= m2_max
// coprime to N: checks epsilon_def == epsilon_closed exactly for all
// (nu, mu), and epsilon = 0 whenever gcd(nu, m1) > 1, gcd(mu, 2 m1 m2) = 1.
EpsilonSweepReport epsilon_sweep(long long N_max, long long m2_max, bool include_even_m2 = true,
                                 long long api_sample_stride = 37);

}  // namespace jtheta
