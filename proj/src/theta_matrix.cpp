#include "jtheta/theta_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <thread>

namespace jtheta {

namespace {

std::vector<long long> units_mod(long long k) {
    std::vector<long long> u;
    for (long long x = 0; x < k; ++x)
        if (std::gcd(x, k) == 1) u.push_back(x);
    if (k == 1) u.push_back(0);
    return u;
}

std::vector<long long> odd_square_free_upto(long long x) {
    std::vector<long long> v;
    for (long long m = 1; m <= x; m += 2)
        if (is_square_free(m)) v.push_back(m);
    return v;
}

// Exponent-level class matrix: entry -1 encodes zero, otherwise the entry
// is e_order(expo) with order = 4*m2.
struct ExpMatrix {
    long long order = 4;
    std::vector<long long> rows_nu;
    std::vector<long long> cols_mu;
    std::vector<std::vector<long long>> expo;
};

ExpMatrix class_matrix_exponents(long long m1, long long m2, long long l, long long nu0) {
    ExpMatrix em;
    em.order = 4 * m2;
    long long two_m = 2 * m1 * m2;
    SquareClass sc = square_class(m1, m2, nu0);
    em.rows_nu = sc.members;
    em.cols_mu = units_mod(two_m);
    em.expo.assign(em.rows_nu.size(), std::vector<long long>(em.cols_mu.size(), -1));
    for (size_t i = 0; i < em.rows_nu.size(); ++i) {
        for (size_t j = 0; j < em.cols_mu.size(); ++j) {
            long long d = em.rows_nu[i] - em.cols_mu[j];
            if (d % m1 != 0) continue;
            long long dd = d / m1;
            em.expo[i][j] = mod_norm(mulmod_ll(mod_norm(l, em.order), mulmod_ll(dd, dd, em.order), em.order), em.order);
        }
    }
    return em;
}

CycloMatrix matrix_from_exponents(const ExpMatrix& em) {
    CycloMatrix m = cyclo_matrix_zero(em.order, (Eigen::Index)em.rows_nu.size(),
                                      (Eigen::Index)em.cols_mu.size());
    for (size_t i = 0; i < em.rows_nu.size(); ++i)
        for (size_t j = 0; j < em.cols_mu.size(); ++j)
            if (em.expo[i][j] >= 0) m((Eigen::Index)i, (Eigen::Index)j) = root_of_unity(em.order, em.expo[i][j]);
    return m;
}

// Certified rank: the modular lower bound proves full rank when it reaches
// min(rows, cols); returns -1 when no certificate was obtained.
int certified_full_rank(const ExpMatrix& em) {
    if (em.rows_nu.empty() || em.cols_mu.empty()) return 0;
    int r0 = (int)std::min(em.rows_nu.size(), em.cols_mu.size());
    for (int idx = 0; idx < 3; ++idx) {
        const auto& ctx = detail::mod_order_ctx(em.order, idx);
        std::vector<std::vector<long long>> mm(em.rows_nu.size(),
                                               std::vector<long long>(em.cols_mu.size(), 0));
        for (size_t i = 0; i < em.rows_nu.size(); ++i)
            for (size_t j = 0; j < em.cols_mu.size(); ++j)
                if (em.expo[i][j] >= 0) mm[i][j] = ctx.pow[em.expo[i][j]];
        if (detail::rank_mod_q(std::move(mm), ctx.q) == r0) return r0;
    }
    return -1;
}

int exact_rank_of_exponents(const ExpMatrix& em) {
    int c = certified_full_rank(em);
    if (c >= 0) return c;
    return exact_rank(matrix_from_exponents(em));
}

struct ExpFactors {
    ExpMatrix A, B;
    std::vector<long long> row_perm, col_perm;
    long long p = 0;
    bool p_in_m1 = false;
};

ExpFactors crt_exponents(long long m1, long long m2, long long l, long long nu0, long long p) {
    long long m = m1 * m2;
    if (m % p != 0) throw std::domain_error("crt_factorize: split prime must divide the index");
    if (p % 2 == 0) throw std::domain_error("crt_factorize: split prime must be odd");
    ExpFactors f;
    f.p = p;
    f.p_in_m1 = (m1 % p == 0);
    long long mA = p;
    long long mB = 2 * (m / p);
    long long inv_mB = mod_inverse(mB % p, p);
    long long inv_p = mB > 1 ? mod_inverse(p % mB, mB) : 0;
    long long nu0p = mod_norm(nu0, 2 * m);
    long long nu0_a = mod_norm(nu0p % p * inv_mB, p);
    long long nu0_b = mB > 1 ? mod_norm(nu0p % mB * inv_p, mB) : 0;

    // A factor
    f.A.rows_nu = {nu0_a, mod_norm(-nu0_a, p)};
    std::sort(f.A.rows_nu.begin(), f.A.rows_nu.end());
    f.A.rows_nu.erase(std::unique(f.A.rows_nu.begin(), f.A.rows_nu.end()), f.A.rows_nu.end());
    for (long long x = 1; x < p; ++x) f.A.cols_mu.push_back(x);
    f.A.expo.assign(f.A.rows_nu.size(), std::vector<long long>(f.A.cols_mu.size(), -1));
    if (f.p_in_m1) {
        // 0/1 selector: nonzero iff p | (nu' - mu')
        f.A.order = 1;
        for (size_t i = 0; i < f.A.rows_nu.size(); ++i)
            for (size_t j = 0; j < f.A.cols_mu.size(); ++j)
                if (mod_norm(f.A.rows_nu[i] - f.A.cols_mu[j], p) == 0) f.A.expo[i][j] = 0;
        f.B = class_matrix_exponents(m1 / p, m2, l, nu0_b);
    } else {
        // dense character factor e_p(l * (m2/p) * (nu' - mu')^2)
        f.A.order = p;
        long long m4 = m2 / p;
        for (size_t i = 0; i < f.A.rows_nu.size(); ++i)
            for (size_t j = 0; j < f.A.cols_mu.size(); ++j) {
                long long d = mod_norm(f.A.rows_nu[i] - f.A.cols_mu[j], p);
                f.A.expo[i][j] = mod_norm(l % p * (m4 % p) % p * (d * d % p), p);
            }
        f.B = class_matrix_exponents(m1, m4, mod_norm(l * p, 4 * m4), nu0_b);
    }

    // permutations back into the full matrix ordering
    ExpMatrix full = class_matrix_exponents(m1, m2, l, nu0);
    auto index_of = [](const std::vector<long long>& v, long long x) {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it == v.end() || *it != x) throw std::logic_error("crt_factorize: CRT recombination mismatch");
        return (long long)(it - v.begin());
    };
    long long two_m = 2 * m;
    for (long long a : f.A.rows_nu)
        for (long long b : f.B.rows_nu)
            f.row_perm.push_back(index_of(full.rows_nu, mod_norm(mB * a + p * b, two_m)));
    for (long long a : f.A.cols_mu)
        for (long long b : f.B.cols_mu)
            f.col_perm.push_back(index_of(full.cols_mu, mod_norm(mB * a + p * b, two_m)));
    return f;
}

// Entrywise check that kron(A, B) equals the permuted class matrix, done on
// exponents (exact: spikes agree iff exponents agree).
bool crt_reproduces(const ExpFactors& f, const ExpMatrix& full) {
    long long n = full.order;
    long long sa = n / f.A.order, sb = n / f.B.order;
    size_t rb = f.B.rows_nu.size(), cb = f.B.cols_mu.size();
    for (size_t ia = 0; ia < f.A.rows_nu.size(); ++ia)
        for (size_t ka = 0; ka < rb; ++ka)
            for (size_t ja = 0; ja < f.A.cols_mu.size(); ++ja)
                for (size_t la = 0; la < cb; ++la) {
                    long long ea = f.A.expo[ia][ja], eb = f.B.expo[ka][la];
                    long long want = (ea < 0 || eb < 0) ? -1 : mod_norm(ea * sa + eb * sb, n);
                    long long got = full.expo[f.row_perm[ia * rb + ka]][f.col_perm[ja * cb + la]];
                    if (want != got) return false;
                }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public operations

EpsilonContext make_epsilon_context(long long N, long long m1, long long m2, long long l) {
    if (N < 1 || N % 2 == 0) throw std::domain_error("epsilon context: N must be odd and positive");
    if (m1 < 1 || N % m1 != 0) throw std::domain_error("epsilon context: m1 must divide N");
    if (!is_square_free(m1)) throw std::domain_error("epsilon context: m1 must be square-free");
    if (m2 < 1 || !is_square_free(m2)) throw std::domain_error("epsilon context: m2 must be square-free");
    if (std::gcd(N, m2) != 1) throw std::domain_error("epsilon context: m2 must be coprime to N");
    if (std::gcd(N, 4 * m1 * m2) != m1) throw std::domain_error("epsilon context: gcd(N, 4 m1 m2) != m1");
    if (std::gcd(mod_norm(l, 4 * m2) == 0 ? 4 * m2 : mod_norm(l, 4 * m2), 2 * m2) != 1)
        throw std::domain_error("epsilon context: l must be a unit mod 4 m2");
    EpsilonContext ctx;
    ctx.N = N;
    ctx.m1 = m1;
    ctx.m2 = m2;
    ctx.M = N / m1;
    ctx.Mbar = mod_inverse(ctx.M % (4 * m2), 4 * m2);
    ctx.l = mod_norm(l, 4 * m2);
    return ctx;
}

SquareClass square_class(long long m1, long long m2, long long nu0) {
    long long m = m1 * m2;
    if (m < 1 || !is_square_free(m)) throw std::domain_error("square_class: m1*m2 must be square-free");
    SquareClass sc;
    sc.m1 = m1;
    sc.m2 = m2;
    sc.nu0 = mod_norm(nu0, 2 * m);
    long long four_m = 4 * m;
    long long t0 = mod_norm(sc.nu0 * sc.nu0, four_m);
    for (long long nu = 0; nu < 2 * m; ++nu)
        if (mod_norm(nu * nu, four_m) == t0) sc.members.push_back(nu);
    return sc;
}

long long square_class_predicted_size(long long m1, long long m2, long long nu0) {
    long long m = m1 * m2;
    nu0 = mod_norm(nu0, 2 * m);
    long long r = 1;
    for (auto& [p, e] : factorize(m).factors)
        if (nu0 % p != 0) r *= 2;
    return r;
}

CycloNumber epsilon_def(const EpsilonContext& ctx, long long nu, long long mu) {
    long long four_m = 4 * ctx.m();
    CycloNumber g = gauss_direct({ctx.N, 2 * (nu - mu), four_m});
    return g.scaled(Rational(1, four_m));
}

CycloNumber epsilon_closed(const EpsilonContext& ctx, long long nu, long long mu) {
    long long amb = lcm_ll(8, 4 * ctx.m());
    long long d = mod_norm(nu - mu, 2 * ctx.m());
    if (d % ctx.m1 != 0) return CycloNumber::zero(amb);
    long long dd = d / ctx.m1;
    long long fm2 = 4 * ctx.m2;
    long long e = mod_norm(-mulmod_ll(ctx.Mbar, mulmod_ll(dd, dd, fm2), fm2), fm2);
    // (4m2/M) as a Jacobi symbol; with the symbol inverted, (M/4m2), the
    // value disagrees with the defining sum (same issue as the c = 0 mod 4
    // case of the closed-form Gauss sum).
    int chi = jacobi_symbol(fm2, ctx.M);
    CycloNumber v = CycloNumber::one(amb) + root_of_unity(amb, amb / 4);  // 1 + i
    v = v * change_order(eps_factor(ctx.M), amb).pow(3);                  // eps_M^-1 = eps_M^3
    v = v * root_of_unity(amb, e * (amb / fm2));
    v = v * change_order(cyclo_sqrt(ctx.m2), amb);
    return v.scaled(Rational(chi, 2 * ctx.m2));
}

CycloMatrix build_class_matrix(const EpsilonContext& ctx, long long nu0) {
    if (std::gcd(mod_norm(nu0, 2 * ctx.m()), ctx.m1) != 1)
        throw std::domain_error("build_class_matrix: gcd(nu0, m1) must be 1");
    return matrix_from_exponents(class_matrix_exponents(ctx.m1, ctx.m2, ctx.l, nu0));
}

CrtFactors crt_factorize(const EpsilonContext& ctx, long long nu0, long long split_prime) {
    if (std::gcd(mod_norm(nu0, 2 * ctx.m()), ctx.m1) != 1)
        throw std::domain_error("crt_factorize: gcd(nu0, m1) must be 1");
    ExpFactors f = crt_exponents(ctx.m1, ctx.m2, ctx.l, mod_norm(nu0, 2 * ctx.m()), split_prime);
    CrtFactors out;
    out.A = matrix_from_exponents(f.A);
    out.B = matrix_from_exponents(f.B);
    out.row_perm = f.row_perm;
    out.col_perm = f.col_perm;
    out.split_prime = split_prime;
    return out;
}

bool verify_max_rank(const EpsilonContext& ctx, long long nu0) {
    long long nn = mod_norm(nu0, 2 * ctx.m());
    if (std::gcd(nn, ctx.m1) != 1) throw std::domain_error("verify_max_rank: gcd(nu0, m1) must be 1");
    CycloMatrix m = build_class_matrix(ctx, nn);
    long long rows = m.rows();
    return exact_rank(m) == rows;
}

// ---------------------------------------------------------------------------
// Theorem 1.1 scan

namespace {

struct SplitTask {
    long long m1, m2;
    std::vector<long long> admitting;
};

struct SplitResult {
    SplitSummary summary;
    long long cells = 0, passes = 0, rank_checks = 0;
    long long crt_checks = 0, crt_failures = 0, api_checks = 0;
    std::vector<ScanFailure> failures;
    bool partition_ok = true;
};

SplitResult scan_split(const SplitTask& task, const ScanOptions& opt, long long& api_counter) {
    SplitResult res;
    long long m1 = task.m1, m2 = task.m2, m = m1 * m2, two_m = 2 * m;
    res.summary.m1 = m1;
    res.summary.m2 = m2;
    res.summary.admitting_levels = task.admitting;

    auto ls = units_mod(4 * m2);
    res.summary.l_count = (long long)ls.size();

    // square classes over nu0 with gcd(nu0, m1) = 1, deduped by class
    std::vector<char> seen(two_m, 0);
    std::vector<std::vector<long long>> classes;
    bool partition_ok = true;
    for (long long nu0 = 0; nu0 < two_m; ++nu0) {
        if (std::gcd(nu0, m1) != 1) continue;
        if (seen[nu0]) continue;
        SquareClass sc = square_class(m1, m2, nu0);
        if ((long long)sc.members.size() != square_class_predicted_size(m1, m2, nu0)) {
            partition_ok = false;
            res.failures.push_back({m1, m2, nu0, -1, (long long)sc.members.size(),
                                    square_class_predicted_size(m1, m2, nu0), "cardinality != 2^t'"});
        }
        for (long long nu : sc.members) {
            if (std::gcd(nu, m1) != 1 || seen[nu]) partition_ok = false;
            seen[nu] = 1;
        }
        classes.push_back(sc.members);
    }
    for (long long nu = 0; nu < two_m; ++nu)
        if (std::gcd(nu, m1) == 1 && !seen[nu]) partition_ok = false;
    res.partition_ok = partition_ok;
    res.summary.partition_ok = partition_ok;
    res.summary.classes = (long long)classes.size();

    // split along the smallest odd prime; the 2-part of an even m2 cannot
    // be separated by this decomposition
    long long split_p = 0;
    for (auto& [p, e] : factorize(m).factors)
        if (p % 2 == 1) { split_p = p; break; }
    bool do_crt = opt.crt_check && split_p != 0 && factorize(m).factors.size() >= 2;

    for (auto& members : classes) {
        long long rep = members.front();
        // exponent template: entry (l * base) mod 4m2 with base = dd^2
        ExpMatrix base = class_matrix_exponents(m1, m2, 1, rep);
        long long rows = (long long)base.rows_nu.size();
        for (long long l : ls) {
            ExpMatrix em = base;
            if (l != 1) {
                for (auto& row : em.expo)
                    for (auto& e : row)
                        if (e >= 0) e = mod_norm(mulmod_ll(l, e, em.order), em.order);
            }
            int rank = exact_rank_of_exponents(em);
            bool ok = (rank == rows);
            ++res.rank_checks;
            res.cells += (long long)members.size();
            if (ok) {
                res.passes += (long long)members.size();
            } else {
                for (long long nu0 : members)
                    if (res.failures.size() < 64)
                        res.failures.push_back({m1, m2, nu0, l, rows, rank, "rank below row count"});
            }
            if (do_crt) {
                ExpFactors f = crt_exponents(m1, m2, l, rep, split_p);
                bool repro = crt_reproduces(f, em);
                int ra = exact_rank_of_exponents(f.A);
                int rb = exact_rank_of_exponents(f.B);
                ++res.crt_checks;
                if (!repro || ra * rb != rank) {
                    ++res.crt_failures;
                    if (res.failures.size() < 64)
                        res.failures.push_back({m1, m2, rep, l, rows, rank,
                                                repro ? "rank(A)rank(B) != rank" : "kron mismatch"});
                }
            }
            if (opt.api_sample_stride > 0 && (api_counter++ % opt.api_sample_stride) == 0) {
                // tie the engine to the public operations on a sample
                long long N = task.admitting.empty() ? m1 : task.admitting.front();
                EpsilonContext ctx = make_epsilon_context(N, m1, m2, l);
                bool api_ok = verify_max_rank(ctx, rep);
                ++res.api_checks;
                if (api_ok != ok && res.failures.size() < 64)
                    res.failures.push_back({m1, m2, rep, l, rows, rank, "engine/api disagreement"});
                if (do_crt) {
                    CrtFactors cf = crt_factorize(ctx, rep, split_p);
                    CycloMatrix full = build_class_matrix(ctx, rep);
                    CycloMatrix kron = kronecker_product(cf.A, cf.B);
                    bool same = true;
                    for (Eigen::Index i = 0; i < kron.rows() && same; ++i)
                        for (Eigen::Index j = 0; j < kron.cols() && same; ++j)
                            if (!(kron(i, j) == full(cf.row_perm[i], cf.col_perm[j]))) same = false;
                    if (!same && res.failures.size() < 64)
                        res.failures.push_back({m1, m2, rep, l, rows, rank, "api kron mismatch"});
                }
            }
        }
    }
    res.summary.cells = res.cells;
    res.summary.rank_checks = res.rank_checks;
    return res;
}

}  // namespace

ScanReport scan_max_rank(const ScanOptions& opt) {
    ScanReport rep;
    rep.max_index = opt.max_index;
    rep.include_even_m2 = opt.include_even_m2;
    std::vector<long long> levels = opt.levels;
    if (levels.empty()) levels = odd_square_free_upto(opt.max_index);
    for (long long N : levels)
        if (N < 1 || N % 2 == 0) throw std::domain_error("scan_max_rank: levels must be odd");

    std::vector<SplitTask> tasks;
    for (long long m = 1; m <= opt.max_index; ++m) {
        if (!is_square_free(m)) continue;
        for (long long m1 : square_free_divisors(m)) {
            if (m1 % 2 == 0) continue;
            long long m2 = m / m1;
            if (!opt.include_even_m2 && m2 % 2 == 0) continue;
            SplitTask t{m1, m2, {}};
            for (long long N : levels)
                if (N % m1 == 0 && std::gcd(N, m2) == 1) t.admitting.push_back(N);
            if (t.admitting.empty()) continue;
            tasks.push_back(std::move(t));
        }
    }

    std::vector<SplitResult> results(tasks.size());
    int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        long long api_counter = 0;
        for (size_t i = 0; i < tasks.size(); ++i) results[i] = scan_split(tasks[i], opt, api_counter);
    } else {
        std::atomic<size_t> next(0);
        auto worker = [&]() {
            long long api_counter = 0;
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= tasks.size()) break;
                results[i] = scan_split(tasks[i], opt, api_counter);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (auto& r : results) {
        rep.cells += r.cells;
        rep.passes += r.passes;
        rep.rank_checks += r.rank_checks;
        rep.crt_checks += r.crt_checks;
        rep.crt_failures += r.crt_failures;
        rep.api_cross_checks += r.api_checks;
        rep.partition_ok = rep.partition_ok && r.partition_ok;
        for (auto& f : r.failures)
            if (rep.failures.size() < 64) rep.failures.push_back(f);
        rep.splits.push_back(r.summary);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Epsilon identity sweep

namespace {

using SparseVec = std::vector<std::pair<long long, long long>>;

SparseVec sparse_mul(const SparseVec& a, const SparseVec& b, long long n) {
    std::map<long long, long long> acc;
    for (auto& [e1, v1] : a)
        for (auto& [e2, v2] : b) acc[(e1 + e2) % n] += v1 * v2;
    SparseVec r;
    for (auto& [e, v] : acc)
        if (v != 0) r.emplace_back(e, v);
    return r;
}

// m1 * chi * (1+i) * eps_M^-1 * sqrt(m2) as an integer group-algebra vector.
SparseVec closed_base_vector(long long m1, long long m2, long long M, long long n) {
    int chi = jacobi_symbol(4 * m2, M);
    SparseVec v{{0, m1 * (long long)chi}};
    SparseVec onepi{{0, 1}, {n / 4, 1}};
    v = sparse_mul(v, onepi, n);
    if (mod_norm(M, 4) == 3) v = sparse_mul(v, SparseVec{{3 * (n / 4), 1}}, n);  // times -i
    // sqrt(m2) = s * sqrt(2)^d2 * eps_f^-1 * sum zeta_f^(l^2)
    long long s = 1, fodd = 1;
    int two_odd = 0;
    for (auto& [p, e] : factorize(m2).factors) {
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2 == 1) {
            if (p == 2)
                two_odd = 1;
            else
                fodd *= p;
        }
    }
    if (s != 1) v = sparse_mul(v, SparseVec{{0, s}}, n);
    if (two_odd) v = sparse_mul(v, SparseVec{{n / 8, 1}, {7 * (n / 8), 1}}, n);
    if (fodd > 1) {
        SparseVec sq;
        std::map<long long, long long> cnt;
        for (long long l = 0; l < fodd; ++l) ++cnt[mod_norm(l * l, fodd) * (n / fodd)];
        for (auto& [e, c] : cnt) sq.emplace_back(e, c);
        v = sparse_mul(v, sq, n);
        if (mod_norm(fodd, 4) == 3) v = sparse_mul(v, SparseVec{{3 * (n / 4), 1}}, n);
    }
    return v;
}

}  // namespace

EpsilonSweepReport epsilon_sweep(long long N_max, long long m2_max, bool include_even_m2,
                                 long long api_sample_stride) {
    EpsilonSweepReport rep;
    rep.N_max = N_max;
    rep.m2_max = m2_max;
    groupalg::FoldWorkspace ws;
    long long combo_counter = 0;
    for (long long N = 1; N <= N_max; N += 2) {
        for (long long m1 : square_free_divisors(N)) {
            for (long long m2 = 1; m2 <= m2_max; ++m2) {
                if (!is_square_free(m2) || std::gcd(N, m2) != 1) continue;
                if (!include_even_m2 && m2 % 2 == 0) continue;
                ++rep.combos;
                long long m = m1 * m2, two_m = 2 * m, four_m = 4 * m;
                long long n = lcm_ll(8, four_m);
                long long sc = n / four_m;
                long long M = N / m1;
                long long fm2 = 4 * m2;
                long long Mbar = mod_inverse(M % fm2, fm2);
                SparseVec cbase = closed_base_vector(m1, m2, M, n);

                std::vector<char> def_zero(two_m), ident_ok(two_m);
                std::vector<std::pair<long long, long long>> terms;
                for (long long d = 0; d < two_m; ++d) {
                    terms.clear();
                    long long s = 0, delta = mod_norm(N + 2 * d, four_m), step = mod_norm(2 * N, four_m);
                    for (long long eta = 0; eta < two_m; ++eta) {
                        terms.emplace_back(s * sc, 1);
                        s += delta;
                        if (s >= four_m) s -= four_m;
                        delta += step;
                        if (delta >= four_m) delta -= four_m;
                    }
                    def_zero[d] = groupalg::is_zero_sparse(n, terms, ws) ? 1 : 0;
                    if (d % m1 != 0) {
                        ident_ok[d] = def_zero[d];
                    } else {
                        long long dd = d / m1;
                        long long e = mod_norm(-mulmod_ll(Mbar, mulmod_ll(dd, dd, fm2), fm2), fm2) * (n / fm2);
                        // 2m * eps_def(d) - m1 sqrt(m2) (1+i) eps_M^-1 chi zeta^e == 0
                        for (auto& [be, bv] : cbase) terms.emplace_back((be + e) % n, -bv);
                        ident_ok[d] = groupalg::is_zero_sparse(n, terms, ws) ? 1 : 0;
                    }
                    ++rep.diffs_checked;
                    if (!ident_ok[d] && rep.identity_failures.size() < 64)
                        rep.identity_failures.push_back({N, m1, m2, d});
                }
                for (long long nu = 0; nu < two_m; ++nu) {
                    bool nu_bad = std::gcd(nu, m1) > 1;
                    for (long long mu = 0; mu < two_m; ++mu) {
                        long long d = mod_norm(nu - mu, two_m);
                        ++rep.pairs_checked;
                        if (nu_bad && std::gcd(mu, two_m) == 1) {
                            ++rep.vanishing_pairs;
                            if (!def_zero[d] && rep.vanishing_failures.size() < 64)
                                rep.vanishing_failures.push_back({N, m1, m2, d});
                        }
                    }
                }
                if (api_sample_stride > 0 && (combo_counter++ % api_sample_stride) == 0) {
                    EpsilonContext ctx = make_epsilon_context(N, m1, m2, 1);
                    for (long long nu : {0LL, 1LL, m1 % two_m, (m1 + 1) % two_m}) {
                        for (long long mu : {0LL, 1LL}) {
                            if (!(epsilon_def(ctx, nu, mu) == epsilon_closed(ctx, nu, mu)) &&
                                rep.identity_failures.size() < 64)
                                rep.identity_failures.push_back({N, m1, m2, mod_norm(nu - mu, two_m)});
                            ++rep.api_cross_checks;
                        }
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace jtheta
