#include <doctest.h>

#include "jtheta/jacobi.hpp"

using namespace jtheta;

TEST_CASE("phi_10_1 leading coefficients and symmetry") {
    auto phi = construct_phi_10_1(81);
    CHECK(phi.weight() == 10);
    CHECK(phi.index() == 1);
    CHECK(phi.coeff(1, 1) == Rational(1));
    CHECK(phi.coeff(1, 0) == Rational(-2));
    for (auto& [n, r, v] : phi.entries()) CHECK(phi.coeff(n, -r) == v);
    CHECK_THROWS_AS(construct_phi_10_1(3), std::domain_error);
}

TEST_CASE("table invariance class storage") {
    JacobiFormCoeffs f(10, 1, 1, 40, true);
    f.set_entry(1, 1, Rational(1));
    // cusp forms reject nonzero coefficients at 4mn - r^2 <= 0
    CHECK_THROWS_AS(f.set_entry(2, 3, Rational(5)), std::domain_error);
    CHECK_NOTHROW(f.set_entry(2, -1, Rational(1)));  // D = 7, a fresh class
    // (3, 3) lands in the class of (1, 1): contradiction rejected, agreement kept
    JacobiFormCoeffs g(10, 1, 1, 40, true);
    g.set_entry(1, 1, Rational(1));
    CHECK_THROWS_AS(g.set_entry(3, 3, Rational(2)), std::domain_error);
    CHECK_NOTHROW(g.set_entry(3, 3, Rational(1)));
    CHECK(g.coeff(3, 3) == g.coeff(1, 1));
}

TEST_CASE("decomposition of phi_10_1") {
    auto phi = construct_phi_10_1(81);
    auto h = theta_decompose(phi);
    REQUIRE(h.comps.size() == 2);
    CHECK(h.comps[1].coeff(3) == Rational(1));    // q^(3/4) + ...
    CHECK(h.comps[0].coeff(4) == Rational(-2));   // -2q + ...
    CHECK(h.comps[1].lead() == 3);
    CHECK(h.comps[0].lead() == 4);
    // zero form decomposes to zero components
    JacobiFormCoeffs z(10, 2, 1, 30, true);
    auto hz = theta_decompose(z);
    for (auto& c : hz.comps) CHECK(c.is_zero());
}

TEST_CASE("recombination round trips") {
    auto phi = construct_phi_10_1(81);
    CHECK(theta_recombine(theta_decompose(phi), 81) == phi);
    for (long long ell : {2LL, 3LL, 5LL, 7LL}) {
        auto vi = V_ell(phi, ell);
        auto h = theta_decompose(vi);
        CHECK(theta_recombine(h, vi.prec_disc()) == vi);
        // and the component round trip
        auto h2 = theta_decompose(theta_recombine(h, vi.prec_disc()));
        REQUIRE(h2.comps.size() == h.comps.size());
        for (size_t mu = 0; mu < h.comps.size(); ++mu) CHECK(h2.comps[mu] == h.comps[mu]);
    }
    // single component h_0 = 1 at m = 1 recombines to Theta_{0,1}
    ThetaComponents one;
    one.index = 1;
    one.weight = 0;
    one.level = 1;
    one.prec_disc = 50;
    one.cusp = false;
    one.comps.assign(2, FracQSeries(4, 50));
    one.comps[0].set(0, Rational(1));
    auto t01 = theta_recombine(one, 50);
    for (long long n = 0; n * n * 4 < 50; ++n) CHECK(t01.coeff(n * n, 2 * n) == Rational(1));
    CHECK(t01.coeff(1, 0) == Rational(0));
    CHECK(t01.coeff(2, 2) == Rational(0));
}

TEST_CASE("V_ell coefficient rule") {
    auto phi = construct_phi_10_1(81);
    auto v3 = V_ell(phi, 3);
    CHECK(v3.index() == 3);
    CHECK(v3.weight() == 10);
    CHECK(v3.coeff(1, 1) == phi.coeff(3, 1));  // only d = 1 divides gcd(1,1,3)
    auto v2 = V_ell(phi, 2);
    CHECK(v2.coeff(1, 0) == phi.coeff(2, 0));  // the d = 2 branch is absent
    // d = ell branch present: c'(ell, ell) = c(ell^2, ell) + ell^(k-1) c(1, 1)
    long long ell = 2;
    long long dpow = 1;
    for (int i = 0; i < 9; ++i) dpow *= ell;
    CHECK(v2.coeff(2, 2) == phi.coeff(4, 2) + phi.coeff(1, 1) * Rational(dpow));
    // V of the zero form is zero
    JacobiFormCoeffs z(10, 1, 1, 30, true);
    CHECK(V_ell(z, 5).is_zero());
    CHECK_THROWS_AS(V_ell(phi, 6), std::domain_error);
}

TEST_CASE("nonvanishing reports") {
    auto phi = construct_phi_10_1(81);
    auto rep = check_primitive_nonvanishing(phi);
    CHECK(rep.has_coprime_mu);
    CHECK(rep.consistent);
    CHECK(rep.nonzero_mu == std::vector<long long>{0, 1});
}

TEST_CASE("nonvanishing reports for V images") {
    auto phi = construct_phi_10_1(81);
    for (long long ell : {3LL, 5LL, 7LL}) {
        auto repl = check_primitive_nonvanishing(V_ell(phi, ell), std::make_pair(1LL, ell));
        CHECK(repl.consistent);
        CHECK(repl.has_coprime_mu);
        bool found = false;
        for (long long mu : repl.nonzero_mu)
            if (std::gcd(mu, 2 * ell) == 1) found = true;
        CHECK(found);
    }
    JacobiFormCoeffs z(10, 1, 1, 30, true);
    CHECK_THROWS_AS(check_primitive_nonvanishing(z), std::domain_error);
}

TEST_CASE("theta transformation law numerics") {
    for (long long m : {1LL, 3LL}) {
        for (auto tau : {std::complex<double>(0, 1), std::complex<double>(0, 2)}) {
            for (auto z : {std::complex<double>(0, 0), std::complex<double>(0.3, 0.2)}) {
                auto r = theta_transform_check(m, 1, tau, z, 1e-8);
                CHECK(r.tail_ok);
                CHECK(r.max_residual < 1e-6);
            }
        }
    }
    // z = 0 reduces to a one-variable identity; tighter residual
    auto r0 = theta_transform_check(1, 1, {0.0, 1.0}, {0.0, 0.0}, 1e-10);
    CHECK(r0.max_residual < 1e-8);
    // N = 3 still converges at moderate height
    auto r3 = theta_transform_check(1, 3, {0.0, 2.0}, {0.0, 0.0}, 1e-6);
    CHECK(r3.max_residual < 1e-6);
}

TEST_CASE("component transformation relation") {
    auto h = theta_decompose(construct_phi_10_1(420));
    for (auto tau : {std::complex<double>(0, 1), std::complex<double>(0, 2)}) {
        auto r = component_transform_check(h, 1, tau, 1e-8);
        CHECK(r.tail_ok);
        CHECK(r.max_residual < 1e-6);
    }
}

TEST_CASE("witness matrices") {
    auto w = build_witness(3, 1, 11);
    CHECK(w.T(0, 0) == Rational(1));
    CHECK(w.T(0, 1) == Rational(1, 2));
    CHECK(w.T(1, 1) == Rational(3));
    CHECK(w.four_det() == Rational(11));
    CHECK(w.positive_definite());
    auto w23 = build_witness(3, 1, 23);
    CHECK(w23.four_det() == Rational(23));
    auto w5 = build_witness(5, 3, 11);
    CHECK(w5.T(0, 0) == Rational(1));
    CHECK(w5.T(0, 1) == Rational(3, 2));
    CHECK(w5.four_det() == Rational(11));
    CHECK_THROWS_AS(build_witness(3, 1, 10), std::domain_error);  // congruence fails
    CHECK_THROWS_AS(build_witness(4, 1, 11), std::domain_error);  // p not an odd prime
    CHECK_THROWS_AS(build_witness(3, 1, -13), std::domain_error);
}
