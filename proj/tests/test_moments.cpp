#include <cmath>

#include "doctest.h"
#include "hmw/moments.hpp"

using namespace hmw;

TEST_CASE("gamma_delta") {
    CHECK(gamma_delta(1) - gamma_delta(0) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(gamma_delta(0) == doctest::Approx(-5.36248197527200004).epsilon(1e-14));
    for (int d : {0, 1}) CHECK(std::abs(gamma_delta(d) - gamma_delta_digamma(d)) < 1e-12);
}

TEST_CASE("divisor_sums") {
    auto one = divisor_sums(1);
    CHECK(one.Sigma == 1);
    CHECK(one.SigmaBreve == 0.0);
    CHECK(one.SigmaBreveExact.empty());
    CHECK(divisor_sums(6).Sigma == 2);
    auto four = divisor_sums(4);
    CHECK(four.SigmaBreve == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(four.SigmaBreveExact.size() == 1);
    CHECK(four.SigmaBreveExact.at(2) == 1);
    auto two = divisor_sums(2);
    CHECK(two.Sigma == mpq_class(3, 2));
    CHECK(two.SigmaBreve == doctest::Approx(std::log(2.0) / 2).epsilon(1e-15));
    for (std::uint64_t m = 1; m <= 300; ++m) {
        auto d = divisor_sums(m);
        CHECK(eval_prime_log_map(d.SigmaBreveExact) == doctest::Approx(d.SigmaBreve).epsilon(1e-12));
    }
}

TEST_CASE("diagonal first moment") {
    MomentParams p;
    p.T = 1e4;
    const auto r = diagonal_first(p);
    CHECK(std::fabs(r.numeric / r.main_term - 1.0) <= 5.0 * std::log(p.T) / std::sqrt(p.T));

    MomentParams q;
    q.T = 2000.0;
    q.m = 2;
    const auto r2 = diagonal_first(q);
    CHECK(r2.main_term == 0.0);
    CHECK(std::fabs(r2.numeric) <= 10.0 * q.pi_value() * std::pow(q.T, 0.05) / std::sqrt(2.0));

    MomentParams a, b;
    a.T = b.T = 3000.0;
    a.Pi = 60.0;
    b.Pi = 120.0;
    CHECK(diagonal_first(b).numeric / diagonal_first(a).numeric == doctest::Approx(2.0).epsilon(0.01));

    MomentParams bad;
    bad.T = 100.0;
    bad.m = 200;
    CHECK_THROWS_AS(diagonal_first(bad), DomainError);
}

TEST_CASE("diagonal second moment main terms") {
    const double k = 2.0 / (kPi * std::sqrt(kPi));
    for (int delta : {0, 1}) {
        MomentParams p;
        p.T = 2000.0;
        p.delta = delta;
        const double P = p.pi_value(), T = p.T;
        const double g = gamma_delta(delta);
        const auto r11 = diagonal_second(p);
        CHECK(r11.main_term == doctest::Approx(k * P * T * (std::log(T) + g)).epsilon(1e-13));
        CHECK(std::fabs(r11.numeric / r11.main_term - 1.0) <= 10.0 / std::log(T));

        p.m1 = p.m2 = 2;
        CHECK(diagonal_second(p).main_term ==
              doctest::Approx(k * P * T * ((std::log(T) + g) * 1.5 - std::log(2.0))).epsilon(1e-13));

        p.m1 = 1;
        CHECK(diagonal_second(p).main_term ==
              doctest::Approx(k / std::sqrt(2.0) * P * T * (std::log(T / 2.0) + g)).epsilon(1e-13));
    }
}

TEST_CASE("diagonal second moment convergence") {
    double prev = 1e9;
    for (double T : {1e3, 3e3}) {
        MomentParams p;
        p.T = T;
        p.threads = 4;
        const auto r0 = diagonal_second(p);
        const double e0 = std::fabs(r0.numeric / r0.main_term - 1.0);
        CHECK(e0 < prev);
        prev = e0;
        p.delta = 1;
        const auto r1 = diagonal_second(p);
        CHECK(std::fabs(r1.numeric / r1.main_term - 1.0) < 1e-3);
    }
}

TEST_CASE("off-diagonal sums") {
    MomentParams p;
    p.T = 2000.0;
    p.Pi = 100.0;
    for (int sign : {1, -1}) {
        const auto r = offdiag_geometric(p, sign, p.T);
        CHECK(r.c_max == 0);
        CHECK(r.value == cplx(0.0));
    }
    p.m = 3;
    p.threads = 4;
    const auto r = offdiag_geometric(p, -1, p.T, Parity::plus_h);
    CHECK(r.c_max >= 1);
    CHECK(r.c_max <= 3);
    CHECK(std::isfinite(std::abs(r.value)));
    CHECK(std::isfinite(r.bound_ratio));
    p.T = 3000.0;
    CHECK_THROWS_AS(offdiag_geometric(p, 1, 100.0), DomainError);
}

TEST_CASE("Eisenstein terms") {
    MomentParams p;
    p.T = 2000.0;
    p.Pi = 100.0;
    const auto e1 = eisenstein_term(1, p);
    CHECK(std::abs(e1.value) <= 20.0 * p.Pi * std::log(p.T));
    const auto e2 = eisenstein_term(2, p);
    CHECK(e2.value.real() >= 0.0);
    CHECK(std::abs(e2.value.imag()) <= 1e-8 * std::max(1.0, e2.value.real()));
    CHECK_THROWS_AS(eisenstein_term(3, p), DomainError);
}

TEST_CASE("unsmoothing") {
    const double T = 1e4, Pi = 50.0;
    CHECK(unsmooth_weight(T, Pi, 8 * Pi, T) >= 1.0 - 1e-12);
    const double H = 2000.0;
    CHECK(unsmooth_weight(T, Pi, H, T + H) == doctest::Approx(0.5 * std::erf(2 * H / Pi)).epsilon(1e-12));
    // Total mass 2H by Simpson's rule.
    const double a = T - H - 12 * Pi, b = T + H + 12 * Pi;
    const int n = 20000;
    const double h = (b - a) / n;
    double s = unsmooth_weight(T, Pi, H, a) + unsmooth_weight(T, Pi, H, b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * unsmooth_weight(T, Pi, H, a + i * h);
    CHECK(s * h / 3.0 == doctest::Approx(2 * H).epsilon(1e-8));
    CHECK_THROWS_AS(unsmooth_weight(T, Pi, 10.0, T), DomainError);

    CHECK(unsmoothed_long_interval(UnsmoothedKind::first, T, 0) == doctest::Approx(T * T / (kPi * kPi)));
    const double s1 = unsmoothed_long_interval(UnsmoothedKind::second, 1e6, 0);
    const double s2 = unsmoothed_long_interval(UnsmoothedKind::second, 2e6, 0);
    // Coefficient of T^2 log T read off from two evaluations.
    const double lead = (s2 / 4e12 - s1 / 1e12) / std::log(2.0);
    CHECK(lead == doctest::Approx(1.0 / (2 * kPi * kPi)).epsilon(1e-10));
    for (int d : {0, 1}) {
        const double L = unsmoothed_long_interval(UnsmoothedKind::second, T, d);
        CHECK(unsmoothed_dyadic_sum(T, d) == doctest::Approx(L).epsilon(1e-10));
    }
    CHECK(unsmoothed_main_terms(UnsmoothedKind::first, T, 100.0, 0) == doctest::Approx(4.0 / (kPi * kPi) * 100.0 * T));
}
