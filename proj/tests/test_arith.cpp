#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "hmw/arith.hpp"

using namespace hmw;

TEST_CASE("sieve tables") {
    auto t = build_tables(10);
    const int expect[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1};
    for (int n = 1; n <= 10; ++n) CHECK(t.mobius[n] == expect[n - 1]);

    auto one = build_tables(1);
    CHECK(one.mobius[1] == 1);
    CHECK(one.totient[1] == 1);
    CHECK(one.von_mangoldt[1] == 0.0);

    auto t30 = build_tables(30);
    int sf = 0;
    for (int n = 1; n <= 30; ++n) sf += t30.mobius[n] * t30.mobius[n];
    CHECK(sf == 19);

    auto big = build_tables(5000);
    for (std::uint64_t n = 1; n <= 5000; ++n) {
        CHECK(big.mobius[n] == mobius_of(n));
        CHECK(big.totient[n] == totient_of(n));
        CHECK(big.divisor_count[n] == divisors(n).size());
    }
    CHECK_THROWS_AS(build_tables(100, 50), DomainError);
}

TEST_CASE("divisor_tau_nu") {
    CHECK(std::abs(divisor_tau_nu(1, {0.3, 2.0}) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(divisor_tau_nu(4, 0.0) - cplx(3.0)) < 1e-14);
    const cplx v = divisor_tau_nu(6, kI);
    CHECK(v.real() == doctest::Approx(1.39949917295941970).epsilon(1e-14));
    CHECK(std::abs(v.imag()) < 1e-14);
    for (std::uint64_t n = 1; n <= 60; ++n) CHECK(std::abs(divisor_tau_nu(n, {0.0, 3.7}).imag()) < 1e-12);
}

TEST_CASE("Hecke relation for tau_nu") {
    CHECK(hecke_tau_check(7, 1, {0.0, 2.0}) == 0.0);
    CHECK(hecke_tau_check(2, 2, {0.0, 0.7}) <= 1e-12);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> mn(1, 200);
    std::uniform_real_distribution<double> im(-10.0, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const cplx nu{0.0, im(rng)};
        for (int j = 0; j < 20; ++j) worst = std::max(worst, hecke_tau_check(mn(rng), mn(rng), nu));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("Kloosterman sums") {
    CHECK(kloosterman(1, 1, 2) == doctest::Approx(1.0));
    CHECK(kloosterman(1, 1, 3) == doctest::Approx(-1.0));
    CHECK(kloosterman(1, 1, 7) == doctest::Approx(2.04891733952230531).epsilon(1e-13));
    CHECK(kloosterman(2, 3, 35) == doctest::Approx(11.7653379491201967).epsilon(1e-13));
    CHECK(std::abs(kloosterman(5, 7, 64)) < 1e-12);
    for (std::int64_t c = 1; c <= 200; ++c) {
        CHECK(ramanujan(1, c) == doctest::Approx(mobius_of(c)).epsilon(1e-9));
        CHECK(kloosterman(0, 0, c) == doctest::Approx(double(totient_of(c))));
    }
    for (std::int64_t c = 1; c <= 150; ++c)
        for (std::int64_t m = -3; m <= 5; ++m)
            for (std::int64_t n = 0; n <= 5; ++n) {
                const double a = kloosterman(m, n, c), b = kloosterman_crt(m, n, c);
                CHECK(std::abs(a - b) <= 1e-9 * c);
                CHECK(std::abs(kloosterman(m, n, c) - kloosterman(n, m, c)) <= 1e-9 * c);
            }
}

TEST_CASE("Weil bound sweep") {
    CHECK(weil_check(1, 1, 3).ok);
    CHECK(weil_check(0, 0, 12).ok);
    double worst = 0.0;
    for (std::int64_t c = 1; c <= 500; ++c) {
        ModulusContext ctx(c);
        for (std::int64_t m = 1; m <= 50; m += 7)
            for (std::int64_t n = 1; n <= 50; n += 3) {
                auto w = weil_check(ctx, m, n);
                CHECK(w.ok);
                worst = std::max(worst, w.ratio);
            }
    }
    CHECK(worst <= 1.0);
}

TEST_CASE("variant Kloosterman sums") {
    CHECK(std::abs(variant_kloosterman(3, 5, 1, 2) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(variant_kloosterman(3, 5, 7, 2) - cplx(1.12348980185873353, 1.02261879187179413)) < 1e-12);
    CHECK(std::abs(variant_kloosterman(1, 1, 10, 3)) < 1e-12);
    CHECK(std::abs(variant_kloosterman(2, 9, 15, 1) - cplx(-2.45629520146761128, -0.45020202214891997)) < 1e-12);
    for (std::int64_t c = 1; c <= 100; ++c)
        for (std::int64_t q = 1; q <= 4; ++q)
            for (std::int64_t m = 0; m <= 3; ++m) {
                const cplx a = variant_kloosterman(m, 2, c, q), b = variant_kloosterman_alt(m, 2, c, q);
                CHECK(std::abs(a - b) <= 1e-10 * c);
            }
}

TEST_CASE("Luo identity") {
    CHECK(luo_identity_check(1, 1, 1) < 1e-14);
    CHECK(luo_identity_check(1, 1, 6) <= 1e-8 * 6);
    double worst = 0.0;
    for (std::int64_t c = 1; c <= 300; ++c)
        for (std::int64_t m = 1; m <= 20; m += 3)
            for (std::int64_t n = 1; n <= 20; n += 4) worst = std::max(worst, luo_identity_check(m, n, c));
    CHECK(worst <= 1e-7);
}

// R_q(n;c) = V_q(0, n; c): bounded by tau(c) on squarefree c, zero otherwise.
TEST_CASE("R_q divisor bound and support") {
    double worst = 0.0;
    for (std::int64_t c = 1; c <= 2000; ++c) {
        ModulusContext ctx(c);
        const bool sf = mobius_of(c) != 0;
        const double tau = static_cast<double>(divisors(c).size());
        for (std::int64_t q : {1, 2, 3})
            for (std::int64_t n : {1, -1}) {
                const double r = std::abs(variant_kloosterman(ctx, 0, n, q));
                if (sf) {
                    worst = std::max(worst, r / tau);
                    CHECK(r <= tau + 1e-9);
                } else {
                    CHECK(r <= 1e-9 * c);
                }
            }
    }
    CHECK(worst <= 1.0 + 1e-12);
}

TEST_CASE("Dirichlet characters") {
    for (std::int64_t c = 1; c <= 40; ++c) {
        auto chars = dirichlet_characters(c);
        CHECK(chars.size() == totient_of(c));
        int principal = 0;
        for (auto& chi : chars) {
            validate_character(chi);
            principal += chi.principal;
        }
        CHECK(principal == 1);
        // Column orthogonality: sum_chi chi(a) conj(chi(b)) = phi(c) [a = b] on units.
        for (std::int64_t a = 0; a < c; ++a)
            for (std::int64_t b = 0; b < c; ++b) {
                if (std::gcd(a, c) != 1 || std::gcd(b, c) != 1) continue;
                cplx s = 0.0;
                for (auto& chi : chars) s += chi.values[a] * std::conj(chi.values[b]);
                const double want = a == b ? double(totient_of(c)) : 0.0;
                CHECK(std::abs(s - want) < 1e-9);
            }
    }
    DirichletCharacter bad{5, {0, 1, 2, 1, 1}, false};
    CHECK_THROWS_AS(validate_character(bad), DomainError);
}

TEST_CASE("Gauss sums") {
    auto chars = dirichlet_characters(3);
    for (auto& chi : chars) {
        if (chi.principal) continue;
        auto g = gauss_sums(1, 1, 3, 1, chi);
        CHECK(std::abs(g.G - cplx(0.0, std::sqrt(3.0)) * (chi.values[1].real() > 0 ? 1.0 : -1.0)) < 1e-12);
    }
    for (std::int64_t c = 2; c <= 30; ++c)
        for (auto& chi : dirichlet_characters(c))
            if (chi.principal)
                for (std::int64_t q = 1; q <= 3; ++q) {
                    auto g = gauss_sums(2, 5, c, q, chi);
                    CHECK(std::abs(g.G - ramanujan(2, c)) < 1e-9);
                    CHECK(std::abs(g.Gq - variant_kloosterman(0, 5, c, q)) < 1e-9);
                }
}

// V_q(m, n; c) = (1/phi(c)) sum_chi G(m; chi) G_q(n; chi).
TEST_CASE("character expansion of V_q") {
    for (std::int64_t c : {3, 4, 5, 6, 8, 9, 12})
        for (std::int64_t q = 1; q <= 3; ++q)
            for (std::int64_t m = 1; m <= 4; ++m) {
                auto chars = dirichlet_characters(c);
                cplx s = 0.0;
                for (auto& chi : chars) {
                    auto g = gauss_sums(m, 1, c, q, chi);
                    s += g.G * g.Gq;
                }
                s /= double(chars.size());
                CHECK(std::abs(s - variant_kloosterman(m, 1, c, q)) < 1e-10);
            }
}

TEST_CASE("prime sums of V_q") {
    auto tab = build_tables(1'000'000);
    double theta = 0.0;
    for (auto p : tab.primes)
        if (p <= 1000) theta += std::log(double(p));
    CHECK(vq_prime_sum_oracle(1, 1, 1, 1, 1000.0, tab).real() == doctest::Approx(theta).epsilon(1e-12));

    const cplx a = vq_prime_sum_oracle(1, 1, 4, 1, 1000.0, tab);
    const cplx b = vq_prime_sum_characters(1, 1, 4, 1, 1000.0, tab);
    CHECK(std::abs(a - b) < 1e-6);
    for (std::int64_t c : {5, 7, 12, 30})
        for (std::int64_t q : {1, 2})
            CHECK(std::abs(vq_prime_sum_oracle(1, 1, c, q, 5000.0, tab) -
                           vq_prime_sum_characters(1, 1, c, q, 5000.0, tab)) < 1e-6);
}
