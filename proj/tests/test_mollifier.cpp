#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hmw/mollifier.hpp"

using namespace hmw;

TEST_CASE("small mollifiers by hand") {
    auto m1 = build_mollifier(1, true);
    CHECK(m1.Xi == 1);
    CHECK(m1.y_exact(1) == 1);
    CHECK(m1.x1_exact == 1);

    auto m2 = build_mollifier(2, true);
    CHECK(m2.Xi == mpq_class(3, 2));
    CHECK(m2.y_exact(1) == mpq_class(2, 3));
    CHECK(m2.y_exact(2) == mpq_class(-2, 3));
    CHECK(m2.x[1] == 1);
    CHECK(m2.x_at(1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(build_mollifier(0, true), DomainError);
    CHECK_THROWS_AS(build_mollifier(kExactScalarCap + 1, true), DomainError);
}

TEST_CASE("exact identities up to 1e4") {
    for (std::uint64_t M : {3ull, 10ull, 30ull, 100ull, 1000ull, 10000ull}) {
        auto c = build_mollifier(M, true);
        REQUIRE(c.exact_full);
        CHECK(c.x1_exact == 1);
        CHECK(c.x[1] == 1);
        CHECK(c.max_abs_x <= 1.0 + 1e-12);
        auto q = quadratic_forms(c, 1e6, 0);
        CHECK(q.has_exact);
        CHECK(q.M20_Xi_identity);
        CHECK(q.M20 * c.Xi == 1);
        // y-breve two ways, exactly.
        for (std::uint64_t h = 1; h <= c.ybreve_exact_cap; ++h) {
            CHECK(c.ybreve_exact_direct[h] == c.ybreve_exact_lambda[h]);
            CHECK(c.ybreve_direct[h] == doctest::Approx(c.ybreve_lambda[h]).epsilon(1e-9));
        }
    }
}

TEST_CASE("exact scalar mode beyond the full-map cap") {
    auto c = build_mollifier(100000, true);
    CHECK(c.exact);
    CHECK_FALSE(c.exact_full);
    CHECK(c.x1_exact == 1);
    CHECK(quadratic_forms(c, 1e6, 1).M20_Xi_identity);
}

TEST_CASE("Xi grows like log M") {
    double prev = 0.0;
    for (std::uint64_t M : {1000ull, 10000ull, 100000ull}) {
        auto c = build_mollifier(M, false);
        CHECK(c.Xi_d > prev);
        prev = c.Xi_d;
        // Squarefree reciprocal sum sits between (6/pi^2) log M and log M.
        CHECK(c.Xi_d < std::log(double(M)));
        CHECK(c.Xi_d > 6.0 / (kPi * kPi) * std::log(double(M)));
    }
}

TEST_CASE("three-way M20 delta agreement") {
    auto c = build_mollifier(200, true);
    for (int delta : {0, 1}) {
        auto q = quadratic_forms(c, 1e6, delta);
        const double ref = q.M20_delta_raw;
        CHECK(q.M20_delta_relaxed == doctest::Approx(ref).epsilon(1e-9));
        CHECK(q.M20_delta_simplified == doctest::Approx(ref).epsilon(1e-9));
        CHECK(q.M20_delta_mmm == doctest::Approx(ref).epsilon(1e-9));
    }
    auto big = build_mollifier(5000, false);
    auto qb = quadratic_forms(big, 1e6, 0);
    CHECK(std::isnan(qb.M20_delta_raw));
    CHECK(std::isfinite(qb.M20_delta_mmm));
}

TEST_CASE("combinatorial identities") {
    CHECK(combinatorial_identities(1).zero());
    CHECK(combinatorial_identities(12).defect1 == 0);
    for (std::uint64_t h = 1; h <= 3000; ++h) CHECK(combinatorial_identities(h).zero());
}

TEST_CASE("proportions") {
    using R = ProportionRegime;
    CHECK(proportion(0.5, R::unconditional_long) == doctest::Approx(1.0 / 3));
    CHECK(proportion_exact(1, R::unconditional_short) == mpq_class(1, 3));
    CHECK(proportion_exact(mpq_class(1, 10), R::unconditional_short) == mpq_class(3, 13));
    CHECK(proportion_exact(mpq_class(1, 2), R::rh_short, true) == mpq_class(1, 3));
    CHECK(proportion_exact(mpq_class(1, 2), R::rh_small_mu) == mpq_class(1, 3));
    CHECK(proportion(0.9, R::rh_long) == 0.5);
    CHECK_THROWS_AS(proportion(0.5, R::rh_short), DomainError);
    CHECK_THROWS_AS(proportion(0.3, R::rh_small_mu), DomainError);
    CHECK_THROWS_AS(proportion_exact(mpq_class(1, 2), R::rh_short), DomainError);
    // Continuity at the seam, approached from both sides.
    CHECK(proportion(0.5 + 1e-9, R::rh_short) == doctest::Approx(1.0 / 3).epsilon(1e-8));
    CHECK(proportion(0.5 - 1e-9, R::rh_small_mu) == doctest::Approx(1.0 / 3).epsilon(1e-8));
    for (double mu = 0.05; mu < 1.0; mu += 0.05)
        CHECK(proportion(mu, R::unconditional_short) == doctest::Approx(proportion_exact(mpq_class(mu), R::unconditional_short).get_d()));
    CHECK(parse_regime("rh_short") == R::rh_short);
    CHECK(std::string(regime_name(R::rh_small_mu)) == "rh_small_mu");
    CHECK_THROWS_AS(parse_regime("rh"), DomainError);
}

TEST_CASE("mollified moment main terms") {
    const double T = 1e8;
    const double Pi = std::sqrt(T), M = std::sqrt(T);
    auto m1 = mollified_moment_main(MollifiedKind::M1, T, Pi, M, 0);
    auto m2 = mollified_moment_main(MollifiedKind::M2, T, Pi, M, 0);
    CHECK(m1.nu == doctest::Approx(0.5));
    CHECK(m2.Delta == doctest::Approx(0.5));
    CHECK(m1.main * m1.main / (m2.main * m1.main) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK((2 * m1.nu + 1) / 4 == doctest::Approx(m2.Delta));
    auto bad = mollified_moment_main(MollifiedKind::M2, T, std::pow(T, 0.2), std::pow(T, 0.45), 1);
    CHECK_FALSE(bad.validity);
    auto ok = mollified_moment_main(MollifiedKind::M2, T, std::pow(T, 0.5), std::pow(T, 0.3), 1);
    CHECK(ok.validity);
}

TEST_CASE("coefficient export") {
    auto c = build_mollifier(30, true);
    const std::string path = "mollifier_test_coeffs.tsv";
    export_coefficients_tsv(c, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line[0] == '#');
    std::getline(in, line);
    CHECK(line == "h\tmu\ty_num\ty_den");
    int rows = 0;
    mpq_class total = 0;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::uint64_t h;
        int mu;
        std::string num, den;
        ss >> h >> mu >> num >> den;
        CHECK(mu == c.mu[h]);
        total += mpq_class(mpz_class(num), mpz_class(den)) * mpq_class(1, h) * mu;
        ++rows;
    }
    CHECK(rows == 19);
    CHECK(total == 1);
    std::remove(path.c_str());
}
