#include "hmw/mollifier.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>

#include "hmw/arith.hpp"
#include "hmw/parallel.hpp"

namespace hmw {

namespace {

std::vector<std::int8_t> mobius_sieve(std::uint64_t M, std::vector<std::uint32_t>& primes) {
    std::vector<std::int8_t> mu(M + 1, 1);
    std::vector<bool> composite(M + 1, false);
    mu[0] = 0;
    primes.clear();
    for (std::uint64_t i = 2; i <= M; ++i) {
        if (!composite[i]) {
            primes.push_back(static_cast<std::uint32_t>(i));
            mu[i] = -1;
        }
        for (std::uint32_t p : primes) {
            const std::uint64_t ip = i * p;
            if (ip > M) break;
            composite[ip] = true;
            if (i % p == 0) {
                mu[ip] = 0;
                break;
            }
            mu[ip] = static_cast<std::int8_t>(-mu[i]);
        }
    }
    return mu;
}

// sum of 1/h over terms[lo, hi) as P/Q with Q the product of the terms.
void split_sum(const std::vector<std::uint64_t>& terms, std::size_t lo, std::size_t hi, mpz_class& P,
               mpz_class& Q) {
    if (hi - lo == 1) {
        P = 1;
        Q = static_cast<unsigned long>(terms[lo]);
        return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    mpz_class P1, Q1, P2, Q2;
    split_sum(terms, lo, mid, P1, Q1);
    split_sum(terms, mid, hi, P2, Q2);
    P = P1 * Q2 + P2 * Q1;
    Q = Q1 * Q2;
}

void build_exact_full(MollifierCoeffs& c, const std::vector<std::uint32_t>& primes) {
    const std::uint64_t M = c.M;
    c.L = 1;
    for (std::uint32_t p : primes) c.L *= static_cast<unsigned long>(p);

    std::vector<mpz_class> Lover(M + 1);  // L/h for squarefree h
    c.XiNum = 0;
    for (std::uint64_t h = 1; h <= M; ++h) {
        if (c.mu[h] == 0) continue;
        mpz_divexact_ui(Lover[h].get_mpz_t(), c.L.get_mpz_t(), static_cast<unsigned long>(h));
        c.XiNum += Lover[h];
    }
    c.Xi = mpq_class(c.XiNum, c.L);
    c.Xi.canonicalize();

    // x_n = B_n / XiNum, B_n = sum_{h <= M/n} mu(h) mu(hn) L/h
    std::vector<mpz_class> B(M + 1);
    c.x.assign(M + 1, mpq_class(0));
    for (std::uint64_t n = 1; n <= M; ++n) {
        if (c.mu[n] == 0) continue;
        for (std::uint64_t h = 1; h * n <= M; ++h) {
            const int s = c.mu[h] * c.mu[h * n];
            if (s > 0) B[n] += Lover[h];
            else if (s < 0) B[n] -= Lover[h];
        }
        c.x[n] = mpq_class(B[n], c.XiNum);
        c.x[n].canonicalize();
    }
    c.x1_exact = c.x[1];
    c.M20_exact = 0;
    {
        // sum_h y_h^2 / h with y_h = mu(h) L / XiNum: numerator sum_h L^2/h over XiNum^2
        mpz_class num = 0;
        for (std::uint64_t h = 1; h <= M; ++h)
            if (c.mu[h] != 0) num += Lover[h];
        c.M20_exact = mpq_class(num * c.L, c.XiNum * c.XiNum);
        c.M20_exact.canonicalize();
    }

    c.ybreve_exact_cap = std::min<std::uint64_t>(M, kYbreveExactCap);
    c.ybreve_den = c.XiNum * c.L;
    c.ybreve_exact_direct.assign(c.ybreve_exact_cap + 1, {});
    c.ybreve_exact_lambda.assign(c.ybreve_exact_cap + 1, {});
    for (std::uint64_t h = 1; h <= c.ybreve_exact_cap; ++h) {
        if (c.mu[h] == 0) continue;
        auto& direct = c.ybreve_exact_direct[h].num;
        for (std::uint64_t n = 2; h * n <= M; ++n) {
            if (c.mu[h * n] == 0 || B[h * n] == 0) continue;
            const mpz_class term = B[h * n] * Lover[n];
            for (auto [p, e] : factorize(n)) direct[p] += term;
        }
        auto& lam = c.ybreve_exact_lambda[h].num;
        for (std::uint32_t p : primes) {
            if (h * p > M) break;
            if (c.mu[h * p] == 0) continue;
            mpz_class term = c.L * Lover[p];
            if (c.mu[h * p] < 0) term = -term;
            lam[p] += term;
        }
        for (auto* m : {&direct, &lam})
            for (auto it = m->begin(); it != m->end();)
                it = (it->second == 0) ? m->erase(it) : std::next(it);
    }
}

void build_exact_scalars(MollifierCoeffs& c) {
    std::vector<std::uint64_t> terms;
    for (std::uint64_t h = 1; h <= c.M; ++h)
        if (c.mu[h] != 0) terms.push_back(h);
    mpz_class P, Q;
    split_sum(terms, 0, terms.size(), P, Q);
    c.Xi = mpq_class(P, Q);
    c.Xi.canonicalize();
    // x_1 = sum_h mu(h)^2/h / Xi, M20 = sum_h mu(h)^2/h / Xi^2, both on the same squarefree support
    const mpq_class S = c.Xi;
    c.x1_exact = S / c.Xi;
    c.M20_exact = S / (c.Xi * c.Xi);
}

}  // namespace

mpq_class MollifierCoeffs::y_exact(std::uint64_t h) const {
    if (!exact) throw DomainError("y_exact: coefficients were built in floating mode");
    if (h > M || mu[h] == 0) return 0;
    mpq_class r = mu[h] / Xi;
    r.canonicalize();
    return r;
}

MollifierCoeffs build_mollifier(std::uint64_t M, bool exact) {
    if (M < 1) throw DomainError("build_mollifier: M must be >= 1");
    if (exact && M > kExactScalarCap)
        throw DomainError("build_mollifier: exact mode is capped at M = 1e6");
    if (M > kFloatCap) throw DomainError("build_mollifier: floating mode is capped at M = 1e8");

    MollifierCoeffs c;
    c.M = M;
    std::vector<std::uint32_t> primes;
    c.mu = mobius_sieve(M, primes);

    if (exact) {
        c.exact = true;
        if (M <= kExactFullCap) {
            c.exact_full = true;
            build_exact_full(c, primes);
        } else {
            build_exact_scalars(c);
        }
        c.Xi_d = c.Xi.get_d();
    } else {
        std::vector<double> inv;
        for (std::uint64_t h = M; h >= 1; --h)
            if (c.mu[h] != 0) inv.push_back(1.0 / static_cast<double>(h));
        c.Xi_d = pairwise_sum(inv);
    }

    c.x_d.assign(M + 1, 0.0);
    for (std::uint64_t n = 1; n <= M; ++n) {
        if (c.mu[n] == 0) continue;
        long double acc = 0.0L;
        for (std::uint64_t h = M / n; h >= 1; --h) {
            const int s = c.mu[h] * c.mu[h * n];
            if (s != 0) acc += static_cast<long double>(s) / static_cast<long double>(h);
        }
        c.x_d[n] = static_cast<double>(acc / c.Xi_d);
        c.max_abs_x = std::max(c.max_abs_x, std::fabs(c.x_d[n]));
    }

    c.ybreve_direct.assign(M + 1, 0.0);
    c.ybreve_lambda.assign(M + 1, 0.0);
    for (std::uint64_t h = 1; h <= M; ++h) {
        if (c.mu[h] == 0) continue;
        long double acc = 0.0L;
        for (std::uint64_t n = M / h; n >= 2; --n) {
            const double xv = c.x_d[h * n];
            if (xv != 0.0) acc += xv * std::log(static_cast<long double>(n)) / static_cast<long double>(n);
        }
        c.ybreve_direct[h] = static_cast<double>(acc);
        long double lam = 0.0L;
        for (std::uint32_t p : primes) {
            if (h * p > M) break;
            if (c.mu[h * p] != 0)
                lam += c.mu[h * p] * std::log(static_cast<long double>(p)) / static_cast<long double>(p);
        }
        c.ybreve_lambda[h] = static_cast<double>(lam / c.Xi_d);
    }
    return c;
}

namespace {

struct DivisorTables {
    std::vector<double> sigma, sigma_breve;  // sum_{d|m} 1/d and sum_{d|m} log d / d
};

DivisorTables divisor_tables(std::uint64_t M) {
    DivisorTables t{std::vector<double>(M + 1, 0.0), std::vector<double>(M + 1, 0.0)};
    for (std::uint64_t d = 1; d <= M; ++d) {
        const double inv = 1.0 / static_cast<double>(d), lg = std::log(static_cast<double>(d)) * inv;
        for (std::uint64_t m = d; m <= M; m += d) {
            t.sigma[m] += inv;
            t.sigma_breve[m] += lg;
        }
    }
    return t;
}

}  // namespace

QuadraticForms quadratic_forms(const MollifierCoeffs& c, double T, int delta) {
    if (!(T > 1.0)) throw DomainError("quadratic_forms: T must exceed 1");
    if (delta != 0 && delta != 1) throw DomainError("quadratic_forms: delta must be 0 or 1");
    const std::uint64_t M = c.M;
    QuadraticForms q;
    q.has_exact = c.exact;
    if (c.exact) {
        q.M20 = c.M20_exact;
        q.M20_Xi_identity = (c.M20_exact * c.Xi == 1);
    }
    q.log_T_delta = std::log(T) + gamma_delta(delta);

    long double s20 = 0.0L, sb = 0.0L;
    for (std::uint64_t h = M; h >= 1; --h) {
        if (c.mu[h] == 0) continue;
        const long double yh = c.y(h);
        s20 += yh * yh / h;
        sb += yh * c.ybreve_lambda[h] / h;
    }
    q.M20_d = static_cast<double>(s20);
    q.M20_breve = static_cast<double>(sb);
    q.M20_delta_mmm = q.log_T_delta * q.M20_d - 2.0 * q.M20_breve;

    const double nan = std::nan("");
    q.M20_delta_raw = q.M20_delta_relaxed = q.M20_delta_simplified = nan;
    if (M > kThreeWayCap) return q;

    const DivisorTables dt = divisor_tables(M);
    const double LT = q.log_T_delta;
    std::vector<double> lg(M + 1, 0.0);
    for (std::uint64_t n = 1; n <= M; ++n) lg[n] = std::log(static_cast<double>(n));
    const auto& x = c.x_d;

    long double raw = 0.0L;
    for (std::uint64_t m = 1; m <= M; ++m) {
        const std::uint64_t K = M / m;
        for (std::uint64_t a = 1; a <= K; ++a) {
            if (x[a * m] == 0.0) continue;
            for (std::uint64_t b = 1; b <= K; ++b) {
                if (x[b * m] == 0.0 || std::gcd(a, b) != 1) continue;
                const double w = dt.sigma[m] * (LT - lg[a] - lg[b]) - 2.0 * dt.sigma_breve[m];
                raw += static_cast<long double>(x[a * m] * x[b * m]) / (a * b * m) * w;
            }
        }
    }
    q.M20_delta_raw = static_cast<double>(raw);

    long double rel = 0.0L;
    for (std::uint64_t m = 1; m <= M; ++m) {
        for (std::uint64_t d = 1; d * m <= M; ++d) {
            if (c.mu[d] == 0) continue;
            const std::uint64_t k = d * m, K = M / k;
            for (std::uint64_t n1 = 1; n1 <= K; ++n1) {
                if (x[k * n1] == 0.0) continue;
                for (std::uint64_t n2 = 1; n2 <= K; ++n2) {
                    if (x[k * n2] == 0.0) continue;
                    const double w = dt.sigma[m] * (LT - 2.0 * lg[d] - lg[n1] - lg[n2]) - 2.0 * dt.sigma_breve[m];
                    rel += static_cast<long double>(c.mu[d] * x[k * n1] * x[k * n2]) /
                           (static_cast<long double>(d) * d * m * n1 * n2) * w;
                }
            }
        }
    }
    q.M20_delta_relaxed = static_cast<double>(rel);

    long double simp = 0.0L;
    for (std::uint64_t h = 1; h <= M; ++h) {
        const std::uint64_t K = M / h;
        for (std::uint64_t n1 = 1; n1 <= K; ++n1) {
            if (x[h * n1] == 0.0) continue;
            for (std::uint64_t n2 = 1; n2 <= K; ++n2) {
                if (x[h * n2] == 0.0) continue;
                simp += static_cast<long double>(x[h * n1] * x[h * n2]) / (h * n1 * n2) * (LT - lg[n1] - lg[n2]);
            }
        }
    }
    q.M20_delta_simplified = static_cast<double>(simp);
    return q;
}

bool CombinatorialDefects::zero() const {
    if (defect1 != 0) return false;
    for (const auto& [p, v] : defect2)
        if (v != 0) return false;
    return true;
}

CombinatorialDefects combinatorial_identities(std::uint64_t h) {
    if (h < 1) throw DomainError("combinatorial_identities: h must be >= 1");
    CombinatorialDefects out;
    out.defect1 = -1;
    for (std::uint64_t d : divisors(h)) {
        const int md = mobius_of(d);
        if (md == 0) continue;
        const DivisorSums ds = divisor_sums(h / d);
        const mpq_class coef(md, static_cast<unsigned long>(d));
        out.defect1 += coef * ds.Sigma;
        for (auto [p, e] : factorize(d)) out.defect2[p] += coef * ds.Sigma * e;
        for (const auto& [p, v] : ds.SigmaBreveExact) out.defect2[p] += coef * v;
    }
    out.defect1.canonicalize();
    for (auto it = out.defect2.begin(); it != out.defect2.end();) {
        it->second.canonicalize();
        it = (it->second == 0) ? out.defect2.erase(it) : std::next(it);
    }
    return out;
}

ProportionRegime parse_regime(const std::string& s) {
    if (s == "unconditional_long") return ProportionRegime::unconditional_long;
    if (s == "unconditional_short") return ProportionRegime::unconditional_short;
    if (s == "rh_long") return ProportionRegime::rh_long;
    if (s == "rh_short") return ProportionRegime::rh_short;
    if (s == "rh_small_mu") return ProportionRegime::rh_small_mu;
    throw DomainError("unknown proportion regime '" + s + "'");
}

const char* regime_name(ProportionRegime r) {
    switch (r) {
        case ProportionRegime::unconditional_long: return "unconditional_long";
        case ProportionRegime::unconditional_short: return "unconditional_short";
        case ProportionRegime::rh_long: return "rh_long";
        case ProportionRegime::rh_short: return "rh_short";
        case ProportionRegime::rh_small_mu: return "rh_small_mu";
    }
    return "?";
}

mpq_class proportion_exact(const mpq_class& mu, ProportionRegime regime, bool closure) {
    auto require = [&](const mpq_class& lo, bool lo_open, const mpq_class& hi, bool hi_open) {
        const bool lo_ok = (lo_open && !closure) ? mu > lo : mu >= lo;
        const bool hi_ok = (hi_open && !closure) ? mu < hi : mu <= hi;
        if (!lo_ok || !hi_ok)
            throw DomainError(std::string("proportion: mu = ") + mu.get_str() + " outside the range of " +
                              regime_name(regime));
    };
    switch (regime) {
        case ProportionRegime::unconditional_long: return mpq_class(1, 3);
        case ProportionRegime::rh_long: return mpq_class(1, 2);
        case ProportionRegime::unconditional_short: {
            require(0, true, 1, false);
            const mpq_class r = (2 * mu + 1) / (2 * mu + 5);
            return r < mpq_class(1, 3) ? r : mpq_class(1, 3);
        }
        case ProportionRegime::rh_short: {
            require(mpq_class(1, 2), true, 1, true);
            mpq_class r = mu / (mu + 1);
            r.canonicalize();
            return r;
        }
        case ProportionRegime::rh_small_mu: {
            require(mpq_class(1, 3), true, mpq_class(1, 2), false);
            mpq_class r = (3 * mu - 1) / (3 * mu);
            r.canonicalize();
            return r;
        }
    }
    return 0;
}

double proportion(double mu, ProportionRegime regime) {
    auto out_of_range = [&] {
        return DomainError("proportion: mu = " + std::to_string(mu) + " outside the range of " + regime_name(regime));
    };
    if (!std::isfinite(mu)) throw out_of_range();
    switch (regime) {
        case ProportionRegime::unconditional_long: return 1.0 / 3.0;
        case ProportionRegime::rh_long: return 0.5;
        case ProportionRegime::unconditional_short:
            if (!(mu > 0.0 && mu <= 1.0)) throw out_of_range();
            return std::min(1.0 / 3.0, (2.0 * mu + 1.0) / (2.0 * mu + 5.0));
        case ProportionRegime::rh_short:
            if (!(mu > 0.5 && mu < 1.0)) throw out_of_range();
            return mu / (mu + 1.0);
        case ProportionRegime::rh_small_mu:
            if (!(mu > 1.0 / 3.0 && mu <= 0.5)) throw out_of_range();
            return (3.0 * mu - 1.0) / (3.0 * mu);
    }
    return 0.0;
}

MollifiedMain mollified_moment_main(MollifiedKind kind, double T, double Pi, double M, int delta) {
    if (!(T > 1.0) || !(Pi > 0.0) || !(M >= 1.0) || (delta != 0 && delta != 1))
        throw DomainError("mollified_moment_main: need T > 1, Pi > 0, M >= 1, delta in {0,1}");
    MollifiedMain r;
    r.nu = std::log(Pi) / std::log(T);
    r.Delta = std::log(M) / std::log(T);
    const double base = Pi * T / (kPi * std::sqrt(kPi));
    if (kind == MollifiedKind::M1) {
        r.main = base;
        r.validity = r.Delta < (2.0 * r.nu + 1.0) / 3.0;
    } else {
        r.main = r.Delta > 0.0 ? base * (1.0 + r.Delta) / r.Delta : std::numeric_limits<double>::infinity();
        r.validity = r.Delta > 0.0 && r.Delta < std::min(0.5, (2.0 * r.nu + 1.0) / 4.0);
    }
    return r;
}

void export_coefficients_tsv(const MollifierCoeffs& c, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw DomainError("cannot open '" + path + "' for writing");
    os << "# mollifier coefficients y_h = mu(h)/Xi(M), M = " << c.M << (c.exact ? ", exact" : ", floating") << '\n';
    os << "h\tmu\ty_num\ty_den\n";
    char buf[64];
    for (std::uint64_t h = 1; h <= c.M; ++h) {
        if (c.mu[h] == 0) continue;
        os << h << '\t' << int(c.mu[h]) << '\t';
        if (c.exact) {
            const mpq_class y = c.y_exact(h);
            os << y.get_num().get_str() << '\t' << y.get_den().get_str() << '\n';
        } else {
            std::snprintf(buf, sizeof buf, "%.17g", c.Xi_d);
            os << int(c.mu[h]) << '\t' << buf << '\n';
        }
    }
    if (!os) throw ComputationError("write failed for '" + path + "'");
}

}  // namespace hmw
