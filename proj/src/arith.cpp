#include "hmw/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hmw {

ArithTables build_tables(std::uint64_t bound, std::uint64_t cap) {
    if (bound < 1) throw DomainError("build_tables: bound must be >= 1");
    if (bound > cap)
        throw DomainError("build_tables: bound " + std::to_string(bound) + " exceeds cap " +
                          std::to_string(cap));
    ArithTables t;
    t.bound = bound;
    const std::size_t N = bound + 1;
    t.mobius.assign(N, 0);
    t.totient.assign(N, 0);
    t.von_mangoldt.assign(N, 0.0);
    t.spf.assign(N, 0);
    t.divisor_count.assign(N, 0);
    std::vector<std::uint8_t> expo(N, 0);  // exponent of spf in n
    t.mobius[1] = 1;
    t.totient[1] = 1;
    t.divisor_count[1] = 1;
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (t.spf[i] == 0) {
            t.spf[i] = static_cast<std::uint32_t>(i);
            t.primes.push_back(static_cast<std::uint32_t>(i));
            t.mobius[i] = -1;
            t.totient[i] = static_cast<std::uint32_t>(i - 1);
            t.divisor_count[i] = 2;
            expo[i] = 1;
        }
        for (std::uint32_t p : t.primes) {
            const std::uint64_t ip = i * p;
            if (p > t.spf[i] || ip > bound) break;
            t.spf[ip] = p;
            if (p == t.spf[i]) {
                t.mobius[ip] = 0;
                t.totient[ip] = t.totient[i] * p;
                expo[ip] = static_cast<std::uint8_t>(expo[i] + 1);
                t.divisor_count[ip] = t.divisor_count[i] / (expo[i] + 1) * (expo[i] + 2);
            } else {
                t.mobius[ip] = static_cast<std::int8_t>(-t.mobius[i]);
                t.totient[ip] = t.totient[i] * (p - 1);
                expo[ip] = 1;
                t.divisor_count[ip] = t.divisor_count[i] * 2;
            }
        }
    }
    for (std::uint32_t p : t.primes) {
        const double lp = std::log(static_cast<double>(p));
        for (std::uint64_t pk = p; pk <= bound; pk *= p) {
            t.von_mangoldt[pk] = lp;
            if (pk > bound / p) break;
        }
    }
    return t;
}

std::vector<std::pair<std::uint64_t, int>> ArithTables::factor(std::uint64_t n) const {
    if (n > bound) return factorize(n);
    std::vector<std::pair<std::uint64_t, int>> out;
    while (n > 1) {
        std::uint64_t p = spf[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> d{1};
    for (auto [p, e] : factorize(n)) {
        const std::size_t k = d.size();
        std::uint64_t pk = 1;
        for (int j = 1; j <= e; ++j) {
            pk *= p;
            for (std::size_t i = 0; i < k; ++i) d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

int mobius_of(std::uint64_t n) {
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

std::uint64_t totient_of(std::uint64_t n) {
    std::uint64_t phi = n;
    for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t mod_inverse(std::int64_t a, std::int64_t c) {
    if (c == 1) return 0;
    std::int64_t r0 = ((a % c) + c) % c, r1 = c, s0 = 1, s1 = 0;
    while (r1) {
        std::int64_t q = r0 / r1;
        std::swap(r0, r1);
        r1 -= q * r0;
        std::swap(s0, s1);
        s1 -= q * s0;
    }
    if (r0 != 1) return 0;
    return ((s0 % c) + c) % c;
}

ModulusContext::ModulusContext(std::int64_t c_) : c(c_), roots(c_), inv(c_, 0) {
    if (c < 1) throw DomainError("modulus must be >= 1");
    for (std::int64_t k = 0; k < c; ++k) roots[k] = e_rat(k, c);
    if (c == 1) {
        inv[0] = 0;  // the single residue 0 is a unit mod 1
        return;
    }
    for (std::int64_t a = 1; a < c; ++a) inv[a] = mod_inverse(a, c);
}

static bool is_unit(const ModulusContext& ctx, std::int64_t a) {
    if (ctx.c == 1) return true;
    return ctx.inv[ctx.red(a)] != 0;
}

static std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t c) {
    __int128 r = static_cast<__int128>(a) * b % c;
    if (r < 0) r += c;
    return static_cast<std::int64_t>(r);
}

cplx divisor_tau_nu(std::uint64_t n, cplx nu) {
    if (n < 1) throw DomainError("divisor_tau_nu: n must be >= 1");
    const double ln = std::log(static_cast<double>(n));
    cplx s = 0.0;
    for (std::uint64_t d : divisors(n)) s += std::exp(nu * (2.0 * std::log(static_cast<double>(d)) - ln));
    return s;
}

double hecke_tau_check(std::uint64_t m, std::uint64_t n, cplx nu) {
    const cplx lhs = divisor_tau_nu(m, nu) * divisor_tau_nu(n, nu);
    cplx rhs = 0.0;
    for (std::uint64_t d : divisors(std::gcd(m, n))) rhs += divisor_tau_nu(m * n / (d * d), nu);
    return std::abs(lhs - rhs);
}

cplx kloosterman_complex(const ModulusContext& ctx, std::int64_t m, std::int64_t n) {
    const std::int64_t c = ctx.c;
    if (c == 1) return 1.0;
    const std::int64_t mm = ctx.red(m), nn = ctx.red(n);
    cplx s = 0.0;
    for (std::int64_t a = 1; a < c; ++a) {
        const std::int64_t ai = ctx.inv[a];
        if (!ai) continue;
        s += ctx.roots[(a * mm + ai * nn) % c];
    }
    return s;
}

double kloosterman(const ModulusContext& ctx, std::int64_t m, std::int64_t n) {
    const cplx s = kloosterman_complex(ctx, m, n);
    if (std::abs(s.imag()) >= 1e-9 * static_cast<double>(ctx.c))
        throw AssertionFailure("kloosterman: imaginary residue " + std::to_string(s.imag()) +
                               " at c=" + std::to_string(ctx.c));
    return s.real();
}

double kloosterman(std::int64_t m, std::int64_t n, std::int64_t c) {
    if (c < 1) throw DomainError("kloosterman: c must be >= 1");
    return kloosterman(ModulusContext(c), m, n);
}

double kloosterman_crt(std::int64_t m, std::int64_t n, std::int64_t c) {
    if (c < 1) throw DomainError("kloosterman_crt: c must be >= 1");
    double prod = 1.0;
    for (auto [p, e] : factorize(static_cast<std::uint64_t>(c))) {
        std::int64_t q = 1;
        for (int j = 0; j < e; ++j) q *= static_cast<std::int64_t>(p);
        const std::int64_t r = c / q;
        const std::int64_t rbar = mod_inverse(r % q, q);
        const std::int64_t mq = mulmod(((m % q) + q) % q, rbar, q);
        const std::int64_t nq = mulmod(((n % q) + q) % q, rbar, q);
        double s = 0.0;
        for (std::int64_t a = 1; a < q; ++a) {
            const std::int64_t ai = mod_inverse(a, q);
            if (!ai) continue;
            const std::int64_t k = (a * mq + ai * nq) % q;
            s += e_rat(k, q).real();
        }
        prod *= s;
    }
    return prod;
}

double ramanujan(std::int64_t m, std::int64_t c) { return kloosterman(m, 0, c); }

WeilWitness weil_check(const ModulusContext& ctx, std::int64_t m, std::int64_t n) {
    const std::int64_t c = ctx.c;
    const double s = std::abs(kloosterman(ctx, m, n));
    const std::int64_t g = std::gcd(std::gcd(std::llabs(m), std::llabs(n)), c);
    const double tau = static_cast<double>(divisors(static_cast<std::uint64_t>(c)).size());
    const double bound = tau * std::sqrt(static_cast<double>(g)) * std::sqrt(static_cast<double>(c));
    const double ratio = s / bound;
    if (ratio > 1.0 + 1e-12)
        throw AssertionFailure("Weil bound violated at (m,n,c)=(" + std::to_string(m) + "," +
                               std::to_string(n) + "," + std::to_string(c) +
                               "), ratio=" + std::to_string(ratio));
    return {true, ratio};
}

WeilWitness weil_check(std::int64_t m, std::int64_t n, std::int64_t c) {
    if (c < 1) throw DomainError("weil_check: c must be >= 1");
    return weil_check(ModulusContext(c), m, n);
}

cplx variant_kloosterman(const ModulusContext& ctx, std::int64_t m, std::int64_t n, std::int64_t q) {
    const std::int64_t c = ctx.c;
    if (q < 1) throw DomainError("variant_kloosterman: q must be >= 1");
    if (c == 1) return 1.0;
    const std::int64_t mm = ctx.red(m), nn = ctx.red(n), qq = ctx.red(q);
    cplx s = 0.0;
    for (std::int64_t a = 1; a < c; ++a) {
        const std::int64_t ai = ctx.inv[a];
        if (!ai) continue;
        const std::int64_t b = ctx.red(qq - a);
        const std::int64_t bi = ctx.inv[b];
        if (!bi) continue;
        s += ctx.roots[(ai * mm + bi * nn) % c];
    }
    return s;
}

cplx variant_kloosterman(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t q) {
    if (c < 1) throw DomainError("variant_kloosterman: c must be >= 1");
    return variant_kloosterman(ModulusContext(c), m, n, q);
}

cplx variant_kloosterman_alt(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t q) {
    if (c < 1 || q < 1) throw DomainError("variant_kloosterman_alt: c, q must be >= 1");
    if (c == 1) return 1.0;
    cplx s = 0.0;
    for (std::int64_t b = c - 1; b >= 0; --b) {
        const std::int64_t bi = mod_inverse(b, c);
        if (!bi) continue;
        const std::int64_t a = (((q - b) % c) + c) % c;
        const std::int64_t ai = mod_inverse(a, c);
        if (!ai) continue;
        const std::int64_t num = mulmod(ai, ((m % c) + c) % c, c) + mulmod(bi, ((n % c) + c) % c, c);
        s += e_rat(num, c);
    }
    return s;
}

double luo_identity_check(std::int64_t m, std::int64_t n, std::int64_t c) {
    if (c < 1) throw DomainError("luo_identity_check: c must be >= 1");
    ModulusContext cc(c);
    const cplx lhs = kloosterman_complex(cc, m, n) * cc.e(m + n);
    cplx rhs = 0.0;
    for (std::uint64_t r : divisors(static_cast<std::uint64_t>(c))) {
        const auto rr = static_cast<std::int64_t>(r);
        rhs += variant_kloosterman(rr == c ? cc : ModulusContext(rr), m, n, c / rr);
    }
    return std::abs(lhs - rhs);
}

namespace {

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::int64_t primitive_root_prime_power(std::int64_t p, int k) {
    const std::int64_t pm1 = p - 1;
    auto fac = factorize(static_cast<std::uint64_t>(pm1));
    std::int64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto [r, e] : fac)
            if (powmod(g, pm1 / static_cast<std::int64_t>(r), p) == 1) ok = false;
        if (ok) break;
    }
    if (k >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
    return g;
}

struct Gen {
    std::int64_t modulus;  // the prime-power component
    std::int64_t gen;      // generator residue mod modulus
    std::int64_t order;
};

}  // namespace

std::vector<DirichletCharacter> dirichlet_characters(std::int64_t c) {
    if (c < 1) throw DomainError("dirichlet_characters: modulus must be >= 1");
    std::vector<Gen> gens;
    std::vector<std::int64_t> comps;  // prime-power components of c
    for (auto [p, e] : factorize(static_cast<std::uint64_t>(c))) {
        std::int64_t q = 1;
        for (int j = 0; j < e; ++j) q *= static_cast<std::int64_t>(p);
        comps.push_back(q);
        if (p == 2) {
            if (e >= 2) gens.push_back({q, q - 1, 2});
            if (e >= 3) gens.push_back({q, 5, q / 4});
        } else {
            const auto pp = static_cast<std::int64_t>(p);
            gens.push_back({q, primitive_root_prime_power(pp, e), q / pp * (pp - 1)});
        }
    }
    // Discrete-log table: unit residue mod c -> exponent vector.
    const std::size_t r = gens.size();
    std::vector<std::vector<std::int64_t>> dlog(static_cast<std::size_t>(c));
    std::vector<bool> unit(static_cast<std::size_t>(c), false);
    std::vector<std::int64_t> ex(r, 0);
    std::int64_t L = 1;
    for (auto& g : gens) L = std::lcm(L, g.order);
    for (;;) {
        std::int64_t u = 0;
        for (std::int64_t q : comps) {
            std::int64_t v = 1 % q;
            for (std::size_t i = 0; i < r; ++i)
                if (gens[i].modulus == q) v = mulmod(v, powmod(gens[i].gen, ex[i], q), q);
            const std::int64_t Q = c / q;
            u = (u + mulmod(mulmod(v, Q, c), mod_inverse(Q % q, q), c)) % c;
        }
        if (c == 1) u = 0;
        dlog[static_cast<std::size_t>(u)] = ex;
        unit[static_cast<std::size_t>(u)] = true;
        std::size_t i = 0;
        while (i < r && ++ex[i] == gens[i].order) ex[i++] = 0;
        if (i == r) break;
    }
    std::vector<DirichletCharacter> out;
    std::vector<std::int64_t> j(r, 0);
    for (;;) {
        DirichletCharacter chi{c, std::vector<cplx>(static_cast<std::size_t>(c), 0.0), true};
        for (std::size_t i = 0; i < r; ++i)
            if (j[i]) chi.principal = false;
        for (std::int64_t a = 0; a < c; ++a) {
            if (!unit[static_cast<std::size_t>(a)]) continue;
            const auto& d = dlog[static_cast<std::size_t>(a)];
            std::int64_t num = 0;
            for (std::size_t i = 0; i < r; ++i)
                num = (num + mulmod(j[i] * d[i] % gens[i].order, L / gens[i].order, L)) % L;
            chi.values[static_cast<std::size_t>(a)] = e_rat(num, L);
        }
        out.push_back(std::move(chi));
        std::size_t i = 0;
        while (i < r && ++j[i] == gens[i].order) j[i++] = 0;
        if (i == r) break;
    }
    return out;
}

void validate_character(const DirichletCharacter& chi) {
    const std::int64_t c = chi.modulus;
    if (static_cast<std::int64_t>(chi.values.size()) != c)
        throw DomainError("invalid character: table length differs from modulus");
    for (std::int64_t a = 0; a < c; ++a) {
        const bool unit = std::gcd(a, c) == 1;
        const double mag = std::abs(chi.values[static_cast<std::size_t>(a)]);
        if (unit ? std::abs(mag - 1.0) > 1e-9 : mag > 1e-12)
            throw DomainError("invalid character: bad modulus of value at " + std::to_string(a));
    }
    std::mt19937_64 rng(0x5eed0000ULL + static_cast<std::uint64_t>(c));
    std::uniform_int_distribution<std::int64_t> pick(0, c - 1);
    for (int k = 0; k < 100; ++k) {
        const std::int64_t a = pick(rng), b = pick(rng);
        const cplx lhs = chi.values[static_cast<std::size_t>(mulmod(a, b, c))];
        const cplx rhs = chi.values[static_cast<std::size_t>(a)] * chi.values[static_cast<std::size_t>(b)];
        if (std::abs(lhs - rhs) > 1e-9)
            throw DomainError("invalid character: multiplicativity fails at (" + std::to_string(a) +
                              "," + std::to_string(b) + ")");
    }
}

GaussPair gauss_sums(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t q,
                     const DirichletCharacter& chi) {
    if (c < 1 || q < 1) throw DomainError("gauss_sums: c, q must be >= 1");
    if (chi.modulus != c) throw DomainError("invalid character: wrong modulus");
    validate_character(chi);
    ModulusContext ctx(c);
    GaussPair g{0.0, 0.0};
    for (std::int64_t a = 0; a < c; ++a) {
        const cplx x = chi.values[static_cast<std::size_t>(a)];
        if (x == cplx(0.0)) continue;
        g.G += x * ctx.e(mulmod(a, ctx.red(m), c));
        const std::int64_t b = ctx.red(q - a);
        if (!is_unit(ctx, b)) continue;
        g.Gq += x * ctx.e(mulmod(c == 1 ? 0 : ctx.inv[b], ctx.red(n), c));
    }
    return g;
}

cplx vq_prime_sum_oracle(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t q, double x,
                         const ArithTables& tab) {
    if (x < 2) throw DomainError("vq_prime_sum_oracle: x must be >= 2");
    if (static_cast<double>(tab.bound) < std::floor(x))
        throw DomainError("vq_prime_sum_oracle: prime table shorter than x");
    ModulusContext ctx(c);
    std::vector<cplx> vres(static_cast<std::size_t>(c));
    std::vector<bool> have(static_cast<std::size_t>(c), false);
    cplx s = 0.0;
    for (std::uint32_t p : tab.primes) {
        if (p > x) break;
        if (c > 1 && std::gcd(static_cast<std::int64_t>(p), c) != 1) continue;
        const std::size_t a = static_cast<std::size_t>(static_cast<std::int64_t>(p) % c);
        if (!have[a]) {
            vres[a] = variant_kloosterman(ctx, mulmod(m, static_cast<std::int64_t>(a), c == 1 ? 1 : c), n, q);
            have[a] = true;
        }
        s += vres[a] * std::log(static_cast<double>(p));
    }
    return s;
}

cplx vq_prime_sum_characters(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t q, double x,
                             const ArithTables& tab) {
    if (x < 2) throw DomainError("vq_prime_sum_characters: x must be >= 2");
    std::vector<double> theta(static_cast<std::size_t>(c), 0.0);  // theta(x; c, a)
    for (std::uint32_t p : tab.primes) {
        if (p > x) break;
        theta[static_cast<std::size_t>(static_cast<std::int64_t>(p) % c)] += std::log(static_cast<double>(p));
    }
    const auto chars = dirichlet_characters(c);
    cplx s = 0.0;
    for (const auto& chi : chars) {
        const GaussPair g = gauss_sums(m, n, c, q, chi);
        cplx tw = 0.0;
        for (std::int64_t a = 0; a < c; ++a) tw += std::conj(chi.values[static_cast<std::size_t>(a)]) * theta[static_cast<std::size_t>(a)];
        s += g.G * g.Gq * tw;
    }
    return s / static_cast<double>(chars.size());
}

}  // namespace hmw
