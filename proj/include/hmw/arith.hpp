#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hmw/common.hpp"

namespace hmw {

inline constexpr std::uint64_t kTableCap = 100'000'000;

struct ArithTables {
    std::uint64_t bound = 0;
    std::vector<std::int8_t> mobius;         // index n, entry 0 unused
    std::vector<std::uint32_t> totient;
    std::vector<double> von_mangoldt;
    std::vector<std::uint32_t> spf;
    std::vector<std::uint32_t> divisor_count;
    std::vector<std::uint32_t> primes;       // all primes <= bound, ascending

    // Prime factorisation (p, exponent) of n <= bound.
    std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) const;
};

ArithTables build_tables(std::uint64_t bound, std::uint64_t cap = kTableCap);

// Trial-division helpers for values beyond any table.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
int mobius_of(std::uint64_t n);
std::uint64_t totient_of(std::uint64_t n);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t mod_inverse(std::int64_t a, std::int64_t c);  // 0 when gcd(a,c) > 1

enum class ResidueKind { kloosterman, ramanujan, variant, gauss, variant_gauss };

struct ResidueSum {
    cplx value;
    std::uint64_t modulus;
    ResidueKind kind;
};

// Per-modulus cache: exact roots of unity and inverse table.
struct ModulusContext {
    std::int64_t c;
    std::vector<cplx> roots;        // roots[k] = e(k/c)
    std::vector<std::int64_t> inv;  // inv[a] = a^{-1} mod c, 0 if not a unit
    explicit ModulusContext(std::int64_t c);
    std::int64_t red(std::int64_t a) const {
        std::int64_t r = a % c;
        return r < 0 ? r + c : r;
    }
    cplx e(std::int64_t k) const { return roots[static_cast<std::size_t>(red(k))]; }
};

cplx divisor_tau_nu(std::uint64_t n, cplx nu);
double hecke_tau_check(std::uint64_t m, std::uint64_t n, cplx nu);

// Complex Kloosterman sum by enumeration.
cplx kloosterman_complex(const ModulusContext& ctx, std::int64_t m, std::int64_t n);
double kloosterman(std::int64_t m, std::int64_t n, std::int64_t c);
double kloosterman(const ModulusContext& ctx, std::int64_t m, std::int64_t n);
// Twisted-multiplicative evaluation over the prime-power factorisation of c.
double kloosterman_crt(std::int64_t m, std::int64_t n, std::int64_t c);
double ramanujan(std::int64_t m, std::int64_t c);

struct WeilWitness {
    bool ok;
    double ratio;  // |S| / (tau(c) sqrt(gcd(m,n,c)) sqrt(c))
};
WeilWitness weil_check(std::int64_t m, std::int64_t n, std::int64_t c);
WeilWitness weil_check(const ModulusContext& ctx, std::int64_t m, std::int64_t n);

cplx variant_kloosterman(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t q);
cplx variant_kloosterman(const ModulusContext& ctx, std::int64_t m, std::int64_t n, std::int64_t q);
// Same sum enumerated over beta = q - alpha in descending order.
cplx variant_kloosterman_alt(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t q);

double luo_identity_check(std::int64_t m, std::int64_t n, std::int64_t c);

struct DirichletCharacter {
    std::int64_t modulus;
    std::vector<cplx> values;  // length modulus, zero off units
    bool principal;
};

// All phi(c) characters mod c, built from a generator decomposition of the unit group.
std::vector<DirichletCharacter> dirichlet_characters(std::int64_t c);

struct GaussPair {
    cplx G;
    cplx Gq;
};
GaussPair gauss_sums(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t q,
                     const DirichletCharacter& chi);
// Throws DomainError when the table is not a character mod c.
void validate_character(const DirichletCharacter& chi);

// Sum over p <= x, p not dividing c, of V_q(mp, n; c) log p by direct summation.
cplx vq_prime_sum_oracle(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t q, double x,
                         const ArithTables& tab);
// Same quantity through the character decomposition.
cplx vq_prime_sum_characters(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t q, double x,
                             const ArithTables& tab);

}  // namespace hmw
