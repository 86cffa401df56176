#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hmw/moments.hpp"

namespace hmw {

inline constexpr std::uint64_t kExactFullCap = 10'000;
inline constexpr std::uint64_t kExactScalarCap = 1'000'000;
inline constexpr std::uint64_t kFloatCap = 100'000'000;
inline constexpr std::uint64_t kYbreveExactCap = 500;

// Prime-log combination sum_p num[p] log p / den with a shared integer denominator.
struct ScaledLogMap {
    std::map<std::uint64_t, mpz_class> num;
    bool operator==(const ScaledLogMap& o) const { return num == o.num; }
};

struct MollifierCoeffs {
    std::uint64_t M = 0;
    bool exact = false;       // exact scalars (Xi, x_1, M20) available
    bool exact_full = false;  // exact x_n and y-breve maps available
    std::vector<std::int8_t> mu;  // index 0..M

    double Xi_d = 0.0;
    mpq_class Xi;         // exact Xi(M)
    mpq_class x1_exact;   // x_1 from the inversion display
    mpq_class M20_exact;  // sum y_h^2 / h

    mpz_class L;      // lcm of squarefree h <= M (primorial), exact_full only
    mpz_class XiNum;  // Xi = XiNum / L
    std::vector<mpq_class> x;  // exact x_n, exact_full only

    std::vector<double> x_d;
    std::vector<double> ybreve_direct;  // sum_n x_{hn} log n / n
    std::vector<double> ybreve_lambda;  // sum_n Lambda(n) y_{hn} / n

    // Exact y-breve maps for h <= ybreve_exact_cap, both scaled by ybreve_den = XiNum L.
    std::uint64_t ybreve_exact_cap = 0;
    std::vector<ScaledLogMap> ybreve_exact_direct, ybreve_exact_lambda;
    mpz_class ybreve_den;

    double max_abs_x = 0.0;

    double y(std::uint64_t h) const { return h <= M ? mu[h] / Xi_d : 0.0; }
    double x_at(std::uint64_t n) const { return n <= M ? x_d[n] : 0.0; }
    mpq_class y_exact(std::uint64_t h) const;  // mu(h)/Xi
};

MollifierCoeffs build_mollifier(std::uint64_t M, bool exact);

struct QuadraticForms {
    bool has_exact = false;
    mpq_class M20;  // exact when available
    bool M20_Xi_identity = false;  // M20 * Xi == 1 exactly
    double M20_d = 0.0;
    double M20_breve = 0.0;
    double log_T_delta = 0.0;
    // M20^delta through the coprime triple sum, the Moebius-relaxed sum, and the
    // simplified double sum. Left as NaN above kThreeWayCap.
    double M20_delta_raw, M20_delta_relaxed, M20_delta_simplified;
    double M20_delta_mmm;  // log T_delta M20 - 2 M20-breve
};
inline constexpr std::uint64_t kThreeWayCap = 2000;

QuadraticForms quadratic_forms(const MollifierCoeffs& c, double T, int delta);

struct CombinatorialDefects {
    mpq_class defect1;
    PrimeLogMap defect2;  // every coefficient must vanish
    bool zero() const;
};
CombinatorialDefects combinatorial_identities(std::uint64_t h);

enum class ProportionRegime { unconditional_long, unconditional_short, rh_long, rh_short, rh_small_mu };
ProportionRegime parse_regime(const std::string& s);
const char* regime_name(ProportionRegime r);

double proportion(double mu, ProportionRegime regime);
// Exact closed form at rational mu. With closure = true the endpoints of each
// open range are admitted, which is how seam limits are evaluated.
mpq_class proportion_exact(const mpq_class& mu, ProportionRegime regime, bool closure = false);

enum class MollifiedKind { M1, M2 };
struct MollifiedMain {
    double main;
    bool validity;
    double nu, Delta;
};
MollifiedMain mollified_moment_main(MollifiedKind kind, double T, double Pi, double M, int delta);

// Tab-separated audit table: h, mu(h), y_h numerator, y_h denominator.
void export_coefficients_tsv(const MollifierCoeffs& c, const std::string& path);

}  // namespace hmw
