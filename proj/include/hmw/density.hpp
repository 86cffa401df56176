#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hmw/arith.hpp"
#include "hmw/common.hpp"

namespace hmw {

// Fejer pair phi(x) = (sin(pi v x)/(pi v x))^2, phi_hat(y) = (1/v)(1 - |y|/v) on |y| < v.
struct FourierPair {
    double v = 1.0;
    double phi(double x) const;
    double phi_hat(double y) const;
};
FourierPair make_fejer(double v);

double level_density_D(const std::vector<double>& zeros, double t_f, const std::function<double(double)>& phi,
                       double T);
inline double level_density_D(const std::vector<double>& zeros, double t_f, const FourierPair& fp, double T) {
    return level_density_D(zeros, t_f, [&](double x) { return fp.phi(x); }, T);
}

struct ExplicitH {
    double quadrature;
    double asymptotic;  // Re log(kappa + i t_f) / log T * phi_hat(0)
    double asymptotic_lemma;  // Re[log(kappa/pi) + log((kappa + i t_f)/pi)] / log T * phi_hat(0)
    double quad_error;
};
ExplicitH explicit_H(int delta, double t_f, const FourierPair& fp, double T);

struct SpectralRow {
    double t_f = 0.0;
    int delta = 0;
    std::map<std::uint64_t, double> lambda;     // p -> lambda_f(p)
    std::map<std::uint64_t, double> lambda_p2;  // p -> lambda_f(p^2)
    std::vector<double> zeros;
    std::size_t line = 0;
};
struct SpectralDataset {
    std::vector<SpectralRow> rows;
};

SpectralDataset parse_dataset(std::istream& in);
SpectralDataset ingest_dataset(const std::string& path);
// Throws DomainError naming the row and rule on the first violation.
void validate_row(const SpectralRow& row, std::size_t row_number);
std::string format_row(const SpectralRow& row);
// lambda(p) = 2 cos(t log p), lambda(p^2) = lambda(p)^2 - 1 for all p <= P0.
SpectralRow eisenstein_surrogate_row(double t, int delta, std::uint64_t P0);

double prime_sum_P(int nu, const SpectralRow& row, const FourierPair& fp, double T);
// Same sum for the surrogate row, evaluated by a direct loop over integers.
double eisenstein_prime_sum_direct(double t, double t_f, const FourierPair& fp, double T);

struct RhPrimeSum {
    double value;   // |sum_{p <= x} log p / p^{1+it}|
    double loglog;  // log log t
    double ratio;
};
RhPrimeSum rh_prime_sum_check(double t, double x);

enum class DensityFamily { special_point, central_value };
DensityFamily parse_family(const std::string& s);
double v_law(double mu, DensityFamily family);
mpq_class v_law_exact(const mpq_class& mu, DensityFamily family);

struct NonvanishingBounds {
    double v;
    double p0_lower;       // 1 - 1/v - eps (special point) or the even form for central values
    double p0_odd;         // 1 - 1/(4v^2), central values only
    std::vector<std::pair<int, double>> table;  // (m, bound on p_m from sum m p_m < 1/v + eps)
};
inline constexpr double kDensityEps = 1e-3;
NonvanishingBounds nonvanishing_bounds(double mu, DensityFamily family, int order_cap, double eps = kDensityEps);

struct ExactLowerBounds {
    mpq_class special, central_even, central_odd;
};
ExactLowerBounds nonvanishing_exact(const mpq_class& v);

struct VqMainTerm {
    cplx sum;         // sum_{p <= x} V_q(p, 1; c) log p
    cplx main;        // x mu(c) R_q(1; c) / phi(c)
    cplx ratio;       // sum / main, NaN when the main term vanishes
};
VqMainTerm vq_main_term(std::int64_t c, std::int64_t q, double x, const ArithTables& tab);

}  // namespace hmw
