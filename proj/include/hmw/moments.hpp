#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

#include "hmw/bessel.hpp"
#include "hmw/common.hpp"

namespace hmw {

// Exact rational combination of log p over primes p.
using PrimeLogMap = std::map<std::uint64_t, mpq_class>;
double eval_prime_log_map(const PrimeLogMap& m);

struct MomentParams {
    double T = 1e4;
    double Pi = 0.0;  // 0 selects T^{0.6}
    int delta = 0;
    std::uint64_t m = 1;
    std::uint64_t m1 = 1, m2 = 1;
    int threads = 1;

    double pi_value() const;
    void validate() const;
};

inline constexpr double kMomentEps = 0.05;
inline constexpr double kEnvelopeConst = 10.0;
inline constexpr double kAfeSplitExponent = 0.55;

double gamma_delta(int delta);
// Same constant reassembled from 2 gamma + psi(kappa) - 2 log pi.
double gamma_delta_digamma(int delta);

struct DivisorSums {
    std::uint64_t m;
    mpq_class Sigma;
    double SigmaBreve;
    PrimeLogMap SigmaBreveExact;
};
DivisorSums divisor_sums(std::uint64_t m);

struct MomentResult {
    double numeric;
    double main_term;
    double envelope;
    double quad_error;
};

MomentResult diagonal_first(const MomentParams& p);
MomentResult diagonal_second(const MomentParams& p);

// V_sigma^delta(y;t) from the shared contour rule, used by the diagonal terms.
cplx afe_weight_fixed(int sigma, int delta, double y, double t, double U);

struct OffdiagResult {
    cplx value;
    double bound_ratio;
    std::int64_t c_max;  // largest c summed, 0 when the c-range is void
    long terms;
};
// First-moment off-diagonal sum over c < mN/T and N <= n <= 2N.
OffdiagResult offdiag_geometric(const MomentParams& p, int sign, double N, Parity parity = Parity::h2_cosine);

struct EisensteinResult {
    cplx value;
    double envelope;
    double ratio;
    double quad_error;
};
EisensteinResult eisenstein_term(int order, const MomentParams& p);

double unsmooth_weight(double T, double Pi, double H, double t);

enum class UnsmoothedKind { first, second };
double unsmoothed_main_terms(UnsmoothedKind kind, double T, double H, int delta);
double unsmoothed_long_interval(UnsmoothedKind kind, double T, int delta);
// Sum of second-moment windows [T/2^{j+1}, T/2^j] with H equal to a third of each centre.
double unsmoothed_dyadic_sum(double T, int delta);

}  // namespace hmw
