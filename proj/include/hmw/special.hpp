#pragma once

#include <utility>

#include "hmw/common.hpp"
#include "hmw/quadrature.hpp"

namespace hmw {

cplx log_gamma(cplx z);
cplx gamma_fn(cplx z);
cplx digamma(cplx z);
// log Gamma(z+a) - log Gamma(z) without cancellation at large |Im z|.
cplx log_gamma_diff(cplx z, cplx a);

// Gamma_R^delta(s) = pi^{-s/2} Gamma((s+delta)/2). The log form stays finite
// where the value itself underflows.
cplx log_gamma_R(cplx s, int delta);
cplx gamma_R(cplx s, int delta);
cplx log_gamma_R_diff(cplx s, cplx a, int delta);

cplx zeta_em(cplx s, int terms = 10);
// zeta(sigma1 + it) and zeta(sigma2 + it) sharing one pass over n^{-it}.
std::pair<cplx, cplx> zeta_em_pair(double sigma1, double sigma2, double t, int terms = 10);
// Eisenstein weight 1/|zeta(1+2it)|^2.
double omega_eis(double t);

cplx log_gamma_factor(int sigma, int delta, cplx v, double t);
cplx gamma_factor(int sigma, int delta, cplx v, double t);
cplx epsilon_factor(int delta, double t);

struct AfeWeightSpec {
    int sigma = 1;
    int delta = 0;
    double theta = 0.1;
    double U = 0.0;  // 0 means log T must be supplied by the caller
};

struct AfeValue {
    cplx value;
    double quad_error;
    double trunc_bound;  // (|t|+1)^{sigma theta/2} / (y^theta exp(U^2/2))
    long evals;
};

AfeValue afe_weight_V(const AfeWeightSpec& spec, double y, double t);

}  // namespace hmw
