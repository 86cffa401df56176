#pragma once

#include <string>

#include "hmw/common.hpp"

namespace hmw {

enum class GammaMode { constant_one, afe };
enum class Parity { plus_h, h2_cosine };

struct TestWeight {
    double T = 500.0;
    double Pi = 30.0;
    GammaMode mode = GammaMode::constant_one;
    int sigma = 1;            // afe mode only
    int delta = 0;            // afe mode only
    cplx v{0.1, 0.0};         // afe mode only; Re v is the contour abscissa
    Parity parity = Parity::plus_h;

    void validate() const;
    double phi(double t) const;
    cplx gamma(double t) const;
    // h(t;y), or h(t;y) + h(t;1/y) under h2 parity.
    cplx h(double t, double y) const;
    // Exponent tau in the prefactor Pi T^{1+tau} and a tag naming its regime.
    double tau() const;
    std::string regime() const;
    // Half-width of the t-window, Pi sqrt(40).
    double t_halfwidth() const;
};

enum class BesselMethod { fast_r_integral, nested_oracle };

struct BesselEval {
    cplx value;
    BesselMethod method;
    double est_error;
    double x, y;
    int sign;
    double tau;
    std::string regime;
    long evals;
};

double phase_f(int sign, double r, double v, double w);

// Half-width of the r-window: sqrt(ln(1/tol))/Pi with tol = 1e-16.
double r_window(double Pi);

BesselEval fast_H(const TestWeight& wt, int sign, double x, double y);
BesselEval oracle_H(const TestWeight& wt, int sign, double x, double y, long budget = 10'000'000);

bool window_predicate(double T, double Pi, double v, double w);

// Variants named by (sign of the oscillation e^{+-if}, orientation y or 1/y):
// mp = "-+", pm = "+-", pp = "++", mm = "--".
enum class IVariant { mp, pm, pp, mm };
IVariant parse_variant(const std::string& s);
const char* variant_name(IVariant v);

struct IValue {
    cplx value;
    cplx dvalue;  // derivative in v
    double err;
    double derr;
};

IValue I_integral(IVariant variant, int sign, double T, double Pi, double v, double w);
// The Schwartz profile g for the Gaussian weight with gamma = 1.
cplx g_profile(double rho, double T, double Pi);

struct TestBump {
    enum class Kind { gaussian, raised_cosine } kind = Kind::gaussian;
    double center = 0.0;
    double width = 1.0;  // Gaussian scale s in exp(-pi (x/s)^2), or half-support L
    double F(double x) const;
    cplx Fhat(double y) const;  // integral of F(x) e(-xy) dx
};

double poisson_verify(const TestBump& F, std::int64_t alpha, std::int64_t c);

}  // namespace hmw
