#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "hmw/common.hpp"

namespace hmw {

struct QuadResult {
    cplx value{0.0, 0.0};
    double error = 0.0;
    long evals = 0;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_depth = 30;
    int panels = 1;
    long max_evals = 50'000'000;
};

namespace detail {
extern const double kKronrodX[8];
extern const double kKronrodW[8];
extern const double kGaussW[4];
}  // namespace detail

struct PanelEstimate {
    cplx value;
    double error;
    double abs_mass;  // Kronrod estimate of the integral of |f|
};

// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
template <class F>
PanelEstimate gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx k = fc * detail::kKronrodW[7];
    cplx g = fc * detail::kGaussW[3];
    double m = std::abs(fc) * detail::kKronrodW[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * detail::kKronrodX[j];
        cplx f1 = f(c - dx), f2 = f(c + dx);
        k += (f1 + f2) * detail::kKronrodW[j];
        m += (std::abs(f1) + std::abs(f2)) * detail::kKronrodW[j];
        if (j % 2 == 1) g += (f1 + f2) * detail::kGaussW[j / 2];
    }
    k *= h;
    g *= h;
    return {k, std::abs(k - g), m * std::abs(h)};
}

// Adaptive Gauss-Kronrod over [a,b]. The tolerance is split in proportion to
// panel length so the bisection order, and hence the result, is deterministic.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
    QuadResult out;
    if (a == b) return out;
    const double total = std::abs(b - a);
    struct Seg { double a, b; int depth; };
    std::vector<Seg> stack;
    const int n0 = opt.panels < 1 ? 1 : opt.panels;
    for (int i = n0 - 1; i >= 0; --i) {
        double lo = a + (b - a) * i / n0, hi = a + (b - a) * (i + 1) / n0;
        stack.push_back({lo, hi, 0});
    }
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        const PanelEstimate pe = gk15(f, s.a, s.b);
        const cplx val = pe.value;
        const double err = pe.error;
        out.evals += 15;
        if (out.evals > opt.max_evals)
            throw ComputationError("quadrature evaluation budget exceeded");
        const double share = std::abs(s.b - s.a) / total;
        const double tol = std::max(opt.abs_tol * share, opt.rel_tol * std::abs(val));
        if (!std::isfinite(err)) throw ComputationError("quadrature: non-finite integrand");
        // Below the roundoff floor further bisection cannot help.
        if (err <= tol || err <= 1e-13 * pe.abs_mass) {
            out.value += val;
            out.error += err;
            continue;
        }
        if (s.depth >= opt.max_depth)
            throw ComputationError("adaptive quadrature did not converge within depth cap");
        const double m = 0.5 * (s.a + s.b);
        stack.push_back({m, s.b, s.depth + 1});
        stack.push_back({s.a, m, s.depth + 1});
    }
    return out;
}

// Gauss-Legendre rule on [-1,1].
struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int n);
};

// Composite Gauss-Legendre nodes and weights on [a,b].
std::vector<std::pair<double, double>> composite_gl(double a, double b, int panels, int order);

// Non-adaptive Kronrod rule on equal panels. The integrand is sampled in
// parallel and summed in a fixed order; error is the summed |K - G| gap.
QuadResult fixed_gk15(const std::function<cplx(double)>& f, double a, double b, int panels, int threads);

}  // namespace hmw
