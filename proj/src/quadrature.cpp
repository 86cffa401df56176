#include "hmw/quadrature.hpp"

#include <map>
#include <mutex>

#include "hmw/parallel.hpp"

namespace hmw {

namespace detail {
const double kKronrodX[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                             0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                             0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                             0.207784955007898467600689403773245, 0.0};
const double kKronrodW[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                             0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                             0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                             0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kGaussW[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace detail

cplx e_rat(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw DomainError("e_rat: denominator must be positive");
    std::int64_t r = num % den;
    if (r < 0) r += den;
    if (r == 0) return {1.0, 0.0};
    // Fold into [-1/2, 1/2] so the argument stays small.
    const double frac = (2 * r > den) ? -static_cast<double>(den - r) / den
                                      : static_cast<double>(r) / den;
    const double ang = 2.0 * kPi * frac;
    return {std::cos(ang), std::sin(ang)};
}

GaussLegendre::GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-16) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

namespace {
const GaussLegendre& cached_rule(int n) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, GaussLegendre(n)).first;
    return it->second;
}
}  // namespace

std::vector<std::pair<double, double>> composite_gl(double a, double b, int panels, int order) {
    const GaussLegendre& g = cached_rule(order);
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(panels) * order);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        for (int j = 0; j < order; ++j) out.emplace_back(c + 0.5 * h * g.x[j], 0.5 * h * g.w[j]);
    }
    return out;
}

QuadResult fixed_gk15(const std::function<cplx(double)>& f, double a, double b, int panels, int threads) {
    if (panels < 1) panels = 1;
    const std::size_t np = static_cast<std::size_t>(panels);
    std::vector<cplx> K(np), G(np);
    const double h = (b - a) / panels;
    parallel_for(np, threads, [&](std::size_t p) {
        const double lo = a + h * static_cast<double>(p);
        auto pe = gk15(f, lo, lo + h);
        K[p] = pe.value;
        G[p] = cplx(pe.error, 0.0);
    });
    QuadResult out;
    out.value = pairwise_sum(K);
    for (auto& g : G) out.error += g.real();
    out.evals = 15L * panels;
    return out;
}

}  // namespace hmw
