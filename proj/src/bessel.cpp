#include "hmw/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hmw/quadrature.hpp"
#include "hmw/special.hpp"

namespace hmw {

namespace {
const double kSqrt40 = std::sqrt(40.0);
const double kSqrtPi = std::sqrt(kPi);
}  // namespace

void TestWeight::validate() const {
    if (!(T >= 10.0)) throw DomainError("TestWeight: T must be >= 10");
    if (!(Pi >= 1.0 && Pi <= T)) throw DomainError("TestWeight: need 1 <= Pi <= T");
    if (mode == GammaMode::afe) {
        if (sigma != 1 && sigma != 2) throw DomainError("TestWeight: sigma must be 1 or 2");
        if (delta != 0 && delta != 1) throw DomainError("TestWeight: delta must be 0 or 1");
        if (!(v.real() > 0.0)) throw DomainError("TestWeight: afe mode needs Re v > 0");
    }
}

double TestWeight::phi(double t) const {
    const double z = (t - T) / Pi;
    return std::exp(-z * z);
}

cplx TestWeight::gamma(double t) const {
    if (mode == GammaMode::constant_one) return 1.0;
    return gamma_factor(sigma, delta, v, t);
}

cplx TestWeight::h(double t, double y) const {
    auto one = [&](double yy) {
        const double ly = std::log(yy);
        return gamma(t) * std::exp(cplx(0.0, -2.0 * t * ly)) * phi(t) +
               gamma(-t) * std::exp(cplx(0.0, 2.0 * t * ly)) * phi(-t);
    };
    return parity == Parity::plus_h ? one(y) : one(y) + one(1.0 / y);
}

double TestWeight::tau() const {
    if (mode == GammaMode::constant_one) return 0.0;
    return sigma * v.real() / 2.0;
}

std::string TestWeight::regime() const {
    if (mode == GammaMode::constant_one) return "gamma=1,tau=0";
    const bool small = v.real() < 0.5;
    return std::string(small ? "tau=sigma*eps/2" : "tau=sigma/2") + ",theta=" +
           std::to_string(v.real()) + ",sigma=" + std::to_string(sigma) +
           ",delta=" + std::to_string(delta);
}

double TestWeight::t_halfwidth() const { return Pi * kSqrt40; }

double phase_f(int sign, double r, double v, double w) {
    return v * std::exp(r) + (sign >= 0 ? 1.0 : -1.0) * w * std::exp(-r);
}

double r_window(double Pi) { return std::sqrt(std::log(1e16)) / Pi; }

namespace {

int check_sign(int sign) {
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    return sign;
}

// Transform of t phi(t) gamma(t) at frequency 2r, as a function of r.
struct InnerTransform {
    const TestWeight& wt;
    std::vector<double> t;
    std::vector<cplx> wgt;  // quadrature weight times gamma(t) phi(t) t
    explicit InnerTransform(const TestWeight& w) : wt(w) {
        if (wt.mode == GammaMode::constant_one) return;
        const double a = wt.T - wt.t_halfwidth(), b = wt.T + wt.t_halfwidth();
        auto nodes = composite_gl(a, b, 96, 16);
        for (auto [tt, ww] : nodes) {
            t.push_back(tt);
            wgt.push_back(ww * wt.gamma(tt) * wt.phi(tt) * tt);
        }
    }
    cplx operator()(double r) const {
        if (wt.mode == GammaMode::constant_one) {
            const double P = wt.Pi, T = wt.T;
            return kSqrtPi * P * cplx(T, P * P * r) *
                   std::exp(cplx(-P * P * r * r, 2.0 * T * r));
        }
        cplx s = 0.0;
        for (std::size_t j = 0; j < t.size(); ++j) s += wgt[j] * std::exp(cplx(0.0, 2.0 * t[j] * r));
        return s;
    }
};

BesselEval fast_single(const TestWeight& wt, const InnerTransform& K, int sign, double x, double y) {
    const double v = x * y / 2.0, w = x / y / 2.0;
    const double R = r_window(wt.Pi);
    // Constant part of the phase reduced once, so large v keeps full relative accuracy.
    const double base = static_cast<double>(
        std::fmod(static_cast<long double>(v) + sign * static_cast<long double>(w), 2.0L * std::acos(-1.0L)));
    auto f = [&](double r) -> cplx {
        const double ph = base + v * std::expm1(r) + sign * w * std::expm1(-r);
        return (4.0 / (kPi * kPi)) * std::cos(ph) * K(r);
    };
    const double fmax = 2.0 * wt.T + wt.t_halfwidth() + (v + w) * std::exp(R);
    QuadOptions opt;
    opt.abs_tol = 1e-13 * wt.Pi * wt.T;
    opt.panels = std::max(8, static_cast<int>(std::ceil(2.0 * R * fmax / (2.0 * kPi))));
    const QuadResult q = integrate(f, -R, R, opt);
    // tanh(pi t) -> 1 and the dropped phi(-t) branch.
    const double tanh_mass =
        integrate([&](double t) -> cplx { return 2.0 * std::exp(-2.0 * kPi * t) * wt.phi(t) * t; }, 0.0,
                  std::max(1.0, wt.T), QuadOptions{1e-18, 1e-6, 30, 8, 1'000'000})
            .value.real();
    double gmax = 1.0;
    if (wt.mode == GammaMode::afe)
        gmax = std::abs(wt.gamma(wt.T + wt.t_halfwidth())) + std::abs(wt.gamma(-wt.T - wt.t_halfwidth()));
    const double mirror = 0.5 * wt.Pi * wt.Pi * std::exp(-std::pow(wt.T / wt.Pi, 2));
    const double drop = (4.0 / (kPi * kPi)) * 2.0 * R * gmax * (tanh_mass + mirror);
    return {q.value, BesselMethod::fast_r_integral, q.error + drop, x, y, sign, wt.tau(), wt.regime(), q.evals};
}

}  // namespace

BesselEval fast_H(const TestWeight& wt, int sign, double x, double y) {
    wt.validate();
    check_sign(sign);
    if (!(y > 0.0)) throw DomainError("fast_H: y must be positive");
    if (!(x > std::pow(wt.T, -8.0))) throw DomainError("fast_H: regime error, x below T^{-8}");
    const InnerTransform K(wt);
    BesselEval a = fast_single(wt, K, sign, x, y);
    if (wt.parity == Parity::plus_h) return a;
    const BesselEval b = fast_single(wt, K, sign, x, 1.0 / y);
    a.value += b.value;
    a.est_error += b.est_error;
    a.evals += b.evals;
    return a;
}

namespace {

struct OracleState {
    long evals = 0;
    long budget;
};

// One h-branch: weight(t) e^{2 i t (r - c0)} with the window centred at c0.
QuadResult oracle_branch(const TestWeight& wt, int sign, double x, double ly, bool negative_branch,
                         OracleState& st) {
    const double hw = wt.t_halfwidth();
    double ta, tb, c0;
    if (!negative_branch) {
        ta = std::max(0.0, wt.T - hw);
        tb = wt.T + hw;
        c0 = ly;  // y^{-2it} e^{2itr}
    } else {
        ta = 0.0;
        tb = std::max(0.0, hw - wt.T);
        c0 = -ly;
    }
    QuadResult zero;
    if (tb <= ta) return zero;
    const double R = r_window(wt.Pi);
    auto inner = [&](double r) -> cplx {
        auto g = [&](double t) -> cplx {
            const double tt = negative_branch ? -t : t;
            return wt.gamma(tt) * wt.phi(tt) * std::tanh(kPi * t) * t *
                   std::exp(cplx(0.0, 2.0 * t * (r - c0)));
        };
        QuadOptions o;
        o.abs_tol = 1e-14 * wt.Pi * wt.T;
        o.panels = std::max(16, static_cast<int>(std::ceil((tb - ta) * std::abs(r - c0) / kPi)) + 8);
        o.max_evals = st.budget;
        QuadResult q = integrate(g, ta, tb, o);
        st.evals += q.evals;
        if (st.evals > st.budget) throw ComputationError("oracle_H: node budget exceeded");
        return q.value;
    };
    auto outer = [&](double r) -> cplx {
        const double arg = sign > 0 ? x * std::cosh(r) : x * std::sinh(r);
        return (4.0 / (kPi * kPi)) * std::cos(arg) * inner(r);
    };
    const double fmax = 2.0 * wt.T + hw + x * std::cosh(std::abs(c0) + R);
    QuadOptions opt;
    opt.abs_tol = 1e-12 * wt.Pi * wt.T;
    opt.panels = std::max(8, static_cast<int>(std::ceil(2.0 * R * fmax / (2.0 * kPi))));
    opt.max_evals = st.budget;
    QuadResult q = integrate(outer, c0 - R, c0 + R, opt);
    return q;
}

}  // namespace

BesselEval oracle_H(const TestWeight& wt, int sign, double x, double y, long budget) {
    wt.validate();
    check_sign(sign);
    if (!(y > 0.0)) throw DomainError("oracle_H: y must be positive");
    if (!(x > std::pow(wt.T, -8.0))) throw DomainError("oracle_H: regime error, x below T^{-8}");
    OracleState st{0, budget};
    std::vector<double> ys{y};
    if (wt.parity == Parity::h2_cosine) ys.push_back(1.0 / y);
    BesselEval out{0.0, BesselMethod::nested_oracle, 0.0, x, y, sign, wt.tau(), wt.regime(), 0};
    for (double yy : ys) {
        for (bool neg : {false, true}) {
            const QuadResult q = oracle_branch(wt, sign, x, std::log(yy), neg, st);
            out.value += q.value;
            out.est_error += q.error;
        }
    }
    // Gaussian mass outside the t-window and r-window, both below 1e-16 relative.
    out.est_error += 1e-15 * wt.Pi * wt.T;
    out.evals = st.evals;
    return out;
}

bool window_predicate(double T, double Pi, double v, double w) {
    if (!(w < Pi)) throw DomainError("window_predicate: requires w < Pi");
    return std::abs(2.0 * T - v) <= std::pow(Pi, 0.1) * (Pi + T / Pi);
}

IVariant parse_variant(const std::string& s) {
    if (s == "-+" || s == "mp") return IVariant::mp;
    if (s == "+-" || s == "pm") return IVariant::pm;
    if (s == "++" || s == "pp") return IVariant::pp;
    if (s == "--" || s == "mm") return IVariant::mm;
    throw DomainError("unknown I-variant '" + s + "'");
}

const char* variant_name(IVariant v) {
    switch (v) {
        case IVariant::mp: return "-+";
        case IVariant::pm: return "+-";
        case IVariant::pp: return "++";
        case IVariant::mm: return "--";
    }
    return "?";
}

cplx g_profile(double rho, double T, double Pi) {
    return (2.0 / (kPi * kSqrtPi)) * cplx(1.0, Pi / T * rho) * std::exp(-rho * rho);
}

IValue I_integral(IVariant variant, int sign, double T, double Pi, double v, double w) {
    check_sign(sign);
    const double s = sign;
    const double R = r_window(Pi);
    auto rho = [](double r) { return std::expm1(r); };
    auto phase = [&](double r) {
        switch (variant) {
            case IVariant::mp: return -(rho(r) * v + s * rho(-r) * w);
            case IVariant::pp: return rho(r) * v + s * rho(-r) * w;
            case IVariant::mm: return -(rho(r) * w + s * rho(-r) * v);
            case IVariant::pm: return rho(r) * w + s * rho(-r) * v;
        }
        return 0.0;
    };
    auto dphase = [&](double r) {
        switch (variant) {
            case IVariant::mp: return -rho(r);
            case IVariant::pp: return rho(r);
            case IVariant::mm: return -s * rho(-r);
            case IVariant::pm: return s * rho(-r);
        }
        return 0.0;
    };
    auto base = [&](double r) { return Pi * T * g_profile(Pi * r, T, Pi) * std::exp(cplx(0.0, 2.0 * T * r + phase(r))); };
    const double fmax = 2.0 * T + (std::abs(v) + std::abs(w)) * std::exp(R);
    QuadOptions opt;
    opt.abs_tol = 1e-13 * Pi * T;
    opt.panels = std::max(8, static_cast<int>(std::ceil(2.0 * R * fmax / (2.0 * kPi))));
    const QuadResult a = integrate(base, -R, R, opt);
    const QuadResult b = integrate([&](double r) { return base(r) * cplx(0.0, dphase(r)); }, -R, R, opt);
    return {a.value, b.value, a.error, b.error};
}

double TestBump::F(double x) const {
    const double z = x - center;
    if (kind == Kind::gaussian) return std::exp(-kPi * (z / width) * (z / width));
    if (std::abs(z) >= width) return 0.0;
    return 0.5 * (1.0 + std::cos(kPi * z / width));
}

cplx TestBump::Fhat(double y) const {
    const cplx shift = std::exp(cplx(0.0, -2.0 * kPi * center * y));
    if (kind == Kind::gaussian) return width * std::exp(-kPi * width * width * y * y) * shift;
    const double L = width;
    double val;
    const double d = 1.0 - 4.0 * L * L * y * y;
    if (std::abs(y) < 1e-12) {
        val = L;
    } else if (std::abs(d) < 1e-9) {
        val = L / 2.0;
    } else {
        val = std::sin(2.0 * kPi * L * y) / (2.0 * kPi * y * d);
    }
    return val * shift;
}

double poisson_verify(const TestBump& F, std::int64_t alpha, std::int64_t c) {
    if (c < 1) throw DomainError("poisson_verify: c must be >= 1");
    if (!(F.width > 0.0)) throw DomainError("poisson_verify: width must be positive");
    // Left side: sum over the (numerical) support of F.
    const double half = F.kind == TestBump::Kind::gaussian ? F.width * std::sqrt(std::log(1e17) / kPi) + 1.0
                                                           : F.width + 1.0;
    std::vector<cplx> lhs;
    for (auto n = static_cast<std::int64_t>(std::floor(F.center - half));
         n <= static_cast<std::int64_t>(std::ceil(F.center + half)); ++n) {
        const double fv = F.F(static_cast<double>(n));
        if (fv != 0.0) lhs.push_back(e_rat(alpha * n, c) * fv);
    }
    // Right side: F-hat at y = k - alpha/c, k integer, out to the 1e-14 tail.
    double K;
    if (F.kind == TestBump::Kind::gaussian) {
        K = std::sqrt(std::log(1e17 * std::max(1.0, F.width)) / kPi) / F.width + 2.0;
    } else {
        K = 1.0 / (F.width * std::sqrt(8.0 * kPi * 1e-14)) + 2.0;
        K = std::min(K, 1e7);
    }
    const double shift = static_cast<double>(((alpha % c) + c) % c) / static_cast<double>(c);
    std::vector<cplx> rhs;
    const auto kmax = static_cast<std::int64_t>(std::ceil(K));
    // Largest terms last-summed would lose digits; go from the tails inward.
    for (std::int64_t k = kmax; k >= 1; --k) {
        rhs.push_back(F.Fhat(static_cast<double>(k) - shift));
        rhs.push_back(F.Fhat(static_cast<double>(-k) - shift));
    }
    rhs.push_back(F.Fhat(-shift));
    cplx L = 0.0, Rr = 0.0;
    for (auto& z : lhs) L += z;
    for (auto& z : rhs) Rr += z;
    return std::abs(L - Rr);
}

}  // namespace hmw
