#include "hmw/moments.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hmw/arith.hpp"
#include "hmw/parallel.hpp"
#include "hmw/quadrature.hpp"
#include "hmw/special.hpp"

namespace hmw {

double eval_prime_log_map(const PrimeLogMap& m) {
    double s = 0.0;
    for (const auto& [p, c] : m) s += c.get_d() * std::log(static_cast<double>(p));
    return s;
}

double MomentParams::pi_value() const { return Pi > 0.0 ? Pi : std::pow(T, 0.6); }

void MomentParams::validate() const {
    if (!(T >= 10.0)) throw DomainError("moments: T must be >= 10");
    if (delta != 0 && delta != 1) throw DomainError("moments: delta must be 0 or 1");
    const double P = pi_value();
    if (P < std::pow(T, 0.1) * (1 - 1e-12) || P > std::pow(T, 0.9) * (1 + 1e-12))
        throw DomainError("moments: need T^0.1 <= Pi <= T^0.9");
    if (m < 1 || m1 < 1 || m2 < 1) throw DomainError("moments: twists must be >= 1");
}

double gamma_delta(int delta) {
    if (delta != 0 && delta != 1) throw DomainError("gamma_delta: delta must be 0 or 1");
    const double base = kEulerGamma - std::log(8.0 * kPi * kPi);
    return delta == 0 ? base - kPi / 2.0 : base + kPi / 2.0;
}

double gamma_delta_digamma(int delta) {
    if (delta != 0 && delta != 1) throw DomainError("gamma_delta: delta must be 0 or 1");
    const double kappa = (1.0 + 2.0 * delta) / 4.0;
    return 2.0 * kEulerGamma + digamma(cplx(kappa, 0.0)).real() - 2.0 * std::log(kPi);
}

DivisorSums divisor_sums(std::uint64_t m) {
    if (m < 1) throw DomainError("divisor_sums: m must be >= 1");
    DivisorSums out{m, 0, 0.0, {}};
    for (std::uint64_t d : divisors(m)) {
        const mpq_class inv(1, static_cast<unsigned long>(d));
        out.Sigma += inv;
        out.SigmaBreve += std::log(static_cast<double>(d)) / static_cast<double>(d);
        for (auto [p, e] : factorize(d)) out.SigmaBreveExact[p] += inv * e;
    }
    out.Sigma.canonicalize();
    return out;
}

namespace {

// Contour v = theta + iu, |u| <= U, parametrised by u = theta sinh(s) so the
// 1/v peak at u = 0 is resolved. Weights include du / (2 pi v).
struct ContourRule {
    std::vector<cplx> v;
    std::vector<cplx> w;
    std::vector<cplx> a1, a2;  // v^2 + sigma [log Gamma_R(1/2+v) - log Gamma_R(1/2)], sigma = 1, 2
    ContourRule(int delta, double theta, double U) {
        const double smax = std::asinh(U / theta);
        const cplx h(0.5, 0.0);
        const cplx g0 = log_gamma_R(h, delta);
        for (auto [s, ws] : composite_gl(-smax, smax, 64, 16)) {
            const cplx vv(theta, theta * std::sinh(s));
            v.push_back(vv);
            w.push_back(ws * theta * std::cosh(s) / (2.0 * kPi * vv));
            const cplx g = log_gamma_R(h + vv, delta) - g0;
            a1.push_back(vv * vv + g);
            a2.push_back(vv * vv + 2.0 * g);
        }
    }
};

// log Gamma_R(1/2+v+2it) - log Gamma_R(1/2+2it) for every contour node.
void shift_terms(const ContourRule& C, int delta, double t, std::vector<cplx>& out) {
    const cplx b(0.5, 2.0 * t);
    out.resize(C.v.size());
    for (std::size_t k = 0; k < C.v.size(); ++k) out[k] = log_gamma_R_diff(b, C.v[k], delta);
}

cplx contour_value(const ContourRule& C, int sigma, int delta, double t, double ly, const std::vector<cplx>* extra) {
    std::vector<cplx> bp, bm;
    shift_terms(C, delta, t, bp);
    if (sigma == 2) shift_terms(C, delta, -t, bm);
    std::vector<cplx> terms(C.v.size());
    for (std::size_t k = 0; k < C.v.size(); ++k) {
        cplx e = (sigma == 1 ? C.a1[k] : C.a2[k]) + bp[k] - C.v[k] * ly;
        if (sigma == 2) e += bm[k];
        cplx val = C.w[k] * std::exp(e);
        if (extra) val *= (*extra)[k];
        terms[k] = val;
    }
    return pairwise_sum(terms);
}

constexpr double kTheta = 0.1;

int t_panels(double W, double Pi, double freq) {
    return static_cast<int>(std::ceil(W * freq / (2.0 * kPi) / 2.0)) + static_cast<int>(std::ceil(4.0 * W / Pi)) + 8;
}

}  // namespace

cplx afe_weight_fixed(int sigma, int delta, double y, double t, double U) {
    if (!(y > 0.0)) throw DomainError("afe_weight_fixed: y must be positive");
    const ContourRule C(delta, kTheta, U);
    return contour_value(C, sigma, delta, t, std::log(y), nullptr);
}

MomentResult diagonal_first(const MomentParams& p) {
    p.validate();
    const double T = p.T, P = p.pi_value();
    if (static_cast<double>(p.m) > T) throw DomainError("diagonal_first: need m <= T");
    const double X = std::pow(T, kAfeSplitExponent);
    const double ly = std::log(static_cast<double>(p.m) / X);
    const double lm = std::log(static_cast<double>(p.m));
    const ContourRule C(p.delta, kTheta, std::log(T));
    const double W = P * std::sqrt(40.0);
    const double a = std::max(0.0, T - W), b = T + W;
    const int panels = t_panels(b - a, P, 2.0 * lm + 1.0);
    auto f = [&](double t) -> cplx {
        const cplx V = contour_value(C, 1, p.delta, t, ly, nullptr);
        const double phi = std::exp(-std::pow((t - T) / P, 2));
        return (V * std::exp(cplx(0.0, -2.0 * t * lm))).real() * phi * t;
    };
    const QuadResult q = fixed_gk15(f, a, b, panels, p.threads);
    const double scale = (2.0 / (kPi * kPi)) / std::sqrt(static_cast<double>(p.m));
    MomentResult r;
    r.numeric = scale * q.value.real();
    r.quad_error = scale * q.error;
    r.main_term = p.m == 1 ? 2.0 / (kPi * std::sqrt(kPi)) * P * T : 0.0;
    r.envelope = kEnvelopeConst * std::pow(T, kMomentEps) * P *
                 ((p.m == 1 ? std::sqrt(T) : 0.0) + 1.0 / std::sqrt(static_cast<double>(p.m)));
    return r;
}

MomentResult diagonal_second(const MomentParams& p) {
    p.validate();
    const double T = p.T, P = p.pi_value();
    const std::uint64_t m1 = p.m1, m2 = p.m2;
    if (static_cast<double>(m1) * static_cast<double>(m2) > T) throw DomainError("diagonal_second: need m1 m2 <= T");
    const std::uint64_t g = static_cast<std::uint64_t>(gcd64(static_cast<std::int64_t>(m1), static_cast<std::int64_t>(m2)));
    const std::uint64_t r = (m1 / g) * (m2 / g);
    const double sr = std::sqrt(static_cast<double>(r));
    const double cut = std::pow(T, kAfeSplitExponent);
    // Dirichlet polynomial sum_{d | g} sum_n (dn)^{-1} (dn sqrt r)^{-2v}, truncated at dn sqrt r <= cut.
    std::vector<std::pair<double, double>> terms;  // (coefficient, log(dn sqrt r))
    for (std::uint64_t d : divisors(g)) {
        for (std::uint64_t n = 1; static_cast<double>(d * n) * sr <= cut; ++n) {
            const double dn = static_cast<double>(d * n);
            terms.emplace_back(1.0 / dn, std::log(dn * sr));
        }
    }
    if (terms.size() > 50'000'000) throw ComputationError("diagonal_second: truncation budget exceeded");
    const ContourRule C(p.delta, kTheta, std::log(T));
    std::vector<cplx> S(C.v.size());
    parallel_for(C.v.size(), p.threads, [&](std::size_t k) {
        std::vector<cplx> parts(terms.size());
        for (std::size_t j = 0; j < terms.size(); ++j)
            parts[j] = terms[j].first * std::exp(-2.0 * C.v[k] * terms[j].second);
        S[k] = pairwise_sum(parts);
    });
    const double W = P * std::sqrt(40.0);
    const double a = std::max(0.0, T - W), b = T + W;
    const int panels = t_panels(b - a, P, 1.0);
    auto f = [&](double t) -> cplx {
        const cplx V = contour_value(C, 2, p.delta, t, 0.0, &S);
        const double phi = std::exp(-std::pow((t - T) / P, 2));
        return V.real() * phi * t;
    };
    const QuadResult q = fixed_gk15(f, a, b, panels, p.threads);
    const double scale = (4.0 / (kPi * kPi)) / sr;
    const DivisorSums ds = divisor_sums(g);
    MomentResult out;
    out.numeric = scale * q.value.real();
    out.quad_error = scale * q.error;
    out.main_term = 2.0 / (kPi * std::sqrt(kPi * static_cast<double>(r))) * P * T *
                    ((std::log(T / static_cast<double>(r)) + gamma_delta(p.delta)) * ds.Sigma.get_d() -
                     2.0 * ds.SigmaBreve);
    out.envelope = kEnvelopeConst * std::pow(T, kMomentEps) *
                   (P * std::sqrt(T) + T / sr + P * P * P / (T * sr));
    return out;
}

OffdiagResult offdiag_geometric(const MomentParams& p, int sign, double N, Parity parity) {
    p.validate();
    if (sign != 1 && sign != -1) throw DomainError("offdiag_geometric: sign must be +1 or -1");
    if (p.T > 2000.0 * (1 + 1e-12)) throw DomainError("offdiag_geometric: desk scale requires T <= 2000");
    if (!(N >= 1.0)) throw DomainError("offdiag_geometric: N must be >= 1");
    const double T = p.T, P = p.pi_value();
    const double mm = static_cast<double>(p.m);
    const double climit = mm * N / T;
    auto c_max = static_cast<std::int64_t>(std::ceil(climit)) - 1;
    if (c_max < 0) c_max = 0;
    OffdiagResult out{0.0, 0.0, c_max, 0};
    if (c_max == 0) return out;
    const auto n_lo = static_cast<std::int64_t>(std::ceil(N));
    const auto n_hi = static_cast<std::int64_t>(std::floor(2.0 * N));
    const std::size_t count = n_hi >= n_lo ? static_cast<std::size_t>(n_hi - n_lo + 1) : 0;
    if (count * static_cast<std::size_t>(c_max) > 2'000'000)
        throw ComputationError("offdiag_geometric: term budget exceeded");
    TestWeight wt;
    wt.T = T;
    wt.Pi = P;
    wt.parity = parity;
    auto weight = [](double x) {
        if (x <= 1.0 || x >= 2.0) return 0.0;
        const double z = 2.0 * x - 3.0;
        return std::exp(1.0 - 1.0 / (1.0 - z * z)) / std::sqrt(x);
    };
    std::vector<cplx> per_n(count);
    parallel_for(count, p.threads, [&](std::size_t i) {
        const std::int64_t n = n_lo + static_cast<std::int64_t>(i);
        const double wn = weight(static_cast<double>(n) / N);
        if (wn == 0.0) return;
        const double y = std::sqrt(mm * static_cast<double>(n));
        std::vector<cplx> parts;
        for (std::int64_t c = 1; c <= c_max; ++c) {
            const double S = kloosterman(static_cast<std::int64_t>(p.m), sign * n, c);
            if (S == 0.0) continue;
            const double x = 4.0 * kPi * y / static_cast<double>(c);
            parts.push_back(S / static_cast<double>(c) * wn * fast_H(wt, sign, x, y).value);
        }
        per_n[i] = pairwise_sum(parts);
    });
    out.value = pairwise_sum(per_n);
    out.terms = static_cast<long>(count) * c_max;
    out.bound_ratio = std::abs(out.value) / ((P + mm) * std::pow(T, 0.5 + kMomentEps));
    return out;
}

EisensteinResult eisenstein_term(int order, const MomentParams& p) {
    p.validate();
    if (order != 1 && order != 2) throw DomainError("eisenstein_term: order must be 1 or 2");
    if (p.T > 5000.0 * (1 + 1e-12)) throw DomainError("eisenstein_term: desk scale requires T <= 5000");
    const double T = p.T, P = p.pi_value();
    const double W = P * std::sqrt(40.0);
    const double a = std::max(1.0, T - W), b = T + W;
    const cplx zhalf = zeta_em(cplx(0.5, 0.0));
    double lm;
    std::function<cplx(double)> f;
    if (order == 1) {
        const double l = std::log(static_cast<double>(p.m));
        lm = l;
        f = [&, l](double t) -> cplx {
            const double phi = std::exp(-std::pow((t - T) / P, 2));
            const auto [zh, z1] = zeta_em_pair(0.5, 1.0, 2.0 * t);
            return divisor_tau_nu(p.m, cplx(0.0, t)) * std::exp(cplx(0.0, -t * l)) * zh * phi / std::norm(z1);
        };
    } else {
        const double lq = std::log(static_cast<double>(p.m1) / static_cast<double>(p.m2));
        lm = std::log(static_cast<double>(p.m1) * static_cast<double>(p.m2));
        f = [&, lq](double t) -> cplx {
            const double phi = std::exp(-std::pow((t - T) / P, 2));
            const auto [zh, z1] = zeta_em_pair(0.5, 1.0, 2.0 * t);
            return divisor_tau_nu(p.m1, cplx(0.0, t)) * divisor_tau_nu(p.m2, cplx(0.0, t)) * std::cos(t * lq) *
                   std::norm(zh) * phi / std::norm(z1);
        };
    }
    // zeta(1/2+2it) oscillates at rate about 2 log t; sixteen nodes cover several periods.
    const double freq = 2.0 * std::log(b) + lm + 1.0;
    const int panels = static_cast<int>(std::ceil((b - a) * freq / (2.0 * kPi) / 3.0)) + static_cast<int>(std::ceil(4.0 * W / P)) + 8;
    const QuadResult q = fixed_gk15(f, a, b, panels, p.threads);
    const cplx pref = (2.0 / kPi) * (order == 1 ? zhalf : zhalf * zhalf);
    EisensteinResult out;
    out.value = pref * q.value;
    out.quad_error = std::abs(pref) * q.error;
    double tau;
    if (order == 1) {
        tau = static_cast<double>(divisors(p.m).size());
        out.envelope = std::pow(T, kMomentEps) * tau * (std::sqrt(P) * std::pow(T, 1273.0 / 8106.0) + P);
    } else {
        tau = static_cast<double>(divisors(p.m1).size() * divisors(p.m2).size());
        out.envelope = std::pow(T, kMomentEps) * tau * (std::pow(T, 1273.0 / 4053.0) + P);
    }
    out.ratio = std::abs(out.value) / out.envelope;
    return out;
}

double unsmooth_weight(double T, double Pi, double H, double t) {
    if (!(Pi > 0.0)) throw DomainError("unsmooth_weight: Pi must be positive");
    if (H < std::pow(Pi, 1.1) * (1 - 1e-12) || H > T / 3.0 * (1 + 1e-12))
        throw DomainError("unsmooth_weight: need Pi^1.1 <= H <= T/3");
    const double v = 0.5 * (std::erf((T + H - t) / Pi) - std::erf((T - H - t) / Pi));
    return std::clamp(v, 0.0, 1.0);
}

namespace {
// Antiderivative of K (log K + g): K^2 (2 log K - 1)/4 + g K^2 / 2.
double second_antiderivative(double K, double g) {
    if (K <= 0.0) return 0.0;
    return K * K * (2.0 * std::log(K) - 1.0) / 4.0 + g * K * K / 2.0;
}
double second_window(double T, double H, int delta) {
    const double g = gamma_delta(delta);
    return (second_antiderivative(T + H, g) - second_antiderivative(T - H, g)) / (kPi * kPi);
}
}  // namespace

double unsmoothed_main_terms(UnsmoothedKind kind, double T, double H, int delta) {
    if (!(H >= 1.0 && H <= T / 3.0 * (1 + 1e-12))) throw DomainError("unsmoothed_main_terms: need 1 <= H <= T/3");
    if (kind == UnsmoothedKind::first) return 4.0 / (kPi * kPi) * H * T;
    return second_window(T, H, delta);
}

double unsmoothed_long_interval(UnsmoothedKind kind, double T, int delta) {
    if (!(T > 1.0)) throw DomainError("unsmoothed_long_interval: T must exceed 1");
    if (kind == UnsmoothedKind::first) return T * T / (kPi * kPi);
    const double g = gamma_delta(delta);
    return T * T * std::log(T) / (2.0 * kPi * kPi) + (2.0 * g - 1.0) / (4.0 * kPi * kPi) * T * T;
}

double unsmoothed_dyadic_sum(double T, int delta) {
    if (!(T > 1.0)) throw DomainError("unsmoothed_dyadic_sum: T must exceed 1");
    std::vector<double> parts;
    double hi = T;
    for (int j = 0; j < 200; ++j) {
        const double c = 0.75 * hi, H = 0.25 * hi;  // window [hi/2, hi], H = c/3
        parts.push_back(second_window(c, H, delta));
        hi *= 0.5;
    }
    // Smallest pieces first.
    std::reverse(parts.begin(), parts.end());
    double s = 0.0;
    for (double x : parts) s += x;
    return s;
}

}  // namespace hmw
