#include "hmw/special.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hmw {

namespace {

// B_{2k} for k = 1..12.
constexpr double kB2k[12] = {1.0 / 6,          -1.0 / 30,       1.0 / 42,           -1.0 / 30,
                             5.0 / 66,         -691.0 / 2730,   7.0 / 6,            -3617.0 / 510,
                             43867.0 / 798,    -174611.0 / 330, 854513.0 / 138,     -236364091.0 / 2730};

const double kHalfLog2Pi = 0.918938533204672741780329736405617639;

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx stirling_log_gamma(cplx z) {
    cplx s = (z - 0.5) * std::log(z) - z + kHalfLog2Pi;
    const cplx iz = 1.0 / z, iz2 = iz * iz;
    cplx p = iz;
    for (int k = 1; k <= 12; ++k) {
        s += kB2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= iz2;
    }
    return s;
}

}  // namespace

cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z)) throw DomainError("log_gamma: pole");
    if (std::abs(z.imag()) >= 20.0 && z.real() > -10.0) return stirling_log_gamma(z);
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
    }
    cplx shift = 0.0;
    while (z.real() < 15.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    return stirling_log_gamma(z) + shift;
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

cplx log_gamma_diff(cplx z, cplx a) {
    const cplx za = z + a;
    if (std::abs(z.imag()) < 20.0 || std::abs(za.imag()) < 20.0 || z.real() <= 0.0 || za.real() <= 0.0 ||
        std::abs(a) > 0.25 * std::abs(z))
        return log_gamma(za) - log_gamma(z);
    // Stirling difference with log(z+a) - log(z) taken as log1p(a/z).
    const cplx w = a / z;
    const cplx l1p = 2.0 * std::atanh(w / (2.0 + w));
    cplx s = (z - 0.5) * l1p + a * std::log(za) - a;
    const cplx iz = 1.0 / z, iza = 1.0 / za;
    cplx p = iz, q = iza;
    const cplx iz2 = iz * iz, iza2 = iza * iza;
    for (int k = 1; k <= 12; ++k) {
        s += kB2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * (q - p);
        p *= iz2;
        q *= iza2;
    }
    return s;
}

cplx digamma(cplx z) {
    if (is_nonpositive_integer(z)) throw DomainError("digamma: pole");
    if (z.real() < 0.5 && std::abs(z.imag()) < 20.0) {
        // psi(1-z) - psi(z) = pi cot(pi z).
        return digamma(1.0 - z) - kPi / std::tan(kPi * z);
    }
    cplx acc = 0.0;
    while (std::abs(z) < 16.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    cplx s = std::log(z) - 0.5 / z;
    const cplx iz2 = 1.0 / (z * z);
    cplx p = iz2;
    for (int k = 1; k <= 12; ++k) {
        s -= kB2k[k - 1] / (2.0 * k) * p;
        p *= iz2;
    }
    return s + acc;
}

cplx log_gamma_R(cplx s, int delta) {
    const cplx a = 0.5 * (s + static_cast<double>(delta));
    if (is_nonpositive_integer(a)) throw DomainError("gamma_R: pole at s = -delta - 2k");
    return -0.5 * s * std::log(kPi) + log_gamma(a);
}

cplx gamma_R(cplx s, int delta) { return std::exp(log_gamma_R(s, delta)); }

cplx log_gamma_R_diff(cplx s, cplx a, int delta) {
    const cplx z = 0.5 * (s + static_cast<double>(delta));
    if (is_nonpositive_integer(z) || is_nonpositive_integer(z + 0.5 * a))
        throw DomainError("gamma_R: pole at s = -delta - 2k");
    return -0.5 * a * std::log(kPi) + log_gamma_diff(z, 0.5 * a);
}

namespace {

void zeta_check(cplx s, int terms) {
    if (terms < 10) throw DomainError("zeta_em: terms must be >= 10");
    if (s.real() <= 0.0) throw DomainError("zeta_em: requires Re s > 0");
    if (s == cplx(1.0, 0.0)) throw DomainError("zeta_em: pole at s = 1");
}

// N/(s-1) N^{-s} + N^{-s}/2 plus the Bernoulli tail B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}.
cplx zeta_tail(cplx s, long N) {
    const double lN = std::log(static_cast<double>(N));
    const cplx Ns = std::exp(-s * lN);
    cplx sum = Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
    cplx poch = s;
    cplx pw = Ns / static_cast<double>(N);
    double fact = 2.0;
    for (int k = 1; k <= 12; ++k) {
        sum += kB2k[k - 1] / fact * poch * pw;
        poch *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
        pw /= static_cast<double>(N) * static_cast<double>(N);
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return sum;
}

long zeta_terms(double im, int terms) {
    return std::max<long>(terms, static_cast<long>(std::ceil(2.0 * std::abs(im))) + 10);
}

}  // namespace

cplx zeta_em(cplx s, int terms) {
    zeta_check(s, terms);
    const long N = zeta_terms(s.imag(), terms);
    cplx sum = 0.0;
    // Small terms first.
    for (long n = N - 1; n >= 1; --n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    return sum + zeta_tail(s, N);
}

std::pair<cplx, cplx> zeta_em_pair(double sigma1, double sigma2, double t, int terms) {
    const cplx s1(sigma1, t), s2(sigma2, t);
    zeta_check(s1, terms);
    zeta_check(s2, terms);
    const long N = zeta_terms(t, terms);
    thread_local std::vector<double> logs{0.0};
    while (static_cast<long>(logs.size()) < N) logs.push_back(std::log(static_cast<double>(logs.size())));
    const double ds = sigma2 - sigma1;
    const bool half_one = sigma1 == 0.5 && sigma2 == 1.0;
    double r1 = 0.0, i1 = 0.0, r2 = 0.0, i2 = 0.0;
    for (long n = N - 1; n >= 1; --n) {
        const double l = logs[static_cast<std::size_t>(n)];
        const double c = std::cos(t * l), sn = std::sin(t * l);
        double a1, a2;
        if (half_one) {
            a1 = 1.0 / std::sqrt(static_cast<double>(n));
            a2 = a1 * a1;
        } else {
            a1 = std::exp(-sigma1 * l);
            a2 = a1 * std::exp(-ds * l);
        }
        r1 += a1 * c;
        i1 -= a1 * sn;
        r2 += a2 * c;
        i2 -= a2 * sn;
    }
    return {cplx(r1, i1) + zeta_tail(s1, N), cplx(r2, i2) + zeta_tail(s2, N)};
}

double omega_eis(double t) {
    const cplx z = zeta_em(cplx(1.0, 2.0 * t));
    return 1.0 / std::norm(z);
}

cplx log_gamma_factor(int sigma, int delta, cplx v, double t) {
    if (sigma != 1 && sigma != 2) throw DomainError("gamma_factor: sigma must be 1 or 2");
    if (delta != 0 && delta != 1) throw DomainError("gamma_factor: delta must be 0 or 1");
    if (!(v.real() / 2.0 + 0.25 + delta / 2.0 > 0.0))
        throw DomainError("gamma_factor: precondition Re(v)/2 + 1/4 + delta/2 > 0 violated");
    const cplx h(0.5, 0.0), it2(0.0, 2.0 * t);
    const cplx g0 = log_gamma_R_diff(h, v, delta);
    cplx s = v * v + g0 + log_gamma_R_diff(h + it2, v, delta);
    if (sigma == 2) s += g0 + log_gamma_R_diff(h - it2, v, delta);
    return s;
}

cplx gamma_factor(int sigma, int delta, cplx v, double t) {
    return std::exp(log_gamma_factor(sigma, delta, v, t));
}

cplx epsilon_factor(int delta, double t) {
    const cplx h(0.5, 0.0), it2(0.0, 2.0 * t);
    const cplx d = log_gamma_R(h - it2, delta) - log_gamma_R(h + it2, delta);
    return std::exp(d);
}

AfeValue afe_weight_V(const AfeWeightSpec& spec, double y, double t) {
    if (!(y > 0.0)) throw DomainError("afe_weight_V: y must be positive");
    if (spec.U < 1.0) throw DomainError("afe_weight_V: contour height U must be >= 1");
    if (!(spec.theta > 0.0)) throw DomainError("afe_weight_V: theta must be positive");
    const double ly = std::log(y);
    // v = theta + iu, dv/(2 pi i v) = du / (2 pi v).
    auto f = [&](double u) -> cplx {
        const cplx v(spec.theta, u);
        return std::exp(log_gamma_factor(spec.sigma, spec.delta, v, t) - v * ly) / (2.0 * kPi * v);
    };
    const double freq = std::abs(ly) + spec.sigma * (std::log(std::abs(t) + 2.0) + 1.0);
    QuadOptions opt;
    opt.abs_tol = 1e-10;
    opt.max_depth = 30;
    opt.panels = std::max(8, static_cast<int>(std::ceil(2.0 * spec.U * freq / kPi)));
    const QuadResult q = integrate(f, -spec.U, spec.U, opt);
    const double trunc = std::pow(std::abs(t) + 1.0, spec.sigma * spec.theta / 2.0) /
                         (std::pow(y, spec.theta) * std::exp(spec.U * spec.U / 2.0));
    return {q.value, q.error, trunc, q.evals};
}

}  // namespace hmw
