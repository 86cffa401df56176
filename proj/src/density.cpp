#include "hmw/density.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hmw/quadrature.hpp"
#include "hmw/special.hpp"

namespace hmw {

double FourierPair::phi(double x) const {
    const double a = kPi * v * x;
    if (std::fabs(a) < 1e-4) return 1.0 - a * a / 3.0;
    const double s = std::sin(a) / a;
    return s * s;
}

double FourierPair::phi_hat(double y) const {
    const double ay = std::fabs(y);
    return ay < v ? (1.0 - ay / v) / v : 0.0;
}

FourierPair make_fejer(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("Fourier pair: v must be positive");
    return FourierPair{v};
}

double level_density_D(const std::vector<double>& zeros, double t_f, const std::function<double(double)>& phi,
                       double T) {
    if (!(T >= 3.0)) throw DomainError("level_density_D: T must be >= 3");
    const double s = std::log(T) / (2.0 * kPi);
    long double acc = 0.0L;
    for (double g : zeros) acc += phi(s * (g - t_f));
    return static_cast<double>(acc);
}

ExplicitH explicit_H(int delta, double t_f, const FourierPair& fp, double T) {
    if (!(T >= 10.0)) throw DomainError("explicit_H: T must be >= 10");
    if (delta != 0 && delta != 1) throw DomainError("explicit_H: delta must be 0 or 1");
    if (!(t_f >= 0.0)) throw DomainError("explicit_H: t_f must be >= 0");
    const double L = std::log(T), kappa = (1.0 + 2.0 * delta) / 4.0, lpi = std::log(kPi);
    // After r -> 2 pi r / log T: (1/log T) int phi(r) [psi(kappa + i pi r/L) + psi(kappa + i t + i pi r/L) - 2 log pi] dr
    auto bracket = [&](double r) {
        const double u = kPi * r / L;
        return digamma(cplx(kappa, u)).real() + digamma(cplx(kappa, t_f + u)).real() - 2.0 * lpi;
    };
    const double R = 1000.0;
    const int panels = static_cast<int>(std::ceil(2.0 * R * fp.v));
    long double core = 0.0L;
    for (auto [r, w] : composite_gl(-R, R, panels, 16)) core += w * fp.phi(r) * bracket(r);

    // Beyond |r| = R the Fejer kernel is replaced by its mean 1/(2 pi^2 v^2 r^2); substituting r = R/u.
    long double tail = 0.0L;
    const double c = 1.0 / (2.0 * kPi * kPi * fp.v * fp.v * R);
    for (int k = 0; k < 64; ++k) {
        const double hi = std::ldexp(1.0, -k), lo = std::ldexp(1.0, -k - 1);
        for (auto [u, w] : composite_gl(lo, hi, 1, 16)) tail += w * c * (bracket(R / u) + bracket(-R / u));
    }
    const double osc = std::log(R) / (2.0 * kPi * kPi * kPi * fp.v * fp.v * fp.v * R * R);

    ExplicitH out;
    out.quadrature = static_cast<double>(core + tail) / L;
    out.asymptotic = std::log(std::abs(cplx(kappa, t_f))) / L * fp.phi_hat(0.0);
    out.asymptotic_lemma =
        (std::log(kappa / kPi) + std::log(std::abs(cplx(kappa, t_f)) / kPi)) / L * fp.phi_hat(0.0);
    out.quad_error = osc / L;
    return out;
}

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

double kim_sarnak(std::uint64_t p) {
    const double e = 7.0 / 64.0, pp = static_cast<double>(p);
    return std::pow(pp, e) + std::pow(pp, -e);
}

struct Token {
    std::string text;
    std::size_t column;
};

double parse_real(const std::string& s, std::size_t line, std::size_t col, const char* what) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || !std::isfinite(v))
        throw ParseError(line, col, std::string("expected ") + what + ", got '" + s + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& s, std::size_t line, std::size_t col) {
    std::uint64_t v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) throw ParseError(line, col, "expected a prime, got '" + s + "'");
    return v;
}

}  // namespace

void validate_row(const SpectralRow& row, std::size_t row_number) {
    auto fail = [&](const std::string& rule) {
        throw DomainError("validation error at row " + std::to_string(row_number) + " (line " +
                          std::to_string(row.line) + "): " + rule);
    };
    if (!(row.t_f > 0.0)) fail("t_f must be positive");
    if (row.delta != 0 && row.delta != 1) fail("delta must be 0 or 1");
    for (const auto* m : {&row.lambda, &row.lambda_p2})
        for (const auto& [p, v] : *m)
            if (!is_prime_u64(p)) fail(std::to_string(p) + " is not prime");
    for (const auto& [p, v] : row.lambda) {
        if (std::fabs(v) > kim_sarnak(p) + 1e-12) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "Kim-Sarnak bound violated at p = %llu: |%.17g| > %.17g",
                          static_cast<unsigned long long>(p), v, kim_sarnak(p));
            fail(buf);
        }
        auto it = row.lambda_p2.find(p);
        if (it != row.lambda_p2.end() && std::fabs(v * v - (it->second + 1.0)) > 1e-8)
            fail("Hecke relation lambda(p)^2 = lambda(p^2) + 1 fails at p = " + std::to_string(p));
    }
}

SpectralDataset parse_dataset(std::istream& in) {
    SpectralDataset ds;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = raw.substr(0, raw.find('#'));
        std::vector<Token> toks;
        for (std::size_t i = 0; i < line.size();) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            toks.push_back({line.substr(i, j - i), i + 1});
            i = j;
        }
        if (toks.empty()) continue;
        if (toks.size() < 2) throw ParseError(lineno, toks[0].column, "expected 't_f delta' at start of row");
        SpectralRow row;
        row.line = lineno;
        row.t_f = parse_real(toks[0].text, lineno, toks[0].column, "t_f");
        const std::string& d = toks[1].text;
        if (d != "0" && d != "1") throw ParseError(lineno, toks[1].column, "delta must be 0 or 1");
        row.delta = d == "1";
        int block = 0;
        for (std::size_t k = 2; k < toks.size(); ++k) {
            const Token& tk = toks[k];
            if (tk.text == "|") {
                if (++block > 2) throw ParseError(lineno, tk.column, "at most three blocks are allowed");
                continue;
            }
            if (block == 2) {
                row.zeros.push_back(parse_real(tk.text, lineno, tk.column, "a zero ordinate"));
                continue;
            }
            const auto colon = tk.text.find(':');
            if (colon == std::string::npos || colon == 0 || colon + 1 == tk.text.size())
                throw ParseError(lineno, tk.column, "expected p:value, got '" + tk.text + "'");
            const std::uint64_t p = parse_uint(tk.text.substr(0, colon), lineno, tk.column);
            const double v = parse_real(tk.text.substr(colon + 1), lineno, tk.column + colon + 1, "a real value");
            auto& target = block == 0 ? row.lambda : row.lambda_p2;
            if (!target.emplace(p, v).second)
                throw ParseError(lineno, tk.column, "duplicate entry for p = " + std::to_string(p));
        }
        validate_row(row, ds.rows.size() + 1);
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

SpectralDataset ingest_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open dataset '" + path + "'");
    return parse_dataset(in);
}

std::string format_row(const SpectralRow& row) {
    std::ostringstream os;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", row.t_f);
    os << buf << ' ' << row.delta;
    for (const auto& [p, v] : row.lambda) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << ' ' << p << ':' << buf;
    }
    if (!row.lambda_p2.empty() || !row.zeros.empty()) {
        os << " |";
        for (const auto& [p, v] : row.lambda_p2) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << ' ' << p << ':' << buf;
        }
    }
    if (!row.zeros.empty()) {
        os << " |";
        for (double z : row.zeros) {
            std::snprintf(buf, sizeof buf, "%.17g", z);
            os << ' ' << buf;
        }
    }
    return os.str();
}

SpectralRow eisenstein_surrogate_row(double t, int delta, std::uint64_t P0) {
    if (!(t > 0.0)) throw DomainError("surrogate row: t must be positive");
    SpectralRow row;
    row.t_f = t;
    row.delta = delta;
    for (std::uint64_t p = 2; p <= P0; ++p) {
        if (!is_prime_u64(p)) continue;
        const double lam = 2.0 * std::cos(t * std::log(static_cast<double>(p)));
        row.lambda[p] = lam;
        row.lambda_p2[p] = lam * lam - 1.0;
    }
    return row;
}

double prime_sum_P(int nu, const SpectralRow& row, const FourierPair& fp, double T) {
    if (nu != 1 && nu != 2) throw DomainError("prime_sum_P: nu must be 1 or 2");
    if (!(T > 1.0)) throw DomainError("prime_sum_P: T must exceed 1");
    const double L = std::log(T);
    const double pmax = std::exp(fp.v * L / nu);  // p^nu < T^v
    const auto& lam = nu == 1 ? row.lambda : row.lambda_p2;
    std::vector<std::uint64_t> missing;
    long double acc = 0.0L;
    for (std::uint64_t p = 2; static_cast<double>(p) < pmax; ++p) {
        if (!is_prime_u64(p)) continue;
        auto it = lam.find(p);
        if (it == lam.end()) {
            missing.push_back(p);
            continue;
        }
        const double lp = std::log(static_cast<double>(p));
        acc += it->second * std::cos(nu * row.t_f * lp) * lp / (std::pow(static_cast<double>(p), 0.5 * nu) * L) *
               fp.phi_hat(nu * lp / L);
    }
    if (!missing.empty()) {
        std::string list;
        for (std::size_t i = 0; i < missing.size() && i < 20; ++i) list += (i ? "," : "") + std::to_string(missing[i]);
        if (missing.size() > 20) list += ",...";
        throw DomainError("prime_sum_P: missing lambda(p" + std::string(nu == 2 ? "^2" : "") + ") for " +
                          std::to_string(missing.size()) + " primes: " + list);
    }
    return static_cast<double>(2.0L * acc);
}

double eisenstein_prime_sum_direct(double t, double t_f, const FourierPair& fp, double T) {
    const double L = std::log(T);
    const double bound = std::pow(T, fp.v);
    double acc = 0.0;
    for (std::uint64_t n = 2; static_cast<double>(n) < bound; ++n) {
        bool prime = true;
        for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
        if (!prime) continue;
        const double lp = std::log(static_cast<double>(n));
        const double w = (1.0 - lp / (L * fp.v)) / fp.v;
        acc += 4.0 * std::cos(t * lp) * std::cos(t_f * lp) * lp / (std::sqrt(static_cast<double>(n)) * L) * w;
    }
    return acc;
}

RhPrimeSum rh_prime_sum_check(double t, double x) {
    if (!(x >= 2.0 && x <= 1e7)) throw DomainError("rh_prime_sum_check: need 2 <= x <= 1e7");
    if (!(t >= 10.0 && t <= 1e6)) throw DomainError("rh_prime_sum_check: need 10 <= t <= 1e6");
    const std::uint64_t n = static_cast<std::uint64_t>(std::floor(x));
    std::vector<bool> comp(n + 1, false);
    cplx acc = 0.0;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (comp[p]) continue;
        for (std::uint64_t k = p * p; k <= n; k += p) comp[k] = true;
        const double lp = std::log(static_cast<double>(p));
        acc += lp / static_cast<double>(p) * std::polar(1.0, -t * lp);
    }
    RhPrimeSum r;
    r.value = std::abs(acc);
    r.loglog = std::log(std::log(t));
    r.ratio = r.value / r.loglog;
    return r;
}

DensityFamily parse_family(const std::string& s) {
    if (s == "special_point") return DensityFamily::special_point;
    if (s == "central_value") return DensityFamily::central_value;
    throw DomainError("unknown density family '" + s + "'");
}

mpq_class v_law_exact(const mpq_class& mu, DensityFamily family) {
    if (!(mu > 0 && mu < 1)) throw DomainError("v_law: mu must lie in (0, 1)");
    if (family == DensityFamily::special_point) {
        if (mu <= mpq_class(1, 3)) return 1;
        if (mu <= mpq_class(1, 2)) return 3 * mu;
        return 1 + mu;
    }
    if (mu <= mpq_class(1, 4)) return 1;
    if (mu <= mpq_class(1, 3)) return 4 * mu;
    return 1 + mu;
}

double v_law(double mu, DensityFamily family) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("v_law: mu must lie in (0, 1)");
    if (family == DensityFamily::special_point) {
        if (mu <= 1.0 / 3.0) return 1.0;
        if (mu <= 0.5) return 3.0 * mu;
        return 1.0 + mu;
    }
    if (mu <= 0.25) return 1.0;
    return std::min(4.0 * mu, 1.0 + mu);
}

NonvanishingBounds nonvanishing_bounds(double mu, DensityFamily family, int order_cap, double eps) {
    if (order_cap < 1) throw DomainError("nonvanishing_bounds: order_cap must be >= 1");
    if (!(eps >= 0.0)) throw DomainError("nonvanishing_bounds: eps must be >= 0");
    NonvanishingBounds b;
    b.v = v_law(mu, family);
    if (family == DensityFamily::special_point) {
        b.p0_lower = 1.0 - 1.0 / b.v - eps;
        b.p0_odd = std::nan("");
    } else {
        b.p0_lower = 1.0 - 1.0 / b.v + 1.0 / (4.0 * b.v * b.v) - eps;
        b.p0_odd = 1.0 - 1.0 / (4.0 * b.v * b.v) - eps;
    }
    for (int m = 1; m <= order_cap; ++m) b.table.emplace_back(m, (1.0 / b.v + eps) / m);
    return b;
}

ExactLowerBounds nonvanishing_exact(const mpq_class& v) {
    if (!(v > 0)) throw DomainError("nonvanishing_exact: v must be positive");
    ExactLowerBounds r;
    r.special = 1 - 1 / v;
    r.central_even = 1 - 1 / v + 1 / (4 * v * v);
    r.central_odd = 1 - 1 / (4 * v * v);
    r.special.canonicalize();
    r.central_even.canonicalize();
    r.central_odd.canonicalize();
    return r;
}

VqMainTerm vq_main_term(std::int64_t c, std::int64_t q, double x, const ArithTables& tab) {
    if (c < 1) throw DomainError("vq_main_term: c must be >= 1");
    VqMainTerm r;
    r.sum = vq_prime_sum_oracle(1, 1, c, q, x, tab);
    const cplx Rq = variant_kloosterman(0, 1, c, q);
    r.main = x * static_cast<double>(mobius_of(static_cast<std::uint64_t>(c))) * Rq /
             static_cast<double>(totient_of(static_cast<std::uint64_t>(c)));
    r.ratio = std::abs(r.main) > 1e-9 * x ? r.sum / r.main : cplx(std::nan(""), std::nan(""));
    return r;
}

}  // namespace hmw
