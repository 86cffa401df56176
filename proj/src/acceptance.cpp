#include "hmw/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "hmw/arith.hpp"
#include "hmw/bessel.hpp"
#include "hmw/density.hpp"
#include "hmw/mollifier.hpp"
#include "hmw/moments.hpp"
#include "hmw/parallel.hpp"
#include "hmw/quadrature.hpp"
#include "hmw/special.hpp"

namespace hmw {

namespace {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string fix(double x, int digits = 6) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

Criterion luo(const AcceptanceOptions& opt) {
    Criterion c{"1", "Luo identity, m,n <= 20, c <= 300"};
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> worst(300, 0.0);
    parallel_for(300, opt.threads, [&](std::size_t i) {
        const std::int64_t cc = static_cast<std::int64_t>(i) + 1;
        for (std::int64_t m = 1; m <= 20; ++m)
            for (std::int64_t n = 1; n <= 20; ++n) worst[i] = std::max(worst[i], luo_identity_check(m, n, cc));
    });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.value = *std::max_element(worst.begin(), worst.end());
    c.tolerance = 1e-7;
    const bool fast = opt.threads > 1 || secs < 60.0;
    c.pass = c.value <= c.tolerance && fast;
    c.detail = "max defect " + sci(c.value) + (fast ? "; runtime under 60 s" : "; runtime over 60 s");
    return c;
}

Criterion ramanujan_spec() {
    Criterion c{"2", "kloosterman(1,0,c) = mu(c), c <= 1e4"};
    const auto tab = build_tables(10000);
    std::size_t bad = 0;
    double dev = 0.0;
    for (std::int64_t cc = 1; cc <= 10000; ++cc) {
        const double s = kloosterman(1, 0, cc);
        const int mu = tab.mobius[static_cast<std::size_t>(cc)];
        dev = std::max(dev, std::fabs(s - mu));
        if (std::llround(s) != mu) ++bad;
    }
    c.value = static_cast<double>(bad);
    c.tolerance = 0.0;
    c.pass = bad == 0;
    c.detail = "mismatches " + std::to_string(bad) + "; max rounding residue " + sci(dev);
    return c;
}

Criterion weil(const AcceptanceOptions& opt) {
    Criterion c{"3", "Weil bound, m,n <= 50, c <= 500"};
    std::vector<double> worst(500, 0.0);
    std::vector<int> fails(500, 0);
    parallel_for(500, opt.threads, [&](std::size_t i) {
        const ModulusContext ctx(static_cast<std::int64_t>(i) + 1);
        for (std::int64_t m = 1; m <= 50; ++m)
            for (std::int64_t n = 1; n <= 50; ++n) {
                const WeilWitness w = weil_check(ctx, m, n);
                worst[i] = std::max(worst[i], w.ratio);
                if (!w.ok) ++fails[i];
            }
    });
    c.value = *std::max_element(worst.begin(), worst.end());
    c.tolerance = 1.0;
    long f = 0;
    for (int x : fails) f += x;
    c.pass = f == 0 && c.value <= 1.0 + 1e-9;
    c.detail = "max |S|/(tau(c) sqrt(gcd) sqrt(c)) " + fix(c.value) + "; violations " + std::to_string(f);
    return c;
}

Criterion characters(const AcceptanceOptions& opt) {
    Criterion c{"4", "Character decomposition, c <= 60, q in {1,2,3}"};
    std::vector<double> worst(60, 0.0);
    std::vector<long> count(60, 0);
    parallel_for(60, opt.threads, [&](std::size_t i) {
        const std::int64_t cc = static_cast<std::int64_t>(i) + 1;
        const ModulusContext ctx(cc);
        for (const auto& chi : dirichlet_characters(cc))
            for (std::int64_t q = 1; q <= 3; ++q)
                for (std::int64_t m : {1, -1})
                    for (std::int64_t n : {1, -1}) {
                        cplx lhs = 0.0;
                        for (std::int64_t a = 0; a < cc; ++a) {
                            const cplx x = chi.values[static_cast<std::size_t>(a)];
                            if (x == cplx(0.0)) continue;
                            lhs += x * variant_kloosterman(ctx, a * m, n, q);
                        }
                        const GaussPair g = gauss_sums(m, n, cc, q, chi);
                        worst[i] = std::max(worst[i], std::abs(lhs - g.G * g.Gq));
                        ++count[i];
                    }
    });
    long n = 0;
    for (long x : count) n += x;
    c.value = *std::max_element(worst.begin(), worst.end());
    c.tolerance = 1e-9;
    c.pass = c.value <= c.tolerance;
    c.detail = std::to_string(n) + " identities; max defect " + sci(c.value);
    return c;
}

Criterion gauss_digamma() {
    Criterion c{"5", "Gauss digamma values and gamma_1 - gamma_0 = pi"};
    const double l2 = std::log(2.0);
    const double e1 = std::fabs(digamma(cplx(0.25, 0.0)).real() - (-kEulerGamma - kPi / 2 - 3 * l2));
    const double e2 = std::fabs(digamma(cplx(0.75, 0.0)).real() - (-kEulerGamma + kPi / 2 - 3 * l2));
    const double e3 = std::fabs(gamma_delta(1) - gamma_delta(0) - kPi);
    const double e4 = std::max(std::fabs(gamma_delta(0) - gamma_delta_digamma(0)),
                               std::fabs(gamma_delta(1) - gamma_delta_digamma(1)));
    c.value = std::max({e1, e2, e3, e4});
    c.tolerance = 1e-12;
    c.pass = c.value <= c.tolerance;
    c.detail = "psi(1/4) " + sci(e1) + ", psi(3/4) " + sci(e2) + ", gamma_1-gamma_0-pi " + sci(e3) +
               ", display vs digamma form " + sci(e4);
    return c;
}

Criterion bessel(const AcceptanceOptions& opt) {
    Criterion c{"6", "Bessel fast path vs oracle; decay for u <= T/10"};
    TestWeight wt;
    wt.T = 500.0;
    wt.Pi = 30.0;
    // Grid in (v, w) = (xy/2, x/(2y)) centred on the stationary window v ~ 2T, w < Pi.
    const double vs[5] = {940.0, 970.0, 1000.0, 1030.0, 1060.0};
    const double ws[5] = {0.5, 2.0, 5.0, 10.0, 20.0};
    std::vector<double> excess(50, 0.0), rel(50, 0.0);
    parallel_for(50, opt.threads, [&](std::size_t i) {
        const int sign = i < 25 ? 1 : -1;
        const std::size_t k = i % 25;
        const double v = vs[k / 5], w = ws[k % 5];
        const double x = 2.0 * std::sqrt(v * w), y = std::sqrt(v / w);
        const BesselEval f = fast_H(wt, sign, x, y);
        const BesselEval o = oracle_H(wt, sign, x, y, 400'000'000);
        const double d = std::abs(f.value - o.value), mag = std::abs(o.value);
        rel[i] = d / mag;
        excess[i] = d / (1e-6 * mag + f.est_error + o.est_error);
    });
    const double worst_excess = *std::max_element(excess.begin(), excess.end());
    const double worst_rel = *std::max_element(rel.begin(), rel.end());

    TestWeight wd;
    wd.T = 2000.0;
    wd.Pi = 100.0;
    const double bound = 1e-8 * wd.Pi * wd.T;
    const double us[4] = {10.0, 50.0, 100.0, 200.0};
    const double ys[3] = {0.5, 1.0, 2.0};
    std::vector<double> dec(24, 0.0);
    parallel_for(24, opt.threads, [&](std::size_t i) {
        const int sign = i < 12 ? 1 : -1;
        const std::size_t k = i % 12;
        const double u = us[k / 3], y = ys[k % 3];
        const double x = u / (y + 1.0 / y);
        dec[i] = std::abs(fast_H(wd, sign, x, y).value);
    });
    const double worst_dec = *std::max_element(dec.begin(), dec.end());
    c.value = std::max(worst_excess, worst_dec / bound);
    c.tolerance = 1.0;
    c.pass = worst_excess <= 1.0 && worst_dec <= bound;
    c.detail = "50 grid evaluations, max |fast-oracle|/(1e-6|H|+errors) " + fix(worst_excess, 4) +
               " (max relative " + sci(worst_rel) + "); decay max |H|/(1e-8 Pi T) " + sci(worst_dec / bound);
    return c;
}

Criterion diag_first(const AcceptanceOptions& opt) {
    Criterion c{"7", "Diagonal first moment, m = 1"};
    std::vector<double> Ts = {1e3, 3e3, 1e4};
    if (opt.full) Ts.push_back(3e4);
    std::vector<double> errs;
    std::string detail;
    for (double T : Ts) {
        MomentParams p;
        p.T = T;
        p.threads = opt.threads;
        const MomentResult r = diagonal_first(p);
        const double e = std::fabs(r.numeric / r.main_term - 1.0);
        errs.push_back(e);
        detail += (detail.empty() ? "" : "; ") + std::string("T=") + fmt_double(T) + " |ratio-1| " + sci(e);
    }
    const std::size_t i4 = 2;
    c.value = errs[i4];
    c.tolerance = 5.0 * std::log(1e4) / std::sqrt(1e4);
    bool mono = true;
    for (std::size_t i = 1; i < errs.size(); ++i) mono = mono && errs[i] < errs[i - 1];
    c.pass = c.value <= c.tolerance && mono;
    c.detail = detail + (mono ? "; decreasing" : "; not decreasing");
    return c;
}

Criterion diag_second(const AcceptanceOptions& opt) {
    Criterion c{"8", "Diagonal second moment at (1,1), T = 1e4"};
    double worst = 0.0;
    std::string detail;
    for (int delta : {0, 1}) {
        MomentParams p;
        p.T = 1e4;
        p.delta = delta;
        p.threads = opt.threads;
        const MomentResult r = diagonal_second(p);
        const double e = std::fabs(r.numeric / r.main_term - 1.0);
        worst = std::max(worst, e);
        detail += (detail.empty() ? "" : "; ") + std::string("delta=") + std::to_string(delta) + " |ratio-1| " + sci(e);
    }
    c.value = worst;
    c.tolerance = 10.0 / std::log(1e4);
    c.pass = worst <= c.tolerance;
    c.detail = detail;
    return c;
}

std::vector<Criterion> mollifier_criteria(const AcceptanceOptions& opt) {
    Criterion a{"9a", "Mollifier x_1 = 1 and M20 Xi = 1 exactly, M in {1e2,1e3,1e4}"};
    long bad = 0;
    for (std::uint64_t M : {100ull, 1000ull, 10000ull}) {
        const MollifierCoeffs mc = build_mollifier(M, true);
        const QuadraticForms q = quadratic_forms(mc, 1e6, 0);
        if (mc.x1_exact != 1) ++bad;
        if (!q.M20_Xi_identity) ++bad;
        for (std::uint64_t h = 1; h <= mc.ybreve_exact_cap; ++h)
            if (!(mc.ybreve_exact_direct[h] == mc.ybreve_exact_lambda[h])) ++bad;
    }
    a.value = static_cast<double>(bad);
    a.tolerance = 0.0;
    a.pass = bad == 0;
    a.detail = "exact identity failures " + std::to_string(bad) + " (includes y-breve direct vs Lambda maps, h <= 500)";

    Criterion b{"9b", "Combinatorial identities exactly zero, h <= 1e4"};
    long nz = 0;
    for (std::uint64_t h = 1; h <= 10000; ++h)
        if (!combinatorial_identities(h).zero()) ++nz;
    b.value = static_cast<double>(nz);
    b.tolerance = 0.0;
    b.pass = nz == 0;
    b.detail = "nonzero defects " + std::to_string(nz);

    Criterion c{"9c", "|M20-breve + 1/2| decreasing across M in {1e3,...,1e6}"};
    std::vector<std::uint64_t> Ms = {1000, 10000, 100000, 1000000};
    if (opt.full) Ms.push_back(10000000);
    std::vector<double> gaps;
    std::string detail;
    for (std::uint64_t M : Ms) {
        const MollifierCoeffs mc = build_mollifier(M, false);
        const QuadraticForms q = quadratic_forms(mc, 1e6, 0);
        gaps.push_back(std::fabs(q.M20_breve + 0.5));
        detail += (detail.empty() ? "" : "; ") + std::string("M=") + std::to_string(M) + " M20-breve " + fix(q.M20_breve);
    }
    bool mono = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) mono = mono && gaps[i] < gaps[i - 1];
    c.value = gaps.back();
    c.tolerance = gaps.front();
    c.pass = mono;
    c.detail = detail + (mono ? "; decreasing" : "; not decreasing, drifting toward -pi^2/12");
    return {a, b, c};
}

Criterion proportions() {
    Criterion c{"10", "Proportion formulas, exact rationals"};
    using R = ProportionRegime;
    const mpq_class third(1, 3), half(1, 2);
    int fails = 0;
    fails += proportion_exact(0, R::unconditional_long) != third;
    fails += proportion_exact(1, R::unconditional_short) != third;
    fails += mpq_class(3, 7) <= third;  // the min picks 1/3 over 3/7
    fails += proportion_exact(0, R::rh_long) != half;
    fails += proportion_exact(half, R::rh_short, true) != third;
    fails += proportion_exact(half, R::rh_small_mu) != third;
    c.value = fails;
    c.tolerance = 0.0;
    c.pass = fails == 0;
    c.detail = "1/3, min{1/3,3/7}, 1/2, seam mu/(mu+1) = (3mu-1)/(3mu) = 1/3 at mu = 1/2; failures " +
               std::to_string(fails);
    return c;
}

Criterion vlaws() {
    Criterion c{"11", "v-laws and lower-bound limits, exact rationals"};
    int fails = 0;
    fails += v_law_exact(mpq_class(1, 2), DensityFamily::special_point) != mpq_class(3, 2);
    fails += v_law_exact(mpq_class(1, 3), DensityFamily::central_value) != mpq_class(4, 3);
    const ExactLowerBounds lb = nonvanishing_exact(2);
    fails += lb.special != mpq_class(1, 2);
    fails += lb.central_even != mpq_class(9, 16);
    fails += lb.central_odd != mpq_class(15, 16);
    c.value = fails;
    c.tolerance = 0.0;
    c.pass = fails == 0;
    c.detail = "v(1/2) = 3/2, v(1/3) = 4/3, limits 1/2, 9/16, 15/16; failures " + std::to_string(fails);
    return c;
}

Criterion explicit_gamma() {
    Criterion c{"12", "Explicit-formula Gamma side, t = T in {1e3,1e4}, v = 1"};
    double worst = 0.0;
    std::string detail;
    const FourierPair fp = make_fejer(1.0);
    for (double T : {1e3, 1e4})
        for (int delta : {0, 1}) {
            const ExplicitH h = explicit_H(delta, T, fp, T);
            const double g = std::fabs(h.quadrature - h.asymptotic) * std::log(T);
            worst = std::max(worst, g);
            detail += (detail.empty() ? "" : "; ") + std::string("T=") + fmt_double(T) + " delta=" +
                      std::to_string(delta) + " gap*log T " + fix(g, 4);
        }
    c.value = worst;
    c.tolerance = 5.0;
    c.pass = worst <= 5.0;
    c.detail = detail;
    return c;
}

Criterion vq_main() {
    Criterion c{"13", "V_q prime-sum main term, x = 1e6, squarefree c <= 30, q = 1"};
    const auto tab = build_tables(1000000);
    double worst = 0.0, worst_other = 0.0;
    int n = 0;
    std::string other;
    for (std::int64_t q = 1; q <= 3; ++q)
        for (std::int64_t cc = 1; cc <= 30; ++cc) {
            if (tab.mobius[static_cast<std::size_t>(cc)] == 0) continue;
            const VqMainTerm r = vq_main_term(cc, q, 1e6, tab);
            if (std::isnan(r.ratio.real())) continue;
            const double e = std::abs(r.ratio - 1.0);
            if (q == 1) {
                worst = std::max(worst, e);
                ++n;
            } else {
                worst_other = std::max(worst_other, e);
            }
        }
    c.value = worst;
    c.tolerance = 0.1;
    c.pass = worst <= 0.1;
    c.detail = std::to_string(n) + " moduli, max |ratio-1| " + fix(worst, 4) + "; reported only: q in {2,3} max " +
               fix(worst_other, 4);
    return c;
}

Criterion unsmoothing() {
    Criterion c{"14", "Unsmoothing weight and telescoping"};
    const double T = 1e4, Pi = std::pow(T, 0.6), H = T / 3.0;
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = T - 2.0 * H + i * (4.0 * H / 4000.0);
        const double w = unsmooth_weight(T, Pi, H, t);
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    QuadOptions qo;
    qo.abs_tol = 1e-9 * H;
    qo.panels = 64;
    const QuadResult q = integrate([&](double t) { return cplx(unsmooth_weight(T, Pi, H, t), 0.0); },
                                   T - H - 12.0 * Pi, T + H + 12.0 * Pi, qo);
    const double ierr = std::fabs(q.value.real() / (2.0 * H) - 1.0);
    double terr = 0.0;
    for (int delta : {0, 1}) {
        const double a = unsmoothed_dyadic_sum(T, delta);
        const double b = unsmoothed_long_interval(UnsmoothedKind::second, T, delta);
        terr = std::max(terr, std::fabs(a / b - 1.0));
    }
    const bool range_ok = lo >= 0.0 && hi <= 1.0;
    c.value = std::max(ierr / 1e-8, terr / 1e-10);
    c.tolerance = 1.0;
    c.pass = range_ok && ierr <= 1e-8 && terr <= 1e-10;
    c.detail = "weight range [" + fix(lo, 3) + ", " + fix(hi, 3) + "]; integral/(2H)-1 " + sci(ierr) +
               "; telescoping " + sci(terr);
    return c;
}

}  // namespace

std::vector<Criterion> run_criteria(const AcceptanceOptions& opt, ProgressFn progress) {
    std::vector<Criterion> out;
    auto run = [&](const std::function<std::vector<Criterion>()>& f) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<Criterion> cs = f();
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (auto& c : cs) {
            c.seconds = s / static_cast<double>(cs.size());
            if (progress) progress(c);
            out.push_back(std::move(c));
        }
    };
    auto one = [](Criterion (*f)()) { return [f] { return std::vector<Criterion>{f()}; }; };
    auto one_opt = [&opt](Criterion (*f)(const AcceptanceOptions&)) {
        return [f, &opt] { return std::vector<Criterion>{f(opt)}; };
    };
    run(one_opt(luo));
    run(one(ramanujan_spec));
    run(one_opt(weil));
    run(one_opt(characters));
    run(one(gauss_digamma));
    run(one_opt(bessel));
    run(one_opt(diag_first));
    run(one_opt(diag_second));
    run([&] { return mollifier_criteria(opt); });
    run(one(proportions));
    run(one(vlaws));
    run(one(explicit_gamma));
    run(one(vq_main));
    run(one(unsmoothing));
    return out;
}

Report acceptance_report(const std::vector<Criterion>& cs, const AcceptanceOptions& opt) {
    Report r;
    r.title = "acceptance";
    r.config = {{"mode", opt.full ? "full" : "quick"}};
    Table t;
    t.columns = {"id", "name", "pass", "value", "tolerance", "detail"};
    int passed = 0;
    for (const auto& c : cs) {
        t.add({c.id, c.name, c.pass ? "PASS" : "FAIL", fmt_double(c.value), fmt_double(c.tolerance), c.detail});
        passed += c.pass;
    }
    r.tables.emplace_back("criteria", std::move(t));
    r.summary = {{"passed", std::to_string(passed)}, {"total", std::to_string(cs.size())}};
    return r;
}

std::vector<Criterion> run_acceptance(const AcceptanceOptions& opt, ProgressFn progress) {
    std::vector<Criterion> cs = run_criteria(opt, progress);
    if (!opt.determinism) return cs;
    const auto t0 = std::chrono::steady_clock::now();
    AcceptanceOptions other = opt;
    other.threads = opt.threads == 8 ? 1 : 8;
    const std::string a = render(acceptance_report(cs, opt), ReportFormat::csv);
    const std::string b = render(acceptance_report(run_criteria(other), other), ReportFormat::csv);
    Criterion c{"15", "Acceptance CSV byte-identical at threads 1 and 8"};
    std::size_t diff = 0;
    while (diff < std::min(a.size(), b.size()) && a[diff] == b[diff]) ++diff;
    c.pass = a == b;
    c.value = c.pass ? 0.0 : 1.0;
    c.tolerance = 0.0;
    c.detail = c.pass ? std::to_string(a.size()) + " bytes identical"
                      : "outputs differ from byte " + std::to_string(diff);
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) progress(c);
    cs.push_back(c);
    return cs;
}

std::string format_criterion_line(const Criterion& c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-4s %s  ", c.id.c_str(), c.pass ? "PASS" : "FAIL");
    return std::string(buf) + c.name + " | " + c.detail;
}

}  // namespace hmw
