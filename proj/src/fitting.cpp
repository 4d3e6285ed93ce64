#include "fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace perc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// polynomial extrapolation to h = 0 through (h_i, v_i) by Neville's scheme
double neville_to_zero(const std::vector<double>& h,
                       const std::vector<double>& v) {
    std::vector<double> t = v;
    int n = (int)t.size();
    for (int m = 1; m < n; m++)
        for (int i = 0; i + m < n; i++)
            t[i] = (h[i + m] * t[i] - h[i] * t[i + 1]) / (h[i + m] - h[i]);
    return t[0];
}

// geometric ladder of nodes K, K/2, K/4, ... down to k_min
std::vector<int> ladder(int K, int k_min) {
    std::vector<int> nodes;
    for (int k = K; k >= k_min && (int)nodes.size() < 5; k /= 2)
        nodes.push_back(k);
    return nodes;
}

} // namespace

OrthodoxFit fit_orthodox(const std::vector<double>& log_u, int k_lo) {
    OrthodoxFit fit;
    int K = (int)log_u.size() - 1;
    while (K > 0 && !std::isfinite(log_u[K])) K--;
    int lo = std::max(k_lo, 1);
    while (lo <= K && !std::isfinite(log_u[lo])) lo++;
    if (K - lo < 49)
        throw std::domain_error("orthodox fit needs a window of at least 50 "
                                "positive entries");
    for (int k = lo; k <= K; k++)
        if (!std::isfinite(log_u[k]))
            throw std::domain_error("orthodox fit window has gaps");
    fit.k_lo = lo;
    fit.k_hi = K;

    // growth: lambda(k) = log u_k - log u_{k-1} = log R - beta/k + O(1/k^2)
    auto lambda = [&](int k) { return log_u[k] - log_u[k - 1]; };
    // exponent: three-point log-ratio, exact for pure c R^k k^-beta
    auto bpoint = [&](int k) {
        double num = log_u[k + 1] - 2 * log_u[k] + log_u[k - 1];
        double den = std::log((double)(k + 1) * (k - 1) / ((double)k * k));
        return num / den;
    };

    // stage 1: polynomial extrapolation in 1/k over a geometric node ladder,
    // computed for a window ending at K' (eliminates the smooth 1/k ladder)
    auto stage1 = [&](int Kp, double& logR_out, double& b_out) -> bool {
        std::vector<int> nodes = ladder(Kp - 1, std::max(lo + 1, 24));
        if (nodes.size() < 3) return false;
        std::vector<double> h, lv, bv;
        for (int k : nodes) {
            h.push_back(1.0 / k);
            lv.push_back(lambda(k));
            bv.push_back(bpoint(k));
        }
        logR_out = neville_to_zero(h, lv);
        b_out = neville_to_zero(h, bv);
        return true;
    };
    // stage 2: Aitken acceleration across window halvings, which also removes
    // a residual fractional-power drift the 1/k ladder cannot capture
    auto aitken = [](double a0, double a1, double a2) {
        double d1 = a1 - a0, d2 = a2 - a1;
        double den = d2 - d1;
        if (den == 0 || std::abs(d2 * d2 / den) > std::abs(d2)) return a2;
        return a2 - d2 * d2 / den;
    };
    double lr0, lr1, lr2, b0, b1, b2;
    if (!stage1(K, lr2, b2))
        throw std::domain_error("orthodox fit window too short for the "
                                "extrapolation ladder");
    bool deep = stage1(K / 2, lr1, b1) && stage1(K / 4, lr0, b0);
    double logR = deep ? aitken(lr0, lr1, lr2) : lr2;
    fit.beta = -(deep ? aitken(b0, b1, b2) : b2);
    fit.R_spread = deep ? std::abs(std::exp(logR) - std::exp(aitken(lr0, lr1, (lr1 + lr2) / 2)))
                        : std::abs(std::exp(lr2) - std::exp(logR));
    if (deep) {
        // spread diagnostics: compare against the one-window-shallower chain
        double lr1b, b1b;
        if (stage1((3 * K) / 4, lr1b, b1b)) {
            fit.R_spread = std::abs(std::exp(logR)
                                    - std::exp(aitken(lr0, lr1, lr1b)));
            fit.beta_spread = std::abs(fit.beta + aitken(b0, b1, b1b));
        } else {
            fit.R_spread = std::abs(std::exp(logR) - std::exp(lr2));
            fit.beta_spread = std::abs(fit.beta + b2);
        }
    } else {
        fit.beta_spread = 0.05;
    }
    // stage 3: dense least squares of lambda over the top three quarters of
    // the window in the basis {1, u, u^2, u^(5/2), u^3}, u = 1/k. Confluent
    // regimes produce half-integer correction terms with large coefficients
    // that the geometric node ladder cannot absorb (they bias the
    // extrapolated growth at the 1e-5 level); the dense fit with an explicit
    // u^(5/2) term removes the bias while reproducing the ladder estimate on
    // plain integer-ladder data. The ladder value is kept when the two
    // disagree wildly (short windows, non-orthodox transients).
    {
        const double pw[5] = {0, 1, 2, 2.5, 3};
        int lo3 = std::max(lo, K / 4);
        double A[5][5] = {}, b[5] = {}, s[5];
        for (int k = lo3; k <= K; ++k) {
            double u = 1.0 / k, f[5];
            for (int j = 0; j < 5; ++j) f[j] = std::pow(u, pw[j]);
            double y = lambda(k);
            for (int i = 0; i < 5; ++i) {
                b[i] += f[i] * y;
                for (int j = 0; j < 5; ++j) A[i][j] += f[i] * f[j];
            }
        }
        for (int j = 0; j < 5; ++j) s[j] = std::sqrt(A[j][j]);
        bool ok = true;
        for (int j = 0; j < 5; ++j) ok = ok && s[j] > 0;
        if (ok) {
            for (int i = 0; i < 5; ++i) {
                b[i] /= s[i];
                for (int j = 0; j < 5; ++j) A[i][j] /= s[i] * s[j];
            }
            for (int col = 0; col < 5 && ok; ++col) {
                int best = col;
                for (int r = col + 1; r < 5; ++r)
                    if (std::abs(A[r][col]) > std::abs(A[best][col]))
                        best = r;
                for (int j = 0; j < 5; ++j) std::swap(A[col][j], A[best][j]);
                std::swap(b[col], b[best]);
                if (std::abs(A[col][col]) < 1e-14) { ok = false; break; }
                for (int r = col + 1; r < 5; ++r) {
                    double m = A[r][col] / A[col][col];
                    for (int j = col; j < 5; ++j) A[r][j] -= m * A[col][j];
                    b[r] -= m * b[col];
                }
            }
            if (ok) {
                double c[5];
                for (int r = 4; r >= 0; --r) {
                    double acc = b[r];
                    for (int j = r + 1; j < 5; ++j) acc -= A[r][j] * c[j];
                    c[r] = acc / A[r][r];
                }
                double c0 = c[0] / s[0];
                if (std::isfinite(c0) && std::abs(c0 - logR) < 1e-3)
                    logR = c0;
            }
        }
    }
    fit.R = std::exp(logR);

    // amplitude and first correction: least squares of
    // log u_k - k log R + beta log k ~ log c + c1/k on the top half window
    int w_lo = std::max(lo, K / 2);
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    for (int k = w_lo; k <= K; k++) {
        double x = 1.0 / k;
        double yv = log_u[k] - k * logR + fit.beta * std::log((double)k);
        s0 += 1; s1 += x; s2 += x * x; t0 += yv; t1 += x * yv;
    }
    double det = s0 * s2 - s1 * s1;
    double logc = (s2 * t0 - s1 * t1) / det;
    fit.c1 = (s0 * t1 - s1 * t0) / det;   // log(1 + c1/k) ~ c1/k
    fit.c = std::exp(logc);
    fit.stable = std::isfinite(fit.R) && std::isfinite(fit.beta)
                 && fit.R_spread < 1e-4 * std::max(1.0, fit.R)
                 && fit.beta_spread < 0.02;
    return fit;
}

double fitted_power(const std::vector<double>& log_u, int k_lo) {
    return -fit_orthodox(log_u, k_lo).beta;
}

double tail_exponent(const std::vector<double>& log_u) {
    int K = (int)log_u.size() - 1;
    while (K > 0 && !std::isfinite(log_u[K])) K--;
    int lo = std::max(8, (7 * K) / 10);
    double s11 = 0, s1x = 0, sxx = 0, s1y = 0, sxy = 0;
    for (int k = lo; k < K; k++) {
        if (!std::isfinite(log_u[k - 1]) || !std::isfinite(log_u[k]) ||
            !std::isfinite(log_u[k + 1]))
            continue;
        double num = log_u[k + 1] - 2 * log_u[k] + log_u[k - 1];
        double den = std::log((double)(k + 1) * (k - 1) / ((double)k * k));
        double y = num / den, x = 1.0 / k;
        s11 += 1;
        s1x += x;
        sxx += x * x;
        s1y += y;
        sxy += x * y;
    }
    double det = s11 * sxx - s1x * s1x;
    if (!(std::abs(det) > 0))
        throw std::domain_error("tail exponent needs a positive top window");
    return -(sxx * s1y - s1x * sxy) / det;
}

std::vector<double> log_mid(const std::vector<Ival>& u, double width_cap) {
    std::vector<double> out(u.size(), kNaN);
    for (size_t i = 0; i < u.size(); i++) {
        if (!u[i].strictly_positive() || u[i].rel_width() > width_cap) continue;
        out[i] = u[i].log().mid();
    }
    return out;
}

std::vector<double> log_mid_value(const std::vector<Dual>& c,
                                  double width_cap) {
    std::vector<Ival> v;
    v.reserve(c.size());
    for (const Dual& d : c) v.push_back(d.v);
    return log_mid(v, width_cap);
}

std::vector<double> log_mid_deriv(const std::vector<Dual>& c,
                                  double width_cap) {
    std::vector<Ival> v;
    v.reserve(c.size());
    for (const Dual& d : c) v.push_back(d.d);
    return log_mid(v, width_cap);
}

std::vector<double> expectation_ratio(const std::vector<Dual>& c,
                                      const Ival& scale) {
    std::vector<double> out(c.size(), kNaN);
    for (size_t i = 0; i < c.size(); i++) {
        if (c[i].v.contains_zero()) continue;
        out[i] = (scale * c[i].d / c[i].v).mid();
    }
    return out;
}

HullResult hull_expectation(SeriesKind kind, const mpq_class& p, int L,
                            mpfr_prec_t start_bits) {
    XCoeffs xc = xcoeffs_numeric(kind, p, ZSpec::crit(), L, true, start_bits);
    const auto& k = field_constants();
    Ival scale = Ival::of_field(k.ztilde0, xc.bits);
    HullResult r;
    r.E = expectation_ratio(xc.c, scale);
    std::vector<double> logE(r.E.size(), kNaN);
    for (size_t i = 0; i < r.E.size(); i++)
        if (std::isfinite(r.E[i]) && r.E[i] > 0) logE[i] = std::log(r.E[i]);
    r.delta_hat = fitted_power(logE);
    return r;
}

GammaResult gamma_exponents(SeriesKind kind, const mpq_class& p, int L,
                            mpfr_prec_t start_bits) {
    XCoeffs xc = xcoeffs_numeric(kind, p, ZSpec::crit(), L, true, start_bits);
    GammaResult g;
    g.value = fit_orthodox(log_mid_value(xc.c));
    g.deriv = fit_orthodox(log_mid_deriv(xc.c));
    g.gamma_hat = g.deriv.beta;
    g.growth_gap = std::abs(g.value.R - g.deriv.R);
    return g;
}

MeanEdgesResult mean_edges_simple_boundary(int K, mpfr_prec_t start_bits) {
    XCoeffs xc = xcoeffs_numeric(SeriesKind::SimpleBoundaryW, 1, ZSpec::crit(),
                                 K, true, start_bits);
    const auto& k = field_constants();
    Ival scale = Ival::of_field(k.ztilde0, xc.bits);
    MeanEdgesResult r;
    r.E = expectation_ratio(xc.c, scale);
    std::vector<double> logE(r.E.size(), kNaN);
    for (size_t i = 0; i < r.E.size(); i++)
        if (std::isfinite(r.E[i]) && r.E[i] > 0) logE[i] = std::log(r.E[i]);
    r.power = fitted_power(logE);
    r.ratio_hi = 0;
    for (size_t i = 3; i < r.E.size(); i++)
        if (std::isfinite(r.E[i]))
            r.ratio_hi = std::max(r.ratio_hi, r.E[i] / ((double)i * i));
    return r;
}

} // namespace perc
