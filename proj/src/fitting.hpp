#pragma once

// Estimation of growth constants and polynomial-correction exponents from
// finite positive sequences u_k ~ c R^k k^(-beta) (1 + c1/k + ...), plus the
// derivative-ratio pipelines built on top: hull-size expectations, the
// derivative-channel exponent, and the mean edge count of simple-boundary
// triangulations.

#include "recursion.hpp"

#include <vector>

namespace perc {

struct OrthodoxFit {
    double R = 0;       // growth constant
    double beta = 0;    // u_k ~ c R^k k^(-beta)
    double c = 0;       // amplitude
    double c1 = 0;      // first 1/k correction of the amplitude
    double R_spread = 0, beta_spread = 0;   // last-rung extrapolation deltas
    int k_lo = 0, k_hi = 0;                 // window actually used
    bool stable = false;
};

// log_u[k] = natural log of u_k; entries before k_lo or NaN are ignored.
// Growth is extrapolated from consecutive log-ratios and the exponent from
// three-point second differences of the logs, both accelerated by polynomial
// extrapolation in 1/k over a geometric ladder of nodes.
OrthodoxFit fit_orthodox(const std::vector<double>& log_u, int k_lo = 8);

// convenience: fitted power s of an algebraically growing sequence u_k ~ k^s
// (growth constant 1); this is just -beta of the orthodox fit
double fitted_power(const std::vector<double>& log_u, int k_lo = 8);

// transient-robust decay exponent: least squares of the three-point
// log-ratio exponent against {1, 1/k} over the top 30% of the window.
// Off-critical sequences carry exponentially decaying transients whose
// second differences, divided by the ~1/k^2 three-point denominator, still
// dominate at the small-k nodes of fit_orthodox's geometric ladder; staying
// on the top of the window avoids them at the cost of a larger O(1/k^2)
// truncation error, which is fine for 0.05-level exponent checks
double tail_exponent(const std::vector<double>& log_u);

// log extraction with enclosure awareness: NaN when the enclosure is not
// strictly positive or wider than width_cap relatively
std::vector<double> log_mid(const std::vector<Ival>& u,
                            double width_cap = 1e-6);
std::vector<double> log_mid_value(const std::vector<Dual>& c,
                                  double width_cap = 1e-6);
std::vector<double> log_mid_deriv(const std::vector<Dual>& c,
                                  double width_cap = 1e-6);

// E_l = scale * (derivative channel)/(value channel); entries NaN when the
// value channel vanishes
std::vector<double> expectation_ratio(const std::vector<Dual>& c,
                                      const Ival& scale);

struct HullResult {
    std::vector<double> E;   // conditional hull-size expectations
    double delta_hat = 0;    // fitted power of E_l
};

// hull-size expectation from a dual-channel run of the given series kind
// (general-boundary for site, outer-edge for bond) at y = p and the critical
// edge weight
HullResult hull_expectation(SeriesKind kind, const mpq_class& p, int L,
                            mpfr_prec_t start_bits = 256);

struct GammaResult {
    OrthodoxFit value, deriv;
    double gamma_hat = 0;        // = deriv.beta
    double growth_gap = 0;       // |value.R - deriv.R|
};

GammaResult gamma_exponents(SeriesKind kind, const mpq_class& p, int L,
                            mpfr_prec_t start_bits = 256);

struct MeanEdgesResult {
    std::vector<double> E;        // E[e(S_k)] for k = 0..K (first entries NaN)
    double power = 0;             // fitted power of E in k
    double ratio_hi = 0;          // max of E_k / k^2 on the window
};

MeanEdgesResult mean_edges_simple_boundary(int K, mpfr_prec_t start_bits = 256);

} // namespace perc
