#pragma once

// Admissibility and criticality of nonnegative weight sequences: evaluation
// of the two trinomial generating functions f_bullet / f_diamond, solution
// of the fixed-point system f_bullet(x, y) = 1 - 1/x, f_diamond(x, y) = y,
// classification by the margin 1 - (d_y + sqrt(x) d_x) f_diamond at the
// minimal solution, g-tilting with exponential-decay certificates, and the
// pointed / unpointed disk partition functions.

#include "islands.hpp"

#include <array>
#include <optional>

namespace perc {

// Tail model for a weight sequence: q_k ~ R^k shape(k) where shape carries
// the power-law decay and its slowly varying corrections,
//   shape(v) = sum_i a[i] (v/K)^(-beta - off[i]).
// The correction offsets follow the Puiseux structure of the underlying
// singularity: {0, 2/3, 1, 4/3, ...} for the 2/3-type branch point behind
// exponent 5/3, integer steps for the square-root types behind 5/2 and 3/2.
// (A 1/3 offset does not occur and including it destabilizes the leading
// amplitude, which carries the whole l -> infinity part of the sums.)
struct QTail {
    double R = 0;                 // 0 means finitely supported, no tail
    double beta = 0;
    double K = 1;                 // anchor of the correction basis
    std::array<double, 6> a{};    // fitted shape amplitudes
    std::array<double, 6> off{};  // correction exponent offsets
    int nb = 0;                   // number of basis terms actually fitted
    double resid = 0;             // rms relative fit residual on the window
    double shape(double v) const; // q_hat(v) = R^v * shape(v)
};

struct QSeq {
    std::vector<double> q;        // q[k] for k >= 1; q[0] unused
    QTail tail;
    int K() const { return (int)q.size() - 1; }

    // sequence with the single entry q_k = w
    static QSeq monomial(int k, double w);
    // midpoints of a computed island boundary weight sequence, with the
    // growth anchored to its closed form and the decay exponent assigned by
    // phase (5/2 below threshold, 5/3 at it, 3/2 above); the shape
    // amplitudes are least-squares fitted on the top half of the data
    static QSeq from_weights(const WeightSequence& ws);
};

// q_g(k) = g^((k-2)/2) q_k
QSeq tilt(const QSeq& q, double g);

struct FEval {
    double bullet = 0;            // f_bullet(x, y)
    double diamond = 0;           // f_diamond(x, y)
    double dx_diamond = 0;        // d_x f_diamond
    double dy_diamond = 0;        // d_y f_diamond
    double err = 0;               // absolute truncation + model budget
    bool finite = true;           // false when the sums diverge
};

// truncated double trinomial sums, organized by root-face degree with an
// analytic tail completion of the modeled region (the sums sit exactly at
// their convergence boundary for critical sequences, so naive cutoffs
// cannot work there)
FEval eval_f(const QSeq& q, double x, double y, bool want_derivs = true);

struct SystemSolution {
    bool admissible = false;
    double x = 1, y = 0;          // minimal solution coordinates
    double res_bullet = 0, res_diamond = 0;
    double margin = 0;            // 1 - (d_y + sqrt(x) d_x) f_diamond
    double budget = 0;            // evaluation error budget at the solution
    int iterations = 0;
};

// monotone fixed-point iteration x <- 1/(1 - f_bullet), y <- f_diamond from
// (1, 0), which increases coordinatewise to the minimal solution, followed
// by a damped Newton polish with the exact Jacobian; divergence past the
// configurable bound reports not admissible
SystemSolution solve_system(const QSeq& q, double tol = 1e-12,
                            double bound = 50);

// Constrained solve on the convergence boundary of the sums: with the tail
// growth R, the curve y = 1/R - 2 sqrt(x) holds R c_plus = 1 fixed, and the
// diamond equation is solved along it. For a critical sequence the full
// solution lies on this curve, the bullet-equation defect vanishes up to
// model error, and the margin evaluated here is linearly (not fractionally)
// conditioned in that error.
struct BoundaryProbe {
    bool ok = false;
    double x = 0, y = 0;
    double defect = 0;   // bullet-equation residual on the boundary curve
    double margin = 0;
    double err = 0;
};
BoundaryProbe boundary_probe(const QSeq& q, double x_hint);

enum class Verdict {
    NotAdmissible,
    Subcritical,
    CriticalWithinTolerance,
    Indeterminate,
};

struct Classification {
    Verdict verdict = Verdict::NotAdmissible;
    double margin = 0;            // extrapolated margin at the solution
    double tolerance = 0;         // tol with the error budget folded in
    double budget = 0;
    SystemSolution sol;
    std::vector<double> ladder;   // margins along the tilt ladder g -> 1
};

// The margin vanishes with a small fractional power of the distance to the
// solution for critical sequences, so evaluating it at one approximate
// solution is hopeless. Instead the margin is computed along the tilted
// family g -> 1 (always admissible and well conditioned for g < 1) and
// extrapolated with a ratio-fitted Richardson ladder.
Classification classify(const QSeq& q, double tol = 1e-6);

// largest g in (1, g_max] with tilt(q, g) admissible; a returned g > 1
// certifies an exponentially decaying cluster-size tail, and none is the
// expected answer for critical q
std::optional<double> decay_certificate(const QSeq& q, double g_max = 2.0);

// kernel h_r(l): the alternating binomial sum 4^-l sum_n C(2n,n)
// C(2l-2n,l-n) (-r)^n, with h_r(l) ~ 1/sqrt(pi l (1+r)) for large l
double h_kernel(double r, long l);

// log of the pointed disk partition function c_plus^l h_r(l) at solution
// coordinates (x, y), with c_pm = y +- 2 sqrt(x) and r = -c_minus/c_plus;
// NaN when r falls outside (-1, 1) (bipartite-degenerate case)
double disk_pointed_log(double x, double y, long l);

struct DiskSeries {
    std::vector<double> log_disk;  // index l, NaN below l_lo
    OrthodoxFit fit;
};

// unpointed disk partition function Disk^(l) = int_0^1 dg g^(l/2)
// Disk_pointed[q_g]^(l), by Gauss-Legendre panels refined dyadically toward
// g = 1 with one system solve per node shared across all l
DiskSeries disk_unpointed(const QSeq& q, int L, int panels = 40);

// 2 z_plus + z_diamond^2 - 1 at the minimal solution: the pointed-rooted
// partition function, cross-checkable against exhaustive enumeration for
// small finitely supported q
double pointed_mass(const QSeq& q);

} // namespace perc
