#pragma once

// Island weight sequences of vertex- and edge-diluted Boltzmann
// triangulations, the induced boundary weight sequences, the closed-form
// growth constants they must match, and the interface-length laws built
// from them.
//
// Argument convention: every function below takes the openness parameter p.
// The general- and simple-boundary series feeding the weights are evaluated
// at the series argument 1 - p, so SiteR/BondRS at p mean the coefficient
// growth of the series at argument 1 - p. The outer-edge constant BondRU is
// indexed by the series argument itself (it degenerates at 0 and matches
// the general-boundary constant at 1).

#include "fitting.hpp"

namespace perc {

enum class IslandMode { Site, Bond };

enum class GrowthKind {
    SiteR,    // growth of the general-boundary coefficients at openness p
    BondRS,   // growth of the simple-boundary coefficients at openness p
    BondRU,   // growth of the outer-edge coefficients at openness p
    SiteW,    // growth of the site island weights
    BondW,    // growth of the bond island weights
    RhoSite,  // per-length growth rate of the site interface law
    RhoBond,  // per-length growth rate of the bond interface law
};

// exact transition point of the edge-diluted model: (2 sqrt(3) - 1) / 11
FieldElement bond_critical_point();
// rational point within 2^-bits of it (for series evaluations)
mpq_class bond_critical_point_approx(int bits = 96);

// closed-form branch values that are exact in the number field; each throws
// outside the branch where the closed form applies
FieldElement rdot_exact(const mpq_class& p);          // p in [0, 1/2]
FieldElement rbar_exact(const FieldElement& p);       // p in [0, bond pc]
FieldElement rbarU_exact(const FieldElement& p);      // p in [bond pc, 1]

// enclosure of the requested growth constant; exact-branch values embed
// exactly, root-branch values are isolated by exact-sign bisection
Ival closed_form_growth(GrowthKind kind, const mpq_class& p,
                        mpfr_prec_t bits = 256);

struct TailModel {
    double R = 0, beta = 0, c = 0;   // W_k ~ c R^k k^(-beta)
};

struct WeightSequence {
    IslandMode mode = IslandMode::Site;
    mpq_class p;
    std::vector<Ival> W;    // island weights, index 0..K (index 0 unused)
    std::vector<Ival> q;    // boundary weights q_k
    TailModel tail;         // fitted on the top window when K is large enough
    mpfr_prec_t bits = 0;   // precision of the stored enclosures
};

// W_k(p) = z0 [k=3] + z0^k sum_l C(k+l-1, k-1) ztilde0^l t_l, with t_l the
// general-boundary coefficients at argument 1 - p; the l-sum is truncated
// once a geometric bound certifies the tail below rel_tol and the bound is
// added to the enclosure. q_k = p^(k/2-1) W_k. Pass a precomputed
// coefficient table to share it across calls; it must be a general-boundary
// run at argument 1 - p and critical edge weight.
WeightSequence site_weights(const mpq_class& p, int K, double rel_tol = 1e-25,
                            const XCoeffs* T = nullptr);

// W_k(p) = (1-p)^-k z0^(-k/3) (s_k - [k=2](1-p) ztilde0), with s_k the
// simple-boundary coefficients at argument 1 - p; q_k = p^(k/2) W_k.
WeightSequence bond_weights(const mpq_class& p, int K,
                            const XCoeffs* S = nullptr);

struct InterfaceLaw {
    std::vector<Ival> bolt;   // unnormalized interface-length masses
    std::vector<Ival> disk;   // bolt / q, the conditioned cluster masses
};

// interface-length law: bolt_l = W_l(p) z0^(-l/3) [x^l]F(x, p) with F the
// general-boundary (site) or outer-edge (bond) series, both at the critical
// edge weight; entries below l = 4 are left as zero enclosures
InterfaceLaw interface_law(IslandMode mode, const mpq_class& p, int L,
                           mpfr_prec_t start_bits = 256);

// convenience: the disk sequence of interface_law with its orthodox fit
struct DiskLaw {
    std::vector<Ival> disk;
    OrthodoxFit fit;
};
DiskLaw disk_from_interface(IslandMode mode, const mpq_class& p, int L,
                            mpfr_prec_t start_bits = 256);

} // namespace perc
