#pragma once

// Numeric (rigorous interval) forward recursions in x for the boundary
// series at fixed edge weight, with an optional derivative-in-z channel, and
// the root solver for the once-marked boundary series that seeds them.

#include "cubic.hpp"
#include "interval.hpp"

#include <vector>

namespace perc {

// exact data at the critical edge weight
FieldElement T1_critical_exact();        // value of the once-marked series
FieldElement T1_slope_critical_exact();  // its one-sided z-derivative

struct RootResult {
    Ival value;
    Ival dvalue;   // d/dz along the combinatorial branch
};

// once-marked series at rational z in (0, critical); the branch is selected
// by agreement with the series truncation, and a root collision raises
RootResult root_T1(const mpq_class& z, mpfr_prec_t bits = 256);

enum class SeriesKind {
    GeneralBoundary,   // T: recursion in x at numeric y
    OuterEdge,         // U: recursion in x at numeric y
    SimpleBoundaryW,   // simple-boundary series in w at y = 1
    SimpleBoundary,    // S: recursion in x at numeric y, critical z only
};

struct ZSpec {
    bool critical = true;   // z equals the critical edge weight exactly
    mpq_class value;        // used when !critical
    static ZSpec crit() { return {}; }
    static ZSpec at(const mpq_class& z) { return {false, z}; }
};

struct XCoeffs {
    std::vector<Dual> c;    // coefficients [x^0..x^L] (or [w^0..w^L])
    mpfr_prec_t bits;       // working precision that met the width target
};

// forward recursion with precision escalation; relative enclosure widths of
// all nonzero coefficients are driven below width_target (default 1e-20)
XCoeffs xcoeffs_numeric(SeriesKind kind, const mpq_class& y, const ZSpec& z,
                        int L, bool with_derivative,
                        mpfr_prec_t start_bits = 256,
                        double width_target = 1e-20);

} // namespace perc
