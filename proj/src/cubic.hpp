#pragma once

// Exact forward coefficient extraction, in powers of x, for the two boundary
// series specialized to the critical edge weight. The general-boundary series
// extracts with a unit pivot directly over Q(theta). The simple-boundary
// series has a first coefficient that generates a degree-3 extension of
// Q(theta); extraction is carried out exactly in that extension and mapped to
// rigorous intervals on demand.

#include "field.hpp"
#include "interval.hpp"

#include <vector>

namespace perc {

// x-coefficients of the general-boundary series at rational y (unit pivot)
std::vector<FieldElement> solve_cubic_T17(int L, const mpq_class& y);

// first x-order with nonzero residue when the coefficients are substituted
// back into the defining cubic; -1 when the residue vanishes through order L
int residue_T17(const std::vector<FieldElement>& t, const mpq_class& y);

// element of Q(theta)[u] / (u^3 + A u^2 + B u + C)
struct ExtElem {
    FieldElement c0, c1, c2;
};

struct SSolution {
    mpq_class y;
    FieldElement A, B, C;        // monic minimal cubic of the first coefficient
    bool trivial_ext = false;    // first coefficient already lies in Q(theta)
    std::vector<ExtElem> c;      // x-coefficients, c[0] = 0
    mpq_class root_lo, root_hi;  // rational bracket of the real first coefficient

    Ival root(mpfr_prec_t bits) const;
    Ival eval(const ExtElem& e, mpfr_prec_t bits) const;
};

// simple-boundary series at rational y in (0, 1]; when branch_shift is true
// the rejected sibling factor of the degree-9 elimination is extracted
// instead (used only to demonstrate branch rejection)
SSolution solve_cubic_S25(int L, const mpq_class& y, bool branch_shift = false);

int residue_S25(const SSolution& s);

} // namespace perc
