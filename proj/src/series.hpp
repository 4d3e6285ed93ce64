#pragma once

// Truncated power series in z with sparse polynomial coefficients in (w, x, y),
// and the z-graded fixed-point solvers for the four counting-series functional
// equations, together with exact residue checkers for the algebraic identities
// those series satisfy.

#include "qpoly.hpp"

#include <string>
#include <vector>

namespace perc {

class ZSeries {
public:
    explicit ZSeries(int order) : c_(order + 1) {}
    ZSeries(const QPoly& p, int order) : c_(order + 1) { c_[0] = p; }

    int order() const { return (int)c_.size() - 1; }
    const QPoly& at(int m) const { return c_[m]; }
    QPoly& at(int m) { return c_[m]; }

    ZSeries operator+(const ZSeries& o) const;
    ZSeries operator-(const ZSeries& o) const;
    ZSeries operator*(const ZSeries& o) const;   // truncated at this order
    ZSeries operator-() const;

    ZSeries scale(const QPoly& p) const;         // multiply every coefficient
    ZSeries shift_z(int k) const;                // multiply by z^k, truncate
    ZSeries div_mono(int dw, int dx, int dy) const;  // exact per coefficient

    ZSeries slice_x(int k) const;                // [x^k], coefficients in (w,y)
    ZSeries slice_w(int k) const;                // [w^k], coefficients in (x,y)
    ZSeries set_w_zero() const;
    ZSeries subst_y(const mpq_class& v) const;

    ZSeries resized(int M) const;                // copy, truncated or zero-padded

    bool is_zero() const;
    int first_nonzero() const;                   // -1 when identically zero
    bool operator==(const ZSeries& o) const { return c_ == o.c_; }

    // 1/(1 + V) for V with zero constant term, truncated at V's order
    static ZSeries one_plus_inverse(const ZSeries& V);

private:
    std::vector<QPoly> c_;
};

// T(x, y, z): triangulations with boundary, x^length y^{outer vertices} z^edges
ZSeries iterate_T(int N);

// U(x, y, z): triangulations with boundary, y marks edges on the outer face
ZSeries iterate_U(int N);

struct CatalyticState {
    ZSeries R;        // w^{inactive} x^{active} y^{edges at active} z^edges
    ZSeries S;        // R at w = 0
    ZSeries Stilde;   // simple-boundary series in (w, z)
    ZSeries Stilde1;  // [w^1] Stilde, a series in z alone
    explicit CatalyticState(int N) : R(N), S(N), Stilde(N), Stilde1(N) {}
};

CatalyticState iterate_RS(int N);

struct CheckResult {
    bool ok = true;
    int order = -1;        // first offending z-order when !ok
    std::string detail;
};

// residue of the cubic satisfied by the once-marked boundary series at y = 1
CheckResult check_Q18(const ZSeries& t1);

// residues of the two catalytic elimination identities
CheckResult check_A28_B(const CatalyticState& st);

} // namespace perc
