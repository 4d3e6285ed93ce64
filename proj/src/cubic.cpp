#include "cubic.hpp"

#include <stdexcept>

namespace perc {

// ---------------------------------------------------------------- T ------

namespace {

struct TCoeffs {
    FieldElement c;    // coefficient of x*T^2
    FieldElement lin;  // coefficient of x*T
    mpq_class y;
};

TCoeffs t_coeffs(const mpq_class& y) {
    const auto& k = field_constants();
    TCoeffs tc;
    tc.y = y;
    tc.c = k.cbrt4 * k.sqrt3;
    tc.lin = tc.c * FieldElement(y)
             - mpq_class(1, 2) * (k.cbrt4 * k.sqrt3)
             + mpq_class(3, 4) * k.cbrt4;
    return tc;
}

} // namespace

std::vector<FieldElement> solve_cubic_T17(int L, const mpq_class& y) {
    TCoeffs tc = t_coeffs(y);
    std::vector<FieldElement> t(L + 1), sq(L + 1);
    t[0] = FieldElement(y);
    sq[0] = t[0] * t[0];
    for (int n = 1; n <= L; n++) {
        FieldElement rest;
        if (n >= 3) {
            // full triple convolution at order n-3 via the square cache
            for (int i = 0; i <= n - 3; i++)
                if (!t[i].is_zero()) rest += t[i] * sq[n - 3 - i];
        }
        rest -= tc.c * sq[n - 1];
        rest += tc.lin * t[n - 1];
        for (int i = 1; i <= n - 1; i++)   // square at order n minus pivot part
            if (!t[i].is_zero()) rest += t[i] * t[n - i];
        t[n] = -rest;                      // pivot 2*t0 + 1 - 2y = 1
        sq[n] = FieldElement();
        for (int i = 0; i <= n; i++)
            if (!t[i].is_zero()) sq[n] += t[i] * t[n - i];
    }
    return t;
}

int residue_T17(const std::vector<FieldElement>& t, const mpq_class& y) {
    const int L = (int)t.size() - 1;
    TCoeffs tc = t_coeffs(y);
    std::vector<FieldElement> sq(L + 1);
    for (int m = 0; m <= L; m++)
        for (int i = 0; i <= m; i++)
            if (!t[i].is_zero()) sq[m] += t[i] * t[m - i];
    for (int m = 0; m <= L; m++) {
        FieldElement e;
        if (m >= 3)
            for (int i = 0; i <= m - 3; i++)
                if (!t[i].is_zero()) e += t[i] * sq[m - 3 - i];
        if (m >= 1) {
            e -= tc.c * sq[m - 1];
            e += tc.lin * t[m - 1];
        }
        e += sq[m];
        e += (mpq_class(1) - 2 * y) * t[m];
        if (m == 0) e += FieldElement(y * y - y);
        if (!e.is_zero()) return m;
    }
    return -1;
}

// ---------------------------------------------------------------- S ------

namespace {

struct SCoeffs {
    FieldElement a3, p2, p1, q2, q3, r3, r4, r5;
};

SCoeffs s_coeffs(const mpq_class& yq, bool branch_shift) {
    const auto& k = field_constants();
    FieldElement y(yq), ym1(yq - 1);
    FieldElement y2 = y * y, y3 = y2 * y;
    SCoeffs sc;
    sc.a3 = mpq_class(6) * (y2 * ym1);
    sc.p2 = -(k.cbrt2 * k.sqrt3 * y3);
    sc.p1 = mpq_class(-12) * (k.cbrt4 * k.sqrt3 * y * ym1);
    sc.q2 = -(k.cbrt2 * k.sqrt3 * y3) + mpq_class(36) * (k.cbrt2 * ym1);
    sc.q3 = mpq_class(6) * y3;
    sc.r3 = mpq_class(-3) * y3 + mpq_class(6) * y2
            - mpq_class(3, 2) * (k.sqrt3 * y3);
    if (branch_shift) sc.r3 += mpq_class(27, 8) * (k.sqrt3 * y3);
    sc.r4 = mpq_class(-6) * (k.cbrt4 * k.sqrt3 * y * ym1);
    sc.r5 = -(k.cbrt2 * k.sqrt3 * y3);
    return sc;
}

// arithmetic in Q(theta)[u]/(u^3 + A u^2 + B u + C)
struct ExtCtx {
    FieldElement A, B, C;

    ExtElem add(const ExtElem& a, const ExtElem& b) const {
        return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
    }
    ExtElem sub(const ExtElem& a, const ExtElem& b) const {
        return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
    }
    ExtElem neg(const ExtElem& a) const { return {-a.c0, -a.c1, -a.c2}; }
    ExtElem scale(const FieldElement& f, const ExtElem& a) const {
        return {f * a.c0, f * a.c1, f * a.c2};
    }
    ExtElem mul(const ExtElem& a, const ExtElem& b) const {
        FieldElement d0 = a.c0 * b.c0;
        FieldElement d1 = a.c0 * b.c1 + a.c1 * b.c0;
        FieldElement d2 = a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0;
        FieldElement d3 = a.c1 * b.c2 + a.c2 * b.c1;
        FieldElement d4 = a.c2 * b.c2;
        // u^3 = -(A u^2 + B u + C); u^4 = (A^2 - B) u^2 + (A B - C) u + A C
        return {d0 - d3 * C + d4 * (A * C),
                d1 - d3 * B + d4 * (A * B - C),
                d2 - d3 * A + d4 * (A * A - B)};
    }
    bool is_zero(const ExtElem& a) const {
        return a.c0.is_zero() && a.c1.is_zero() && a.c2.is_zero();
    }
    ExtElem inverse(const ExtElem& f) const {
        // solve (mult-by-f) v = 1 by Gaussian elimination over Q(theta)
        ExtElem cols[3] = {mul(f, {FieldElement(1), {}, {}}),
                           mul(f, {{}, FieldElement(1), {}}),
                           mul(f, {{}, {}, FieldElement(1)})};
        FieldElement m[3][4];
        for (int j = 0; j < 3; j++) {
            m[0][j] = cols[j].c0;
            m[1][j] = cols[j].c1;
            m[2][j] = cols[j].c2;
        }
        m[0][3] = FieldElement(1);
        for (int col = 0; col < 3; col++) {
            int piv = -1;
            for (int r = col; r < 3; r++)
                if (!m[r][col].is_zero()) { piv = r; break; }
            if (piv < 0)
                throw std::domain_error("non-invertible extension element");
            for (int j = 0; j <= 3; j++) std::swap(m[col][j], m[piv][j]);
            FieldElement inv = m[col][col].inverse();
            for (int j = col; j <= 3; j++) m[col][j] = m[col][j] * inv;
            for (int r = 0; r < 3; r++) {
                if (r == col || m[r][col].is_zero()) continue;
                FieldElement f2 = m[r][col];
                for (int j = col; j <= 3; j++)
                    m[r][j] = m[r][j] - f2 * m[col][j];
            }
        }
        return {m[0][3], m[1][3], m[2][3]};
    }
};

int cubic_sign_at(const SCoeffs& sc, const mpq_class& r) {
    FieldElement rf(r);
    FieldElement v = ((sc.a3 * rf + sc.p1) * rf + sc.q2) * rf + sc.r3;
    return v.sign();
}

} // namespace

SSolution solve_cubic_S25(int L, const mpq_class& y, bool branch_shift) {
    if (y <= 0 || y > 1)
        throw std::domain_error("simple-boundary solver needs y in (0, 1]");
    SCoeffs sc = s_coeffs(y, branch_shift);
    SSolution out;
    out.y = y;

    ExtCtx ctx;
    ExtElem gen;
    if (sc.a3.is_zero()) {
        // y = 1: the leading coefficient vanishes; the first coefficient is
        // a ratio in Q(theta) (the quadratic term drops as well)
        out.trivial_ext = true;
        gen = {-(sc.r3 / sc.q2), {}, {}};
    } else {
        FieldElement ai = sc.a3.inverse();
        ctx.A = sc.p1 * ai;
        ctx.B = sc.q2 * ai;
        ctx.C = sc.r3 * ai;
        out.A = ctx.A;
        out.B = ctx.B;
        out.C = ctx.C;
        gen = {{}, FieldElement(1), {}};
        // bracket the positive real root by exact bisection
        mpq_class lo = 0, hi = 1;
        if (cubic_sign_at(sc, lo) <= 0)
            throw std::domain_error("unexpected sign at zero for the "
                                    "first-coefficient cubic");
        int guard = 0;
        while (cubic_sign_at(sc, hi) > 0) {
            hi *= 2;
            if (++guard > 64)
                throw std::domain_error("no sign change found for the "
                                        "first-coefficient cubic");
        }
        for (int it = 0; it < 220; it++) {
            mpq_class mid = (lo + hi) / 2;
            mid.canonicalize();
            if (cubic_sign_at(sc, mid) > 0) lo = mid; else hi = mid;
        }
        out.root_lo = lo;
        out.root_hi = hi;
    }

    std::vector<ExtElem> s(std::max(L + 1, 2));
    s[1] = gen;
    // pivot: derivative of the order-3 equation at the first coefficient
    ExtElem piv = ctx.add(
        ctx.add(ctx.scale(mpq_class(3) * sc.a3, ctx.mul(gen, gen)),
                ctx.scale(mpq_class(2) * sc.p1, gen)),
        {sc.q2, {}, {}});
    ExtElem pivInv = ctx.inverse(piv);

    std::vector<ExtElem> sq(L + 3);    // sq[j] = [x^j] of the series squared
    if (L >= 1) sq[2] = ctx.mul(s[1], s[1]);
    for (int n = 2; n <= L; n++) {
        int m = n + 2;
        // square at order n+1 excluding the unknown s_n (s[n] is still zero)
        ExtElem sqn1{};
        for (int i = 1; i <= n; i++)
            if (i <= (int)s.size() - 1 && n + 1 - i >= 1)
                sqn1 = ctx.add(sqn1, ctx.mul(s[i], s[n + 1 - i]));
        // cube at order m, also free of s_n
        ExtElem cube{};
        for (int i = 1; i <= m - 2; i++) {
            const ExtElem& sqpart = (m - i == n + 1) ? sqn1 : sq[m - i];
            if (!ctx.is_zero(s[i]) && !ctx.is_zero(sqpart))
                cube = ctx.add(cube, ctx.mul(s[i], sqpart));
        }
        ExtElem rest = ctx.scale(sc.a3, cube);
        rest = ctx.add(rest, ctx.scale(sc.p2, sq[m - 2]));
        rest = ctx.add(rest, ctx.scale(sc.p1, sqn1));
        rest = ctx.add(rest, ctx.scale(sc.q3, s[m - 3]));
        if (m == 4) rest = ctx.add(rest, {sc.r4, {}, {}});
        if (m == 5) rest = ctx.add(rest, {sc.r5, {}, {}});
        s[n] = ctx.neg(ctx.mul(rest, pivInv));
        // finalize the square at order n+1 now that s_n is known
        sq[n + 1] = ctx.add(sqn1,
                            ctx.scale(FieldElement(2), ctx.mul(s[1], s[n])));
    }

    out.c = std::move(s);
    out.c.resize(L + 1);
    return out;
}

int residue_S25(const SSolution& sol) {
    const int L = (int)sol.c.size() - 1;
    SCoeffs sc = s_coeffs(sol.y, false);
    ExtCtx ctx{sol.A, sol.B, sol.C};
    const auto& s = sol.c;
    std::vector<ExtElem> sq(L + 3), cube(L + 3);
    for (int j = 0; j <= L + 2; j++)
        for (int i = 1; i <= j - 1 && i <= L; i++)
            if (j - i <= L)
                sq[j] = ctx.add(sq[j], ctx.mul(s[i], s[j - i]));
    for (int j = 0; j <= L + 2; j++)
        for (int i = 1; i <= j - 2 && i <= L; i++)
            cube[j] = ctx.add(cube[j], ctx.mul(s[i], sq[j - i]));
    for (int m = 0; m <= L + 2; m++) {
        ExtElem e = ctx.scale(sc.a3, cube[m]);
        if (m >= 2) e = ctx.add(e, ctx.scale(sc.p2, sq[m - 2]));
        if (m >= 1) e = ctx.add(e, ctx.scale(sc.p1, sq[m - 1]));
        if (m >= 2 && m - 2 <= L) e = ctx.add(e, ctx.scale(sc.q2, s[m - 2]));
        if (m >= 3 && m - 3 <= L) e = ctx.add(e, ctx.scale(sc.q3, s[m - 3]));
        if (m == 3) e = ctx.add(e, {sc.r3, {}, {}});
        if (m == 4) e = ctx.add(e, {sc.r4, {}, {}});
        if (m == 5) e = ctx.add(e, {sc.r5, {}, {}});
        if (!ctx.is_zero(e)) return m;
    }
    return -1;
}

Ival SSolution::root(mpfr_prec_t bits) const {
    if (trivial_ext) return Ival::of_field(c[1].c0, bits);
    return Ival::join(Ival::exact(root_lo, bits), Ival::exact(root_hi, bits));
}

Ival SSolution::eval(const ExtElem& e, mpfr_prec_t bits) const {
    Ival u = root(bits);
    return Ival::of_field(e.c0, bits)
         + Ival::of_field(e.c1, bits) * u
         + Ival::of_field(e.c2, bits) * u * u;
}

} // namespace perc
