#include "recursion.hpp"

#include <sstream>
#include <stdexcept>

namespace perc {

namespace {

Ival C(long n, mpfr_prec_t b) { return Ival::exact(n, b); }

// Q(u, z) and partial derivatives for the once-marked boundary series
Ival eval_Q(const Ival& u, const Ival& z) {
    mpfr_prec_t b = z.prec();
    Ival z2 = z * z, z3 = z2 * z, z4 = z3 * z, z5 = z4 * z;
    Ival u2 = u * u, u3 = u2 * u;
    return u3 * z5 * C(64, b) - u2 * z4 * C(96, b) - z5 * C(27, b)
         + u * z3 * C(30, b) + u2 * z + z2 - u;
}

Ival eval_Qu(const Ival& u, const Ival& z) {
    mpfr_prec_t b = z.prec();
    Ival z3 = z * z * z, z4 = z3 * z, z5 = z4 * z;
    return u * u * z5 * C(192, b) - u * z4 * C(192, b) + z3 * C(30, b)
         + u * z * C(2, b) - C(1, b);
}

Ival eval_Qz(const Ival& u, const Ival& z) {
    mpfr_prec_t b = z.prec();
    Ival z2 = z * z, z3 = z2 * z, z4 = z3 * z;
    Ival u2 = u * u;
    return u2 * u * z4 * C(320, b) - u2 * z3 * C(384, b) - z4 * C(135, b)
         + u * z2 * C(90, b) + u2 + z * C(2, b);
}

// z-expansion of the once-marked series, exact rationals
std::vector<mpq_class> t1_series(int N) {
    std::vector<mpq_class> a(N + 1, 0);
    for (int n = 2; n <= N; n++) {
        // a_n = [z^n] (64 u^3 z^5 - 96 u^2 z^4 - 27 z^5 + 30 u z^3 + u^2 z + z^2)
        mpq_class v = 0;
        if (n == 2) v += 1;
        if (n == 5) v -= 27;
        if (n >= 3 && n - 3 <= N) v += 30 * a[n - 3];
        auto conv2 = [&](int m) {
            mpq_class s = 0;
            for (int i = 0; i <= m; i++) s += a[i] * a[m - i];
            return s;
        };
        auto conv3 = [&](int m) {
            mpq_class s = 0;
            for (int i = 0; i <= m; i++)
                if (a[i] != 0) s += a[i] * conv2(m - i);
            return s;
        };
        if (n >= 1) v += conv2(n - 1);
        if (n >= 4) v -= 96 * conv2(n - 4);
        if (n >= 5) v += 64 * conv3(n - 5);
        a[n] = v;
    }
    return a;
}

} // namespace

FieldElement T1_critical_exact() {
    const auto& k = field_constants();
    return mpq_class(1, 4)
           * (k.cbrt4 * (mpq_class(2) * k.sqrt3 - FieldElement(3)));
}

FieldElement T1_slope_critical_exact() {
    const auto& k = field_constants();
    FieldElement u = T1_critical_exact(), z = k.ztilde0;
    FieldElement z3 = z * z * z, z4 = z3 * z, z5 = z4 * z;
    FieldElement Quu = mpq_class(384) * (u * z5) - mpq_class(192) * z4
                     + mpq_class(2) * z;
    FieldElement Quz = mpq_class(960) * (u * u * z4)
                     - mpq_class(768) * (u * z3) + mpq_class(90) * (z * z)
                     + mpq_class(2) * u;
    return -(Quz / Quu);
}

RootResult root_T1(const mpq_class& z, mpfr_prec_t bits) {
    const auto& k = field_constants();
    // certified initial box from the series truncation plus a geometric tail
    // bound: coefficients a_n satisfy a_n <= ustar / zc^n with zc critical
    int N = 24;
    Ival zc = Ival::of_field(k.ztilde0, bits);
    Ival zi = Ival::exact(z, bits);
    if (!zi.strictly_positive() || !zi.lt(zc))
        throw std::domain_error("root solver needs 0 < z < critical weight");
    Ival one = Ival::exact(1, bits);
    for (int attempt = 0; attempt < 8; attempt++, N *= 2) {
        auto a = t1_series(N);
        Ival lo = Ival::exact(0, bits), zp = one;
        for (int n = 0; n <= N; n++) {
            if (a[n] != 0) lo += Ival::exact(a[n], bits) * zp;
            zp *= zi;
        }
        Ival ratio = zi / zc;
        Ival tail = Ival::exact(mpq_class(1, 5), bits) * ratio.pow_int(N + 1)
                  / (one - ratio);  // 1/5 bounds the critical value
        Ival X = Ival::join(lo, lo + tail);
        Ival Qu = eval_Qu(X, zi);
        if (Qu.contains_zero()) continue;  // box too wide; refine truncation
        for (int it = 0; it < 200 && X.rel_width() >= 1e-45; it++) {
            Ival m = Ival::exact(0, bits);
            {
                mpfr_t mid;
                mpfr_init2(mid, bits);
                mpfr_add(mid, X.lo_raw(), X.hi_raw(), MPFR_RNDN);
                mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
                mpfr_set(m.lo_raw(), mid, MPFR_RNDD);
                mpfr_set(m.hi_raw(), mid, MPFR_RNDU);
                mpfr_clear(mid);
            }
            Ival Xn = m - eval_Q(m, zi) / eval_Qu(X, zi);
            // the Newton image also encloses the root; intersect with X
            Ival Xi(bits);
            mpfr_max(Xi.lo_raw(), X.lo_raw(), Xn.lo_raw(), MPFR_RNDD);
            mpfr_min(Xi.hi_raw(), X.hi_raw(), Xn.hi_raw(), MPFR_RNDU);
            if (mpfr_cmp(Xi.lo_raw(), Xi.hi_raw()) > 0)
                throw std::runtime_error(
                    "root refinement produced an empty intersection");
            if (mpfr_cmp(Xi.lo_raw(), X.lo_raw()) == 0
                && mpfr_cmp(Xi.hi_raw(), X.hi_raw()) == 0)
                break;  // stalled at precision limit
            X = Xi;
        }
        if (X.rel_width() >= 1e-40) continue;  // tighten the initial box
        RootResult r{X, -(eval_Qz(X, zi) / eval_Qu(X, zi))};
        return r;
    }
    throw std::runtime_error(
        "branch ambiguity: root box could not be separated (z too close to "
        "the critical weight)");
}

namespace {

Dual dual_const(const Ival& v) { return Dual::constant(v); }

struct Work {
    mpfr_prec_t bits;
    Ival zero, one;
    Work(mpfr_prec_t b) : bits(b), zero(Ival::exact(0, b)), one(Ival::exact(1, b)) {}
};

bool widths_ok(const std::vector<Dual>& c, bool with_d, double target) {
    for (const auto& d : c) {
        bool vok = d.v.rel_width() < target
                   || (d.v.contains_zero() && d.v.rad() < 1e-40);
        if (!vok) return false;
        if (with_d) {
            bool dok = d.d.rel_width() < target
                       || (d.d.contains_zero() && d.d.rad() < 1e-40);
            if (!dok) return false;
        }
    }
    return true;
}

std::vector<Dual> run_T(const mpq_class& yq, const Dual& z, const Dual& T1,
                        int L, const Work& w) {
    Dual y = dual_const(Ival::exact(yq, w.bits));
    Dual y2 = y * y;
    std::vector<Dual> t(L + 1, Dual(w.bits)), inv(L + 1, Dual(w.bits)),
        sq(L + 1, Dual(w.bits));
    t[0] = y;
    inv[0] = dual_const(w.one) / y;
    sq[0] = t[0] * t[0];
    Dual ym1 = y - dual_const(w.one);
    for (int l = 0; l + 1 <= L; l++) {
        Dual inv0(w.bits);  // next inverse coefficient, unknown term excluded
        inv0.v = w.zero; inv0.d = w.zero;
        for (int j = 1; j <= l; j++) inv0 = inv0 + t[j] * inv[l + 1 - j];
        inv0 = -(inv0 / y);
        Dual G = y2 * inv0;
        Dual rhs = (y / z) * t[l];
        if (l == 0) rhs = rhs - y2 / z + T1;
        if (l >= 2) rhs = rhs - y * sq[l - 2];
        rhs = rhs - ym1 * G;
        t[l + 1] = rhs;
        inv[l + 1] = inv0 - t[l + 1] / y2;
        Dual s(w.bits); s.v = w.zero; s.d = w.zero;
        for (int i = 0; i <= l + 1; i++) s = s + t[i] * t[l + 1 - i];
        sq[l + 1] = s;
    }
    return t;
}

std::vector<Dual> run_U(const mpq_class& yq, const Dual& z, const Dual& U1,
                        int L, const Work& w) {
    Dual y = dual_const(Ival::exact(yq, w.bits));
    Dual one = dual_const(w.one);
    Dual ym1 = y - one;
    Dual z2 = z * z, z3 = z2 * z;
    std::vector<Dual> u(L + 1, Dual(w.bits)), sq(L + 1, Dual(w.bits)),
        cube(L + 1, Dual(w.bits));
    u[0] = one;
    sq[0] = one;
    cube[0] = one;
    for (int l = 0; l + 1 <= L; l++) {
        Dual bracket = u[l];
        if (l == 0) bracket = bracket - one;
        if (l >= 2) bracket = bracket - y * z * sq[l - 2];
        if (l >= 1)
            bracket = bracket
                      - ym1 * z2 * (dual_const(Ival::exact(2, w.bits)) * sq[l - 1]
                                    - u[l - 1]);
        if (l >= 3) bracket = bracket - y * ym1 * ym1 * z3 * cube[l - 3];
        Dual rhs = (y / z) * bracket;
        if (l == 0) rhs = rhs + U1;
        u[l + 1] = rhs;
        Dual s(w.bits); s.v = w.zero; s.d = w.zero;
        for (int i = 0; i <= l + 1; i++) s = s + u[i] * u[l + 1 - i];
        sq[l + 1] = s;
        Dual cb(w.bits); cb.v = w.zero; cb.d = w.zero;
        for (int i = 0; i <= l + 1; i++) cb = cb + u[i] * sq[l + 1 - i];
        cube[l + 1] = cb;
    }
    return u;
}

// numeric x-recursion for the simple-boundary series at rational y and the
// critical edge weight, mirroring the exact extension-field extraction: the
// defining equation is a3 S^3 + p2 x^2 S^2 + p1 x S^2 + q2 x^2 S + q3 x^3 S
// + r3 x^3 + r4 x^4 + r5 x^5 = 0, the first coefficient s1 is the positive
// real root of its own order-3 slice, and the forward pivot is the equation's
// S-derivative at s1
std::vector<Ival> run_S(const mpq_class& yq, int L, const Work& w) {
    const auto& k = field_constants();
    mpfr_prec_t bits = w.bits;
    FieldElement y(yq), ym1(yq - 1);
    FieldElement y2f = y * y, y3f = y2f * y;
    Ival a3 = Ival::of_field(mpq_class(6) * (y2f * ym1), bits);
    Ival p2 = Ival::of_field(-(k.cbrt2 * k.sqrt3 * y3f), bits);
    Ival p1 = Ival::of_field(mpq_class(-12) * (k.cbrt4 * k.sqrt3 * y * ym1),
                             bits);
    Ival q2 = Ival::of_field(-(k.cbrt2 * k.sqrt3 * y3f)
                             + mpq_class(36) * (k.cbrt2 * ym1), bits);
    Ival q3 = Ival::of_field(mpq_class(6) * y3f, bits);
    Ival r4 = Ival::of_field(mpq_class(-6) * (k.cbrt4 * k.sqrt3 * y * ym1),
                             bits);
    Ival r5 = Ival::of_field(-(k.cbrt2 * k.sqrt3 * y3f), bits);

    // first coefficient from its exact minimal cubic, refined by interval
    // Newton to the working precision
    SSolution seed = solve_cubic_S25(1, yq);
    Ival s1(bits);
    if (seed.trivial_ext) {
        s1 = Ival::of_field(seed.c[1].c0, bits);
    } else {
        Ival A = Ival::of_field(seed.A, bits), B = Ival::of_field(seed.B, bits),
             C = Ival::of_field(seed.C, bits);
        Ival X = seed.root(bits);
        for (int it = 0; it < 80; it++) {
            Ival m(bits);
            mpfr_add(m.lo_raw(), X.lo_raw(), X.hi_raw(), MPFR_RNDD);
            mpfr_div_ui(m.lo_raw(), m.lo_raw(), 2, MPFR_RNDD);
            mpfr_set(m.hi_raw(), m.lo_raw(), MPFR_RNDU);
            Ival fm = ((m + A) * m + B) * m + C;
            Ival fpX = (Ival::exact(3, bits) * X + Ival::exact(2, bits) * A) * X
                       + B;
            if (fpX.contains_zero()) break;
            Ival Xn = m - fm / fpX;
            Ival Xi(bits);
            mpfr_max(Xi.lo_raw(), X.lo_raw(), Xn.lo_raw(), MPFR_RNDD);
            mpfr_min(Xi.hi_raw(), X.hi_raw(), Xn.hi_raw(), MPFR_RNDU);
            if (mpfr_cmp(Xi.lo_raw(), Xi.hi_raw()) > 0)
                throw std::runtime_error("empty intersection refining the "
                                         "first simple-boundary coefficient");
            if (mpfr_cmp(Xi.lo_raw(), X.lo_raw()) == 0
                && mpfr_cmp(Xi.hi_raw(), X.hi_raw()) == 0)
                break;
            X = Xi;
        }
        s1 = X;
    }

    std::vector<Ival> s(std::max(L + 1, 2), w.zero), sq(L + 3, w.zero);
    s[1] = s1;
    Ival piv = (Ival::exact(3, bits) * a3 * s1 + Ival::exact(2, bits) * p1)
                   * s1
               + q2;
    Ival pivInv = piv.inv();
    Ival two = Ival::exact(2, bits);
    if (L >= 1) sq[2] = s1 * s1;
    for (int n = 2; n <= L; n++) {
        int m = n + 2;
        Ival sqn1 = w.zero;   // square at order n+1 excluding the unknown s_n
        for (int i = 2; i <= n - 1; i++) sqn1 += s[i] * s[n + 1 - i];
        Ival cube = w.zero;   // cube at order m, also free of s_n
        for (int i = 1; i <= m - 2 && i < n; i++) {
            const Ival& sqpart = (m - i == n + 1) ? sqn1 : sq[m - i];
            cube += s[i] * sqpart;
        }
        Ival rest = a3 * cube + p2 * sq[m - 2] + p1 * sqn1 + q3 * s[m - 3];
        if (m == 4) rest += r4;
        if (m == 5) rest += r5;
        s[n] = -(rest * pivInv);
        sq[n + 1] = sqn1 + two * s1 * s[n];
    }
    s.resize(L + 1);
    return s;
}

std::vector<Dual> run_St(const Dual& z, const Dual& St1, int L, const Work& w) {
    std::vector<Dual> s(L + 1, Dual(w.bits));
    for (auto& d : s) { d.v = w.zero; d.d = w.zero; }
    for (int k = 0; k + 1 <= L; k++) {
        Dual sq(w.bits); sq.v = w.zero; sq.d = w.zero;
        for (int i = 1; i <= k; i++) sq = sq + s[i] * s[k + 1 - i];
        Dual rhs = s[k] / z - sq;
        if (k == 2) rhs = rhs - dual_const(w.one);
        if (k == 0) rhs = rhs + St1;
        s[k + 1] = rhs;
    }
    return s;
}

} // namespace

XCoeffs xcoeffs_numeric(SeriesKind kind, const mpq_class& y, const ZSpec& z,
                        int L, bool with_derivative, mpfr_prec_t start_bits,
                        double width_target) {
    if (kind == SeriesKind::SimpleBoundaryW && y != 1)
        throw std::domain_error("the simple-boundary recursion is y = 1 only");
    if (kind == SeriesKind::SimpleBoundary) {
        if (with_derivative)
            throw std::domain_error(
                "no derivative channel for the simple-boundary x-recursion");
        if (!z.critical)
            throw std::domain_error(
                "the simple-boundary x-recursion is critical-weight only");
    }
    const auto& k = field_constants();
    for (mpfr_prec_t bits = start_bits; bits <= 1 << 20; bits *= 2) {
        Work w(bits);
        Dual zd(bits);
        Dual t1(bits);   // once-marked value, scaled per series kind
        if (z.critical) {
            zd.v = Ival::of_field(k.ztilde0, bits);
            t1.v = Ival::of_field(T1_critical_exact(), bits);
            t1.d = Ival::of_field(T1_slope_critical_exact(), bits);
        } else {
            zd.v = Ival::exact(z.value, bits);
            RootResult r = root_T1(z.value, bits);
            t1.v = r.value;
            t1.d = r.dvalue;
        }
        zd.d = with_derivative ? w.one : w.zero;
        if (!with_derivative) t1.d = w.zero;
        std::vector<Dual> c;
        switch (kind) {
            case SeriesKind::GeneralBoundary: {
                Dual T1 = dual_const(Ival::exact(y, bits)) * t1;
                T1.d = with_derivative ? (Ival::exact(y, bits) * t1.d) : w.zero;
                c = run_T(y, zd, T1, L, w);
                break;
            }
            case SeriesKind::OuterEdge: {
                Dual U1 = dual_const(Ival::exact(y, bits)) * t1;
                U1.d = with_derivative ? (Ival::exact(y, bits) * t1.d) : w.zero;
                c = run_U(y, zd, U1, L, w);
                break;
            }
            case SeriesKind::SimpleBoundaryW:
                c = run_St(zd, t1, L, w);
                break;
            case SeriesKind::SimpleBoundary: {
                std::vector<Ival> s = run_S(y, L, w);
                c.assign(L + 1, Dual(bits));
                for (int i = 0; i <= L; i++) {
                    c[i].v = s[i];
                    c[i].d = w.zero;
                }
                break;
            }
        }
        if (widths_ok(c, with_derivative, width_target))
            return {std::move(c), bits};
    }
    std::ostringstream os;
    os << "precision failure: enclosure widths above " << width_target
       << " after escalation (kind " << (int)kind << ", L " << L << ")";
    throw std::runtime_error(os.str());
}

} // namespace perc
