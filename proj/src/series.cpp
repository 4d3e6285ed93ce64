#include "series.hpp"

#include <sstream>
#include <stdexcept>

namespace perc {

ZSeries ZSeries::operator+(const ZSeries& o) const {
    ZSeries r(order());
    for (int m = 0; m <= order(); m++) r.c_[m] = c_[m] + o.c_[m];
    return r;
}

ZSeries ZSeries::operator-(const ZSeries& o) const {
    ZSeries r(order());
    for (int m = 0; m <= order(); m++) r.c_[m] = c_[m] - o.c_[m];
    return r;
}

ZSeries ZSeries::operator-() const {
    ZSeries r(order());
    for (int m = 0; m <= order(); m++) r.c_[m] = -c_[m];
    return r;
}

ZSeries ZSeries::operator*(const ZSeries& o) const {
    ZSeries r(order());
    for (int i = 0; i <= order(); i++) {
        if (c_[i].is_zero()) continue;
        for (int j = 0; i + j <= order() && j <= o.order(); j++) {
            if (o.c_[j].is_zero()) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    return r;
}

ZSeries ZSeries::scale(const QPoly& p) const {
    ZSeries r(order());
    for (int m = 0; m <= order(); m++) r.c_[m] = c_[m] * p;
    return r;
}

ZSeries ZSeries::shift_z(int k) const {
    ZSeries r(order());
    for (int m = 0; m + k <= order(); m++) r.c_[m + k] = c_[m];
    return r;
}

ZSeries ZSeries::div_mono(int dw, int dx, int dy) const {
    ZSeries r(order());
    for (int m = 0; m <= order(); m++) r.c_[m] = c_[m].div_exact(dw, dx, dy);
    return r;
}

ZSeries ZSeries::slice_x(int k) const {
    ZSeries r(order());
    for (int m = 0; m <= order(); m++) r.c_[m] = c_[m].coeff_of_x(k);
    return r;
}

ZSeries ZSeries::slice_w(int k) const {
    ZSeries r(order());
    for (int m = 0; m <= order(); m++) r.c_[m] = c_[m].coeff_of_w(k);
    return r;
}

ZSeries ZSeries::set_w_zero() const {
    ZSeries r(order());
    for (int m = 0; m <= order(); m++) r.c_[m] = c_[m].set_w_zero();
    return r;
}

ZSeries ZSeries::subst_y(const mpq_class& v) const {
    ZSeries r(order());
    for (int m = 0; m <= order(); m++) r.c_[m] = c_[m].subst_y(v);
    return r;
}

ZSeries ZSeries::resized(int M) const {
    ZSeries r(M);
    for (int m = 0; m <= std::min(M, order()); m++) r.c_[m] = c_[m];
    return r;
}

bool ZSeries::is_zero() const { return first_nonzero() < 0; }

int ZSeries::first_nonzero() const {
    for (int m = 0; m <= order(); m++)
        if (!c_[m].is_zero()) return m;
    return -1;
}

ZSeries ZSeries::one_plus_inverse(const ZSeries& V) {
    if (!V.c_[0].is_zero())
        throw std::domain_error("series inversion needs zero constant term");
    ZSeries W(V.order());
    W.c_[0] = QPoly(1);
    for (int m = 1; m <= V.order(); m++) {
        QPoly s;
        for (int j = 1; j <= m; j++) s += V.c_[j] * W.c_[m - j];
        W.c_[m] = -s;
    }
    return W;
}

// --- solvers -----------------------------------------------------------

ZSeries iterate_T(int N) {
    const QPoly x = QPoly::var_x(), y = QPoly::var_y();
    ZSeries T(y, 0);
    // Each right-hand-side term carries a factor z, so the m-th pass fixes
    // the coefficient of z^m; widening the truncation one order per pass
    // keeps every exact division acting on converged coefficients only.
    for (int m = 1; m <= N; m++) {
        ZSeries Tp = T.resized(m);
        ZSeries yS(y, m);
        ZSeries V = (Tp - yS).div_mono(0, 0, 1);
        ZSeries W = ZSeries::one_plus_inverse(V);
        ZSeries bridge = (Tp * Tp).scale(x * x).shift_z(1);
        ZSeries cut = (V * V * W).div_mono(0, 1, 0)
                          .scale(y - QPoly(1)).shift_z(1);
        ZSeries T1 = Tp.slice_x(1);
        ZSeries top = (Tp - yS - T1.scale(x))
                          .div_mono(0, 1, 1).shift_z(1);
        T = yS + bridge + cut + top;
    }
    return T;
}

ZSeries iterate_U(int N) {
    const QPoly x = QPoly::var_x(), y = QPoly::var_y(), one(1);
    ZSeries U(one, 0);
    for (int m = 1; m <= N; m++) {
        ZSeries Up = U.resized(m);
        ZSeries oneS(one, m);
        ZSeries U2 = Up * Up;
        ZSeries bridge = U2.scale(y * x * x).shift_z(1);
        ZSeries U1 = Up.slice_x(1);
        ZSeries top = (Up - oneS - U1.scale(x))
                          .div_mono(0, 1, 1).shift_z(1);
        ZSeries inner = Up.scale(QPoly(2)) - oneS
                        - U2.scale(QPoly(2) * y * x * x).shift_z(1);
        ZSeries mid = (Up * inner).scale((y - one) * x).shift_z(2);
        ZSeries tri = (U2 * Up).scale((y * y - one) * x * x * x * y).shift_z(3);
        U = oneS + bridge + top + mid + tri;
    }
    return U;
}

CatalyticState iterate_RS(int N) {
    const QPoly w = QPoly::var_w(), x = QPoly::var_x(), y = QPoly::var_y();
    CatalyticState st(N);

    // simple-boundary series first: it closes on itself
    ZSeries St(0);
    for (int m = 1; m <= N; m++) {
        ZSeries Sp = St.resized(m);
        ZSeries seed(m);
        if (m >= 1) seed.at(1) = w * w;
        ZSeries St1w = Sp.slice_w(1).scale(w);
        ZSeries a = (Sp - St1w).div_mono(1, 0, 0).shift_z(1);
        ZSeries b = (Sp * Sp).div_mono(1, 0, 0).shift_z(1);
        St = seed + a + b;
    }

    ZSeries R(0);
    for (int m = 1; m <= N; m++) {
        ZSeries Rp = R.resized(m);
        ZSeries Stp = St.resized(m);
        ZSeries edge(m);
        if (m >= 1) edge.at(1) = x * y * (x + w);
        ZSeries S = Rp.set_w_zero();
        ZSeries F = Rp - S;
        ZSeries a = F.div_mono(1, 0, 0).scale(y).shift_z(1);
        ZSeries b = (Rp * S).div_mono(0, 1, 0).scale(y).shift_z(1);
        ZSeries c = (F * Stp).div_mono(1, 0, 0).scale(y).shift_z(1);
        R = edge + a + b + c;
    }

    st.R = R;
    st.S = R.set_w_zero();
    st.Stilde = St;
    st.Stilde1 = St.slice_w(1);
    return st;
}

// --- identity checkers --------------------------------------------------

static CheckResult residue_report(const ZSeries& res, const char* name) {
    CheckResult r;
    int m = res.first_nonzero();
    if (m >= 0) {
        r.ok = false;
        r.order = m;
        std::ostringstream os;
        os << name << " residue nonzero at z-order " << m << ": "
           << res.at(m).str();
        r.detail = os.str();
    }
    return r;
}

CheckResult check_Q18(const ZSeries& t1) {
    const int N = t1.order();
    ZSeries u = t1;
    ZSeries u2 = u * u;
    ZSeries u3 = u2 * u;
    ZSeries res = u3.scale(QPoly(64)).shift_z(5)
                - u2.scale(QPoly(96)).shift_z(4)
                - ZSeries(QPoly(27), N).shift_z(5)
                + u.scale(QPoly(30)).shift_z(3)
                + u2.shift_z(1)
                + ZSeries(QPoly(1), N).shift_z(2)
                - u;
    return residue_report(res, "cubic identity for the once-marked series");
}

CheckResult check_A28_B(const CatalyticState& st) {
    const int N = st.R.order();
    const QPoly w = QPoly::var_w(), x = QPoly::var_x(), y = QPoly::var_y();
    const ZSeries& r = st.R;
    const ZSeries& s = st.S;
    const ZSeries& t = st.Stilde1;
    ZSeries s2 = s * s;
    ZSeries r2 = r * r;

    // coefficient of r^2
    ZSeries c2 = s2.scale(w * y * y).shift_z(2)
               + (s.scale(x * y * (w * y - QPoly(2) * w)).shift_z(1)
                  + s.scale(x * y * y).shift_z(2))
               + ZSeries(x * x * (w - w * y), N)
               + ZSeries(x * x * (y * y - y), N).shift_z(1)
               + ZSeries(x * x * w * w * y * y, N).shift_z(2)
               - t.scale(x * x * y * y).shift_z(2);

    // coefficient of r (to be multiplied by -xy)
    ZSeries c1 = s2.scale(y * w).shift_z(1) + s2.scale(y).shift_z(2)
               - (s.scale(x * w)
                  + s.scale(x * (QPoly(1) - QPoly(2) * y)).shift_z(1)
                  + s.scale(QPoly(2) * w * x * x * y).shift_z(2)
                  + (t * s).scale(QPoly(2) * x * y).shift_z(2))
               - (ZSeries(x * x * (w * y - QPoly(2) * w) * (x + w), N).shift_z(1)
                  + ZSeries(x * x * y * (x + w), N).shift_z(2));

    // constant part (to be multiplied by -x^2 y^2 z)
    ZSeries c0 = s2 + s2.scale(w * w).shift_z(1) - (t * s2).shift_z(1)
               - (s.scale(x * w * (x + w))
                  + s.scale(x * (x + w)).shift_z(1))
               + ZSeries(w * x * x * (x + w) * (x + w), N).shift_z(1);

    ZSeries resA = c2 * r2 - (c1 * r).scale(x * y)
                 + c0.scale(x * x * y * y).shift_z(1);
    CheckResult ra =
        residue_report(resA, "catalytic elimination identity (boundary series)");
    if (!ra.ok) return ra;

    ZSeries s3 = s2 * s;
    const ZSeries& f = t;
    ZSeries resB = -ZSeries(x.pow(5) * y.pow(3), N).shift_z(3)
                 + f.scale(x.pow(3) * y.pow(3)).shift_z(3)
                 - s2.scale(x * x * y.pow(3)).shift_z(3)
                 + s.scale(x.pow(3) * y.pow(3)).shift_z(2)
                 - s.scale(x * x * y.pow(3)).shift_z(3)
                 + s3.scale(y.pow(3)).shift_z(2)
                 - ZSeries(x.pow(3) * y.pow(3), N).shift_z(2)
                 - s3.scale(y * y).shift_z(2)
                 - ZSeries(x.pow(4) * y * y, N).shift_z(1)
                 + ZSeries(x.pow(3) * y * y, N).shift_z(2)
                 - s2.scale(QPoly(2) * x * y * y).shift_z(1)
                 + ZSeries(x.pow(4) * y, N).shift_z(1)
                 + s2.scale(QPoly(2) * x * y).shift_z(1)
                 + s.scale(x * x * y)
                 - s.scale(x * x);
    return residue_report(resB, "eliminated identity for the w = 0 series");
}

} // namespace perc
