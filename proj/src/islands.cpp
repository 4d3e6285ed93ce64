#include "islands.hpp"

#include <cmath>
#include <stdexcept>

namespace perc {

namespace {

// reduce an enclosure to the working precision with directed rounding
Ival down(const Ival& x, mpfr_prec_t bits) {
    Ival r(bits);
    mpfr_set(r.lo_raw(), x.lo_raw(), MPFR_RNDD);
    mpfr_set(r.hi_raw(), x.hi_raw(), MPFR_RNDU);
    return r;
}

double upper(const Ival& x) { return x.mid() + x.rad(); }

// exact sign of sum c[i] x^i at rational x
int poly_sign(const std::vector<FieldElement>& c, const mpq_class& x) {
    FieldElement acc;
    FieldElement fx(x);
    for (int i = (int)c.size() - 1; i >= 0; i--) acc = acc * fx + c[i];
    return acc.sign();
}

// smallest positive real root, isolated by exact-sign bisection; the scan
// step is fine enough for every polynomial used here (roots are simple and
// well separated on [0, 8])
Ival smallest_positive_root(const std::vector<FieldElement>& c,
                            mpfr_prec_t bits) {
    if (c.empty() || c[0].is_zero())
        throw std::domain_error("root isolation needs a nonzero value at 0");
    int s0 = c[0].sign();
    mpq_class lo = 0, hi;
    int found = 0;
    for (int k = 1; k <= 512; k++) {
        mpq_class x(k, 64);
        int s = poly_sign(c, x);
        if (s == 0) return Ival::exact(x, bits);   // exact rational root
        if (s != s0) {
            hi = x;
            found = 1;
            break;
        }
        lo = x;
    }
    if (!found)
        throw std::domain_error("no sign change located on the scan range");
    for (long i = 0; i < (long)bits + 16; i++) {
        mpq_class mid = (lo + hi) / 2;
        int s = poly_sign(c, mid);
        if (s == 0) return Ival::exact(mid, bits);
        (s == s0 ? lo : hi) = mid;
    }
    return Ival::join(Ival::exact(lo, bits), Ival::exact(hi, bits));
}

// general-boundary growth constant at openness p: linear closed form on
// [0, 1/2], smallest positive root of a cubic on (1/2, 1]
Ival site_r(const mpq_class& p, mpfr_prec_t bits) {
    const auto& k = field_constants();
    if (p < 0 || p > 1)
        throw std::domain_error("growth constants need p in [0, 1]");
    if (p <= mpq_class(1, 2))
        return Ival::of_field(rdot_exact(p), bits);
    std::vector<FieldElement> c{
        mpq_class(15) * k.sqrt3 + FieldElement(mpq_class(27) - 54 * p),
        mpq_class(9) * k.cbrt2,
        -(mpq_class(12) * (k.sqrt3 * k.cbrt4)),
        FieldElement(mpq_class(8)),
    };
    return smallest_positive_root(c, bits);
}

// simple-boundary growth constant at openness p: rational closed form on
// [0, pc], the positive root of a quadratic on (pc, 1)
Ival bond_rS(const mpq_class& p, mpfr_prec_t bits) {
    const auto& k = field_constants();
    if (p < 0 || p >= 1)
        throw std::domain_error(
            "the simple-boundary growth constant degenerates at p = 1");
    FieldElement pf(p);
    if ((pf - bond_critical_point()).sign() <= 0)
        return Ival::of_field(rbar_exact(pf), bits);
    mpq_class q1 = 1 - p;
    std::vector<FieldElement> c{
        -(mpq_class(2) * (q1 * q1 * q1) * (k.cbrt2 * (2 * k.sqrt3 + FieldElement(9)))),
        (3 * p * q1) * (k.cbrt4 * (4 * k.sqrt3 - FieldElement(5))
                        * (FieldElement(3 * p) + 2 * k.sqrt3)),
        (3 * p) * (FieldElement(23 * q1 * q1 - 27 * p + 9)
                   + (mpq_class(48) - 6 * p) * k.sqrt3),
    };
    return smallest_positive_root(c, bits);
}

// outer-edge growth constant at openness p: field closed form on [pc, 1],
// reciprocal of the positive root of a quadratic on (0, pc)
Ival bond_rU(const mpq_class& p, mpfr_prec_t bits) {
    const auto& k = field_constants();
    if (p <= 0 || p > 1)
        throw std::domain_error(
            "the outer-edge growth constant degenerates at p = 0");
    FieldElement pf(p);
    if ((pf - bond_critical_point()).sign() >= 0)
        return Ival::of_field(rbarU_exact(pf), bits);
    std::vector<FieldElement> c{
        (4 * (p - 1)) * (k.cbrt4 * (2 * k.sqrt3 + FieldElement(9))),
        -(2 * p) * (k.cbrt2 * (5 * k.sqrt3 - FieldElement(12))
                    * (2 * k.sqrt3 + FieldElement(3 * p))),
        p * (FieldElement(23 * p * p - 73 * p + 32)
             + (mpq_class(48) - 6 * p) * k.sqrt3),
    };
    return smallest_positive_root(c, bits).inv();
}

} // namespace

FieldElement bond_critical_point() {
    const auto& k = field_constants();
    return (2 * k.sqrt3 - FieldElement(1)) * FieldElement(mpq_class(1, 11));
}

mpq_class bond_critical_point_approx(int bits) {
    Ival enc = Ival::of_field(bond_critical_point(), bits + 32);
    mpq_class lo, hi;
    mpfr_get_q(lo.get_mpq_t(), enc.lo_raw());
    mpfr_get_q(hi.get_mpq_t(), enc.hi_raw());
    return (lo + hi) / 2;
}

FieldElement rdot_exact(const mpq_class& p) {
    if (p < 0 || p > mpq_class(1, 2))
        throw std::domain_error("linear branch holds on [0, 1/2] only");
    const auto& k = field_constants();
    return mpq_class(1, 2)
           * (k.cbrt4 * (k.sqrt3 + FieldElement(1 - 2 * p)));
}

FieldElement rbar_exact(const FieldElement& p) {
    const auto& k = field_constants();
    if ((p - bond_critical_point()).sign() > 0 || p.sign() < 0)
        throw std::domain_error("rational branch holds on [0, pc] only");
    FieldElement one(1);
    return k.cbrt4 * (one - p) / (one + (2 * k.sqrt3 + FieldElement(5)) * p);
}

FieldElement rbarU_exact(const FieldElement& p) {
    const auto& k = field_constants();
    if ((p - bond_critical_point()).sign() < 0
        || (p - FieldElement(1)).sign() > 0)
        throw std::domain_error("field branch holds on [pc, 1] only");
    return (FieldElement(5) + 13 * p - 2 * k.sqrt3)
           / (k.cbrt2 * (10 * k.sqrt3 - FieldElement(12)));
}

Ival closed_form_growth(GrowthKind kind, const mpq_class& p,
                        mpfr_prec_t bits) {
    const auto& k = field_constants();
    mpfr_prec_t wb = bits + 64;
    switch (kind) {
    case GrowthKind::SiteR:
        return down(site_r(p, wb), bits);
    case GrowthKind::BondRS:
        return down(bond_rS(p, wb), bits);
    case GrowthKind::BondRU:
        return down(bond_rU(p, wb), bits);
    case GrowthKind::SiteW: {
        Ival a = Ival::of_field(k.ztilde0, wb) * site_r(p, wb);
        return down(Ival::of_field(k.z0, wb) / (Ival::exact(1, wb) - a), bits);
    }
    case GrowthKind::BondW:
        return down(bond_rS(p, wb) * Ival::of_field(k.theta, wb)
                        / Ival::exact(1 - p, wb),
                    bits);
    case GrowthKind::RhoSite: {
        Ival zt = Ival::of_field(k.ztilde0, wb);
        return down(zt * site_r(1 - p, wb)
                        / (Ival::exact(1, wb) - zt * site_r(p, wb)),
                    bits);
    }
    case GrowthKind::RhoBond:
        return down(bond_rS(p, wb) * bond_rU(p, wb)
                        / (Ival::exact(1 - p, wb)
                           * Ival::of_field(k.ztilde0, wb)),
                    bits);
    }
    throw std::logic_error("unhandled growth kind");
}

namespace {

void fit_tail(WeightSequence& ws) {
    if ((int)ws.W.size() - 1 < 150) return;
    OrthodoxFit f = fit_orthodox(log_mid(ws.W, 1e-4));
    ws.tail = {f.R, f.beta, f.c};
}

} // namespace

WeightSequence site_weights(const mpq_class& p, int K, double rel_tol,
                            const XCoeffs* Tp) {
    if (p <= 0 || p > 1)
        throw std::domain_error("site weights need p in (0, 1]");
    const auto& fc = field_constants();
    const mpfr_prec_t wb = 128;
    WeightSequence ws;
    ws.mode = IslandMode::Site;
    ws.p = p;
    ws.bits = wb;
    ws.W.assign(K + 1, Ival::exact(0, wb));
    ws.q.assign(K + 1, Ival::exact(0, wb));
    Ival sp = Ival::exact(p, wb).sqrt();
    if (p == 1) {
        // the series at argument 0 vanishes identically (every boundary map
        // has at least one outer vertex), so only the bare triangle survives
        if (K >= 3) {
            ws.W[3] = Ival::of_field(fc.z0, wb);
            ws.q[3] = ws.W[3];
        }
        return ws;
    }

    Ival a = Ival::of_field(fc.ztilde0, 192)
             * closed_form_growth(GrowthKind::SiteR, p, 192);
    double ahi = upper(a);
    if (!(ahi < 1))
        throw std::runtime_error("geometric tail control unavailable");

    XCoeffs own;
    const XCoeffs* T = Tp;
    if (!T) {
        int L = K + (int)std::ceil(K * ahi / (1 - ahi)) + 400;
        own = xcoeffs_numeric(SeriesKind::GeneralBoundary, 1 - p,
                              ZSpec::crit(), L, false,
                              (mpfr_prec_t)(L + 256));
        T = &own;
    }
    int L = (int)T->c.size() - 1;
    std::vector<Ival> t;
    t.reserve(L + 1);
    for (const Dual& d : T->c) t.push_back(down(d.v, wb));

    Ival zt = down(Ival::of_field(fc.ztilde0, 192), wb);
    Ival z0 = down(Ival::of_field(fc.z0, 192), wb);
    Ival z0p = Ival::exact(1, wb);
    for (int k = 1; k <= K; k++) {
        z0p *= z0;
        Ival g = Ival::exact(1, wb);   // C(k+l-1, k-1) ztilde0^l at l = 0
        Ival S = t[0];
        bool done = false;
        for (int l = 1; l <= L; l++) {
            g *= zt * Ival::exact(mpq_class(k + l - 1, l), wb);
            Ival term = g * t[l];
            S += term;
            // the term ratio is bounded by ahi (k+l)/(l+1) and decreasing;
            // the comparison stays in mpfr since terms can leave the double
            // exponent range long before the sum does
            double rho = ahi * (double)(k + l) / (double)(l + 1);
            if (rho < 1) {
                Ival tail = term * Ival::hull(rho / (1 - rho), rho / (1 - rho),
                                              wb);
                if (tail.lt(Ival::hull(rel_tol, rel_tol, wb) * S)) {
                    S += Ival::join(Ival::exact(0, wb), tail);
                    done = true;
                    break;
                }
            }
        }
        if (!done)
            throw std::runtime_error(
                "island weight tail not resolved within the series window");
        ws.W[k] = z0p * S;
        if (k == 3) ws.W[k] += down(Ival::of_field(fc.z0, 192), wb);
        ws.q[k] = sp.pow_int(k - 2) * ws.W[k];
    }
    fit_tail(ws);
    return ws;
}

WeightSequence bond_weights(const mpq_class& p, int K, const XCoeffs* Sp) {
    if (p <= 0 || p >= 1)
        throw std::domain_error("bond weights need p in (0, 1)");
    const auto& fc = field_constants();
    const mpfr_prec_t wb = 128;
    WeightSequence ws;
    ws.mode = IslandMode::Bond;
    ws.p = p;
    ws.bits = wb;
    ws.W.assign(K + 1, Ival::exact(0, wb));
    ws.q.assign(K + 1, Ival::exact(0, wb));

    XCoeffs own;
    const XCoeffs* S = Sp;
    if (!S) {
        own = xcoeffs_numeric(SeriesKind::SimpleBoundary, 1 - p,
                              ZSpec::crit(), K, false,
                              (mpfr_prec_t)(K + 256));
        S = &own;
    }
    if ((int)S->c.size() <= K)
        throw std::domain_error("coefficient table shorter than K");

    Ival sp = Ival::exact(p, wb).sqrt();
    Ival fac = down(Ival::of_field(fc.theta, 192), wb)
               / Ival::exact(1 - p, wb);             // z0^(-1/3)/(1-p)
    Ival corr = down(Ival::of_field(fc.ztilde0, 192), wb)
                * Ival::exact(1 - p, wb);            // the one-edge map
    Ival fp = Ival::exact(1, wb);
    for (int k = 1; k <= K; k++) {
        fp *= fac;
        Ival s = down(S->c[k].v, wb);
        if (k == 2) s -= corr;
        ws.W[k] = fp * s;
        ws.q[k] = sp.pow_int(k) * ws.W[k];
    }
    fit_tail(ws);
    return ws;
}

InterfaceLaw interface_law(IslandMode mode, const mpq_class& p, int L,
                           mpfr_prec_t start_bits) {
    const auto& fc = field_constants();
    const mpfr_prec_t wb = 128;
    WeightSequence ws = (mode == IslandMode::Site) ? site_weights(p, L)
                                                   : bond_weights(p, L);
    mpfr_prec_t sb = std::max<mpfr_prec_t>(start_bits, (mpfr_prec_t)(L + 256));
    XCoeffs f = xcoeffs_numeric(mode == IslandMode::Site
                                    ? SeriesKind::GeneralBoundary
                                    : SeriesKind::OuterEdge,
                                p, ZSpec::crit(), L, false, sb);
    Ival th = down(Ival::of_field(fc.theta, 192), wb);   // z0^(-1/3)
    InterfaceLaw law;
    law.bolt.assign(L + 1, Ival::exact(0, wb));
    law.disk.assign(L + 1, Ival::exact(0, wb));
    Ival thp = Ival::exact(1, wb);
    for (int l = 1; l <= L; l++) {
        thp *= th;
        if (l < 4) continue;
        law.bolt[l] = ws.W[l] * thp * down(f.c[l].v, wb);
        if (!ws.q[l].contains_zero()) law.disk[l] = law.bolt[l] / ws.q[l];
    }
    return law;
}

DiskLaw disk_from_interface(IslandMode mode, const mpq_class& p, int L,
                            mpfr_prec_t start_bits) {
    InterfaceLaw law = interface_law(mode, p, L, start_bits);
    DiskLaw out;
    out.disk = std::move(law.disk);
    out.fit = fit_orthodox(log_mid(out.disk, 1e-4));
    return out;
}

} // namespace perc
