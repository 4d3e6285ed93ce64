#include "field.hpp"

#include <mpfr.h>
#include <sstream>
#include <stdexcept>

namespace perc {

FieldElement FieldElement::theta_power(int k, const mpq_class& c) {
    FieldElement e;
    e.c_[k] = c;
    return e;
}

bool FieldElement::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (int i = 1; i < 12; i++)
        if (c_[i] != 0) return false;
    return true;
}

FieldElement FieldElement::operator-() const {
    FieldElement r;
    for (int i = 0; i < 12; i++) r.c_[i] = -c_[i];
    return r;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    FieldElement r;
    for (int i = 0; i < 12; i++) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    FieldElement r;
    for (int i = 0; i < 12; i++) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    std::array<mpq_class, 23> t{};
    for (int i = 0; i < 12; i++) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < 12; j++) {
            if (o.c_[j] == 0) continue;
            t[i + j] += c_[i] * o.c_[j];
        }
    }
    FieldElement r;
    for (int i = 0; i < 12; i++) r.c_[i] = t[i];
    for (int i = 12; i < 23; i++) r.c_[i - 12] += 432 * t[i];
    return r;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in number field");
    // Solve M b = e0 where M's column j is (*this) * theta^j reduced.
    mpq_class m[12][13];
    for (int j = 0; j < 12; j++) {
        FieldElement col = *this * theta_power(j);
        for (int i = 0; i < 12; i++) m[i][j] = col.c_[i];
    }
    for (int i = 0; i < 12; i++) m[i][12] = (i == 0) ? 1 : 0;
    for (int col = 0; col < 12; col++) {
        int piv = -1;
        for (int r = col; r < 12; r++)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw std::domain_error("singular multiplication matrix");
        if (piv != col)
            for (int k = 0; k <= 12; k++) std::swap(m[piv][k], m[col][k]);
        mpq_class d = m[col][col];
        for (int k = col; k <= 12; k++) m[col][k] /= d;
        for (int r = 0; r < 12; r++) {
            if (r == col || m[r][col] == 0) continue;
            mpq_class f = m[r][col];
            for (int k = col; k <= 12; k++) m[r][k] -= f * m[col][k];
        }
    }
    FieldElement b;
    for (int i = 0; i < 12; i++) b.c_[i] = m[i][12];
    return b;
}

FieldElement FieldElement::pow(long e) const {
    FieldElement base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? -(unsigned long)e : (unsigned long)e;
    FieldElement r(1);
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

namespace {
// Evaluate at precision bits with directed rounding; returns [lo, hi].
void eval_dir(const std::array<mpq_class, 12>& c, mpfr_prec_t bits,
              mpfr_t lo, mpfr_t hi) {
    mpfr_t th_lo, th_hi, p_lo, p_hi, t_lo, t_hi, q_lo, q_hi;
    mpfr_inits2(bits, th_lo, th_hi, p_lo, p_hi, t_lo, t_hi, q_lo, q_hi,
                (mpfr_ptr) nullptr);
    mpfr_set_ui(th_lo, 432, MPFR_RNDD);
    mpfr_set_ui(th_hi, 432, MPFR_RNDU);
    mpfr_rootn_ui(th_lo, th_lo, 12, MPFR_RNDD);
    mpfr_rootn_ui(th_hi, th_hi, 12, MPFR_RNDU);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
    mpfr_set_ui(p_lo, 1, MPFR_RNDD);
    mpfr_set_ui(p_hi, 1, MPFR_RNDU);
    for (int i = 0; i < 12; i++) {
        const mpq_class& q = c[i];
        if (q != 0) {
            // q * theta^i with theta^i in [p_lo, p_hi], p_lo >= 0
            if (sgn(q) > 0) {
                mpfr_mul_q(q_lo, p_lo, q.get_mpq_t(), MPFR_RNDD);
                mpfr_mul_q(q_hi, p_hi, q.get_mpq_t(), MPFR_RNDU);
            } else {
                mpfr_mul_q(q_lo, p_hi, q.get_mpq_t(), MPFR_RNDD);
                mpfr_mul_q(q_hi, p_lo, q.get_mpq_t(), MPFR_RNDU);
            }
            mpfr_add(lo, lo, q_lo, MPFR_RNDD);
            mpfr_add(hi, hi, q_hi, MPFR_RNDU);
        }
        mpfr_mul(p_lo, p_lo, th_lo, MPFR_RNDD);
        mpfr_mul(p_hi, p_hi, th_hi, MPFR_RNDU);
    }
    mpfr_clears(th_lo, th_hi, p_lo, p_hi, t_lo, t_hi, q_lo, q_hi,
                (mpfr_ptr) nullptr);
}
} // namespace

int FieldElement::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(c_[0]);
    for (mpfr_prec_t bits = 128;; bits *= 2) {
        mpfr_t lo, hi;
        mpfr_inits2(bits, lo, hi, (mpfr_ptr) nullptr);
        eval_dir(c_, bits, lo, hi);
        int s = 0;
        if (mpfr_sgn(lo) > 0) s = 1;
        else if (mpfr_sgn(hi) < 0) s = -1;
        mpfr_clears(lo, hi, (mpfr_ptr) nullptr);
        if (s != 0) return s;
        if (bits > 1 << 20)
            throw std::runtime_error("sign undecided at huge precision for nonzero element");
    }
}

double FieldElement::to_double() const {
    mpfr_t lo, hi;
    mpfr_inits2(128, lo, hi, (mpfr_ptr) nullptr);
    eval_dir(c_, 128, lo, hi);
    double d = (mpfr_get_d(lo, MPFR_RNDN) + mpfr_get_d(hi, MPFR_RNDN)) / 2;
    mpfr_clears(lo, hi, (mpfr_ptr) nullptr);
    return d;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 12; i++) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i].get_str();
        if (i > 0) os << "*th^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

const FieldConstants& field_constants() {
    static const FieldConstants k = [] {
        FieldConstants c;
        c.theta = FieldElement::theta_power(1);
        c.z0 = c.theta.pow(-3);
        c.ztilde0 = c.theta.pow(-2);
        c.sqrt3 = FieldElement::theta_power(6, mpq_class(1, 12));
        c.cbrt2 = FieldElement::theta_power(4, mpq_class(1, 6));
        c.cbrt4 = FieldElement::theta_power(8, mpq_class(1, 36));
        return c;
    }();
    return k;
}

} // namespace perc
