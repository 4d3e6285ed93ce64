#include "interval.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace perc {

Ival::Ival(mpfr_prec_t bits) : prec_(bits) {
    mpfr_init2(lo_, bits);
    mpfr_init2(hi_, bits);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Ival::Ival(const Ival& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Ival::Ival(Ival&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Ival& Ival::operator=(const Ival& o) {
    if (this != &o) {
        if (prec_ != o.prec_) {
            mpfr_set_prec(lo_, o.prec_);
            mpfr_set_prec(hi_, o.prec_);
            prec_ = o.prec_;
        }
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

Ival& Ival::operator=(Ival&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    std::swap(prec_, o.prec_);
    return *this;
}

Ival::~Ival() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Ival Ival::exact(long v, mpfr_prec_t bits) {
    Ival r(bits);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Ival Ival::exact(const mpq_class& q, mpfr_prec_t bits) {
    Ival r(bits);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Ival Ival::hull(double lo, double hi, mpfr_prec_t bits) {
    Ival r(bits);
    mpfr_set_d(r.lo_, lo, MPFR_RNDD);
    mpfr_set_d(r.hi_, hi, MPFR_RNDU);
    return r;
}

Ival Ival::of_field(const FieldElement& e, mpfr_prec_t bits) {
    Ival th(bits), p(bits), acc(bits);
    mpfr_set_ui(th.lo_, 432, MPFR_RNDD);
    mpfr_set_ui(th.hi_, 432, MPFR_RNDU);
    mpfr_rootn_ui(th.lo_, th.lo_, 12, MPFR_RNDD);
    mpfr_rootn_ui(th.hi_, th.hi_, 12, MPFR_RNDU);
    p = exact(1, bits);
    for (int i = 0; i < 12; i++) {
        if (e.coeff(i) != 0) acc += p * exact(e.coeff(i), bits);
        p *= th;
    }
    return acc;
}

Ival Ival::operator+(const Ival& o) const {
    Ival r(prec_);
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Ival Ival::operator-(const Ival& o) const {
    Ival r(prec_);
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Ival Ival::operator-() const {
    Ival r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Ival Ival::operator*(const Ival& o) const {
    Ival r(prec_);
    mpfr_t t;
    mpfr_init2(t, prec_);
    // lo: min of the four directed-down products
    mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // hi: max of the four directed-up products
    mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Ival Ival::inv() const {
    if (contains_zero()) throw std::domain_error("interval division by zero");
    Ival r(prec_);
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
    return r;
}

Ival Ival::operator/(const Ival& o) const { return *this * o.inv(); }

Ival Ival::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw std::domain_error("sqrt of negative interval");
    Ival r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ival Ival::pow_int(long e) const {
    if (e == 0) return exact(1, prec_);
    Ival base = e < 0 ? inv() : *this;
    unsigned long n = e < 0 ? -(unsigned long)e : (unsigned long)e;
    Ival r = exact(1, prec_);
    while (n) {
        if (n & 1) r *= base;
        if (n >>= 1) base *= base;
    }
    return r;
}

Ival Ival::log() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log of non-positive interval");
    Ival r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ival Ival::exp() const {
    Ival r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ival Ival::pow(const Ival& e) const { return (log() * e).exp(); }

bool Ival::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Ival::contains(const Ival& o) const {
    return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(o.hi_, hi_) <= 0;
}

bool Ival::strictly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Ival::strictly_negative() const { return mpfr_sgn(hi_) < 0; }
bool Ival::lt(const Ival& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }

double Ival::mid() const {
    return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2;
}

double Ival::rad() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    double w = mpfr_get_d(t, MPFR_RNDU) / 2;
    mpfr_clear(t);
    return w;
}

double Ival::rel_width() const {
    if (contains_zero()) {
        double r = rad();
        return r == 0 ? 0 : std::numeric_limits<double>::infinity();
    }
    // form the quotient in mpfr: the endpoints may lie far outside the
    // exponent range of double even when the ratio is tame
    mpfr_t w, a;
    mpfr_init2(w, 64);
    mpfr_init2(a, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    // divide by the endpoint of smaller magnitude (zero lies outside)
    mpfr_abs(a, mpfr_cmpabs(lo_, hi_) < 0 ? lo_ : hi_, MPFR_RNDD);
    mpfr_div(w, w, a, MPFR_RNDU);
    double r = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clears(w, a, (mpfr_ptr)0);
    return r;
}

Ival Ival::join(const Ival& a, const Ival& b) {
    Ival r(a.prec_ > b.prec_ ? a.prec_ : b.prec_);
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

std::string Ival::str(int digits) const {
    std::ostringstream os;
    os.precision(digits);
    os << "[" << mpfr_get_d(lo_, MPFR_RNDD) << ", " << mpfr_get_d(hi_, MPFR_RNDU)
       << "]";
    return os.str();
}

} // namespace perc
