#pragma once

// Rigorous interval arithmetic on top of MPFR. Every operation returns an
// enclosure of the exact result computed with directed rounding at the
// precision of the receiving object. A FieldElement embeds into an interval
// that contains the exact real it represents.

#include "field.hpp"

#include <mpfr.h>
#include <string>

namespace perc {

class Ival {
public:
    explicit Ival(mpfr_prec_t bits = 256);
    Ival(const Ival& o);
    Ival(Ival&& o) noexcept;
    Ival& operator=(const Ival& o);
    Ival& operator=(Ival&& o) noexcept;
    ~Ival();

    static Ival exact(long v, mpfr_prec_t bits = 256);
    static Ival exact(const mpq_class& q, mpfr_prec_t bits = 256);
    static Ival of_field(const FieldElement& e, mpfr_prec_t bits = 256);
    static Ival hull(double lo, double hi, mpfr_prec_t bits = 256);

    mpfr_prec_t prec() const { return prec_; }

    Ival operator+(const Ival& o) const;
    Ival operator-(const Ival& o) const;
    Ival operator*(const Ival& o) const;
    Ival operator/(const Ival& o) const;   // throws if o contains 0
    Ival operator-() const;
    Ival& operator+=(const Ival& o) { return *this = *this + o; }
    Ival& operator-=(const Ival& o) { return *this = *this - o; }
    Ival& operator*=(const Ival& o) { return *this = *this * o; }
    Ival& operator/=(const Ival& o) { return *this = *this / o; }

    Ival inv() const;
    Ival sqrt() const;             // requires lo >= 0
    Ival pow_int(long e) const;
    Ival log() const;              // requires lo > 0
    Ival exp() const;
    Ival pow(const Ival& e) const; // requires lo > 0

    bool contains_zero() const;
    bool contains(const Ival& o) const;     // o subseteq this
    bool strictly_positive() const;
    bool strictly_negative() const;
    // certainly less-than: hi < o.lo
    bool lt(const Ival& o) const;

    double mid() const;
    double rad() const;
    // relative width; infinite if the interval straddles zero
    double rel_width() const;

    // union hull of two intervals
    static Ival join(const Ival& a, const Ival& b);

    std::string str(int digits = 20) const;

    // raw access for the few routines that need directed rounding directly
    mpfr_srcptr lo_raw() const { return lo_; }
    mpfr_srcptr hi_raw() const { return hi_; }
    mpfr_ptr lo_raw() { return lo_; }
    mpfr_ptr hi_raw() { return hi_; }

private:
    mpfr_t lo_, hi_;
    mpfr_prec_t prec_;
};

// (value, d/dz value) pairs for derivative propagation through recursions
struct Dual {
    Ival v, d;
    Dual(mpfr_prec_t bits = 256) : v(bits), d(bits) {}
    Dual(const Ival& v_, const Ival& d_) : v(v_), d(d_) {}
    Dual operator+(const Dual& o) const { return {v + o.v, d + o.d}; }
    Dual operator-(const Dual& o) const { return {v - o.v, d - o.d}; }
    Dual operator*(const Dual& o) const { return {v * o.v, d * o.v + v * o.d}; }
    Dual operator/(const Dual& o) const {
        Ival q = v / o.v;
        return {q, (d - q * o.d) / o.v};
    }
    Dual operator-() const { return {-v, -d}; }
    static Dual constant(const Ival& c) { return {c, Ival::exact(0, c.prec())}; }
};

} // namespace perc
