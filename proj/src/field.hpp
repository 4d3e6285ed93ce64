#pragma once

// Exact arithmetic in the real number field Q(theta), theta^12 = 432, theta
// the positive real 12th root. x^12 - 432 is irreducible over Q, so every
// nonzero element is invertible; inversion solves the 12x12 multiplication
// system and reports failure if it were ever singular.
//
// This one field contains every constant the project needs:
//   z0      = theta^-3  = 432^(-1/4)
//   ztilde0 = theta^-2  = 432^(-1/6)
//   sqrt3   = theta^6/12
//   cbrt2   = theta^4/6
//   cbrt4   = theta^8/36

#include <gmpxx.h>
#include <array>
#include <string>

namespace perc {

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const mpq_class& r) { c_[0] = r; }
    FieldElement(long n) { c_[0] = n; }

    // c * theta^k, 0 <= k < 12
    static FieldElement theta_power(int k, const mpq_class& c = 1);

    const mpq_class& coeff(int i) const { return c_[i]; }
    mpq_class& coeff(int i) { return c_[i]; }

    bool is_zero() const;
    bool is_rational() const;    // only the theta^0 coordinate nonzero
    mpq_class rational_part() const { return c_[0]; }

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
    FieldElement pow(long e) const;   // e may be negative

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    bool operator==(const FieldElement& o) const { return c_ == o.c_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // sign of the real number this element represents
    int sign() const;

    double to_double() const;
    std::string str() const;

private:
    std::array<mpq_class, 12> c_{};  // sum c_[i] theta^i
};

inline FieldElement operator*(const mpq_class& r, const FieldElement& a) {
    return FieldElement(r) * a;
}

struct FieldConstants {
    FieldElement theta;    // 432^(1/12)
    FieldElement z0;       // 432^(-1/4)
    FieldElement ztilde0;  // 432^(-1/6)
    FieldElement sqrt3;
    FieldElement cbrt2;
    FieldElement cbrt4;
};

const FieldConstants& field_constants();

} // namespace perc
