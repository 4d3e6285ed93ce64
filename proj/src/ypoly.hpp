#pragma once

// Polynomials and rational functions in one formal variable (the outer-vertex
// marker y) with coefficients in Q(theta). Rational functions are normalized
// to a canonical form with monic denominator and gcd removed.

#include "field.hpp"

#include <vector>

namespace perc {

class YPoly {
public:
    YPoly() = default;
    YPoly(const FieldElement& c) { if (!c.is_zero()) c_ = {c}; }
    YPoly(long n) : YPoly(FieldElement(n)) {}
    static YPoly monomial(int deg, const FieldElement& c);
    static YPoly variable() { return monomial(1, FieldElement(1)); }

    int degree() const { return (int)c_.size() - 1; }  // -1 for the zero poly
    bool is_zero() const { return c_.empty(); }
    FieldElement coeff(int i) const {
        return i >= 0 && i < (int)c_.size() ? c_[i] : FieldElement();
    }
    const FieldElement& lead() const { return c_.back(); }

    YPoly operator+(const YPoly& o) const;
    YPoly operator-(const YPoly& o) const;
    YPoly operator*(const YPoly& o) const;
    YPoly operator-() const;
    bool operator==(const YPoly& o) const { return c_ == o.c_; }

    // euclidean division; returns {quotient, remainder}
    std::pair<YPoly, YPoly> divmod(const YPoly& d) const;
    static YPoly gcd(YPoly a, YPoly b);   // monic gcd

    FieldElement eval(const FieldElement& y) const;
    YPoly derivative() const;
    std::string str() const;

private:
    void trim();
    std::vector<FieldElement> c_;  // c_[i] * y^i, trailing zeros trimmed
};

class YRational {
public:
    YRational() : num_(), den_(1) {}
    YRational(const YPoly& n) : num_(n), den_(1) {}
    YRational(const YPoly& n, const YPoly& d);

    const YPoly& num() const { return num_; }
    const YPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == YPoly(1); }

    YRational operator+(const YRational& o) const;
    YRational operator-(const YRational& o) const;
    YRational operator*(const YRational& o) const;
    YRational operator/(const YRational& o) const;
    YRational operator-() const;
    bool operator==(const YRational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }

    FieldElement eval(const FieldElement& y) const;

private:
    void normalize();
    YPoly num_, den_;
};

} // namespace perc
