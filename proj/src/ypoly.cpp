#include "ypoly.hpp"

#include <sstream>
#include <stdexcept>

namespace perc {

YPoly YPoly::monomial(int deg, const FieldElement& c) {
    YPoly p;
    if (c.is_zero()) return p;
    p.c_.assign(deg + 1, FieldElement());
    p.c_[deg] = c;
    return p;
}

void YPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

YPoly YPoly::operator+(const YPoly& o) const {
    YPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.c_.size(); i++) r.c_[i] = coeff(i) + o.coeff(i);
    r.trim();
    return r;
}

YPoly YPoly::operator-(const YPoly& o) const { return *this + (-o); }

YPoly YPoly::operator-() const {
    YPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

YPoly YPoly::operator*(const YPoly& o) const {
    YPoly r;
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, FieldElement());
    for (size_t i = 0; i < c_.size(); i++) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); j++)
            if (!o.c_[j].is_zero()) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

std::pair<YPoly, YPoly> YPoly::divmod(const YPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    YPoly q, r = *this;
    FieldElement inv_lead = d.lead().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        FieldElement f = r.lead() * inv_lead;
        int shift = r.degree() - d.degree();
        YPoly t = monomial(shift, f);
        q = q + t;
        r = r - t * d;
    }
    return {q, r};
}

YPoly YPoly::gcd(YPoly a, YPoly b) {
    while (!b.is_zero()) {
        YPoly r = a.divmod(b).second;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    // monic
    FieldElement inv = a.lead().inverse();
    YPoly m;
    m.c_.resize(a.c_.size());
    for (size_t i = 0; i < a.c_.size(); i++) m.c_[i] = a.c_[i] * inv;
    return m;
}

FieldElement YPoly::eval(const FieldElement& y) const {
    FieldElement v;
    for (int i = degree(); i >= 0; i--) v = v * y + c_[i];
    return v;
}

YPoly YPoly::derivative() const {
    YPoly r;
    if (degree() < 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); i++)
        r.c_[i - 1] = FieldElement((long)i) * c_[i];
    r.trim();
    return r;
}

std::string YPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (int i = 0; i <= degree(); i++) {
        if (c_[i].is_zero()) continue;
        if (os.tellp() > 0) os << " + ";
        os << "(" << c_[i].str() << ")";
        if (i > 0) os << "*y^" << i;
    }
    return os.str();
}

YRational::YRational(const YPoly& n, const YPoly& d) : num_(n), den_(d) {
    if (d.is_zero()) throw std::domain_error("zero denominator");
    normalize();
}

void YRational::normalize() {
    if (num_.is_zero()) {
        den_ = YPoly(1);
        return;
    }
    YPoly g = YPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    FieldElement inv = den_.lead().inverse();
    num_ = num_ * YPoly(inv);
    den_ = den_ * YPoly(inv);
}

YRational YRational::operator+(const YRational& o) const {
    return YRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

YRational YRational::operator-(const YRational& o) const { return *this + (-o); }

YRational YRational::operator-() const {
    YRational r = *this;
    r.num_ = -r.num_;
    return r;
}

YRational YRational::operator*(const YRational& o) const {
    return YRational(num_ * o.num_, den_ * o.den_);
}

YRational YRational::operator/(const YRational& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero rational function");
    return YRational(num_ * o.den_, den_ * o.num_);
}

FieldElement YRational::eval(const FieldElement& y) const {
    return num_.eval(y) / den_.eval(y);
}

} // namespace perc
