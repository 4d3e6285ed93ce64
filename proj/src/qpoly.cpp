#include "qpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace perc {

QPoly QPoly::term(int w, int x, int y, const mpq_class& c) {
    QPoly p;
    if (c != 0) p.t_[pack(w, x, y)] = c;
    return p;
}

mpq_class QPoly::coeff(int w, int x, int y) const {
    auto it = t_.find(pack(w, x, y));
    return it == t_.end() ? mpq_class(0) : it->second;
}

QPoly& QPoly::operator+=(const QPoly& o) {
    for (const auto& [k, c] : o.t_) {
        auto it = t_.find(k);
        if (it == t_.end()) {
            t_[k] = c;
        } else {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
    for (const auto& [k, c] : o.t_) {
        auto it = t_.find(k);
        if (it == t_.end()) {
            t_[k] = -c;
        } else {
            it->second -= c;
            if (it->second == 0) t_.erase(it);
        }
    }
    return *this;
}

QPoly QPoly::operator+(const QPoly& o) const { QPoly r = *this; return r += o; }
QPoly QPoly::operator-(const QPoly& o) const { QPoly r = *this; return r -= o; }

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
    QPoly r;
    if (is_zero() || o.is_zero()) return r;
    const QPoly& small = t_.size() <= o.t_.size() ? *this : o;
    const QPoly& big = t_.size() <= o.t_.size() ? o : *this;
    for (const auto& [ka, ca] : small.t_) {
        for (const auto& [kb, cb] : big.t_) {
            uint64_t k = ka + kb;  // exponent fields add without overflow
            auto it = r.t_.find(k);
            if (it == r.t_.end()) {
                r.t_[k] = ca * cb;
            } else {
                it->second += ca * cb;
                if (it->second == 0) r.t_.erase(it);
            }
        }
    }
    return r;
}

QPoly QPoly::scaled(const mpq_class& c) const {
    QPoly r;
    if (c == 0) return r;
    for (const auto& [k, v] : t_) r.t_[k] = v * c;
    return r;
}

QPoly QPoly::pow(int e) const {
    QPoly r(1);
    for (int i = 0; i < e; i++) r = r * *this;
    return r;
}

bool QPoly::divisible(int dw, int dx, int dy) const {
    for (const auto& [k, c] : t_) {
        (void)c;
        Mono m = unpack(k);
        if (m.w < dw || m.x < dx || m.y < dy) return false;
    }
    return true;
}

QPoly QPoly::div_exact(int dw, int dx, int dy) const {
    QPoly r;
    for (const auto& [k, c] : t_) {
        Mono m = unpack(k);
        if (m.w < dw || m.x < dx || m.y < dy)
            throw std::domain_error("inexact monomial division");
        r.t_[pack(m.w - dw, m.x - dx, m.y - dy)] = c;
    }
    return r;
}

QPoly QPoly::set_w_zero() const {
    QPoly r;
    for (const auto& [k, c] : t_) {
        Mono m = unpack(k);
        if (m.w == 0) r.t_[k] = c;
    }
    return r;
}

QPoly QPoly::coeff_of_x(int kx) const {
    QPoly r;
    for (const auto& [k, c] : t_) {
        Mono m = unpack(k);
        if (m.x == kx) r.t_[pack(m.w, 0, m.y)] = c;
    }
    return r;
}

QPoly QPoly::coeff_of_w(int kw) const {
    QPoly r;
    for (const auto& [k, c] : t_) {
        Mono m = unpack(k);
        if (m.w == kw) r.t_[pack(0, m.x, m.y)] = c;
    }
    return r;
}

QPoly QPoly::subst_y(const mpq_class& v) const {
    QPoly r;
    for (const auto& [k, c] : t_) {
        Mono m = unpack(k);
        mpq_class p = c;
        for (int i = 0; i < m.y; i++) p *= v;
        if (p == 0) continue;
        uint64_t nk = pack(m.w, m.x, 0);
        auto it = r.t_.find(nk);
        if (it == r.t_.end()) r.t_[nk] = p;
        else {
            it->second += p;
            if (it->second == 0) r.t_.erase(it);
        }
    }
    return r;
}

bool QPoly::all_nonnegative() const {
    for (const auto& [k, c] : t_) {
        (void)k;
        if (c < 0) return false;
    }
    return true;
}

int QPoly::max_deg_w() const {
    int d = 0;
    for (const auto& [k, c] : t_) { (void)c; d = std::max(d, unpack(k).w); }
    return d;
}
int QPoly::max_deg_x() const {
    int d = 0;
    for (const auto& [k, c] : t_) { (void)c; d = std::max(d, unpack(k).x); }
    return d;
}
int QPoly::max_deg_y() const {
    int d = 0;
    for (const auto& [k, c] : t_) { (void)c; d = std::max(d, unpack(k).y); }
    return d;
}

std::string QPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        Mono m = unpack(k);
        if (!first) os << " + ";
        os << c.get_str();
        if (m.w) os << "*w^" << m.w;
        if (m.x) os << "*x^" << m.x;
        if (m.y) os << "*y^" << m.y;
        first = false;
    }
    return os.str();
}

} // namespace perc
