#pragma once

// Sparse polynomials over Q in up to three formal variables (w, x, y),
// used as per-z-order coefficients of the counting series. Exponents are
// packed into a 64-bit key so terms stay ordered and deterministic.

#include <gmpxx.h>
#include <cstdint>
#include <map>
#include <string>

namespace perc {

struct Mono {
    int w = 0, x = 0, y = 0;
};

class QPoly {
public:
    QPoly() = default;
    QPoly(const mpq_class& c) { if (c != 0) t_[0] = c; }
    QPoly(long n) : QPoly(mpq_class(n)) {}
    static QPoly term(int w, int x, int y, const mpq_class& c = 1);
    static QPoly var_w(int e = 1) { return term(e, 0, 0); }
    static QPoly var_x(int e = 1) { return term(0, e, 0); }
    static QPoly var_y(int e = 1) { return term(0, 0, e); }

    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }
    mpq_class coeff(int w, int x, int y) const;

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator-() const;
    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    bool operator==(const QPoly& o) const { return t_ == o.t_; }
    bool operator!=(const QPoly& o) const { return !(*this == o); }

    QPoly scaled(const mpq_class& c) const;
    QPoly pow(int e) const;
    // exact division by w^dw x^dx y^dy; throws if any term has a smaller exponent
    QPoly div_exact(int dw, int dx, int dy) const;
    bool divisible(int dw, int dx, int dy) const;

    QPoly set_w_zero() const;               // substitute w = 0
    QPoly coeff_of_x(int k) const;          // polynomial in (w, y)
    QPoly coeff_of_w(int k) const;          // polynomial in (x, y)
    QPoly subst_y(const mpq_class& v) const;

    bool all_nonnegative() const;
    int max_deg_w() const;
    int max_deg_x() const;
    int max_deg_y() const;

    // iteration over terms (monomial, coefficient)
    template <class F> void for_terms(F&& f) const {
        for (const auto& [k, c] : t_) f(unpack(k), c);
    }

    std::string str() const;

private:
    static uint64_t pack(int w, int x, int y) {
        return ((uint64_t)w << 40) | ((uint64_t)x << 20) | (uint64_t)y;
    }
    static Mono unpack(uint64_t k) {
        return {(int)(k >> 40), (int)((k >> 20) & 0xfffff), (int)(k & 0xfffff)};
    }
    std::map<uint64_t, mpq_class> t_;
};

} // namespace perc
