#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "interval.hpp"

#include <random>

using namespace perc;

TEST_CASE("basic enclosure arithmetic") {
    Ival a = Ival::exact(mpq_class(1, 3), 128);
    Ival b = Ival::exact(mpq_class(1, 7), 128);
    Ival s = a + b;
    CHECK(s.contains(Ival::exact(mpq_class(10, 21), 256)));
    Ival p = a * b;
    CHECK(p.contains(Ival::exact(mpq_class(1, 21), 256)));
    Ival q = a / b;
    CHECK(q.contains(Ival::exact(mpq_class(7, 3), 256)));
    CHECK((a - a).contains_zero());
}

TEST_CASE("sqrt log exp pow") {
    Ival two = Ival::exact(2, 256);
    Ival r = two.sqrt();
    CHECK((r * r).contains(two));  // rounding widens, so r*r encloses the point 2
    Ival e = Ival::exact(1, 256).exp();
    CHECK(e.mid() == doctest::Approx(2.718281828).epsilon(1e-9));
    Ival l = e.log();
    CHECK(l.mid() == doctest::Approx(1.0).epsilon(1e-9));
    Ival p = two.pow(Ival::exact(mpq_class(1, 2), 256));
    CHECK(p.mid() == doctest::Approx(1.41421356).epsilon(1e-8));
    CHECK(two.pow_int(-2).mid() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("monotone rounding keeps true value inside long products") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(1, 50), den(1, 50);
    mpq_class exact = 1;
    Ival acc = Ival::exact(1, 64);
    for (int i = 0; i < 300; i++) {
        mpq_class f(num(rng), den(rng));
        f.canonicalize();
        exact *= f;
        acc *= Ival::exact(f, 64);
    }
    CHECK(acc.contains(Ival::exact(exact, 512)));
}

TEST_CASE("division by interval containing zero rejected") {
    Ival z = Ival::hull(-1.0, 1.0, 64);
    CHECK_THROWS_AS(Ival::exact(1, 64) / z, std::domain_error);
}

TEST_CASE("dual numbers differentiate products and quotients") {
    // f(z) = z^2 / (1 + z) at z = 3: f = 9/4, f' = (2z(1+z) - z^2)/(1+z)^2 = 15/16
    Dual z{Ival::exact(3, 128), Ival::exact(1, 128)};
    Dual one = Dual::constant(Ival::exact(1, 128));
    Dual f = z * z / (one + z);
    CHECK(f.v.mid() == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(f.d.mid() == doctest::Approx(15.0 / 16).epsilon(1e-12));
}
