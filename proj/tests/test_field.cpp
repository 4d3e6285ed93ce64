#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "field.hpp"
#include "interval.hpp"

#include <random>

using namespace perc;

static FieldElement random_elem(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    FieldElement e;
    for (int i = 0; i < 12; i++) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        e.coeff(i) = q;
    }
    return e;
}

TEST_CASE("theta satisfies its defining relation") {
    FieldElement th = FieldElement::theta_power(1);
    CHECK(th.pow(12) == FieldElement(432));
    CHECK(th.pow(3) * th.pow(-3) == FieldElement(1));
}

TEST_CASE("named constants") {
    const auto& k = field_constants();
    CHECK(k.sqrt3 * k.sqrt3 == FieldElement(3));
    CHECK(k.cbrt2.pow(3) == FieldElement(2));
    CHECK(k.cbrt4.pow(3) == FieldElement(4));
    CHECK(k.ztilde0.pow(3) == k.z0.pow(2));   // ztilde0 = z0^(2/3)
    CHECK(k.z0.pow(-4) == FieldElement(432));
    CHECK(k.ztilde0.pow(-6) == FieldElement(432));
    // ztilde0 / cbrt2 * sqrt3 = 1/2 (used by the site threshold identity)
    CHECK(k.ztilde0 * k.cbrt2.inverse() * k.sqrt3 == FieldElement(mpq_class(1, 2)));
    CHECK(k.z0.sign() == 1);
    double z0 = k.z0.to_double();
    CHECK(z0 == doctest::Approx(0.2193457).epsilon(1e-6));
    CHECK(k.ztilde0.to_double() == doctest::Approx(0.3637079).epsilon(1e-6));
    CHECK(z0 < 1.0);
    CHECK(FieldElement::theta_power(1).to_double() ==
          doctest::Approx(1.6581493).epsilon(1e-6));
    CHECK(FieldElement::theta_power(6).to_double() ==
          doctest::Approx(20.78461).epsilon(1e-5));
}

TEST_CASE("field axioms on random triples") {
    std::mt19937 rng(7);
    for (int it = 0; it < 60; it++) {
        FieldElement a = random_elem(rng), b = random_elem(rng), c = random_elem(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == FieldElement(1));
        }
    }
}

TEST_CASE("zero inversion rejected") {
    CHECK_THROWS_WITH_AS(FieldElement(0).inverse(),
                         "division by zero in number field", std::domain_error);
}

TEST_CASE("interval embedding encloses and nests") {
    std::mt19937 rng(11);
    for (int it = 0; it < 200; it++) {
        FieldElement a = random_elem(rng);
        Ival lowp = Ival::of_field(a, 96);
        Ival highp = Ival::of_field(a, 192);
        CHECK(lowp.contains(highp));
    }
    Ival one = Ival::of_field(FieldElement(1), 64);
    CHECK(one.contains(Ival::exact(1, 64)));
    Ival zt = Ival::of_field(field_constants().ztilde0, 256);
    CHECK(zt.rad() < 1e-60);  // well under 2^-200
    CHECK(zt.mid() == doctest::Approx(0.36370786).epsilon(1e-7));
}
