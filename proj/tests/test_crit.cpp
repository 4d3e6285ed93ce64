#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crit.hpp"
#include "maps.hpp"

#include <cmath>
#include <map>

using namespace perc;

namespace {

const double kZ0 = std::pow(432.0, -0.25);  // critical triangle weight

std::vector<int> face_degrees(const RootedMap& m) {
    std::vector<int> phi(m.darts());
    for (int d = 0; d < m.darts(); d++) phi[d] = m.sigma[m.alpha[d]];
    std::vector<int> flab;
    int nf = cycles_of(phi, flab);
    std::vector<int> deg(nf, 0);
    for (int d = 0; d < m.darts(); d++) deg[flab[d]]++;
    return deg;
}

} // namespace

TEST_CASE("trinomial sums match closed forms on sparse sequences") {
    double w = 0.05, x = 1.3, y = 0.4;
    QSeq q3 = QSeq::monomial(3, w);
    FEval e = eval_f(q3, x, y);
    CHECK(e.finite);
    CHECK(std::abs(e.bullet - 2 * w * y) < 1e-14);
    CHECK(std::abs(e.diamond - w * (2 * x + y * y)) < 1e-14);
    CHECK(std::abs(e.dx_diamond - 2 * w) < 1e-14);
    CHECK(std::abs(e.dy_diamond - 2 * w * y) < 1e-14);

    QSeq q1 = QSeq::monomial(1, w);
    FEval e1 = eval_f(q1, x, y);
    CHECK(std::abs(e1.diamond - w) < 1e-15);
    CHECK(e1.bullet == 0.0);

    // monotonicity: increasing a weight weakly increases both sums
    QSeq qb = QSeq::monomial(3, 2 * w);
    FEval eb = eval_f(qb, x, y);
    CHECK(eb.bullet >= e.bullet);
    CHECK(eb.diamond >= e.diamond);

    // the value at y = 0 keeps only even root-face degrees
    FEval e0 = eval_f(q3, x, 0.0);
    CHECK(std::abs(e0.diamond - 2 * w * x) < 1e-14);
    CHECK(e0.bullet == 0.0);
    CHECK(std::abs(e0.dy_diamond - 0.0) < 1e-14);
}

TEST_CASE("pure triangulation weights classify by edge weight") {
    // critical edge weight: admissible with vanishing margin
    Classification cc = classify(QSeq::monomial(3, kZ0), 1e-5);
    CHECK(cc.sol.admissible);
    CHECK(std::abs(cc.sol.res_bullet) < 1e-9);
    CHECK(std::abs(cc.sol.res_diamond) < 1e-9);
    CHECK(cc.verdict == Verdict::CriticalWithinTolerance);
    CHECK(std::abs(cc.margin) < 1e-5);

    // half the critical weight: strictly subcritical
    Classification cs = classify(QSeq::monomial(3, kZ0 / 2), 1e-6);
    CHECK(cs.verdict == Verdict::Subcritical);
    CHECK(cs.margin > 0.1);

    // twice the critical weight: no solution
    SystemSolution sd = solve_system(QSeq::monomial(3, 2 * kZ0));
    CHECK(!sd.admissible);

    // decay certificates: none at criticality, the full range below it
    CHECK(!decay_certificate(QSeq::monomial(3, kZ0)).has_value());
    auto g = decay_certificate(QSeq::monomial(3, kZ0 / 2), 2.0);
    REQUIRE(g.has_value());
    CHECK(*g > 1.9);  // tilting by g scales q_3 by sqrt(g); 2 stays below z0
}

TEST_CASE("tilting scales weights elementwise") {
    QSeq q = QSeq::monomial(3, 0.1);
    QSeq t1 = tilt(q, 1.0);
    CHECK(t1.q[3] == 0.1);
    QSeq t4 = tilt(q, 4.0);
    CHECK(std::abs(t4.q[3] - 0.2) < 1e-15);
}

TEST_CASE("pointed disk kernel identities") {
    CHECK(h_kernel(0.37, 0) == 1.0);
    CHECK(std::abs(h_kernel(0.0, 1) - 0.5) < 1e-15);
    double r = 0.3;
    CHECK(std::abs(h_kernel(r, 1) - (1 - r) / 2) < 1e-15);
    // asymptotic h_r(l) ~ 1/sqrt(pi l (1+r))
    long l = 3000;
    double h = h_kernel(0.2, l);
    CHECK(std::abs(h / (1 / std::sqrt(M_PI * l * 1.2)) - 1) < 0.01);
    // one-step consistency of the log form
    double x = 1.5, y = 0.6;
    double cp = y + 2 * std::sqrt(x);
    double rr = -(y - 2 * std::sqrt(x)) / cp;
    CHECK(std::abs(disk_pointed_log(x, y, 1) -
                   std::log(cp * (1 - rr) / 2)) < 1e-12);
}

TEST_CASE("solved coordinates reproduce the enumerated pointed mass") {
    QSeq q(QSeq::monomial(3, 0.01));
    q.q[1] = 0.03;
    q.q[2] = 0.03;
    SystemSolution s = solve_system(q);
    REQUIRE(s.admissible);
    double zmass = pointed_mass(q);

    // exhaustive pointed-rooted mass over maps with at most 7 edges, plus
    // the atomic map
    double layer[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    enumerate_maps(7, [&](const RootedMap& m) {
        if (m.edges() == 0) return;
        double mass = 1;
        for (int d : face_degrees(m)) {
            if (d > 3) return;
            mass *= q.q[d];
        }
        std::vector<int> vlab;
        int v = cycles_of(m.sigma, vlab);
        layer[m.edges()] += v * mass;
    });
    double total = 1;
    for (int e = 1; e <= 7; e++) total += layer[e];
    double ratio = layer[7] / layer[6];
    REQUIRE(ratio < 0.5);
    double trunc = layer[7] * ratio / (1 - ratio);
    CHECK(std::abs(zmass - total) < std::max(5 * trunc, 1e-9));
}

TEST_CASE("site weights classify across the percolation threshold") {
    // below threshold: subcritical with a solid margin and a certificate
    {
        QSeq q = QSeq::from_weights(site_weights(mpq_class(2, 5), 256));
        Classification c = classify(q, 1e-6);
        CHECK(c.verdict == Verdict::Subcritical);
        CHECK(c.margin > 1e-3);
    }
    // at threshold: the margin vanishes within the acceptance tolerance
    {
        QSeq q = QSeq::from_weights(site_weights(mpq_class(1, 2), 320));
        Classification c = classify(q, 1e-6);
        CHECK(c.verdict == Verdict::CriticalWithinTolerance);
        CHECK(std::abs(c.margin) < 1e-4);
        CHECK(!decay_certificate(q).has_value());
    }
    // above threshold the sequence stays critical
    {
        QSeq q = QSeq::from_weights(site_weights(mpq_class(11, 20), 256));
        Classification c = classify(q, 1e-6);
        CHECK(c.verdict == Verdict::CriticalWithinTolerance);
    }
}

TEST_CASE("bond weights classify across the percolation threshold") {
    {
        QSeq q = QSeq::from_weights(bond_weights(mpq_class(1, 5), 256));
        Classification c = classify(q, 1e-6);
        CHECK(c.verdict == Verdict::Subcritical);
        CHECK(c.margin > 1e-3);
    }
    {
        QSeq q = QSeq::from_weights(bond_weights(mpq_class(23, 100), 256));
        Classification c = classify(q, 1e-6);
        CHECK(c.verdict == Verdict::CriticalWithinTolerance);
    }
}

TEST_CASE("unpointed disks match the interface route below threshold") {
    mpq_class p(3, 10);
    QSeq q = QSeq::from_weights(site_weights(p, 224));
    auto g = decay_certificate(q);
    REQUIRE(g.has_value());
    CHECK(*g > 1.005);

    DiskSeries d = disk_unpointed(q, 400);
    CHECK(std::abs(d.fit.beta - 1.5) < 0.05);

    DiskLaw law = disk_from_interface(IslandMode::Site, p, 320);
    CHECK(std::abs(d.fit.beta - law.fit.beta) < 0.1);
}
