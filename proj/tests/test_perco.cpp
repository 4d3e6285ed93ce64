#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "perco.hpp"

#include <map>
#include <set>

using namespace perc;

namespace {

std::vector<RootedMap> closed_triangulations(int e_max) {
    std::vector<RootedMap> out;
    enumerate_maps(e_max, [&](const RootedMap& m) {
        if (m.darts() > 0 && classify(m).closed) out.push_back(m);
    });
    return out;
}

// site-island characterization: outer vertices black, every inner edge
// incident to an outer vertex also touches a white inner vertex
bool valid_site_island(const Island& i) {
    MapStats s = classify(i.m);
    if (!s.in_S || s.length != i.k) return false;
    int n = i.m.darts();
    std::vector<int> vlab;
    cycles_of(i.m.sigma, vlab);
    std::vector<int> phi(n), flab;
    for (int d = 0; d < n; d++) phi[d] = i.m.sigma[i.m.alpha[d]];
    cycles_of(phi, flab);
    std::vector<char> outer(vlab.size(), 0);
    for (int d = 0; d < n; d++)
        if (flab[d] == flab[0]) outer[vlab[d]] = 1;
    for (int d = 0; d < n; d++) {
        if (outer[vlab[d]] && !i.vblack[vlab[d]]) return false;
        if (d > i.m.alpha[d]) continue;
        bool on_root = flab[d] == flab[0] || flab[i.m.alpha[d]] == flab[0];
        if (on_root) continue;
        int u = vlab[d], w = vlab[i.m.alpha[d]];
        if (!outer[u] && !outer[w]) continue;
        bool has_white_inner = (!outer[u] && !i.vblack[u])
                               || (!outer[w] && !i.vblack[w]);
        if (!has_white_inner) return false;
    }
    return true;
}

// bond-island characterization: outer edges black, inner edges incident to
// an outer vertex white
bool valid_bond_island(const Island& i) {
    MapStats s = classify(i.m);
    if (!s.in_S || s.length != i.k) return false;
    int n = i.m.darts();
    std::vector<int> vlab;
    cycles_of(i.m.sigma, vlab);
    std::vector<int> phi(n), flab;
    for (int d = 0; d < n; d++) phi[d] = i.m.sigma[i.m.alpha[d]];
    cycles_of(phi, flab);
    std::vector<char> outer(vlab.size(), 0);
    for (int d = 0; d < n; d++)
        if (flab[d] == flab[0]) outer[vlab[d]] = 1;
    std::vector<int> eid(n, -1);
    int ne = 0;
    for (int d = 0; d < n; d++)
        if (eid[d] < 0) eid[d] = eid[i.m.alpha[d]] = ne++;
    for (int d = 0; d < n; d++) {
        if (d > i.m.alpha[d]) continue;
        bool on_root = flab[d] == flab[0] || flab[i.m.alpha[d]] == flab[0];
        if (on_root) {
            if (!i.eblack[eid[d]]) return false;
            continue;
        }
        if ((outer[vlab[d]] || outer[vlab[i.m.alpha[d]]]) && i.eblack[eid[d]])
            return false;
    }
    return true;
}

std::string code_of(const Island& i) {
    std::string s;
    for (int d : i.m.sigma) s += (char)('0' + d) ;
    s += '|';
    for (int d : i.m.alpha) s += (char)('0' + d);
    s += '|';
    for (char c : i.vblack) s += (char)('0' + c);
    return s;
}

} // namespace

TEST_CASE("sweeps conserve vertices, edges, and faces") {
    for (const RootedMap& t : closed_triangulations(6)) {
        MapStats ts = classify(t);
        for (PercoMode mode : {PercoMode::Site, PercoMode::Bond}) {
            auto sweep = percolation_sweep(t, mode);
            size_t expected = (size_t)1
                              << (mode == PercoMode::Site ? ts.v : ts.e);
            CHECK(sweep.size() == expected);
            for (const SweepEntry& en : sweep) {
                if (en.atomic) {
                    CHECK(en.islands.empty());
                    continue;
                }
                MapStats cs = classify(en.cluster);
                CHECK((int)en.islands.size() == cs.f_in + 1);
                int fsum = 0, esum = 0, vsum = 0;
                for (const Island& i : en.islands) {
                    fsum += i.f_in;
                    esum += i.m.edges() - i.k;
                    vsum += i.v_black_in + i.v_white_in;
                    if (mode == PercoMode::Site)
                        CHECK(valid_site_island(i));
                    else
                        CHECK(valid_bond_island(i));
                }
                CHECK(fsum == ts.f_in + 1);
                CHECK(esum == ts.e - cs.e);
                if (mode == PercoMode::Site) CHECK(vsum == ts.v - cs.v);
            }
        }
    }
}

TEST_CASE("extreme colorings behave as conventions dictate") {
    for (const RootedMap& t : closed_triangulations(6)) {
        for (PercoMode mode : {PercoMode::Site, PercoMode::Bond}) {
            auto sweep = percolation_sweep(t, mode);
            // all-white: convention violated, atomic cluster
            CHECK(sweep.front().atomic);
            // all-black: the cluster is the whole map and every island is
            // the empty one (a bare triangle)
            const SweepEntry& black = sweep.back();
            CHECK_FALSE(black.atomic);
            CHECK(black.cluster == canonical(t));
            for (const Island& i : black.islands) {
                CHECK(i.k == 3);
                CHECK(i.m.edges() == 3);
                CHECK(i.f_in == 1);
                CHECK(i.v_black_in + i.v_white_in == 0);
            }
        }
    }
    CHECK_THROWS_AS(percolation_sweep(RootedMap{{0, 1}, {1, 0}},
                                      PercoMode::Site),
                    std::domain_error);
}

TEST_CASE("midland-reef decomposition round-trips on enumerated islands") {
    int checked = 0;
    enumerate_maps(6, [&](const RootedMap& m) {
        MapStats s = classify(m);
        if (!s.in_S) return;
        for (const Island& i : islands_on(m)) {
            if (i.v_black_in + i.v_white_in == 0) {
                SiteDecomposition d = decompose_site_island(i);
                CHECK(d.empty_island);
                continue;
            }
            SiteDecomposition d = decompose_site_island(i);
            CHECK(d.seq.size() == (size_t)(d.k + d.ell));
            CHECK(d.seq[0] == 1);
            CHECK(d.k == s.length);
            Island back = recompose_site_island(d);
            CHECK(back.m == i.m);
            CHECK(back.vblack == i.vblack);
            checked++;
        }
    });
    // maps with at most 6 edges leave room for very few inner vertices
    CHECK(checked == 6);
}

TEST_CASE("round-trip also holds for islands cut out by sweeps") {
    for (const RootedMap& t : closed_triangulations(6)) {
        for (const SweepEntry& en : percolation_sweep(t, PercoMode::Site)) {
            for (const Island& i : en.islands) {
                if (i.v_black_in + i.v_white_in == 0) continue;
                SiteDecomposition d = decompose_site_island(i);
                Island back = recompose_site_island(d);
                CHECK(back.m == i.m);
                CHECK(back.vblack == i.vblack);
            }
        }
    }
}

TEST_CASE("reef counts match the ballot binomial") {
    // midlands of boundary length 0, 1, and 2
    RootedMap atomic{};
    RootedMap looped{{2, 0, 1, 3}, {1, 0, 3, 2}};   // loop enclosing an edge
    RootedMap segment{{0, 1}, {1, 0}};
    struct Case { RootedMap mid; std::vector<char> colors; int ell; };
    std::vector<Case> cases = {
        {atomic, {0}, 0},
        {canonical(looped), {0, 0}, 1},
        {segment, {0, 0}, 2},
    };
    auto binom = [](int n, int r) {
        long b = 1;
        for (int i = 0; i < r; i++) b = b * (n - i) / (i + 1);
        return b;
    };
    for (const Case& c : cases) {
        CHECK(classify(c.mid).length == c.ell);
        for (int k = 1; k + c.ell <= 8; k++) {
            // all reef sequences: first inward, k-1 inward and ell outward
            // among the rest
            int rest = k - 1 + c.ell;
            std::set<std::string> distinct;
            long count = 0;
            for (long mask = 0; mask < (1L << rest); mask++) {
                if (__builtin_popcountl(mask) != c.ell) continue;
                SiteDecomposition d;
                d.k = k;
                d.ell = c.ell;
                d.midland = c.mid;
                d.midland_vblack = c.colors;
                d.seq.assign(1, 1);
                for (int b = 0; b < rest; b++)
                    d.seq.push_back((mask >> b) & 1 ? 0 : 1);
                Island i = recompose_site_island(d);
                distinct.insert(code_of(i));
                count++;
                // the rebuilt island decomposes back to the same data
                SiteDecomposition d2 = decompose_site_island(i);
                CHECK(d2.k == d.k);
                CHECK(d2.ell == d.ell);
                CHECK(d2.seq == d.seq);
                CHECK(d2.midland == d.midland);
                CHECK(d2.midland_vblack == d.midland_vblack);
            }
            CHECK(count == binom(k + c.ell - 1, k - 1));
            CHECK((long)distinct.size() == count);
        }
    }
}

TEST_CASE("total coloring weight over a sweep is one") {
    mpq_class p(1, 3), q = 1 - p;
    for (const RootedMap& t : closed_triangulations(3)) {
        for (PercoMode mode : {PercoMode::Site, PercoMode::Bond}) {
            mpq_class total = 0;
            for (const SweepEntry& en : percolation_sweep(t, mode)) {
                mpq_class w = 1;
                for (char c : en.colors) w *= c ? p : q;
                total += w;
            }
            CHECK(total == 1);
        }
    }
}
