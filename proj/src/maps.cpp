#include "maps.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace perc {

int cycles_of(const std::vector<int>& perm, std::vector<int>& label) {
    int n = (int)perm.size(), count = 0;
    label.assign(n, -1);
    for (int s = 0; s < n; s++) {
        if (label[s] >= 0) continue;
        for (int d = s; label[d] < 0; d = perm[d]) label[d] = count;
        count++;
    }
    return count;
}

RootedMap canonical_from(const RootedMap& m, int root,
                         std::vector<int>* lab_out) {
    int n = m.darts();
    if (n == 0) return m;
    std::vector<int> lab(n, -1), order;
    order.reserve(n);
    auto visit = [&](int d) {
        if (lab[d] < 0) {
            lab[d] = (int)order.size();
            order.push_back(d);
        }
    };
    visit(root);
    for (size_t i = 0; i < order.size(); i++) {
        visit(m.alpha[order[i]]);
        visit(m.sigma[order[i]]);
    }
    if ((int)order.size() != n)
        throw std::domain_error("map is not connected");
    RootedMap c;
    c.sigma.resize(n);
    c.alpha.resize(n);
    for (int d = 0; d < n; d++) {
        c.sigma[lab[d]] = lab[m.sigma[d]];
        c.alpha[lab[d]] = lab[m.alpha[d]];
    }
    if (lab_out) *lab_out = lab;
    return c;
}

RootedMap canonical(const RootedMap& m) { return canonical_from(m, 0); }

MapStats classify(const RootedMap& m) {
    MapStats s;
    int n = m.darts();
    if (n == 0) {   // atomic map: a root corner and nothing else
        s.v = 1;
        s.v_out = 1;
        s.in_T = true;
        return s;
    }
    std::vector<int> vlab, flab, phi(n);
    s.v = cycles_of(m.sigma, vlab);
    for (int d = 0; d < n; d++) phi[d] = m.sigma[m.alpha[d]];
    int f = cycles_of(phi, flab);
    s.e = n / 2;
    if (s.v - s.e + f != 2) throw std::domain_error("map is not planar");
    s.f_in = f - 1;

    int rootface = flab[0];
    std::vector<int> facedeg(f, 0);
    for (int d = 0; d < n; d++) facedeg[flab[d]]++;
    s.length = facedeg[rootface];

    std::vector<char> outer_v(s.v, 0);
    std::set<int> outer_e;
    for (int d = 0; d < n; d++) {
        if (flab[d] != rootface) continue;
        outer_v[vlab[d]] = 1;
        outer_e.insert(std::min(d, m.alpha[d]));
    }
    for (int v = 0; v < s.v; v++) s.v_out += outer_v[v];
    s.e_out = (int)outer_e.size();

    for (int d = 0; d < n; d++) {
        if (d > m.alpha[d]) continue;   // one dart per edge
        if (!outer_v[vlab[d]] && !outer_v[vlab[m.alpha[d]]]) continue;
        s.reef++;
        if (!outer_e.count(d)) s.e_reef++;
    }

    s.closed = true;
    s.in_T = true;
    for (int fc = 0; fc < f; fc++) {
        if (facedeg[fc] != 3) {
            s.closed = false;
            if (fc != rootface) s.in_T = false;
        }
    }
    s.simple_boundary = (s.v_out == s.length && s.e_out == s.length);
    // a loop (length 1) or a doubled edge (length 2) counts as a simple
    // cycle here; clusters can cut out faces of those degrees, and the
    // simple-boundary recursion generates the matching maps
    s.in_S = s.in_T && s.simple_boundary && s.e >= 2;
    s.in_Sprime = s.in_S || (s.e == 1 && s.length == 2);
    return s;
}

void enumerate_maps(int e_max,
                    const std::function<void(const RootedMap&)>& emit) {
    if (e_max > 7) {
        // dart systems before filters grow like 2e (2e-1)!!; e = 8 already
        // means ~2 x 10^8 candidate states
        std::ostringstream os;
        os << "edge bound " << e_max << " exceeds the oracle limit of 7 "
           << "(the search tree has roughly 2e*(2e-1)!! states, ~2e8 at e=8)";
        throw std::domain_error(os.str());
    }
    emit(RootedMap{});   // the atomic map
    if (e_max < 1) return;

    int cap = 2 * e_max;
    std::vector<int> sigma(cap, -1), alpha(cap, -1), sigmainv(cap, -1);
    int n = 1;   // darts labeled so far; dart 0 is the root

    // Darts are labeled in the order the canonical breadth-first traversal
    // would discover them, so every emitted code is canonical and each
    // isomorphism class appears exactly once.
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            RootedMap m;
            m.sigma.assign(sigma.begin(), sigma.begin() + n);
            m.alpha.assign(alpha.begin(), alpha.begin() + n);
            std::vector<int> lab, phi(n);
            int v = cycles_of(m.sigma, lab);
            for (int d = 0; d < n; d++) phi[d] = m.sigma[m.alpha[d]];
            int f = cycles_of(phi, lab);
            if (v - n / 2 + f == 2) emit(m);
            return;
        }
        auto sigma_choices = [&](int d) {
            // mate already fixed; now decide the rotation successor
            if (sigma[d] >= 0) { rec(i + 1); return; }
            for (int j = 0; j < n; j++) {
                if (sigmainv[j] >= 0) continue;
                sigma[d] = j; sigmainv[j] = d;
                rec(i + 1);
                sigma[d] = -1; sigmainv[j] = -1;
            }
            if (n < cap) {   // successor is a newly discovered dart
                int j = n++;
                sigma[d] = j; sigmainv[j] = d;
                rec(i + 1);
                sigma[d] = -1; sigmainv[j] = -1;
                n--;
            }
        };
        if (alpha[i] >= 0) {
            sigma_choices(i);
            return;
        }
        for (int j = i + 1; j < n; j++) {
            if (alpha[j] >= 0) continue;
            alpha[i] = j; alpha[j] = i;
            sigma_choices(i);
            alpha[i] = -1; alpha[j] = -1;
        }
        if (n < cap) {   // mate is a newly discovered dart
            int j = n++;
            alpha[i] = j; alpha[j] = i;
            sigma_choices(i);
            alpha[i] = -1; alpha[j] = -1;
            n--;
        }
    };
    rec(0);
}

ZSeries series_from_enumeration(MapStat stat, int e_max) {
    ZSeries out(e_max);
    enumerate_maps(e_max, [&](const RootedMap& m) {
        MapStats s = classify(m);
        switch (stat) {
            case MapStat::BoundaryAndOuterVertices:
                if (s.in_T)
                    out.at(s.e) += QPoly::term(0, s.length, s.v_out);
                break;
            case MapStat::BoundaryAndReef:
                if (s.in_Sprime)
                    out.at(s.e) += QPoly::term(0, s.length, s.reef);
                break;
            case MapStat::BoundaryAndOuterEdges:
                if (s.in_T)
                    out.at(s.e) += QPoly::term(0, s.length, s.e_out);
                break;
        }
    });
    return out;
}

} // namespace perc
