#include "perco.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace perc {

namespace {

// edge numbering: edges indexed by their smaller dart, in increasing order
std::vector<int> edge_ids(const RootedMap& m, int& ecount) {
    std::vector<int> eid(m.darts(), -1);
    ecount = 0;
    for (int d = 0; d < m.darts(); d++)
        if (eid[d] < 0) eid[d] = eid[m.alpha[d]] = ecount++;
    return eid;
}

std::vector<int> face_map(const RootedMap& m) {
    std::vector<int> phi(m.darts());
    for (int d = 0; d < m.darts(); d++) phi[d] = m.sigma[m.alpha[d]];
    return phi;
}

// relabel the island to canonical form and transport colors onto it;
// vclass/eclass are indexed by vertex class / edge id of the local map
void finish_island(Island& isl, const RootedMap& local, int root,
                   const std::vector<char>& vclass,
                   const std::vector<char>& eclass, PercoMode mode) {
    std::vector<int> lab;
    isl.m = canonical_from(local, root, &lab);
    std::vector<int> vl;
    int nv = cycles_of(isl.m.sigma, vl);
    int ne = 0;
    std::vector<int> el = edge_ids(isl.m, ne);
    std::vector<int> vl_local;
    cycles_of(local.sigma, vl_local);
    int ne_local = 0;
    std::vector<int> el_local = edge_ids(local, ne_local);

    // outer objects live on the root face (the cut face)
    std::vector<int> phi = face_map(isl.m);
    std::vector<char> outer_v(nv, 0), outer_e(ne, 0);
    isl.k = 0;
    int d = 0;
    do {
        outer_v[vl[d]] = 1;
        outer_e[el[d]] = 1;
        isl.k++;
        d = phi[d];
    } while (d != 0);

    std::vector<int> fl;
    isl.f_in = cycles_of(phi, fl) - 1;

    if (mode == PercoMode::Site) {
        isl.vblack.assign(nv, 0);
        for (int u = 0; u < local.darts(); u++)
            isl.vblack[vl[lab[u]]] = vclass[vl_local[u]];
        for (int v = 0; v < nv; v++)
            if (!outer_v[v]) (isl.vblack[v] ? isl.v_black_in : isl.v_white_in)++;
    } else {
        isl.eblack.assign(ne, 0);
        for (int u = 0; u < local.darts(); u++)
            isl.eblack[el[lab[u]]] = eclass[el_local[u]];
        for (int e = 0; e < ne; e++)
            if (!outer_e[e]) (isl.eblack[e] ? isl.e_black_in : isl.e_white_in)++;
    }
}

// cut the island out of one cluster face; F lists the face cycle of cluster
// darts, vcol/ecol color the vertices/edges of t
Island cut_island(const RootedMap& t, const std::vector<char>& inD,
                  const std::vector<int>& F, PercoMode mode,
                  const std::vector<char>& vcol, const std::vector<char>& ecol,
                  const std::vector<int>& vlab, const std::vector<int>& eid) {
    int m = (int)F.size();
    // darts of t strictly inside the region, grouped by boundary corner
    std::vector<std::vector<int>> arcs(m);
    std::vector<int> region;
    for (int i = 0; i < m; i++) {
        int u = t.sigma[t.alpha[F[i]]];
        while (!inD[u]) {
            arcs[i].push_back(u);
            region.push_back(u);
            u = t.sigma[u];
        }
    }
    // close the region under edge pairing and interior rotations
    std::vector<char> seen(t.darts(), 0);
    for (int u : region) seen[u] = 1;
    for (size_t q = 0; q < region.size(); q++) {
        int u = region[q];
        for (int w : {t.alpha[u], t.sigma[u]}) {
            if (inD[w] || seen[w]) continue;
            seen[w] = 1;
            region.push_back(w);
        }
    }
    std::sort(region.begin(), region.end());
    std::map<int, int> loc;   // t-dart -> local dart, boundary copies first
    for (size_t q = 0; q < region.size(); q++)
        loc[region[q]] = 2 * m + (int)q;

    RootedMap isl;
    int n = 2 * m + (int)region.size();
    isl.sigma.assign(n, -1);
    isl.alpha.assign(n, -1);
    for (int i = 0; i < m; i++) {
        int b = 2 * i, bb = 2 * i + 1;   // near / far copy of edge F[i]
        isl.alpha[b] = bb;
        isl.alpha[bb] = b;
        // rotation at the boundary vertex that follows F[i]
        int prev = bb;
        for (int u : arcs[i]) {
            isl.sigma[prev] = loc.at(u);
            prev = loc.at(u);
        }
        int bnext = 2 * ((i + 1) % m);
        isl.sigma[prev] = bnext;
        isl.sigma[bnext] = bb;
    }
    for (int u : region) {
        if (isl.alpha[loc.at(u)] < 0) isl.alpha[loc.at(u)] = loc.at(t.alpha[u]);
        if (isl.sigma[loc.at(u)] < 0) isl.sigma[loc.at(u)] = loc.at(t.sigma[u]);
    }

    // colors by vertex class / edge id; boundary copies stay black
    std::vector<int> vl_local;
    int nvl = cycles_of(isl.sigma, vl_local);
    int nel = 0;
    std::vector<int> el_local = edge_ids(isl, nel);
    std::vector<char> vclass(nvl, 1), eclass(nel, 1);
    for (int u : region) {
        if (mode == PercoMode::Site)
            vclass[vl_local[loc.at(u)]] = vcol[vlab[u]];
        else
            eclass[el_local[loc.at(u)]] = ecol[eid[u]];
    }

    // root: far-side copy of the edge following the minimal face dart
    int posmin = 0;
    for (int i = 1; i < m; i++)
        if (F[i] < F[posmin]) posmin = i;
    int root = 2 * ((posmin + 1) % m) + 1;

    Island out;
    finish_island(out, isl, root, vclass, eclass, mode);
    return out;
}

} // namespace

std::vector<SweepEntry> percolation_sweep(const RootedMap& t, PercoMode mode) {
    MapStats ts = classify(t);
    if (!ts.closed)
        throw std::domain_error(
            "percolation sweep requires a closed triangulation");
    int n = t.darts();
    std::vector<int> vlab;
    int nv = cycles_of(t.sigma, vlab);
    int ne = 0;
    std::vector<int> eid = edge_ids(t, ne);

    int bits = (mode == PercoMode::Site) ? nv : ne;
    std::vector<SweepEntry> out;
    out.reserve((size_t)1 << bits);
    for (long mask = 0; mask < (1L << bits); mask++) {
        SweepEntry entry;
        entry.colors.assign(bits, 0);
        for (int b = 0; b < bits; b++) entry.colors[b] = (mask >> b) & 1;
        const std::vector<char>& col = entry.colors;

        std::vector<char> inD(n, 0);
        if (mode == PercoMode::Site) {
            if (!col[vlab[0]] || !col[vlab[t.alpha[0]]]) {
                entry.atomic = true;
                out.push_back(std::move(entry));
                continue;
            }
            // vertex component of the root through black-black edges
            std::vector<char> comp(nv, 0);
            std::vector<int> stack{vlab[0]};
            comp[vlab[0]] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int d = 0; d < n; d++) {
                    if (vlab[d] != v) continue;
                    int w = vlab[t.alpha[d]];
                    if (!comp[w] && col[w]) {
                        comp[w] = 1;
                        stack.push_back(w);
                    }
                }
            }
            for (int d = 0; d < n; d++)
                inD[d] = comp[vlab[d]] && comp[vlab[t.alpha[d]]];
        } else {
            if (!col[eid[0]]) {
                entry.atomic = true;
                out.push_back(std::move(entry));
                continue;
            }
            // edge component of the root edge through shared endpoints
            std::vector<char> ce(ne, 0), cv(nv, 0);
            ce[eid[0]] = 1;
            bool grew = true;
            while (grew) {
                grew = false;
                for (int d = 0; d < n; d++)
                    if (ce[eid[d]] && !cv[vlab[d]]) {
                        cv[vlab[d]] = 1;
                        grew = true;
                    }
                for (int d = 0; d < n; d++)
                    if (col[eid[d]] && !ce[eid[d]] && cv[vlab[d]]) {
                        ce[eid[d]] = 1;
                        grew = true;
                    }
            }
            for (int d = 0; d < n; d++) inD[d] = ce[eid[d]];
        }

        // cluster as a map: restrict rotations to cluster darts
        std::vector<int> dlist;
        std::vector<int> dloc(n, -1);
        for (int d = 0; d < n; d++)
            if (inD[d]) {
                dloc[d] = (int)dlist.size();
                dlist.push_back(d);
            }
        RootedMap cl;
        cl.sigma.resize(dlist.size());
        cl.alpha.resize(dlist.size());
        std::vector<int> sigC(n, -1);
        for (int d : dlist) {
            int u = t.sigma[d];
            while (!inD[u]) u = t.sigma[u];
            sigC[d] = u;
            cl.sigma[dloc[d]] = dloc[u];
            cl.alpha[dloc[d]] = dloc[t.alpha[d]];
        }
        entry.cluster = canonical(cl);

        // islands, one per cluster face
        std::vector<char> done(n, 0);
        for (int d : dlist) {
            if (done[d]) continue;
            std::vector<int> F;
            int u = d;
            do {
                done[u] = 1;
                F.push_back(u);
                u = sigC[t.alpha[u]];
            } while (u != d);
            entry.islands.push_back(
                cut_island(t, inD, F, mode, col, col, vlab, eid));
        }
        out.push_back(std::move(entry));
    }
    return out;
}

SiteDecomposition decompose_site_island(const Island& isl) {
    const RootedMap& m = isl.m;
    int n = m.darts();
    SiteDecomposition out;
    std::vector<int> vlab;
    int nv = cycles_of(m.sigma, vlab);
    std::vector<int> phi = face_map(m);
    std::vector<int> flab;
    cycles_of(phi, flab);
    int rootface = flab[0];

    std::vector<char> outer_v(nv, 0);
    out.k = 0;
    for (int d = 0; d < n; d++)
        if (flab[d] == rootface) {
            outer_v[vlab[d]] = 1;
            out.k++;
        }
    int inner_count = 0;
    for (int v = 0; v < nv; v++) inner_count += !outer_v[v];
    if (inner_count == 0) {
        if (n != 6 || out.k != 3)
            throw std::domain_error("island without inner vertices is not "
                                    "the bare triangle");
        out.empty_island = true;
        return out;
    }

    auto edge_on_rootface = [&](int d) {
        return flab[d] == rootface || flab[m.alpha[d]] == rootface;
    };
    auto is_diag = [&](int d) {
        return !edge_on_rootface(d)
               && (outer_v[vlab[d]] || outer_v[vlab[m.alpha[d]]]);
    };
    auto is_midland = [&](int d) {
        return !edge_on_rootface(d) && !outer_v[vlab[d]]
               && !outer_v[vlab[m.alpha[d]]];
    };

    // annulus walk over the reef triangles, starting at the root triangle
    int start = m.alpha[0];
    int entry = start;
    int steps = 0;
    do {
        int a = phi[entry], b = phi[a];   // the two other darts of the face
        bool inward = edge_on_rootface(entry) || edge_on_rootface(a)
                      || edge_on_rootface(b);
        out.seq.push_back(inward ? 1 : 0);
        int exit;
        if (entry == start) {
            if (!is_diag(a) || !is_diag(b))
                throw std::domain_error("root triangle lacks two reef edges");
            exit = b;
        } else if (is_diag(a) && is_diag(b)) {
            throw std::domain_error("reef triangle with three reef edges");
        } else if (is_diag(a)) {
            exit = a;
        } else if (is_diag(b)) {
            exit = b;
        } else {
            throw std::domain_error("reef triangle lacks a second reef edge");
        }
        entry = m.alpha[exit];
        if (++steps > n) throw std::domain_error("reef walk does not close");
    } while (flab[entry] != flab[start]);
    out.ell = 0;
    for (char c : out.seq) out.ell += (c == 0);
    if (out.seq[0] != 1)
        throw std::domain_error("reef walk must start inward");

    // the root triangle's inner vertex carries the midland root corner
    int a0 = phi[start], b0 = phi[a0];
    int cstar = -1;
    for (int d : {start, a0, b0})
        if (!outer_v[vlab[d]]) cstar = d;
    if (cstar < 0) throw std::domain_error("root triangle has no inner vertex");

    std::vector<int> mdarts;
    std::vector<int> mloc(n, -1);
    for (int d = 0; d < n; d++)
        if (is_midland(d)) {
            mloc[d] = (int)mdarts.size();
            mdarts.push_back(d);
        }
    if (mdarts.empty()) {
        if (inner_count != 1)
            throw std::domain_error("edgeless midland with several vertices");
        out.midland = RootedMap{};
        out.midland_vblack = {isl.vblack[vlab[cstar]]};
        if (out.ell != 0) throw std::domain_error("atomic midland needs l=0");
        return out;
    }
    int rm = m.sigma[cstar];
    while (!is_midland(rm)) rm = m.sigma[rm];

    RootedMap mid;
    mid.sigma.resize(mdarts.size());
    mid.alpha.resize(mdarts.size());
    for (int d : mdarts) {
        int u = m.sigma[d];
        while (!is_midland(u)) u = m.sigma[u];
        mid.sigma[mloc[d]] = mloc[u];
        mid.alpha[mloc[d]] = mloc[m.alpha[d]];
    }
    std::vector<int> lab;
    out.midland = canonical_from(mid, mloc[rm], &lab);
    std::vector<int> vmid;
    int nvm = cycles_of(out.midland.sigma, vmid);
    if (nvm != inner_count)
        throw std::domain_error("midland misses isolated inner vertices");
    out.midland_vblack.assign(nvm, 0);
    for (int d : mdarts)
        out.midland_vblack[vmid[lab[mloc[d]]]] = isl.vblack[vlab[d]];
    MapStats ms = classify(out.midland);
    if (ms.length != out.ell)
        throw std::domain_error("midland boundary length mismatch");
    return out;
}

Island recompose_site_island(const SiteDecomposition& dec) {
    int k = dec.k, ell = dec.ell;
    const RootedMap& mid = dec.midland;
    int total = k + ell;
    if ((int)dec.seq.size() != total || dec.seq.empty() || dec.seq[0] != 1)
        throw std::domain_error("invalid reef sequence");

    // replay the annulus walk to place the diagonals: diagonal t runs from
    // outer vertex oi[t] to midland corner cj[t] (raw, cj may reach ell)
    std::vector<int> oi(total), cj(total);
    {
        int i = 0, j = 0;
        for (int t = 0; t < total; t++) {
            oi[t] = i % k;
            cj[t] = j;
            if (dec.seq[t]) i++; else j++;
        }
        if (i != k || j != ell)
            throw std::domain_error("reef sequence does not close");
    }

    int base_d = 2 * k;                    // diagonal darts start here
    int base_m = base_d + 2 * total;       // midland darts start here
    int n = base_m + mid.darts();
    RootedMap isl;
    isl.sigma.assign(n, -1);
    isl.alpha.assign(n, -1);
    auto a = [&](int i) { return 2 * (((i % k) + k) % k); };
    auto ab = [&](int i) { return a(i) + 1; };
    auto dp = [&](int t) { return base_d + 2 * (t % total); };
    auto dm = [&](int t) { return base_d + 2 * (t % total) + 1; };

    for (int i = 0; i < k; i++) {
        isl.alpha[a(i)] = ab(i);
        isl.alpha[ab(i)] = a(i);
    }
    for (int t = 0; t < total; t++) {
        isl.alpha[dp(t)] = dm(t);
        isl.alpha[dm(t)] = dp(t);
    }
    for (int d = 0; d < mid.darts(); d++) {
        isl.alpha[base_m + d] = base_m + mid.alpha[d];
        isl.sigma[base_m + d] = base_m + mid.sigma[d];
    }

    // outer vertex v: previous far copy, near copy, then the outer ends of
    // its diagonals in reverse creation order -- except that at vertex 0 the
    // root triangle's diagonal leads and the wrapped trailing ones follow
    for (int v = 0; v < k; v++) {
        std::vector<int> ds;
        for (int t = total - 1; t >= 0; t--)
            if (oi[t] == v) ds.push_back(t);
        if (v == 0) {
            ds.pop_back();          // t = 0 sits at the back of the list
            ds.insert(ds.begin(), 0);
        }
        isl.sigma[ab(v - 1)] = a(v);
        int prev = a(v);
        for (int t : ds) {
            isl.sigma[prev] = dp(t);
            prev = dp(t);
        }
        isl.sigma[prev] = ab(v - 1);
    }

    // midland corners receive the inner ends in creation order; at corner 0
    // the wrapped block (raw index ell) precedes the initial block
    if (ell == 0) {
        for (int t = 0; t < total; t++) isl.sigma[dm(t)] = dm(t + 1);
    } else {
        std::vector<int> c(ell);   // corner darts; c_0 is the midland root
        std::vector<int> phim = face_map(mid);
        c[0] = 0;
        for (int j = 1; j < ell; j++) c[j] = phim[c[j - 1]];
        for (int j = 0; j < ell; j++) {
            std::vector<int> ds;
            for (int t = 0; t < total; t++)
                if (cj[t] == ell && j == 0) ds.push_back(t);
            for (int t = 0; t < total; t++)
                if (cj[t] == j) ds.push_back(t);
            int prev = base_m + mid.alpha[c[(j + ell - 1) % ell]];
            int after = isl.sigma[prev];   // normally c_j itself
            for (int t : ds) {
                isl.sigma[prev] = dm(t);
                prev = dm(t);
            }
            isl.sigma[prev] = after;
        }
    }

    // colors: boundary black, midland boundary white, interior as given
    std::vector<int> vl;
    int nvl = cycles_of(isl.sigma, vl);
    std::vector<char> vclass(nvl, 1);
    if (mid.darts() == 0) {
        for (int t = 0; t < total; t++)
            vclass[vl[dm(t)]] = dec.midland_vblack[0];
    } else {
        std::vector<int> vmid;
        cycles_of(mid.sigma, vmid);
        for (int d = 0; d < mid.darts(); d++)
            vclass[vl[base_m + d]] = dec.midland_vblack[vmid[d]];
    }

    Island out;
    finish_island(out, isl, a(0), vclass, std::vector<char>(n, 0),
                  PercoMode::Site);
    return out;
}

std::vector<Island> islands_on(const RootedMap& m) {
    int n = m.darts();
    std::vector<int> vlab;
    int nv = cycles_of(m.sigma, vlab);
    std::vector<int> phi = face_map(m);
    std::vector<int> flab;
    cycles_of(phi, flab);
    int rootface = flab[0];
    std::vector<char> outer(nv, 0);
    int k = 0;
    for (int d = 0; d < n; d++)
        if (flab[d] == rootface) {
            outer[vlab[d]] = 1;
            k++;
        }

    // forced colors: outer black, inner neighbors of outer white; an inner
    // chord between outer vertices rules the map out entirely
    std::vector<int> color(nv, -1);   // -1 free, 0 white, 1 black
    for (int v = 0; v < nv; v++)
        if (outer[v]) color[v] = 1;
    for (int d = 0; d < n; d++) {
        bool edge_outer = flab[d] == rootface || flab[m.alpha[d]] == rootface;
        if (edge_outer) continue;
        int u = vlab[d], w = vlab[m.alpha[d]];
        if (outer[u] && outer[w]) return {};
        if (outer[u]) color[w] = 0;
        if (outer[w]) color[u] = 0;
    }
    std::vector<int> free;
    for (int v = 0; v < nv; v++)
        if (color[v] < 0) free.push_back(v);

    std::vector<Island> out;
    std::vector<int> fl2;
    int f_in = cycles_of(phi, fl2) - 1;
    for (long mask = 0; mask < (1L << free.size()); mask++) {
        Island isl;
        isl.m = m;
        isl.vblack.assign(nv, 0);
        for (int v = 0; v < nv; v++)
            isl.vblack[v] = (char)std::max(color[v], 0);
        for (size_t b = 0; b < free.size(); b++)
            isl.vblack[free[b]] = (mask >> b) & 1;
        isl.f_in = f_in;
        isl.k = k;
        for (int v = 0; v < nv; v++)
            if (!outer[v]) (isl.vblack[v] ? isl.v_black_in : isl.v_white_in)++;
        out.push_back(std::move(isl));
    }
    return out;
}

std::vector<Island> bond_islands_on(const RootedMap& m) {
    int n = m.darts();
    std::vector<int> vlab;
    int nv = cycles_of(m.sigma, vlab);
    int ne = 0;
    std::vector<int> eid = edge_ids(m, ne);
    std::vector<int> phi = face_map(m);
    std::vector<int> flab;
    cycles_of(phi, flab);
    int rootface = flab[0];
    std::vector<char> outer_v(nv, 0), outer_e(ne, 0);
    int k = 0;
    for (int d = 0; d < n; d++)
        if (flab[d] == rootface) {
            outer_v[vlab[d]] = 1;
            outer_e[eid[d]] = 1;
            k++;
        }

    // forced colors: outer edges black, inner edges at an outer vertex white
    std::vector<int> color(ne, -1);   // -1 free, 0 white, 1 black
    for (int e = 0; e < ne; e++)
        if (outer_e[e]) color[e] = 1;
    for (int d = 0; d < n; d++)
        if (!outer_e[eid[d]] && outer_v[vlab[d]]) color[eid[d]] = 0;
    std::vector<int> free;
    for (int e = 0; e < ne; e++)
        if (color[e] < 0) free.push_back(e);

    std::vector<int> fl2;
    int f_in = cycles_of(phi, fl2) - 1;
    std::vector<Island> out;
    for (long mask = 0; mask < (1L << free.size()); mask++) {
        Island isl;
        isl.m = m;
        isl.eblack.assign(ne, 0);
        for (int e = 0; e < ne; e++)
            isl.eblack[e] = (char)std::max(color[e], 0);
        for (size_t b = 0; b < free.size(); b++)
            isl.eblack[free[b]] = (mask >> b) & 1;
        isl.f_in = f_in;
        isl.k = k;
        for (int e = 0; e < ne; e++)
            if (!outer_e[e]) (isl.eblack[e] ? isl.e_black_in : isl.e_white_in)++;
        out.push_back(std::move(isl));
    }
    return out;
}

} // namespace perc
