#pragma once

// Exhaustive percolation sweeps on closed triangulations: for every vertex
// (site) or edge (bond) coloring, extract the origin cluster and the islands
// it cuts out of the sphere, and verify the island characterizations. Also
// implements the midland/reef decomposition of site-islands and its inverse.

#include "maps.hpp"

#include <vector>

namespace perc {

enum class PercoMode { Site, Bond };

struct Island {
    RootedMap m;               // canonical, rooted on the cut face
    std::vector<char> vblack;  // vertex colors (site sweeps)
    std::vector<char> eblack;  // edge colors (bond sweeps), edges numbered
                               // by their smaller dart in increasing order
    int k = 0;                 // boundary length (degree of the cluster face)
    int f_in = 0;              // inner triangles
    int v_black_in = 0, v_white_in = 0;  // inner vertex colors (site)
    int e_black_in = 0, e_white_in = 0;  // inner edge colors (bond)
};

struct SweepEntry {
    std::vector<char> colors;  // per vertex (site) or per edge (bond), 1=black
    bool atomic = false;       // rooting convention violated; no cluster
    RootedMap cluster;         // canonical origin cluster
    std::vector<Island> islands;  // one per cluster face
};

// all 2^v (site) or 2^e (bond) colorings of a closed triangulation
std::vector<SweepEntry> percolation_sweep(const RootedMap& t, PercoMode mode);

struct SiteDecomposition {
    bool empty_island = false;   // the bare triangle; nothing to split
    RootedMap midland;           // canonical; atomic when no midland edges
    std::vector<char> midland_vblack;  // vertex colors of the midland
    std::vector<char> seq;       // reef triangles: 1 = inward, 0 = outward
    int k = 0, ell = 0;          // island and midland boundary lengths
};

// split a non-empty site-island into its midland and its reef sequence
SiteDecomposition decompose_site_island(const Island& i);

// inverse gluing: rebuild the island from a midland and a reef sequence
Island recompose_site_island(const SiteDecomposition& d);

// all site-islands supported on a given simple-boundary triangulation:
// outer vertices black, neighbors of outer vertices white, remaining inner
// vertices take both colors; empty when the map admits no island coloring
std::vector<Island> islands_on(const RootedMap& simple_boundary_map);

// all bond-islands supported on a given simple-boundary triangulation:
// outer edges black, inner edges incident to an outer vertex white,
// remaining inner edges take both colors
std::vector<Island> bond_islands_on(const RootedMap& simple_boundary_map);

} // namespace perc
