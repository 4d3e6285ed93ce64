#pragma once

// Independent brute-force ground truth: exhaustive enumeration of small
// rooted planar maps as dart permutation pairs, recognition of
// triangulations with (simple) boundary, and exact statistic extraction.
// The representation is deliberately unrelated to the generating-function
// recursions elsewhere in this project, so agreement between the two is a
// genuine cross-check.

#include "series.hpp"

#include <functional>
#include <vector>

namespace perc {

// Rooted map as a pair of permutations on darts 0..2e-1: sigma is the
// counterclockwise successor around each vertex, alpha the edge-pairing
// involution. The root dart is always 0; the atomic map has no darts.
struct RootedMap {
    std::vector<int> sigma, alpha;
    int darts() const { return (int)sigma.size(); }
    int edges() const { return darts() / 2; }
    bool operator==(const RootedMap& o) const {
        return sigma == o.sigma && alpha == o.alpha;
    }
};

// breadth-first relabeling from the root dart; rooted maps have no
// automorphisms, so this is a complete isomorphism invariant
RootedMap canonical(const RootedMap& m);

// relabel with a chosen root dart; lab (if given) receives old -> new labels
RootedMap canonical_from(const RootedMap& m, int root,
                         std::vector<int>* lab = nullptr);

// orbit decomposition of a permutation, as a label array plus count
int cycles_of(const std::vector<int>& perm, std::vector<int>& label);

struct MapStats {
    int length = 0;    // degree of the root face
    int v_out = 0;     // vertices incident to the root face
    int e_out = 0;     // edges incident to the root face
    int v = 0, e = 0;  // vertex and edge counts
    int f_in = 0;      // non-root faces
    int reef = 0;      // edges incident to an outer vertex
    int e_reef = 0;    // inner edges incident to an outer vertex
    bool simple_boundary = false;
    bool in_T = false;       // every non-root face is a triangle
    bool in_S = false;       // in_T with a simple-cycle boundary (a loop or
                             // doubled edge counts as a cycle)
    bool in_Sprime = false;  // in_S, or the one-edge two-vertex map
    bool closed = false;     // every face, root included, is a triangle
};

MapStats classify(const RootedMap& m);

// one representative per isomorphism class of rooted planar map with at
// most e_max edges, atomic map included, in a deterministic order
void enumerate_maps(int e_max, const std::function<void(const RootedMap&)>& f);

enum class MapStat {
    BoundaryAndOuterVertices,  // x^length y^v_out z^e over triangulations
                               // with boundary
    BoundaryAndReef,           // x^length y^reef z^e over simple-boundary
                               // triangulations plus the one-edge map
    BoundaryAndOuterEdges,     // x^length y^e_out z^e over triangulations
                               // with boundary
};

// exact trivariate coefficient table, indexed like the algebraic solvers:
// z-order slices holding polynomials in (x, y)
ZSeries series_from_enumeration(MapStat stat, int e_max);

} // namespace perc
