#pragma once

#include "silevy/mesh.hpp"
#include "silevy/space.hpp"

namespace silevy {

double d_A(const Space& s, const IndexSet& a, const IndexSet& b);
double d_T(const Space& s, const Point& u, const Point& v);

// Hausdorff distance between the constituent lists of two canonical extremal
// representations; restricted to atoms it coincides with d_A.
double d_C(const Space& s, const IncrementSet& a, const IncrementSet& b);

// delta_n: max d_A(A, A') over mesh pairs with A a maximal proper subset of
// A'; 0 when the mesh has no such pair.
double mesh_delta(const Space& s, const MeshLevel& mesh);

// diam(C) under d_T, approximated over the corner points of a cell.
double cell_diameter(const Space& s, const IncrementSet& cell);

}  // namespace silevy
