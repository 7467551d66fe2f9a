#pragma once

#include <vector>

#include "rktree/rational.hpp"

namespace rktree {

// Reduced row echelon form in place over exact rationals; returns the pivot
// column indices in order. Deterministic: first nonzero entry scanning rows
// top-down, columns left-right.
std::vector<int> rref(RatMat& m);

// Basis of {x : M x = 0} for an (possibly empty) matrix with ncols columns,
// in the standard reduced-echelon construction: one vector per free column,
// unit entry there, zeros in the other free columns.
std::vector<RatVec> nullspace(RatMat m, int ncols);

// True when v lies in the row span of basis (each row a length-matching
// vector). Exact.
bool in_span(const std::vector<RatVec>& basis, const RatVec& v);

}  // namespace rktree
