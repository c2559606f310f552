#pragma once

#include "direach/bitmatrix.hpp"
#include "direach/graph.hpp"

namespace direach {

/// Boolean product: C[i,j] = OR_t B[i,t] AND A[t,j]. Output rows are split
/// across `threads`; the result does not depend on the split.
/// Throws std::invalid_argument when b.cols() != a.rows().
BitMatrix bmm(const BitMatrix& b, const BitMatrix& a, unsigned threads = 1);

/// Copy of a square matrix with the diagonal set.
BitMatrix add_identity(const BitMatrix& a);

/// Row i of the result is row s[i] of `a`.
BitMatrix restrict_rows(const BitMatrix& a, const SourceSet& s);

BitMatrix adjacency_matrix(const DiGraph& g);

/// Reflexive closure by squaring (A + I) up to ceil(log2 n) times, stopping
/// early once a square no longer changes.
BitMatrix transitive_closure(const DiGraph& g, unsigned threads = 1);

}  // namespace direach
