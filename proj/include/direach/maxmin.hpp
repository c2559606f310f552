#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "direach/graph.hpp"
#include "direach/shortcut.hpp"

namespace direach {

/// Entries from {-inf} u N u {+inf}. For integer scalars the infinities are
/// the type's lowest and highest values.
template <typename Scalar = std::int64_t>
using MaxMinMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
constexpr Scalar neg_inf() {
  if constexpr (std::numeric_limits<Scalar>::has_infinity) {
    return -std::numeric_limits<Scalar>::infinity();
  } else {
    return std::numeric_limits<Scalar>::lowest();
  }
}

template <typename Scalar>
constexpr Scalar pos_inf() {
  if constexpr (std::numeric_limits<Scalar>::has_infinity) {
    return std::numeric_limits<Scalar>::infinity();
  } else {
    return std::numeric_limits<Scalar>::max();
  }
}

/// Witness index per output entry: the smallest k attaining the max, or -1
/// where the result is -inf.
using WitnessMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// C[i,j] = max_k min(B[i,k], A[k,j]), together with its witnesses.
template <typename DerivedB, typename DerivedA>
std::pair<MaxMinMatrix<typename DerivedB::Scalar>, WitnessMatrix> maxmin_product_with_witness(
    const Eigen::MatrixBase<DerivedB>& b, const Eigen::MatrixBase<DerivedA>& a) {
  using Scalar = typename DerivedB::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedA::Scalar>, "scalar types must match");
  if (b.cols() != a.rows()) throw std::invalid_argument("maxmin_product: inner dimensions differ");
  const Scalar lo = neg_inf<Scalar>();
  MaxMinMatrix<Scalar> c = MaxMinMatrix<Scalar>::Constant(b.rows(), a.cols(), lo);
  WitnessMatrix w = WitnessMatrix::Constant(b.rows(), a.cols(), -1);
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index k = 0; k < b.cols(); ++k) {
      const Scalar bik = b(i, k);
      if (bik == lo) continue;
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        const Scalar v = std::min(bik, a(k, j));
        if (v > c(i, j)) {
          c(i, j) = v;
          w(i, j) = static_cast<int>(k);
        }
      }
    }
  }
  return {std::move(c), std::move(w)};
}

template <typename DerivedB, typename DerivedA>
MaxMinMatrix<typename DerivedB::Scalar> maxmin_product(const Eigen::MatrixBase<DerivedB>& b,
                                                       const Eigen::MatrixBase<DerivedA>& a) {
  return maxmin_product_with_witness(b, a).first;
}

/// A vertex sequence q derived from path `origin`. labels[i] is the position
/// (0-based) on the origin path of the last path vertex known to reach
/// vertices[i].
struct LabeledSequence {
  std::vector<Vertex> vertices;
  std::vector<std::size_t> labels;
  std::size_t origin = 0;
};

struct SequenceSet {
  PathCollection paths;
  std::vector<LabeledSequence> sequences;
};

/// One hop of sequence direachability through the max-min product. Output
/// sequences are sorted by (label, `rank`), where `rank` orders vertices
/// (typically topologically).
SequenceSet ohsdr_step(const DiGraph& g, const SequenceSet& seqs, std::span<const std::size_t> rank);

/// Topological order of the condensation, ties inside a component broken by
/// vertex id. rank[v] is v's position in that order.
std::vector<std::size_t> topo_rank(const DiGraph& g);

/// Per path: (z, last path vertex reaching z within the budget), sorted by z.
struct PdrResult {
  std::vector<std::vector<std::pair<Vertex, Vertex>>> per_path;

  friend bool operator==(const PdrResult&, const PdrResult&) = default;
};

PdrResult pdr_solve(const DiGraph& g, const PathCollection& paths, std::size_t hops);

/// `hops` rectangular Boolean products starting from the source rows.
ReachResult dr_solve(const DiGraph& g, const SourceSet& s, std::size_t hops);

void write_pdr(std::ostream& out, const PdrResult& r);

}  // namespace direach
