#pragma once

// Sparse exact row reduction used by the module computations. Vectors are
// indexed by positions in an ascending monomial list; the pivot of a vector
// is its largest index, so a span intersected with a filtration prefix is
// spanned by the rows whose pivot lies in that prefix.

#include <map>
#include <optional>
#include <vector>

#include "explab/rational.hpp"

namespace explab::detail {

using SparseVec = std::map<int, Rational>;

void axpy(SparseVec& y, const Rational& a, const SparseVec& x);

class Echelon {
 public:
  struct Row {
    SparseVec image;        // pivot coefficient normalized to 1
    SparseVec combination;  // which source columns produced it
  };

  /// Inserts image(column) with its source combination. Returns the reduced
  /// combination when the image is dependent (a kernel vector), else nullopt.
  std::optional<SparseVec> insert(SparseVec image, SparseVec combination);

  /// Reduces v against the stored rows (leading terms only).
  SparseVec reduce(SparseVec v) const;

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t pivots_at_most(int index) const;
  bool has_pivot(int index) const { return rows_.count(index) != 0; }
  const std::map<int, Row>& rows() const noexcept { return rows_; }

 private:
  std::map<int, Row> rows_;  // pivot -> row
};

}  // namespace explab::detail
