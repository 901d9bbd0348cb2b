#include "linear_algebra.hpp"

#include <utility>

namespace explab::detail {

void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
  if (sgn(a) == 0) return;
  for (const auto& [k, v] : x) {
    auto [it, inserted] = y.try_emplace(k, a * v);
    if (!inserted) {
      it->second += a * v;
      if (sgn(it->second) == 0) y.erase(it);
    }
  }
}

std::optional<SparseVec> Echelon::insert(SparseVec image, SparseVec combination) {
  while (!image.empty()) {
    const int pivot = image.rbegin()->first;
    auto it = rows_.find(pivot);
    if (it == rows_.end()) {
      const Rational inv = 1 / image.rbegin()->second;
      for (auto& [k, v] : image) v *= inv;
      for (auto& [k, v] : combination) v *= inv;
      rows_.emplace(pivot, Row{std::move(image), std::move(combination)});
      return std::nullopt;
    }
    const Rational f = -image.rbegin()->second;
    axpy(image, f, it->second.image);
    axpy(combination, f, it->second.combination);
  }
  return combination;
}

SparseVec Echelon::reduce(SparseVec v) const {
  SparseVec done;
  while (!v.empty()) {
    const int pivot = v.rbegin()->first;
    auto it = rows_.find(pivot);
    if (it == rows_.end()) {
      done.emplace(pivot, v.rbegin()->second);
      v.erase(pivot);
      continue;
    }
    const Rational f = -v.rbegin()->second;
    axpy(v, f, it->second.image);
  }
  return done;
}

std::size_t Echelon::pivots_at_most(int index) const {
  std::size_t c = 0;
  for (auto it = rows_.begin(); it != rows_.end() && it->first <= index; ++it) ++c;
  return c;
}

}  // namespace explab::detail
