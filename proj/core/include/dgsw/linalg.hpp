#pragma once

#include <optional>
#include <vector>

#include "dgsw/rational.hpp"

namespace dgsw {

// Dense matrix over the rationals with exact elimination. Sizes here are
// desk scale (slices of truncated complexes), so dense is fine.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows, std::vector<Rational>(cols)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i][j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i][j]; }

  static QMatrix identity(std::size_t n);
  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& other) const;

  // Reduced row echelon form (in place); returns pivot columns.
  std::vector<std::size_t> rref();

  std::size_t rank() const;

  // Basis of the right nullspace, as columns.
  std::vector<std::vector<Rational>> nullspace() const;

  // Solve A x = b; nullopt if inconsistent.
  std::optional<std::vector<Rational>> solve(
      const std::vector<Rational>& b) const;

  // Column span membership: is b in the image of A? If so returns one
  // preimage.
  std::optional<std::vector<Rational>> preimage(
      const std::vector<Rational>& b) const {
    return solve(b);
  }

  std::vector<Rational> apply(const std::vector<Rational>& x) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::vector<Rational>> a_;
};

// dim(span of the given vectors).
std::size_t span_dim(const std::vector<std::vector<Rational>>& vecs,
                     std::size_t ambient);

// Extend `inside` to a basis of `space` (both lists of vectors); returns
// indices into `space` whose classes are independent modulo span(inside).
std::vector<std::size_t> independent_mod(
    const std::vector<std::vector<Rational>>& space,
    const std::vector<std::vector<Rational>>& inside, std::size_t ambient);

}  // namespace dgsw
