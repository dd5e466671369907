#include "dgsw/linalg.hpp"

namespace dgsw {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = a_[i][j];
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
  QMatrix r(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (a_[i][k] == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        if (other.at(k, j) == 0) continue;
        r.at(i, j) += a_[i][k] * other.at(k, j);
      }
    }
  return r;
}

std::vector<std::size_t> QMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t p = row;
    while (p < rows_ && a_[p][col] == 0) ++p;
    if (p == rows_) continue;
    std::swap(a_[p], a_[row]);
    Rational inv = Rational(1) / a_[row][col];
    for (std::size_t j = col; j < cols_; ++j) a_[row][j] *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || a_[i][col] == 0) continue;
      Rational f = a_[i][col];
      for (std::size_t j = col; j < cols_; ++j) a_[i][j] -= f * a_[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t QMatrix::rank() const {
  QMatrix copy = *this;
  return copy.rref().size();
}

std::vector<std::vector<Rational>> QMatrix::nullspace() const {
  QMatrix copy = *this;
  auto pivots = copy.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t freecol = 0; freecol < cols_; ++freecol) {
    if (is_pivot[freecol]) continue;
    std::vector<Rational> v(cols_);
    v[freecol] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -copy.at(r, freecol);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> QMatrix::solve(
    const std::vector<Rational>& b) const {
  QMatrix aug(rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = a_[i][j];
    aug.at(i, cols_) = b[i];
  }
  auto pivots = aug.rref();
  std::vector<Rational> x(cols_);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols_) return std::nullopt;  // inconsistent
    x[pivots[r]] = aug.at(r, cols_);
  }
  return x;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& x) const {
  std::vector<Rational> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (a_[i][j] != 0 && x[j] != 0) y[i] += a_[i][j] * x[j];
  return y;
}

std::size_t span_dim(const std::vector<std::vector<Rational>>& vecs,
                     std::size_t ambient) {
  QMatrix m(vecs.size(), ambient);
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < ambient; ++j) m.at(i, j) = vecs[i][j];
  return m.rank();
}

std::vector<std::size_t> independent_mod(
    const std::vector<std::vector<Rational>>& space,
    const std::vector<std::vector<Rational>>& inside, std::size_t ambient) {
  std::vector<std::vector<Rational>> acc = inside;
  std::size_t cur = span_dim(acc, ambient);
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < space.size(); ++i) {
    acc.push_back(space[i]);
    std::size_t d = span_dim(acc, ambient);
    if (d > cur) {
      cur = d;
      picked.push_back(i);
    } else {
      acc.pop_back();
    }
  }
  return picked;
}

}  // namespace dgsw
