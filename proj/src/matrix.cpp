#include "ncauth/matrix.hpp"

#include <string>
#include <utility>

#include "ncauth/errors.hpp"

namespace ncauth {

namespace {

std::string dims(const FfMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_field(const FfMatrix& a, const FfMatrix& b) {
  if (!(a.field() == b.field())) throw ShapeError("matrices over different fields");
}

}  // namespace

FfMatrix::FfMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_->zero()) {}

FfMatrix::FfMatrix(FieldPtr field, const std::vector<std::vector<Fel>>& rows)
    : FfMatrix(field, rows.size(), rows.empty() ? 0 : rows.front().size()) {
  for (std::size_t r = 0; r < rows_; ++r) {
    if (rows[r].size() != cols_) throw ShapeError("ragged matrix rows");
    for (std::size_t c = 0; c < cols_; ++c) {
      field_->validate(rows[r][c]);
      (*this)(r, c) = rows[r][c];
    }
  }
}

FfMatrix FfMatrix::identity(FieldPtr field, std::size_t n) {
  FfMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field->one();
  return m;
}

FfMatrix FfMatrix::from_ints(FieldPtr field, const std::vector<std::vector<std::uint64_t>>& rows) {
  FfMatrix m(field, rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (rows[r].size() != m.cols()) throw ShapeError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = field->embed(rows[r][c]);
  }
  return m;
}

bool FfMatrix::is_zero() const {
  for (const auto& e : data_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

bool operator==(const FfMatrix& a, const FfMatrix& b) {
  return a.field() == b.field() && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Rref rref(FfMatrix m) {
  const ExtField& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    std::size_t p = lead;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != lead) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(lead, c));
    }
    const Fel scale = f.inv(m(lead, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(lead, c) = f.mul(m(lead, c), scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, col).is_zero()) continue;
      const Fel factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(lead, c)));
      }
    }
    pivots.push_back(col);
    ++lead;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const FfMatrix& m) { return rref(m).pivots.size(); }

FfMatrix transpose(const FfMatrix& m) {
  FfMatrix t(m.field_ptr(), m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  }
  return t;
}

FfMatrix mat_mul(const FfMatrix& a, const FfMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) {
    throw ShapeError("mat_mul: " + dims(a) + " times " + dims(b));
  }
  const ExtField& f = a.field();
  FfMatrix out(a.field_ptr(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const Fel& x = a(i, t);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) = f.add(out(i, j), f.mul(x, b(t, j)));
      }
    }
  }
  return out;
}

FfMatrix add(const FfMatrix& a, const FfMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("add: " + dims(a) + " plus " + dims(b));
  }
  FfMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a.field().add(a(r, c), b(r, c));
  }
  return out;
}

FfMatrix vstack(std::span<const FfMatrix> blocks, FieldPtr field, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw ShapeError("vstack: column mismatch");
    if (!(b.field() == *field)) throw ShapeError("vstack: field mismatch");
    rows += b.rows();
  }
  FfMatrix out(std::move(field), rows, cols);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r, ++at) {
      for (std::size_t c = 0; c < cols; ++c) out(at, c) = b(r, c);
    }
  }
  return out;
}

FfMatrix vstack(const FfMatrix& top, const FfMatrix& bottom) {
  const FfMatrix parts[] = {top, bottom};
  return vstack(parts, top.field_ptr(), top.cols());
}

FfMatrix hstack(const FfMatrix& left, const FfMatrix& right) {
  require_same_field(left, right);
  if (left.rows() != right.rows()) throw ShapeError("hstack: row mismatch");
  FfMatrix out(left.field_ptr(), left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    for (std::size_t c = 0; c < left.cols(); ++c) out(r, c) = left(r, c);
    for (std::size_t c = 0; c < right.cols(); ++c) out(r, left.cols() + c) = right(r, c);
  }
  return out;
}

FfMatrix block(const FfMatrix& m, std::size_t row, std::size_t col, std::size_t rows,
               std::size_t cols) {
  if (row + rows > m.rows() || col + cols > m.cols()) throw ShapeError("block out of range");
  FfMatrix out(m.field_ptr(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = m(row + r, col + c);
  }
  return out;
}

FfMatrix lift(const FfMatrix& base, const FieldPtr& ext) {
  if (base.field().degree() != 1 || base.field().q() != ext->q()) {
    throw ShapeError("lift: source matrix must be over the prime field of the target");
  }
  FfMatrix out(ext, base.rows(), base.cols());
  for (std::size_t r = 0; r < base.rows(); ++r) {
    for (std::size_t c = 0; c < base.cols(); ++c) out(r, c) = ext->embed(base(r, c)[0]);
  }
  return out;
}

BigInt field_power(const ExtField& f, std::size_t e) {
  BigInt base = 1;
  for (std::size_t i = 0; i < f.degree(); ++i) base *= f.q();
  return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

namespace {

// rref of [coeff | rhs]; returns nullopt if some zero row of coeff has a
// nonzero rhs entry.
std::optional<Rref> reduce_augmented(const FfMatrix& coeff, const FfMatrix& rhs) {
  require_same_field(coeff, rhs);
  if (coeff.rows() != rhs.rows()) {
    throw ShapeError("solve: coefficient " + dims(coeff) + " vs rhs " + dims(rhs));
  }
  Rref red = rref(hstack(coeff, rhs));
  for (std::size_t p : red.pivots) {
    if (p >= coeff.cols()) return std::nullopt;
  }
  return red;
}

}  // namespace

SolveCount solve_count(const FfMatrix& coeff, const FfMatrix& rhs) {
  const auto red = reduce_augmented(coeff, rhs);
  if (!red) return {false, 0};
  const std::size_t r = red->pivots.size();
  return {true, field_power(coeff.field(), (coeff.cols() - r) * rhs.cols())};
}

std::optional<FfMatrix> solve_particular(const FfMatrix& coeff, const FfMatrix& rhs) {
  const auto red = reduce_augmented(coeff, rhs);
  if (!red) return std::nullopt;
  FfMatrix x(coeff.field_ptr(), coeff.cols(), rhs.cols());
  for (std::size_t i = 0; i < red->pivots.size(); ++i) {
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
      x(red->pivots[i], c) = red->reduced(i, coeff.cols() + c);
    }
  }
  return x;
}

FfMatrix build_vandermonde(const FieldPtr& field, std::span<const Fel> points, std::size_t height) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    field->validate(points[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) throw ParameterError("vandermonde: duplicate points");
    }
  }
  FfMatrix v(field, height, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    Fel p = field->one();
    for (std::size_t i = 0; i < height; ++i) {
      v(i, j) = p;
      p = field->mul(p, points[j]);
    }
  }
  return v;
}

}  // namespace ncauth
