#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ncauth/field.hpp"

namespace ncauth {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix over a finite field.
class FfMatrix {
 public:
  FfMatrix(FieldPtr field, std::size_t rows, std::size_t cols);
  /// Rows of equal length; every entry is validated against the field.
  FfMatrix(FieldPtr field, const std::vector<std::vector<Fel>>& rows);

  static FfMatrix identity(FieldPtr field, std::size_t n);
  /// Entries given as integers mod q, embedded into the field.
  static FfMatrix from_ints(FieldPtr field, const std::vector<std::vector<std::uint64_t>>& rows);

  const FieldPtr& field_ptr() const noexcept { return field_; }
  const ExtField& field() const noexcept { return *field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const Fel& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Fel& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Fel> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Fel> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  bool is_zero() const;

  friend bool operator==(const FfMatrix& a, const FfMatrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Fel> data_;
};

struct Rref {
  FfMatrix reduced;
  std::vector<std::size_t> pivots;  // strictly increasing pivot columns
};

/// Reduced row-echelon form. Pivot rows are taken in row order (first row
/// with a nonzero entry in the current column) and normalized to 1.
Rref rref(FfMatrix m);

std::size_t rank(const FfMatrix& m);

FfMatrix transpose(const FfMatrix& m);
FfMatrix mat_mul(const FfMatrix& a, const FfMatrix& b);
FfMatrix add(const FfMatrix& a, const FfMatrix& b);
/// Stacks matrices with equal column counts; an empty list yields 0 x cols.
FfMatrix vstack(std::span<const FfMatrix> blocks, FieldPtr field, std::size_t cols);
FfMatrix vstack(const FfMatrix& top, const FfMatrix& bottom);
FfMatrix hstack(const FfMatrix& left, const FfMatrix& right);
FfMatrix block(const FfMatrix& m, std::size_t row, std::size_t col, std::size_t rows, std::size_t cols);

/// Image of a matrix over F_q (degree-1 field) in F_{q^l}.
FfMatrix lift(const FfMatrix& base, const FieldPtr& ext);

struct SolveCount {
  bool consistent = false;
  BigInt count = 0;
};

/// Number of X with coeff * X = rhs. For a rhs with c columns each column is
/// an independent system in cols(coeff) unknowns, so a consistent system has
/// (q^l)^{(cols - rank) * c} solutions.
SolveCount solve_count(const FfMatrix& coeff, const FfMatrix& rhs);

/// One solution of coeff * X = rhs (free variables set to zero), or nullopt
/// if the system is inconsistent.
std::optional<FfMatrix> solve_particular(const FfMatrix& coeff, const FfMatrix& rhs);

/// k x K matrix whose column j is (1, x_j, x_j^2, ..., x_j^{k-1})^T.
/// Throws ParameterError on duplicate points.
FfMatrix build_vandermonde(const FieldPtr& field, std::span<const Fel> points, std::size_t height);

/// (q^l)^e as a big integer.
BigInt field_power(const ExtField& f, std::size_t e);

}  // namespace ncauth
