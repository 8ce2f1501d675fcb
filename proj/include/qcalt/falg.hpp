#ifndef QCALT_FALG_HPP
#define QCALT_FALG_HPP

#include <cstddef>
#include <vector>

#include "qcalt/ff.hpp"

namespace qcalt {

/// Dense row-major matrix over one tower level.
class Matrix {
 public:
  Matrix() : tw_(nullptr), lv_(0), rows_(0), cols_(0) {}
  Matrix(const FieldTower* tw, int lv, std::size_t rows, std::size_t cols)
      : tw_(tw), lv_(lv), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(const FieldTower* tw, int lv, std::size_t n);
  static Matrix from_rows(const FieldTower* tw, int lv,
                          const std::vector<std::vector<fe>>& rows);

  const FieldTower* tower() const { return tw_; }
  int level() const { return lv_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  fe at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  fe& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  std::vector<fe> row(std::size_t r) const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix transpose() const;
  bool is_zero() const;
  Matrix embed(int lv) const;

  /// Stack rows of `o` (same cols/level) below this matrix.
  Matrix vstack(const Matrix& o) const;

  bool operator==(const Matrix& o) const {
    return lv_ == o.lv_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  const FieldTower* tw_;
  int lv_;
  std::size_t rows_, cols_;
  std::vector<fe> a_;
};

std::vector<fe> mat_vec(const Matrix& M, const std::vector<fe>& v);

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form (unique canonical form).
RrefResult rref(const Matrix& M);
std::size_t rank(const Matrix& M);

/// Basis (as rows) of the right null space {v : M v^T = 0}.
Matrix kernel(const Matrix& M);

/// Affine subspace returned by a linear solve.
struct SolutionSet {
  enum class Card { Empty, Unique, Many };
  Card cardinality = Card::Empty;
  std::vector<fe> particular;  // meaningful unless Empty
  Matrix homogeneous;          // kernel basis rows, cols = #unknowns
};

/// Solve M x = b over the matrix's level.
SolutionSet solve_affine(const Matrix& M, const std::vector<fe>& b);

/// Linear code kept as a full-row-rank RREF generator matrix, so two codes
/// are equal as objects iff they are equal as row spaces.
class LinearCode {
 public:
  LinearCode() = default;
  explicit LinearCode(const Matrix& gen);  // reduces, drops zero rows

  const FieldTower* tower() const { return gen_.tower(); }
  int level() const { return gen_.level(); }
  std::size_t length() const { return gen_.cols(); }
  std::size_t dim() const { return gen_.rows(); }
  const Matrix& gen() const { return gen_; }

  bool contains(const std::vector<fe>& word) const;

 private:
  Matrix gen_;
};

LinearCode dual(const LinearCode& C);

/// C ∩ (sublevel)^n as a code over `sublevel`, via coordinate expansion of a
/// parity check and a kernel computation over the subfield.
LinearCode subfield_subcode(const LinearCode& C, int sublevel);

/// Column restriction to the (0-based) index list I; throws EmptyIndexSet.
LinearCode puncture(const LinearCode& C, const std::vector<std::size_t>& I);

/// {σ(c) : c ∈ C} with σ(c)_i = c_{π(i)}; π is 0-based.
LinearCode permute_columns(const LinearCode& C, const std::vector<std::size_t>& pi);

/// Row-space equality through the canonical RREF forms; throws LengthMismatch.
bool row_space_equal(const LinearCode& a, const LinearCode& b);

}  // namespace qcalt

#endif  // QCALT_FALG_HPP
