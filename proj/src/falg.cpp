#include "qcalt/falg.hpp"

#include <algorithm>

namespace qcalt {

Matrix Matrix::identity(const FieldTower* tw, int lv, std::size_t n) {
  Matrix m(tw, lv, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const FieldTower* tw, int lv,
                         const std::vector<std::vector<fe>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Matrix m(tw, lv, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw Error("ShapeMismatch", "ragged row list");
    for (std::size_t c = 0; c < nc; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

std::vector<fe> Matrix::row(std::size_t r) const {
  return std::vector<fe>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || lv_ != o.lv_)
    throw Error("ShapeMismatch", "matrix product dimensions");
  Matrix r(tw_, lv_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      fe x = at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.at(i, j) = tw_->add(lv_, r.at(i, j), tw_->mul(lv_, x, o.at(k, j)));
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || lv_ != o.lv_)
    throw Error("ShapeMismatch", "matrix sum dimensions");
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = tw_->add(lv_, a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || lv_ != o.lv_)
    throw Error("ShapeMismatch", "matrix difference dimensions");
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = tw_->sub(lv_, a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(tw_, lv_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](fe x) { return x == 0; });
}

Matrix Matrix::embed(int lv) const {
  if (lv < lv_) throw Error("NotInSubfield", "embed targets a lower level");
  Matrix r = *this;
  r.lv_ = lv;
  return r;
}

Matrix Matrix::vstack(const Matrix& o) const {
  if (cols_ != o.cols_ || lv_ != o.lv_)
    throw Error("ShapeMismatch", "vstack column counts differ");
  Matrix r(tw_, lv_, rows_ + o.rows_, cols_);
  std::copy(a_.begin(), a_.end(), r.a_.begin());
  std::copy(o.a_.begin(), o.a_.end(), r.a_.begin() + a_.size());
  return r;
}

std::vector<fe> mat_vec(const Matrix& M, const std::vector<fe>& v) {
  if (v.size() != M.cols()) throw Error("ShapeMismatch", "mat_vec dimensions");
  const FieldTower* tw = M.tower();
  int lv = M.level();
  std::vector<fe> out(M.rows(), 0);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      out[i] = tw->add(lv, out[i], tw->mul(lv, M.at(i, j), v[j]));
  return out;
}

RrefResult rref(const Matrix& M) {
  RrefResult res;
  res.reduced = M;
  Matrix& A = res.reduced;
  const FieldTower* tw = M.tower();
  int lv = M.level();
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t piv = r;
    while (piv < M.rows() && A.at(piv, c) == 0) ++piv;
    if (piv == M.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < M.cols(); ++j) std::swap(A.at(piv, j), A.at(r, j));
    fe pinv = tw->inv(lv, A.at(r, c));
    for (std::size_t j = 0; j < M.cols(); ++j)
      A.at(r, j) = tw->mul(lv, A.at(r, j), pinv);
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || A.at(i, c) == 0) continue;
      fe f = A.at(i, c);
      for (std::size_t j = 0; j < M.cols(); ++j)
        A.at(i, j) = tw->sub(lv, A.at(i, j), tw->mul(lv, f, A.at(r, j)));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

std::size_t rank(const Matrix& M) { return rref(M).rank; }

Matrix kernel(const Matrix& M) {
  RrefResult rr = rref(M);
  const FieldTower* tw = M.tower();
  int lv = M.level();
  std::vector<bool> is_pivot(M.cols(), false);
  for (std::size_t c : rr.pivots) is_pivot[c] = true;
  Matrix K(tw, lv, M.cols() - rr.rank, M.cols());
  std::size_t bi = 0;
  for (std::size_t free_c = 0; free_c < M.cols(); ++free_c) {
    if (is_pivot[free_c]) continue;
    K.at(bi, free_c) = 1;
    for (std::size_t pr = 0; pr < rr.rank; ++pr)
      K.at(bi, rr.pivots[pr]) = tw->neg(lv, rr.reduced.at(pr, free_c));
    ++bi;
  }
  return K;
}

SolutionSet solve_affine(const Matrix& M, const std::vector<fe>& b) {
  if (b.size() != M.rows()) throw Error("ShapeMismatch", "rhs length");
  const FieldTower* tw = M.tower();
  int lv = M.level();
  Matrix aug(tw, lv, M.rows(), M.cols() + 1);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) aug.at(i, j) = M.at(i, j);
    aug.at(i, M.cols()) = b[i];
  }
  RrefResult rr = rref(aug);
  SolutionSet s;
  s.homogeneous = kernel(M);
  for (std::size_t c : rr.pivots)
    if (c == M.cols()) {
      s.cardinality = SolutionSet::Card::Empty;
      return s;
    }
  s.particular.assign(M.cols(), 0);
  for (std::size_t pr = 0; pr < rr.rank; ++pr)
    s.particular[rr.pivots[pr]] = rr.reduced.at(pr, M.cols());
  s.cardinality = s.homogeneous.rows() == 0 ? SolutionSet::Card::Unique
                                            : SolutionSet::Card::Many;
  return s;
}

LinearCode::LinearCode(const Matrix& gen) {
  RrefResult rr = rref(gen);
  Matrix g(gen.tower(), gen.level(), rr.rank, gen.cols());
  for (std::size_t i = 0; i < rr.rank; ++i)
    for (std::size_t j = 0; j < gen.cols(); ++j) g.at(i, j) = rr.reduced.at(i, j);
  gen_ = g;
}

bool LinearCode::contains(const std::vector<fe>& word) const {
  Matrix ext = gen_.vstack(Matrix::from_rows(tower(), level(), {word}));
  return rank(ext) == dim();
}

LinearCode dual(const LinearCode& C) {
  Matrix K = kernel(C.gen());  // rows v with Gen v^T = 0
  if (K.rows() == 0) return LinearCode(Matrix(C.tower(), C.level(), 0, C.length()));
  return LinearCode(K);
}

LinearCode subfield_subcode(const LinearCode& C, int sublevel) {
  const FieldTower* tw = C.tower();
  int lv = C.level();
  if (sublevel > lv) throw Error("NotInSubfield", "sublevel above code level");
  unsigned d = static_cast<unsigned>(tw->coords(lv, 0, sublevel).size());
  Matrix H = dual(C).gen();
  // Each parity equation over the big field splits into d equations over the
  // subfield once the unknown coordinates are restricted to the subfield.
  Matrix E(tw, sublevel, H.rows() * d, C.length());
  for (std::size_t i = 0; i < H.rows(); ++i)
    for (std::size_t j = 0; j < C.length(); ++j) {
      auto cs = tw->coords(lv, H.at(i, j), sublevel);
      for (unsigned u = 0; u < d; ++u) E.at(i * d + u, j) = cs[u];
    }
  Matrix K = kernel(E);
  if (K.rows() == 0) return LinearCode(Matrix(tw, sublevel, 0, C.length()));
  return LinearCode(K);
}

LinearCode puncture(const LinearCode& C, const std::vector<std::size_t>& I) {
  if (I.empty()) throw Error("EmptyIndexSet", "puncture needs at least one column");
  Matrix g(C.tower(), C.level(), C.dim(), I.size());
  for (std::size_t r = 0; r < C.dim(); ++r)
    for (std::size_t j = 0; j < I.size(); ++j) {
      if (I[j] >= C.length()) throw Error("ShapeMismatch", "puncture index range");
      g.at(r, j) = C.gen().at(r, I[j]);
    }
  return LinearCode(g);
}

LinearCode permute_columns(const LinearCode& C, const std::vector<std::size_t>& pi) {
  if (pi.size() != C.length()) throw Error("LengthMismatch", "permutation length");
  Matrix g(C.tower(), C.level(), C.dim(), C.length());
  for (std::size_t r = 0; r < C.dim(); ++r)
    for (std::size_t i = 0; i < C.length(); ++i) g.at(r, i) = C.gen().at(r, pi[i]);
  return LinearCode(g);
}

bool row_space_equal(const LinearCode& a, const LinearCode& b) {
  if (a.length() != b.length() || a.level() != b.level())
    throw Error("LengthMismatch", "codes of different length or level");
  return a.gen() == b.gen();
}

}  // namespace qcalt
