#include "specinv/intmatrix.hpp"

#include <stdexcept>

namespace specinv {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

}  // namespace

bool matrix_eq(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

SnfResult smith_normal_form(const IntMatrix& M) {
  const Eigen::Index m = M.rows(), n = M.cols();
  IntMatrix D = M;
  IntMatrix U = IntMatrix::Identity(m, m);
  IntMatrix V = IntMatrix::Identity(n, n);

  auto swap_rows = [&](Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.row(a).swap(D.row(b));
    U.row(a).swap(U.row(b));
  };
  auto swap_cols = [&](Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.col(a).swap(D.col(b));
    V.col(a).swap(V.col(b));
  };
  auto add_row = [&](Eigen::Index dst, Eigen::Index src, const Int& c) {
    D.row(dst) += c * D.row(src);
    U.row(dst) += c * U.row(src);
  };
  auto add_col = [&](Eigen::Index dst, Eigen::Index src, const Int& c) {
    D.col(dst) += c * D.col(src);
    V.col(dst) += c * V.col(src);
  };
  auto negate_row = [&](Eigen::Index r) {
    D.row(r) = -D.row(r);
    U.row(r) = -U.row(r);
  };

  const Eigen::Index t_max = std::min(m, n);
  for (Eigen::Index t = 0; t < t_max; ++t) {
  restart:
    // Pivot: smallest nonzero absolute value in the trailing block,
    // ties by position.
    Eigen::Index pi = -1, pj = -1;
    for (Eigen::Index i = t; i < m; ++i)
      for (Eigen::Index j = t; j < n; ++j) {
        if (D(i, j) == 0) continue;
        if (pi < 0 || abs_int(D(i, j)) < abs_int(D(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q = floor_div(D(i, t), D(t, t));
        add_row(i, t, -q);
        if (D(i, t) != 0) {  // remainder becomes the new, smaller pivot
          swap_rows(t, i);
          dirty = true;
        }
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q = floor_div(D(t, j), D(t, t));
        add_col(j, t, -q);
        if (D(t, j) != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
    }
    if (D(t, t) < 0) negate_row(t);

    // Divisibility: pivot must divide every remaining entry.
    for (Eigen::Index i = t + 1; i < m; ++i)
      for (Eigen::Index j = t + 1; j < n; ++j)
        if (D(i, j) % D(t, t) != 0) {
          add_row(t, i, 1);
          goto restart;
        }
  }
  return {U, D, V};
}

IntMatrix hermite_normal_form(const IntMatrix& M) {
  const Eigen::Index m = M.rows();
  IntMatrix H = M;
  Eigen::Index c = 0;  // next pivot column
  for (Eigen::Index r = 0; r < m && c < H.cols(); ++r) {
    // Reduce columns >= c against each other in row r until one survives.
    while (true) {
      Eigen::Index best = -1;
      int nonzero = 0;
      for (Eigen::Index j = c; j < H.cols(); ++j) {
        if (H(r, j) == 0) continue;
        ++nonzero;
        if (best < 0 || abs_int(H(r, j)) < abs_int(H(r, best))) best = j;
      }
      if (best < 0) goto next_row;  // no pivot in this row
      if (best != c) H.col(c).swap(H.col(best));
      if (nonzero == 1) break;
      for (Eigen::Index j = c + 1; j < H.cols(); ++j) {
        if (H(r, j) == 0) continue;
        Int q = floor_div(H(r, j), H(r, c));
        H.col(j) -= q * H.col(c);
      }
    }
    if (H(r, c) < 0) H.col(c) = -H.col(c);
    for (Eigen::Index j = 0; j < c; ++j) {
      Int q = floor_div(H(r, j), H(r, c));
      if (q != 0) H.col(j) -= q * H.col(c);
    }
    ++c;
  next_row:;
  }
  return H.leftCols(c).eval();
}

std::optional<std::vector<Int>> solve_in_lattice(const IntMatrix& H,
                                                 const IntVector& x) {
  IntVector r = x;
  std::vector<Int> coeffs(static_cast<size_t>(H.cols()), Int(0));
  Eigen::Index row = 0;
  for (Eigen::Index j = 0; j < H.cols(); ++j) {
    while (row < H.rows() && H(row, j) == 0) {
      if (r(row) != 0) return std::nullopt;
      ++row;
    }
    if (row >= H.rows()) return std::nullopt;
    if (r(row) % H(row, j) != 0) return std::nullopt;
    Int q = r(row) / H(row, j);
    r -= q * H.col(j);
    coeffs[static_cast<size_t>(j)] = q;
    ++row;
  }
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (r(i) != 0) return std::nullopt;
  return coeffs;
}

bool lattice_contains(const IntMatrix& H, const IntVector& x) {
  return solve_in_lattice(H, x).has_value();
}

bool lattice_subset(const IntMatrix& sub, const IntMatrix& sup) {
  for (Eigen::Index j = 0; j < sub.cols(); ++j)
    if (!lattice_contains(sup, sub.col(j))) return false;
  return true;
}

IntMatrix kernel_basis(const IntMatrix& M) {
  SnfResult s = smith_normal_form(M);
  Eigen::Index rank = 0;
  const Eigen::Index d = std::min(s.D.rows(), s.D.cols());
  for (Eigen::Index i = 0; i < d; ++i)
    if (s.D(i, i) != 0) ++rank;
  return s.V.rightCols(s.V.cols() - rank).eval();
}

IntMatrix lattice_preimage(const IntMatrix& M, const IntMatrix& G) {
  if (M.rows() != G.rows())
    throw std::invalid_argument("lattice_preimage: row mismatch");
  IntMatrix block(M.rows(), M.cols() + G.cols());
  block.leftCols(M.cols()) = M;
  block.rightCols(G.cols()) = -G;
  IntMatrix K = kernel_basis(block);
  return hermite_normal_form(K.topRows(M.cols()).eval());
}

Int determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("determinant: not square");
  const Eigen::Index n = M.rows();
  if (n == 0) return 1;
  // Fraction-free Gaussian elimination (Bareiss).
  IntMatrix A = M;
  Int prev = 1;
  Int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (A(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      A.row(k).swap(A.row(piv));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& M) {
  const Eigen::Index n = M.rows();
  Int det = determinant(M);
  if (det != 1 && det != -1)
    throw std::invalid_argument("unimodular_inverse: determinant not +-1");
  IntMatrix adj(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc) = M(r, c);
          ++cc;
        }
        ++rr;
      }
      Int cof = determinant(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      adj(j, i) = cof;  // adjugate is the transposed cofactor matrix
    }
  if (det == -1) adj = -adj;
  return adj;
}

}  // namespace specinv
