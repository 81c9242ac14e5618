#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "qpa/scalars.hpp"

namespace qpa {

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;
using Eigen::Index;

template <class K>
bool is_zero_mat(const Mat<K>& m) {
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!(m(i, j) == K(0))) return false;
    return true;
}

template <class K>
bool mat_eq(const Mat<K>& a, const Mat<K>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}

template <class K>
Mat<K> hstack(const Mat<K>& a, const Mat<K>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Mat<K> r(a.rows(), a.cols() + b.cols());
    r.block(0, 0, a.rows(), a.cols()) = a;
    r.block(0, a.cols(), b.rows(), b.cols()) = b;
    return r;
}

template <class K>
Mat<K> vstack(const Mat<K>& a, const Mat<K>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: col mismatch");
    Mat<K> r(a.rows() + b.rows(), a.cols());
    r.block(0, 0, a.rows(), a.cols()) = a;
    r.block(a.rows(), 0, b.rows(), b.cols()) = b;
    return r;
}

/// Kronecker product, used to vectorize matrix equations A·X·B = C.
template <class K>
Mat<K> kron(const Mat<K>& a, const Mat<K>& b) {
    Mat<K> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return r;
}

/// Column-major vectorization (matches Eigen storage).
template <class K>
Vec<K> vectorize(const Mat<K>& m) {
    Vec<K> v(m.size());
    Index k = 0;
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i) v(k++) = m(i, j);
    return v;
}

template <class K>
Mat<K> unvectorize(const Vec<K>& v, Index rows, Index cols) {
    Mat<K> m(rows, cols);
    Index k = 0;
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = v(k++);
    return m;
}

template <class K>
struct RrefResult {
    Mat<K> reduced;
    Index rank = 0;
    std::vector<Index> pivot_cols;
};

/// Reduced row echelon form with exact arithmetic. Pivots are chosen
/// deterministically (first nonzero entry, columns scanned left to right),
/// so the output is canonical for the row space.
template <class K>
RrefResult<K> rref(Mat<K> m) {
    RrefResult<K> out;
    Index row = 0;
    for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Index piv = -1;
        for (Index i = row; i < m.rows(); ++i) {
            if (!(m(i, col) == K(0))) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != row) m.row(piv).swap(m.row(row));
        K inv = K(1) / m(row, col);
        for (Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (Index i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            K f = m(i, col);
            if (f == K(0)) continue;
            for (Index j = col; j < m.cols(); ++j)
                m(i, j) = m(i, j) - f * m(row, j);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.rank = row;
    out.reduced = std::move(m);
    return out;
}

template <class K>
Index rank(const Mat<K>& m) {
    return rref(m).rank;
}

namespace detail {
template <class K>
Mat<K> kernel_from_rref(const Mat<K>& r, const std::vector<Index>& pivots,
                        Index ncols) {
    std::vector<bool> is_pivot(ncols, false);
    for (Index c : pivots) is_pivot[c] = true;
    Index nullity = ncols - static_cast<Index>(pivots.size());
    Mat<K> ker = Mat<K>::Zero(ncols, nullity);
    Index k = 0;
    for (Index j = 0; j < ncols; ++j) {
        if (is_pivot[j]) continue;
        ker(j, k) = K(1);
        for (Index t = 0; t < static_cast<Index>(pivots.size()); ++t)
            ker(pivots[t], k) = -r(t, j);
        ++k;
    }
    return ker;
}
}  // namespace detail

/// Columns form the canonical basis of ker(m). Shape cols(m) × nullity.
template <class K>
Mat<K> kernel_basis(const Mat<K>& m) {
    auto r = rref(m);
    return detail::kernel_from_rref(r.reduced, r.pivot_cols, m.cols());
}

template <class K>
struct SolveResult {
    bool consistent = false;
    Mat<K> particular;  // cols(a) × cols(b); valid when consistent
    Mat<K> kernel;      // canonical kernel basis of a
};

/// Exact solution of a·X = b (b may have several columns).
template <class K>
SolveResult<K> solve(const Mat<K>& a, const Mat<K>& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve: dimension mismatch");
    auto r = rref(hstack(a, b));
    SolveResult<K> out;
    out.consistent = true;
    for (Index c : r.pivot_cols)
        if (c >= a.cols()) out.consistent = false;
    std::vector<Index> pivots;
    for (Index c : r.pivot_cols)
        if (c < a.cols()) pivots.push_back(c);
    out.kernel = detail::kernel_from_rref(r.reduced, pivots, a.cols());
    if (out.consistent) {
        out.particular = Mat<K>::Zero(a.cols(), b.cols());
        for (Index t = 0; t < static_cast<Index>(pivots.size()); ++t)
            out.particular.row(pivots[t]) =
                r.reduced.block(t, a.cols(), 1, b.cols());
    }
    return out;
}

/// Particular solution or nullopt when the system is inconsistent.
template <class K>
std::optional<Mat<K>> try_solve(const Mat<K>& a, const Mat<K>& b) {
    auto s = solve(a, b);
    if (!s.consistent) return std::nullopt;
    return s.particular;
}

template <class K>
std::optional<Mat<K>> try_inverse(const Mat<K>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    Index n = m.rows();
    auto r = rref(hstack<K>(m, Mat<K>::Identity(n, n)));
    if (r.rank < n) return std::nullopt;
    for (Index c : r.pivot_cols)
        if (c >= n) return std::nullopt;
    return Mat<K>(r.reduced.block(0, n, n, n));
}

template <class K>
bool is_invertible(const Mat<K>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

/// Canonical basis of the column space: nonzero rows of rref(mᵀ),
/// transposed back to columns.
template <class K>
Mat<K> column_space_basis(const Mat<K>& m) {
    auto r = rref(Mat<K>(m.transpose()));
    Mat<K> b(m.rows(), r.rank);
    for (Index i = 0; i < r.rank; ++i) b.col(i) = r.reduced.row(i).transpose();
    return b;
}

/// Row-reduced membership tester for a column span; one rref up front,
/// then each test is a cheap forward reduction.
template <class K>
struct SpanChecker {
    Mat<K> rows;  // nonzero rows of rref(basisᵀ)
    std::vector<Index> pivots;

    Index dim() const { return rows.rows(); }

    bool contains(Vec<K> v) const {
        for (Index r = 0; r < rows.rows(); ++r) {
            K c = v(pivots[r]);
            if (c == K(0)) continue;
            for (Index j = 0; j < v.size(); ++j) v(j) = v(j) - c * rows(r, j);
        }
        for (Index j = 0; j < v.size(); ++j)
            if (!(v(j) == K(0))) return false;
        return true;
    }

    /// Residue of v modulo the span (zero iff contained).
    Vec<K> reduce(Vec<K> v) const {
        for (Index r = 0; r < rows.rows(); ++r) {
            K c = v(pivots[r]);
            if (c == K(0)) continue;
            for (Index j = 0; j < v.size(); ++j) v(j) = v(j) - c * rows(r, j);
        }
        return v;
    }
};

template <class K>
SpanChecker<K> span_checker(const Mat<K>& basis) {
    auto r = rref(Mat<K>(basis.transpose()));
    SpanChecker<K> out;
    out.rows = r.reduced.block(0, 0, r.rank, r.reduced.cols());
    out.pivots = r.pivot_cols;
    return out;
}

/// Coordinates of a subquotient V/W of an ambient space, where V and W are
/// given by spanning columns and W ⊆ span(V). `lift` selects representative
/// vectors; `class_of` maps a vector of V to its class.
template <class K>
struct Subquotient {
    Mat<K> lift;   // ambient × dim(V/W)
    Mat<K> frame;  // ambient × (rank W + dim V/W), full column rank
    Index sub_rank = 0;

    Index dim() const { return lift.cols(); }

    Mat<K> class_of(const Mat<K>& vectors) const {
        if (frame.cols() == 0)
            return Mat<K>::Zero(0, vectors.cols());
        auto s = try_solve(frame, vectors);
        if (!s) throw std::logic_error("subquotient: vector not in subspace");
        return s->block(sub_rank, 0, dim(), vectors.cols());
    }
};

template <class K>
Subquotient<K> subquotient(const Mat<K>& v_span, const Mat<K>& w_span) {
    Mat<K> vb = column_space_basis(v_span);
    Mat<K> wb = column_space_basis(w_span);
    auto coords = try_solve(vb, wb);
    if (!coords) throw std::logic_error("subquotient: W not inside V");
    Index k = vb.cols();
    Mat<K> g = hstack<K>(*coords, Mat<K>::Identity(k, k));
    auto r = rref(g);
    Subquotient<K> out;
    out.sub_rank = wb.cols();
    std::vector<Index> chosen;
    for (Index c : r.pivot_cols)
        if (c >= coords->cols()) chosen.push_back(c - coords->cols());
    out.lift = Mat<K>(vb.rows(), static_cast<Index>(chosen.size()));
    for (Index t = 0; t < static_cast<Index>(chosen.size()); ++t)
        out.lift.col(t) = vb.col(chosen[t]);
    out.frame = hstack(wb, out.lift);
    return out;
}

}  // namespace qpa
