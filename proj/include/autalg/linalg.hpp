#pragma once

// Exact dense linear algebra over a FieldDescriptor: reduced row-echelon
// forms, canonical subspaces, subspace sums / intersections, and iterated
// images of a subspace under a linear operator (orbit profiles).

#include <array>
#include <cassert>
#include <cstddef>
#include <set>
#include <vector>

#include "autalg/field.hpp"

namespace autalg {

struct Matrix {
    FieldDescriptor field;
    std::size_t rows = 0, cols = 0;
    std::vector<FieldElement> entries; // row-major

    Matrix() = default;
    Matrix(const FieldDescriptor& fd, std::size_t r, std::size_t c)
        : field(fd), rows(r), cols(c), entries(r * c, FieldElement::zero(fd)) {}

    static Matrix identity(const FieldDescriptor& fd, std::size_t n) {
        Matrix m(fd, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(fd);
        return m;
    }

    /// Build from explicit rows (all rows must share one length).
    static Matrix from_rows(const FieldDescriptor& fd, const std::vector<std::vector<FieldElement>>& rws) {
        std::size_t c = rws.empty() ? 0 : rws.front().size();
        Matrix m(fd, rws.size(), c);
        for (std::size_t i = 0; i < rws.size(); ++i) {
            if (rws[i].size() != c) throw field_error("ragged row list");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rws[i][j];
        }
        return m;
    }

    FieldElement& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const FieldElement& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    std::vector<FieldElement> row(std::size_t i) const {
        return {entries.begin() + static_cast<std::ptrdiff_t>(i * cols),
                entries.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols)};
    }

    Matrix operator*(const Matrix& o) const {
        if (cols != o.rows || !(field == o.field)) throw field_error("matrix product shape mismatch");
        Matrix r(field, rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                const FieldElement& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    /// Matrix-vector product M·v with v a column vector.
    std::vector<FieldElement> apply_vector(const std::vector<FieldElement>& v) const {
        if (v.size() != cols) throw field_error("matrix-vector shape mismatch");
        std::vector<FieldElement> r(rows, FieldElement::zero(field));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    Matrix transpose() const {
        Matrix t(field, cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool operator==(const Matrix& o) const {
        if (!(field == o.field) || rows != o.rows || cols != o.cols) return false;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i] != o.entries[i]) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }
};

/// Gauss-Jordan elimination in place; afterwards the matrix is in reduced
/// row-echelon form with zero rows compacted to the bottom.  Returns rank.
inline std::size_t rref_in_place(Matrix& m) {
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m.cols && pivot_row < m.rows; ++col) {
        std::size_t sel = pivot_row;
        while (sel < m.rows && m.at(sel, col).is_zero()) ++sel;
        if (sel == m.rows) continue;
        if (sel != pivot_row)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(pivot_row, j));
        FieldElement inv = m.at(pivot_row, col).inverse();
        for (std::size_t j = col; j < m.cols; ++j) m.at(pivot_row, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == pivot_row || m.at(i, col).is_zero()) continue;
            FieldElement f = m.at(i, col);
            for (std::size_t j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(pivot_row, j);
        }
        ++pivot_row;
    }
    return pivot_row;
}

inline std::size_t rank(Matrix m) { return rref_in_place(m); }

/// A linear subspace of K^ambient in canonical form: the basis matrix is in
/// reduced row-echelon form and has exactly dim rows, so equality of
/// subspaces is structural equality of bases.
struct Subspace {
    FieldDescriptor field;
    std::size_t ambient = 0;
    Matrix basis; // RREF, one row per basis vector

    Subspace() = default;

    static Subspace zero_subspace(const FieldDescriptor& fd, std::size_t ambient) {
        Subspace s;
        s.field = fd;
        s.ambient = ambient;
        s.basis = Matrix(fd, 0, ambient);
        return s;
    }

    static Subspace full(const FieldDescriptor& fd, std::size_t ambient) {
        Subspace s = zero_subspace(fd, ambient);
        s.basis = Matrix::identity(fd, ambient);
        return s;
    }

    /// Row space of an arbitrary generating matrix.
    static Subspace span(Matrix generators) {
        Subspace s;
        s.field = generators.field;
        s.ambient = generators.cols;
        std::size_t rk = rref_in_place(generators);
        s.basis = Matrix(generators.field, rk, generators.cols);
        for (std::size_t i = 0; i < rk; ++i)
            for (std::size_t j = 0; j < generators.cols; ++j) s.basis.at(i, j) = generators.at(i, j);
        return s;
    }

    static Subspace span_rows(const FieldDescriptor& fd, const std::vector<std::vector<FieldElement>>& rows,
                              std::size_t ambient) {
        if (rows.empty()) return zero_subspace(fd, ambient);
        return span(Matrix::from_rows(fd, rows));
    }

    std::size_t dim() const { return basis.rows; }

    bool contains(std::vector<FieldElement> v) const {
        if (v.size() != ambient) throw field_error("vector/ambient mismatch");
        // Reduce v by the RREF basis: subtract v[pivot]·row for each row.
        for (std::size_t i = 0; i < basis.rows; ++i) {
            std::size_t piv = 0;
            while (piv < ambient && basis.at(i, piv).is_zero()) ++piv;
            if (piv == ambient || v[piv].is_zero()) continue;
            FieldElement f = v[piv];
            for (std::size_t j = piv; j < ambient; ++j) v[j] -= f * basis.at(i, j);
        }
        for (const auto& e : v)
            if (!e.is_zero()) return false;
        return true;
    }

    bool operator==(const Subspace& o) const {
        return field == o.field && ambient == o.ambient && basis == o.basis;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
};

inline void check_same_ambient(const Subspace& a, const Subspace& b) {
    if (!(a.field == b.field) || a.ambient != b.ambient)
        throw field_error("subspace ambient/descriptor mismatch");
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    check_same_ambient(a, b);
    Matrix stacked(a.field, a.dim() + b.dim(), a.ambient);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.ambient; ++j) stacked.at(i, j) = a.basis.at(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < a.ambient; ++j) stacked.at(a.dim() + i, j) = b.basis.at(i, j);
    return Subspace::span(std::move(stacked));
}

/// Canonical basis of the null space {x : m·x = 0} ⊆ K^cols, returned as
/// rows of an RREF matrix.
inline Subspace kernel(const Matrix& m) {
    Matrix red = m;
    std::size_t rk = rref_in_place(red);
    std::vector<std::size_t> pivot_col(rk);
    std::vector<bool> is_pivot(red.cols, false);
    for (std::size_t i = 0; i < rk; ++i) {
        std::size_t p = 0;
        while (red.at(i, p).is_zero()) ++p;
        pivot_col[i] = p;
        is_pivot[p] = true;
    }
    std::vector<std::vector<FieldElement>> rows;
    for (std::size_t f = 0; f < red.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<FieldElement> v(red.cols, FieldElement::zero(m.field));
        v[f] = FieldElement::one(m.field);
        for (std::size_t i = 0; i < rk; ++i) v[pivot_col[i]] = -red.at(i, f);
        rows.push_back(std::move(v));
    }
    return Subspace::span_rows(m.field, rows, red.cols);
}

/// Explicit basis of a ∩ b via the kernel of [Aᵀ | −Bᵀ]: a kernel vector
/// (x; y) satisfies Aᵀx = Bᵀy, and that common value lies in both spaces.
inline Subspace intersection(const Subspace& a, const Subspace& b) {
    check_same_ambient(a, b);
    std::size_t da = a.dim(), db = b.dim();
    Matrix sys(a.field, a.ambient, da + db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < a.ambient; ++j) sys.at(j, i) = a.basis.at(i, j);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < a.ambient; ++j) sys.at(j, da + i) = -b.basis.at(i, j);
    Subspace ker = kernel(sys);
    std::vector<std::vector<FieldElement>> rows;
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        std::vector<FieldElement> v(a.ambient, FieldElement::zero(a.field));
        for (std::size_t i = 0; i < da; ++i) {
            const FieldElement& x = ker.basis.at(k, i);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < a.ambient; ++j) v[j] += x * a.basis.at(i, j);
        }
        rows.push_back(std::move(v));
    }
    return Subspace::span_rows(a.field, rows, a.ambient);
}

/// dim(a ∩ b) by the rank formula dim a + dim b − dim(a+b).  In debug
/// builds the explicit kernel-method basis is computed as well and the two
/// answers are asserted equal.
inline std::size_t subspace_intersection_dim(const Subspace& a, const Subspace& b) {
    check_same_ambient(a, b);
    std::size_t d = a.dim() + b.dim() - subspace_sum(a, b).dim();
#ifndef NDEBUG
    assert(intersection(a, b).dim() == d);
#endif
    return d;
}

/// Image {σv : v ∈ s} as a canonical subspace.
inline Subspace apply(const Matrix& sigma, const Subspace& s) {
    if (sigma.cols != s.ambient || sigma.rows != sigma.cols || !(sigma.field == s.field))
        throw field_error("operator/subspace shape mismatch");
    std::vector<std::vector<FieldElement>> rows;
    for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(sigma.apply_vector(s.basis.row(i)));
    return Subspace::span_rows(s.field, rows, s.ambient);
}

/// The data (V, L, R, σ) defining a quadratic algebra: ambient dimension m,
/// subspaces L and R of K^m, and a linear operator σ on K^m.
struct VlrsData {
    FieldDescriptor field;
    std::size_t m = 0;
    Subspace L, R;
    Matrix sigma;

    std::size_t l() const { return L.dim(); }
    std::size_t r() const { return R.dim(); }

    void validate() const {
        if (L.ambient != m || R.ambient != m) throw field_error("L/R ambient must equal m");
        if (!(L.field == field) || !(R.field == field) || !(sigma.field == field))
            throw field_error("VLRS field descriptors disagree");
        if (sigma.rows != m || sigma.cols != m) throw field_error("sigma must be m x m");
    }

    bool sigma_invertible() const { return rank(sigma) == m; }
};

/// Row n holds (dim σⁿL, dim(R + σⁿL), cₙ = dim(R ∩ σⁿL)) for n = 0..n_max.
struct IntersectionProfile {
    std::vector<std::array<std::size_t, 3>> rows;

    std::size_t dim_image(std::size_t n) const { return rows[n][0]; }
    std::size_t dim_sum(std::size_t n) const { return rows[n][1]; }
    std::size_t c(std::size_t n) const { return rows[n][2]; }
};

/// Walk the orbit σⁿL incrementally (one image per step, never re-powering
/// σ) and record the dimension triple at each n.
inline IntersectionProfile orbit_profile(const VlrsData& data, std::size_t n_max) {
    data.validate();
    IntersectionProfile prof;
    prof.rows.reserve(n_max + 1);
    Subspace image = data.L;
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (n > 0) image = apply(data.sigma, image);
        std::size_t ds = subspace_sum(data.R, image).dim();
        std::size_t cn = data.R.dim() + image.dim() - ds;
#ifndef NDEBUG
        assert(intersection(data.R, image).dim() == cn);
#endif
        prof.rows.push_back({image.dim(), ds, cn});
    }
    return prof;
}

/// Membership set {n ∈ [0, n_max] : dim(R + span{φⁿα₁, …, φⁿα_t}) ≤ h} of
/// the orbit of a tuple of points inside the "small combined span" locus.
inline std::set<std::size_t> orbit_subvariety_set(const Matrix& phi,
                                                  const std::vector<std::vector<FieldElement>>& alpha,
                                                  const Subspace& R, std::size_t h, std::size_t n_max) {
    if (phi.rows != phi.cols || phi.cols != R.ambient || !(phi.field == R.field))
        throw field_error("orbit_subvariety_set shape mismatch");
    for (const auto& v : alpha)
        if (v.size() != R.ambient) throw field_error("orbit point dimension mismatch");
    std::set<std::size_t> hits;
    std::vector<std::vector<FieldElement>> points = alpha;
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (n > 0)
            for (auto& v : points) v = phi.apply_vector(v);
        Subspace spanned = subspace_sum(R, Subspace::span_rows(R.field, points, R.ambient));
        if (spanned.dim() <= h) hits.insert(n);
    }
    return hits;
}

} // namespace autalg
