#pragma once

// Exact linear algebra over a Field: sparse vectors, sparse row-major matrices,
// incremental echelon forms and the rank/nullspace/solve/quotient kernels.
//
// Storage is sparse first. rank() switches to a dense kernel (fraction-free
// Bareiss elimination over Z for the rationals, plain Gauss over GF(p)) once the
// fill ratio exceeds kDenseFillThreshold.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "secohom/error.hpp"
#include "secohom/field.hpp"

namespace secohom {

template <Field K>
using Vec = std::vector<typename K::Element>;

/// Sorted (index, value) pairs with no stored zeros.
template <Field K>
using SparseVec = std::vector<std::pair<std::uint32_t, typename K::Element>>;

inline constexpr double kDenseFillThreshold = 0.25;
inline constexpr std::size_t kDenseEntryLimit = std::size_t{1} << 22;

// ---------------------------------------------------------------------------
// Sparse vector helpers

template <Field K>
SparseVec<K> to_sparse(const K& k, const Vec<K>& v) {
    SparseVec<K> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!k.is_zero(v[i])) out.emplace_back(static_cast<std::uint32_t>(i), v[i]);
    return out;
}

template <Field K>
Vec<K> to_dense(const K& k, const SparseVec<K>& v, std::size_t n) {
    Vec<K> out(n, k.zero());
    for (const auto& [i, x] : v) out.at(i) = x;
    return out;
}

/// y + a*x, merged.
template <Field K>
SparseVec<K> axpy(const K& k, const SparseVec<K>& y, const typename K::Element& a,
                  const SparseVec<K>& x) {
    SparseVec<K> out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].first < y[i].first) {
            auto v = k.mul(a, x[j].second);
            if (!k.is_zero(v)) out.emplace_back(x[j].first, std::move(v));
            ++j;
        } else {
            auto v = y[i].second;
            k.add_mul(v, a, x[j].second);
            if (!k.is_zero(v)) out.emplace_back(y[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

template <Field K>
SparseVec<K> scale(const K& k, const SparseVec<K>& x, const typename K::Element& a) {
    SparseVec<K> out;
    if (k.is_zero(a)) return out;
    out.reserve(x.size());
    for (const auto& [i, v] : x) out.emplace_back(i, k.mul(a, v));
    return out;
}

template <Field K>
typename K::Element sparse_at(const K& k, const SparseVec<K>& v, std::uint32_t index) {
    auto it = std::lower_bound(v.begin(), v.end(), index,
                               [](const auto& e, std::uint32_t i) { return e.first < i; });
    if (it != v.end() && it->first == index) return it->second;
    return k.zero();
}

/// Sorts by index, merges duplicates and drops zeros.
template <Field K>
SparseVec<K> normalize(const K& k, SparseVec<K> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec<K> out;
    out.reserve(v.size());
    for (auto& e : v) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second = k.add(out.back().second, e.second);
        else
            out.push_back(std::move(e));
    }
    std::erase_if(out, [&](const auto& e) { return k.is_zero(e.second); });
    return out;
}

template <Field K>
bool equal(const K& k, const SparseVec<K>& a, const SparseVec<K>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].first != b[i].first || !k.equal(a[i].second, b[i].second)) return false;
    return true;
}

template <Field K>
bool equal(const K& k, const Vec<K>& a, const Vec<K>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!k.equal(a[i], b[i])) return false;
    return true;
}

template <Field K>
bool is_zero(const K& k, const Vec<K>& v) {
    return std::all_of(v.begin(), v.end(), [&](const auto& x) { return k.is_zero(x); });
}

// ---------------------------------------------------------------------------
// Matrix

template <Field K>
class Matrix {
public:
    using Element = typename K::Element;

    Matrix(K field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), cols_(cols), rows_(rows) {}

    static Matrix identity(const K& k, std::size_t n) {
        Matrix m(k, n, n);
        for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(i, k.one());
        return m;
    }

    static Matrix from_dense(const K& k, const std::vector<Vec<K>>& rows, std::size_t cols) {
        Matrix m(k, rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw ParseError("ragged dense matrix");
            m.rows_[r] = to_sparse(k, rows[r]);
        }
        return m;
    }

    const K& field() const { return field_; }
    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    const SparseVec<K>& row(std::size_t r) const { return rows_.at(r); }

    void set_row(std::size_t r, SparseVec<K> entries) {
        entries = normalize(field_, std::move(entries));
        if (!entries.empty() && entries.back().first >= cols_)
            throw ParseError("column index out of range");
        rows_.at(r) = std::move(entries);
    }

    void add_to(std::size_t r, std::size_t c, const Element& value) {
        if (c >= cols_) throw ParseError("column index out of range");
        SparseVec<K> one{{static_cast<std::uint32_t>(c), value}};
        rows_.at(r) = axpy(field_, rows_.at(r), field_.one(), one);
    }

    Element at(std::size_t r, std::size_t c) const {
        return sparse_at(field_, rows_.at(r), static_cast<std::uint32_t>(c));
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& r : rows_) n += r.size();
        return n;
    }

    double fill() const {
        if (rows() == 0 || cols_ == 0) return 0.0;
        return static_cast<double>(nonzeros()) / (static_cast<double>(rows()) * cols_);
    }

    bool is_zero() const {
        return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
    }

    std::vector<Vec<K>> dense() const {
        std::vector<Vec<K>> out;
        out.reserve(rows());
        for (const auto& r : rows_) out.push_back(to_dense(field_, r, cols_));
        return out;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows());
        for (std::size_t r = 0; r < rows(); ++r)
            for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(static_cast<std::uint32_t>(r), v);
        return t;
    }

    Vec<K> apply(const Vec<K>& x) const {
        if (x.size() != cols_) throw PreconditionError("matrix-vector shape mismatch");
        Vec<K> y(rows(), field_.zero());
        for (std::size_t r = 0; r < rows(); ++r)
            for (const auto& [c, v] : rows_[r]) field_.add_mul(y[r], v, x[c]);
        return y;
    }

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows()) throw PreconditionError("matrix product shape mismatch");
        Matrix out(field_, rows(), rhs.cols());
        for (std::size_t r = 0; r < rows(); ++r) {
            SparseVec<K> acc;
            for (const auto& [c, v] : rows_[r]) acc = axpy(field_, acc, v, rhs.rows_[c]);
            out.rows_[r] = std::move(acc);
        }
        return out;
    }

    /// [this | rhs]
    Matrix augment(const Matrix& rhs) const {
        if (rows() != rhs.rows()) throw PreconditionError("augment shape mismatch");
        Matrix out(field_, rows(), cols_ + rhs.cols());
        for (std::size_t r = 0; r < rows(); ++r) {
            out.rows_[r] = rows_[r];
            for (const auto& [c, v] : rhs.rows_[r])
                out.rows_[r].emplace_back(static_cast<std::uint32_t>(c + cols_), v);
        }
        return out;
    }

private:
    K field_;
    std::size_t cols_;
    std::vector<SparseVec<K>> rows_;
};

// ---------------------------------------------------------------------------
// Echelon form

/// Incrementally built row-echelon basis. Rows are normalized to a leading 1.
/// After reduce() the rows are in reduced row-echelon form.
template <Field K>
class Echelon {
public:
    using Element = typename K::Element;

    Echelon(K field, std::size_t ambient)
        : field_(std::move(field)), ambient_(ambient), row_of_pivot_(ambient, -1) {}

    std::size_t ambient() const { return ambient_; }
    std::size_t rank() const { return rows_.size(); }

    /// Eliminates leading entries until the leading column has no pivot.
    SparseVec<K> reduce_leading(SparseVec<K> v) const {
        while (!v.empty()) {
            int r = row_of_pivot_[v.front().first];
            if (r < 0) break;
            v = axpy(field_, v, field_.neg(v.front().second), rows_[r]);
        }
        return v;
    }

    /// Returns true when v was independent of the current rows.
    bool insert(SparseVec<K> v) {
        check_range(v);
        v = reduce_leading(std::move(v));
        if (v.empty()) return false;
        auto lead_inv = field_.inv(v.front().second);
        v = scale(field_, v, lead_inv);
        row_of_pivot_[v.front().first] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        reduced_ = false;
        return true;
    }

    bool contains(const SparseVec<K>& v) const {
        check_range(v);
        return reduce_leading(v).empty();
    }

    /// Back-substitution into reduced row-echelon form.
    void reduce() {
        if (reduced_) return;
        std::vector<std::size_t> order(rows_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return pivot(a) > pivot(b); });
        for (std::size_t idx : order) {
            auto& row = rows_[idx];
            std::vector<std::pair<std::uint32_t, Element>> hits;
            for (std::size_t e = 1; e < row.size(); ++e)
                if (row_of_pivot_[row[e].first] >= 0) hits.push_back(row[e]);
            for (const auto& [c, coef] : hits)
                row = axpy(field_, row, field_.neg(coef), rows_[row_of_pivot_[c]]);
        }
        // Present rows sorted by pivot.
        std::sort(rows_.begin(), rows_.end(),
                  [](const auto& a, const auto& b) { return a.front().first < b.front().first; });
        std::fill(row_of_pivot_.begin(), row_of_pivot_.end(), -1);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            row_of_pivot_[rows_[i].front().first] = static_cast<int>(i);
        reduced_ = true;
    }

    bool is_reduced() const { return reduced_; }

    /// Removes every pivot-column component of v. Requires reduced form.
    SparseVec<K> reduce_full(const SparseVec<K>& v) const {
        if (!reduced_) throw PreconditionError("echelon form not reduced");
        check_range(v);
        SparseVec<K> out = v;
        for (const auto& [c, coef] : v) {
            int r = row_of_pivot_[c];
            if (r >= 0) out = axpy(field_, out, field_.neg(coef), rows_[r]);
        }
        return out;
    }

    const std::vector<SparseVec<K>>& rows() const { return rows_; }
    std::uint32_t pivot(std::size_t i) const { return rows_[i].front().first; }
    int row_of_pivot(std::size_t col) const { return row_of_pivot_.at(col); }
    const K& field() const { return field_; }

private:
    void check_range(const SparseVec<K>& v) const {
        if (!v.empty() && v.back().first >= ambient_)
            throw PreconditionError("vector index " + std::to_string(v.back().first) +
                                    " outside ambient dimension " + std::to_string(ambient_));
    }

    K field_;
    std::size_t ambient_;
    std::vector<SparseVec<K>> rows_;
    std::vector<int> row_of_pivot_;
    bool reduced_ = true;
};

// ---------------------------------------------------------------------------
// Subspace

/// A subspace of K^n held as a reduced row-echelon basis.
template <Field K>
class Subspace {
public:
    Subspace(K field, std::size_t ambient) : echelon_(std::move(field), ambient) {}

    static Subspace full(const K& k, std::size_t n) {
        Subspace s(k, n);
        for (std::size_t i = 0; i < n; ++i) s.echelon_.insert({{static_cast<std::uint32_t>(i), k.one()}});
        s.echelon_.reduce();
        return s;
    }

    template <class Range>
    static Subspace span(const K& k, std::size_t n, const Range& vectors) {
        Subspace s(k, n);
        for (const auto& v : vectors) s.echelon_.insert(v);
        s.echelon_.reduce();
        return s;
    }

    static Subspace span_dense(const K& k, std::size_t n, const std::vector<Vec<K>>& vectors) {
        Subspace s(k, n);
        for (const auto& v : vectors) {
            if (v.size() != n) throw PreconditionError("vector length does not match ambient dimension");
            s.echelon_.insert(to_sparse(k, v));
        }
        s.echelon_.reduce();
        return s;
    }

    const K& field() const { return echelon_.field(); }
    std::size_t ambient() const { return echelon_.ambient(); }
    std::size_t dim() const { return echelon_.rank(); }
    const std::vector<SparseVec<K>>& basis() const { return echelon_.rows(); }

    std::vector<Vec<K>> dense_basis() const {
        std::vector<Vec<K>> out;
        for (const auto& r : basis()) out.push_back(to_dense(field(), r, ambient()));
        return out;
    }

    bool contains(const SparseVec<K>& v) const { return echelon_.contains(v); }
    bool contains(const Vec<K>& v) const { return contains(to_sparse(field(), v)); }

    /// Canonical representative of v modulo this subspace.
    SparseVec<K> reduce(const SparseVec<K>& v) const { return echelon_.reduce_full(v); }

    bool contains_subspace(const Subspace& other) const {
        if (other.ambient() != ambient()) return false;
        return std::all_of(other.basis().begin(), other.basis().end(),
                           [&](const auto& v) { return contains(v); });
    }

    bool operator==(const Subspace& other) const {
        if (ambient() != other.ambient() || dim() != other.dim()) return false;
        for (std::size_t i = 0; i < dim(); ++i)
            if (!equal(field(), basis()[i], other.basis()[i])) return false;
        return true;
    }

    /// Sum of two subspaces.
    Subspace operator+(const Subspace& other) const {
        if (other.ambient() != ambient()) throw PreconditionError("ambient mismatch");
        Subspace s = *this;
        for (const auto& v : other.basis()) s.echelon_.insert(v);
        s.echelon_.reduce();
        return s;
    }

    const Echelon<K>& echelon() const { return echelon_; }

private:
    Echelon<K> echelon_;
};

// ---------------------------------------------------------------------------
// Kernels

namespace detail {

/// Fraction-free (Bareiss) rank of an integer matrix; modified in place.
inline std::size_t bareiss_rank(std::vector<std::vector<mpz_class>>& a, std::size_t cols) {
    std::size_t rows = a.size();
    std::size_t rank = 0;
    mpz_class prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c) {
                mpz_class v = a[rank][col] * a[r][c] - a[r][col] * a[rank][c];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[r][c] = std::move(v);
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

inline std::size_t dense_rank(const Matrix<RationalField>& m) {
    std::vector<std::vector<mpz_class>> a;
    a.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class lcm = 1;
        for (const auto& [c, v] : m.row(r)) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
        std::vector<mpz_class> row(m.cols(), 0);
        for (const auto& [c, v] : m.row(r)) row[c] = v.get_num() * (lcm / v.get_den());
        a.push_back(std::move(row));
    }
    return bareiss_rank(a, m.cols());
}

template <Field K>
std::size_t dense_rank(const Matrix<K>& m) {
    const K& k = m.field();
    auto a = m.dense();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < a.size(); ++col) {
        std::size_t piv = rank;
        while (piv < a.size() && k.is_zero(a[piv][col])) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        auto inv = k.inv(a[rank][col]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (k.is_zero(a[r][col])) continue;
            auto f = k.mul(a[r][col], inv);
            for (std::size_t c = col; c < m.cols(); ++c) a[r][c] = k.sub(a[r][c], k.mul(f, a[rank][c]));
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

template <Field K>
Echelon<K> row_echelon(const Matrix<K>& m) {
    Echelon<K> e(m.field(), m.cols());
    for (std::size_t r = 0; r < m.rows() && e.rank() < m.cols(); ++r) e.insert(m.row(r));
    return e;
}

/// Sparse elimination rank, whatever the fill.
template <Field K>
std::size_t sparse_rank(const Matrix<K>& m) {
    return row_echelon(m).rank();
}

/// Exact rank. Dense kernel above the fill threshold, sparse elimination otherwise.
template <Field K>
std::size_t rank(const Matrix<K>& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    bool dense = m.fill() > kDenseFillThreshold && m.rows() * m.cols() <= kDenseEntryLimit;
    return dense ? detail::dense_rank(m) : sparse_rank(m);
}

/// Basis of {v : m v = 0}.
template <Field K>
Subspace<K> nullspace(const Matrix<K>& m) {
    const K& k = m.field();
    Echelon<K> e = row_echelon(m);
    e.reduce();
    std::vector<SparseVec<K>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (e.row_of_pivot(free) >= 0) continue;
        SparseVec<K> v{{static_cast<std::uint32_t>(free), k.one()}};
        for (std::size_t i = 0; i < e.rank(); ++i) {
            auto coef = sparse_at(k, e.rows()[i], static_cast<std::uint32_t>(free));
            if (!k.is_zero(coef)) v.emplace_back(e.pivot(i), k.neg(coef));
        }
        basis.push_back(normalize(k, std::move(v)));
    }
    return Subspace<K>::span(k, m.cols(), basis);
}

/// Span of the columns of m.
template <Field K>
Subspace<K> column_space(const Matrix<K>& m) {
    Matrix<K> t = m.transpose();
    std::vector<SparseVec<K>> cols;
    for (std::size_t c = 0; c < t.rows(); ++c) cols.push_back(t.row(c));
    return Subspace<K>::span(m.field(), m.rows(), cols);
}

/// Some x with m x = b, or nullopt when b is outside the column space.
template <Field K>
std::optional<Vec<K>> solve(const Matrix<K>& m, const Vec<K>& b) {
    const K& k = m.field();
    if (b.size() != m.rows()) throw PreconditionError("right-hand side length does not match rows");
    const auto n = m.cols();
    Echelon<K> e(k, n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseVec<K> row = m.row(r);
        if (!k.is_zero(b[r])) row.emplace_back(static_cast<std::uint32_t>(n), b[r]);
        e.insert(std::move(row));
    }
    if (e.row_of_pivot(n) >= 0) return std::nullopt;
    e.reduce();
    Vec<K> x(n, k.zero());
    for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivot(i)] = sparse_at(k, e.rows()[i], static_cast<std::uint32_t>(n));
    return x;
}

/// dim(total) - dim(sub); throws when sub is not contained in total.
template <Field K>
std::size_t quotient_dim(const Subspace<K>& total, const Subspace<K>& sub) {
    if (sub.ambient() != total.ambient()) throw ValidationError("not a subspace: ambient dimensions differ");
    for (std::size_t i = 0; i < sub.dim(); ++i)
        if (!total.contains(sub.basis()[i]))
            throw ValidationError("not a subspace: basis vector " + std::to_string(i) + " lies outside");
    return total.dim() - sub.dim();
}

}  // namespace secohom
