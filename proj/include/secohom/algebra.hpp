#pragma once

// Finite-dimensional algebras by structure constants, triples (A, B, eps),
// bimodules, and the derivation spaces that realise H^0, H^1 and ker Phi_2 in
// closed form.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "secohom/error.hpp"
#include "secohom/field.hpp"
#include "secohom/linalg.hpp"

namespace secohom {

/// A unital associative algebra given by its multiplication table.
template <Field K>
class FiniteAlgebra {
public:
    using Element = typename K::Element;

    const K& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const SparseVec<K>& unit() const { return unit_; }

    /// e_i * e_j
    const SparseVec<K>& basis_product(std::size_t i, std::size_t j) const { return mult_[i * dim_ + j]; }

    SparseVec<K> basis_vector(std::size_t i) const { return {{static_cast<std::uint32_t>(i), field_.one()}}; }

    SparseVec<K> multiply(const SparseVec<K>& x, const SparseVec<K>& y) const {
        SparseVec<K> out;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) out = axpy(field_, out, field_.mul(a, b), basis_product(i, j));
        return out;
    }

    /// Multiplication where one factor is a basis element.
    SparseVec<K> multiply_basis_left(std::size_t i, const SparseVec<K>& y) const {
        SparseVec<K> out;
        for (const auto& [j, b] : y) out = axpy(field_, out, b, basis_product(i, j));
        return out;
    }
    SparseVec<K> multiply_basis_right(const SparseVec<K>& x, std::size_t j) const {
        SparseVec<K> out;
        for (const auto& [i, a] : x) out = axpy(field_, out, a, basis_product(i, j));
        return out;
    }

    Vec<K> multiply(const Vec<K>& x, const Vec<K>& y) const {
        return to_dense(field_, multiply(to_sparse(field_, x), to_sparse(field_, y)), dim_);
    }

    bool is_commutative() const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j)
                if (!equal(field_, basis_product(i, j), basis_product(j, i))) return false;
        return true;
    }

    /// Multiplication table as dense coordinate vectors, row-major in (i, j).
    std::vector<Vec<K>> table() const {
        std::vector<Vec<K>> out;
        for (const auto& v : mult_) out.push_back(to_dense(field_, v, dim_));
        return out;
    }

    template <Field F>
    friend FiniteAlgebra<F> validate_algebra(const F&, std::size_t, std::vector<std::string>,
                                             const std::vector<Vec<F>>&, const Vec<F>&);

private:
    explicit FiniteAlgebra(K field) : field_(std::move(field)) {}

    K field_;
    std::size_t dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<SparseVec<K>> mult_;
    SparseVec<K> unit_;
};

/// Checks associativity and the unit laws; `table[i * dim + j]` holds e_i e_j.
template <Field K>
FiniteAlgebra<K> validate_algebra(const K& k, std::size_t dim, std::vector<std::string> labels,
                                  const std::vector<Vec<K>>& table, const Vec<K>& unit) {
    if (dim == 0) throw ValidationError("algebra of dimension 0 has no unit");
    if (table.size() != dim * dim)
        throw ParseError("multiplication table needs " + std::to_string(dim * dim) + " entries, got " +
                         std::to_string(table.size()));
    if (unit.size() != dim) throw ParseError("unit vector has wrong length");
    if (labels.empty())
        for (std::size_t i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
    if (labels.size() != dim) throw ParseError("label count does not match dimension");

    FiniteAlgebra<K> a(k);
    a.dim_ = dim;
    a.labels_ = std::move(labels);
    for (std::size_t t = 0; t < table.size(); ++t) {
        if (table[t].size() != dim)
            throw ParseError("product e" + std::to_string(t / dim) + "*e" + std::to_string(t % dim) +
                             " has wrong length");
        a.mult_.push_back(to_sparse(k, table[t]));
    }
    a.unit_ = to_sparse(k, unit);

    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t l = 0; l < dim; ++l) {
                auto left = a.multiply_basis_right(a.basis_product(i, j), l);
                auto right = a.multiply_basis_left(i, a.basis_product(j, l));
                if (!equal(k, left, right))
                    throw ValidationError("non-associative at (" + std::to_string(i) + "," + std::to_string(j) +
                                          "," + std::to_string(l) + ")");
            }
    for (std::size_t i = 0; i < dim; ++i) {
        auto e = a.basis_vector(i);
        if (!equal(k, a.multiply(a.unit_, e), e) || !equal(k, a.multiply(e, a.unit_), e))
            throw ValidationError("unit law fails at " + std::to_string(i));
    }
    return a;
}

/// A linear map between coordinate spaces; the matrix is target x source.
template <Field K>
struct LinearMap {
    Matrix<K> matrix;

    std::size_t source() const { return matrix.cols(); }
    std::size_t target() const { return matrix.rows(); }
    Vec<K> apply(const Vec<K>& v) const { return matrix.apply(v); }

    /// Column-major flattening: index i * target + r holds the r-th coordinate of the image of e_i.
    Vec<K> flatten() const {
        const K& k = matrix.field();
        Vec<K> out(source() * target(), k.zero());
        for (std::size_t r = 0; r < target(); ++r)
            for (const auto& [c, v] : matrix.row(r)) out[c * target() + r] = v;
        return out;
    }

    static LinearMap unflatten(const K& k, const Vec<K>& flat, std::size_t source, std::size_t target) {
        if (flat.size() != source * target) throw PreconditionError("flattened map has wrong length");
        Matrix<K> m(k, target, source);
        for (std::size_t r = 0; r < target; ++r) {
            SparseVec<K> row;
            for (std::size_t c = 0; c < source; ++c)
                if (!k.is_zero(flat[c * target + r])) row.emplace_back(static_cast<std::uint32_t>(c), flat[c * target + r]);
            m.set_row(r, std::move(row));
        }
        return LinearMap{std::move(m)};
    }
};

/// (A, B, eps) with B commutative and eps(B) central in A.
template <Field K>
class Triple {
public:
    const K& field() const { return a_.field(); }
    const FiniteAlgebra<K>& A() const { return a_; }
    const FiniteAlgebra<K>& B() const { return b_; }

    /// dim A x dim B; column j holds eps(b_j).
    const Matrix<K>& eps_matrix() const { return eps_; }

    /// eps(b_j) as an A-vector.
    const SparseVec<K>& eps_basis(std::size_t j) const { return eps_cols_[j]; }

    SparseVec<K> eps(const SparseVec<K>& b) const {
        SparseVec<K> out;
        for (const auto& [j, c] : b) out = axpy(field(), out, c, eps_cols_[j]);
        return out;
    }

    template <Field F>
    friend Triple<F> validate_triple(FiniteAlgebra<F>, FiniteAlgebra<F>, Matrix<F>);

private:
    Triple(FiniteAlgebra<K> a, FiniteAlgebra<K> b, Matrix<K> eps)
        : a_(std::move(a)), b_(std::move(b)), eps_(std::move(eps)) {
        Matrix<K> cols = eps_.transpose();
        for (std::size_t j = 0; j < b_.dim(); ++j) eps_cols_.push_back(cols.row(j));
    }

    FiniteAlgebra<K> a_;
    FiniteAlgebra<K> b_;
    Matrix<K> eps_;
    std::vector<SparseVec<K>> eps_cols_;
};

template <Field K>
Triple<K> validate_triple(FiniteAlgebra<K> A, FiniteAlgebra<K> B, Matrix<K> eps) {
    const K& k = A.field();
    if (eps.rows() != A.dim() || eps.cols() != B.dim())
        throw ParseError("eps must be " + std::to_string(A.dim()) + "x" + std::to_string(B.dim()));
    for (std::size_t i = 0; i < B.dim(); ++i)
        for (std::size_t j = i + 1; j < B.dim(); ++j)
            if (!equal(k, B.basis_product(i, j), B.basis_product(j, i)))
                throw ValidationError("B not commutative at (" + std::to_string(i) + "," + std::to_string(j) + ")");

    Triple<K> t(std::move(A), std::move(B), std::move(eps));

    const auto& a = t.a_;
    const auto& b = t.b_;
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            if (!equal(k, t.eps(b.basis_product(i, j)), a.multiply(t.eps_cols_[i], t.eps_cols_[j])))
                throw ValidationError("ε not multiplicative at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    if (!equal(k, t.eps(b.unit()), a.unit())) throw ValidationError("ε not unital");
    for (std::size_t j = 0; j < b.dim(); ++j)
        for (std::size_t i = 0; i < a.dim(); ++i) {
            auto e = a.basis_vector(i);
            if (!equal(k, a.multiply(t.eps_cols_[j], e), a.multiply(e, t.eps_cols_[j])))
                throw ValidationError("image not central: ε(b" + std::to_string(j) + ") and a" +
                                      std::to_string(i) + " do not commute");
        }
    return t;
}

/// An A-bimodule by left/right action matrices, one per A-basis element.
template <Field K>
class Bimodule {
public:
    const K& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    std::size_t algebra_dim() const { return left_.size(); }
    const Matrix<K>& left(std::size_t i) const { return left_[i]; }
    const Matrix<K>& right(std::size_t i) const { return right_[i]; }

    /// x . v for an A-vector x.
    Vec<K> act_left(const SparseVec<K>& x, const Vec<K>& v) const { return act(left_, x, v); }
    /// v . x
    Vec<K> act_right(const SparseVec<K>& x, const Vec<K>& v) const { return act(right_, x, v); }

    Matrix<K> left_operator(const SparseVec<K>& x) const { return combine(left_, x); }
    Matrix<K> right_operator(const SparseVec<K>& x) const { return combine(right_, x); }

    template <Field F>
    friend Bimodule<F> validate_bimodule(const Triple<F>&, std::size_t, std::vector<Matrix<F>>,
                                         std::vector<Matrix<F>>);

private:
    Vec<K> act(const std::vector<Matrix<K>>& ops, const SparseVec<K>& x, const Vec<K>& v) const {
        if (v.size() != dim_) throw PreconditionError("module vector has wrong length");
        Vec<K> out(dim_, field_.zero());
        for (const auto& [i, c] : x) {
            const auto& op = ops.at(i);
            for (std::size_t r = 0; r < dim_; ++r)
                for (const auto& [s, val] : op.row(r))
                    if (!field_.is_zero(v[s])) field_.add_mul(out[r], field_.mul(c, val), v[s]);
        }
        return out;
    }

    Matrix<K> combine(const std::vector<Matrix<K>>& ops, const SparseVec<K>& x) const {
        Matrix<K> out(field_, dim_, dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            SparseVec<K> row;
            for (const auto& [i, c] : x) row = axpy(field_, row, c, ops.at(i).row(r));
            out.set_row(r, std::move(row));
        }
        return out;
    }

    Bimodule(K field, std::size_t dim, std::vector<Matrix<K>> left, std::vector<Matrix<K>> right)
        : field_(std::move(field)), dim_(dim), left_(std::move(left)), right_(std::move(right)) {}

    K field_;
    std::size_t dim_ = 0;
    std::vector<Matrix<K>> left_;
    std::vector<Matrix<K>> right_;
};

namespace detail {
template <Field K>
bool same(const Matrix<K>& x, const Matrix<K>& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
    for (std::size_t r = 0; r < x.rows(); ++r)
        if (!equal(x.field(), x.row(r), y.row(r))) return false;
    return true;
}
}  // namespace detail

template <Field K>
Bimodule<K> validate_bimodule(const Triple<K>& t, std::size_t dim, std::vector<Matrix<K>> left,
                              std::vector<Matrix<K>> right) {
    const auto& A = t.A();
    const K& k = t.field();
    if (left.size() != A.dim() || right.size() != A.dim())
        throw ParseError("bimodule needs one left and one right matrix per A-basis element");
    for (const auto* ops : {&left, &right})
        for (const auto& m : *ops)
            if (m.rows() != dim || m.cols() != dim) throw ParseError("action matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));

    Bimodule<K> M(k, dim, std::move(left), std::move(right));

    auto ij = [](std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j) {
            const auto& prod = A.basis_product(i, j);
            if (!detail::same(M.left_[i] * M.left_[j], M.combine(M.left_, prod)))
                throw ValidationError("left module axiom fails at " + ij(i, j));
            if (!detail::same(M.right_[j] * M.right_[i], M.combine(M.right_, prod)))
                throw ValidationError("right module axiom fails at " + ij(i, j));
            if (!detail::same(M.left_[i] * M.right_[j], M.right_[j] * M.left_[i]))
                throw ValidationError("left and right actions do not commute at " + ij(i, j));
        }
    auto id = Matrix<K>::identity(k, dim);
    if (!detail::same(M.combine(M.left_, A.unit()), id)) throw ValidationError("unit does not act as identity on the left");
    if (!detail::same(M.combine(M.right_, A.unit()), id)) throw ValidationError("unit does not act as identity on the right");
    for (std::size_t j = 0; j < t.B().dim(); ++j)
        if (!detail::same(M.combine(M.left_, t.eps_basis(j)), M.combine(M.right_, t.eps_basis(j))))
            throw ValidationError("ε-centrality fails at B-basis " + std::to_string(j));
    return M;
}

/// M = A with left and right multiplication.
template <Field K>
Bimodule<K> regular_bimodule(const Triple<K>& t) {
    const auto& A = t.A();
    const K& k = t.field();
    const std::size_t d = A.dim();
    std::vector<Matrix<K>> left, right;
    for (std::size_t i = 0; i < d; ++i) {
        Matrix<K> l(k, d, d), r(k, d, d);
        for (std::size_t s = 0; s < d; ++s) {
            for (const auto& [row, v] : A.basis_product(i, s)) l.add_to(row, s, v);
            for (const auto& [row, v] : A.basis_product(s, i)) r.add_to(row, s, v);
        }
        left.push_back(std::move(l));
        right.push_back(std::move(r));
    }
    return validate_bimodule(t, d, std::move(left), std::move(right));
}

/// M^A = {m : a m = m a for all a}.
template <Field K>
Subspace<K> invariant_submodule(const Triple<K>& t, const Bimodule<K>& M) {
    const K& k = t.field();
    const std::size_t d = t.A().dim(), m = M.dim();
    Matrix<K> stacked(k, d * m, m);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t r = 0; r < m; ++r)
            stacked.set_row(i * m + r, axpy(k, M.left(i).row(r), k.neg(k.one()), M.right(i).row(r)));
    return nullspace(stacked);
}

enum class DerivationKind { All, BLinear, Inner, OnB };

/// Derivation spaces as subspaces of flattened linear maps (see LinearMap::flatten).
template <Field K>
Subspace<K> derivation_space(const Triple<K>& t, const Bimodule<K>& M, DerivationKind kind) {
    const K& k = t.field();
    const auto& A = t.A();
    const auto& B = t.B();
    const std::size_t m = M.dim();

    if (kind == DerivationKind::Inner) {
        const std::size_t d = A.dim();
        std::vector<SparseVec<K>> gens;
        for (std::size_t s = 0; s < m; ++s) {
            SparseVec<K> v;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t r = 0; r < m; ++r) {
                    auto val = k.sub(M.left(i).at(r, s), M.right(i).at(r, s));
                    if (!k.is_zero(val)) v.emplace_back(static_cast<std::uint32_t>(i * m + r), val);
                }
            gens.push_back(std::move(v));
        }
        return Subspace<K>::span(k, d * m, gens);
    }

    // Leibniz constraints d(x_i x_j) - x_i d(x_j) - d(x_i) x_j = 0 over an algebra X
    // acting on M through the operators lop/rop.
    auto leibniz = [&](const FiniteAlgebra<K>& X, auto lop, auto rop, std::size_t extra_rows) {
        const std::size_t d = X.dim();
        Matrix<K> c(k, d * d * m + extra_rows, d * m);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const Matrix<K> L = lop(i), R = rop(j);
                for (std::size_t r = 0; r < m; ++r) {
                    SparseVec<K> row;
                    for (const auto& [q, coef] : X.basis_product(i, j)) row.emplace_back(static_cast<std::uint32_t>(q * m + r), coef);
                    for (const auto& [s, v] : L.row(r)) row.emplace_back(static_cast<std::uint32_t>(j * m + s), k.neg(v));
                    for (const auto& [s, v] : R.row(r)) row.emplace_back(static_cast<std::uint32_t>(i * m + s), k.neg(v));
                    c.set_row((i * d + j) * m + r, std::move(row));
                }
            }
        return c;
    };

    if (kind == DerivationKind::OnB) {
        // b . m := eps(b) m and m . b := m eps(b); these agree by eps-centrality.
        for (std::size_t j = 0; j < B.dim(); ++j)
            if (!detail::same(M.left_operator(t.eps_basis(j)), M.right_operator(t.eps_basis(j))))
                throw ValidationError("ε-centrality fails at B-basis " + std::to_string(j));
        auto c = leibniz(
            B, [&](std::size_t i) { return M.left_operator(t.eps_basis(i)); },
            [&](std::size_t j) { return M.right_operator(t.eps_basis(j)); }, 0);
        return nullspace(c);
    }

    const std::size_t d = A.dim();
    const std::size_t extra = kind == DerivationKind::BLinear ? B.dim() * m : 0;
    auto c = leibniz(
        A, [&](std::size_t i) { return M.left(i); }, [&](std::size_t j) { return M.right(j); }, extra);
    if (kind == DerivationKind::BLinear) {
        // d(eps(b_j)) = 0
        for (std::size_t j = 0; j < B.dim(); ++j)
            for (std::size_t r = 0; r < m; ++r) {
                SparseVec<K> row;
                for (const auto& [q, coef] : t.eps_basis(j)) row.emplace_back(static_cast<std::uint32_t>(q * m + r), coef);
                c.set_row(d * d * m + j * m + r, std::move(row));
            }
    }
    return nullspace(c);
}

/// w o eps for a derivation w : A -> M.
template <Field K>
LinearMap<K> pullback_derivation(const Triple<K>& t, const Bimodule<K>& M, const LinearMap<K>& w) {
    if (w.source() != t.A().dim() || w.target() != M.dim())
        throw PreconditionError("pullback needs a map A -> M");
    auto der = derivation_space(t, M, DerivationKind::All);
    if (!der.contains(w.flatten())) throw ValidationError("not a derivation");
    return LinearMap<K>{w.matrix * t.eps_matrix()};
}

/// eps^*(Der_k(A, M)) inside the flattened maps B -> M.
template <Field K>
Subspace<K> pullback_image(const Triple<K>& t, const Bimodule<K>& M) {
    const K& k = t.field();
    auto der = derivation_space(t, M, DerivationKind::All);
    std::vector<SparseVec<K>> images;
    for (const auto& v : der.dense_basis()) {
        auto w = LinearMap<K>::unflatten(k, v, t.A().dim(), M.dim());
        images.push_back(to_sparse(k, LinearMap<K>{w.matrix * t.eps_matrix()}.flatten()));
    }
    return Subspace<K>::span(k, t.B().dim() * M.dim(), images);
}

}  // namespace secohom
