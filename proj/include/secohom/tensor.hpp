#pragma once

// Canonical basis of A^{(x)n} (x) B^{(x)n(n-1)/2}.
//
// A basis element is an upper-triangular "tensor matrix": diagonal entries are
// A-basis indices a_1..a_n, strictly-upper entries b_{i,j} are B-basis indices.
// Offsets use a mixed radix with the diagonal digits most significant, followed
// by the pair digits in the order (1,2),(1,3),...,(1,n),(2,3),...,(n-1,n).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "secohom/algebra.hpp"
#include "secohom/error.hpp"
#include "secohom/linalg.hpp"

namespace secohom {

struct TensorIndex {
    std::vector<std::uint32_t> diag;
    std::vector<std::uint32_t> pairs;

    bool operator==(const TensorIndex&) const = default;
};

/// Position of the pair (i, j), 0-based with i < j < n, in the canonical pair order.
constexpr std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

constexpr std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Saturating product, so that huge degrees report "too big" instead of wrapping.
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

class TensorCodec {
public:
    TensorCodec(std::size_t degree, std::size_t dim_a, std::size_t dim_b)
        : n_(degree), da_(dim_a), db_(dim_b), pairs_(pair_count(degree)) {
        count_ = 1;
        for (std::size_t i = 0; i < n_; ++i) count_ = saturating_mul(count_, da_);
        for (std::size_t p = 0; p < pairs_; ++p) count_ = saturating_mul(count_, db_);
        if (count_ <= (std::uint64_t{1} << 40)) {
            pair_weight_.assign(pairs_, 1);
            for (std::size_t p = pairs_; p-- > 1;) pair_weight_[p - 1] = pair_weight_[p] * db_;
            std::uint64_t block = pairs_ ? pair_weight_[0] * db_ : 1;
            diag_weight_.assign(n_, block);
            for (std::size_t i = n_; i-- > 1;) diag_weight_[i - 1] = diag_weight_[i] * da_;
        }
    }

    std::size_t degree() const { return n_; }
    std::size_t dim_a() const { return da_; }
    std::size_t dim_b() const { return db_; }
    std::size_t pairs() const { return pairs_; }

    /// Number of basis tensors (saturating).
    std::uint64_t count() const { return count_; }

    std::uint64_t diag_weight(std::size_t i) const { return diag_weight_[i]; }
    std::uint64_t pair_weight(std::size_t p) const { return pair_weight_[p]; }

    std::uint64_t encode(const TensorIndex& t) const {
        if (t.diag.size() != n_ || t.pairs.size() != pairs_)
            throw PreconditionError("tensor index has the wrong shape for degree " + std::to_string(n_));
        require_addressable();
        std::uint64_t off = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (t.diag[i] >= da_) throw PreconditionError("diagonal index out of range");
            off += t.diag[i] * diag_weight_[i];
        }
        for (std::size_t p = 0; p < pairs_; ++p) {
            if (t.pairs[p] >= db_) throw PreconditionError("pair index out of range");
            off += t.pairs[p] * pair_weight_[p];
        }
        return off;
    }

    TensorIndex decode(std::uint64_t offset) const {
        require_addressable();
        if (offset >= count_) throw PreconditionError("tensor offset out of range");
        TensorIndex t;
        t.diag.resize(n_);
        t.pairs.resize(pairs_);
        for (std::size_t p = pairs_; p-- > 0;) {
            t.pairs[p] = static_cast<std::uint32_t>(offset % db_);
            offset /= db_;
        }
        for (std::size_t i = n_; i-- > 0;) {
            t.diag[i] = static_cast<std::uint32_t>(offset % da_);
            offset /= da_;
        }
        return t;
    }

private:
    void require_addressable() const {
        if (diag_weight_.size() != n_ || pair_weight_.size() != pairs_)
            throw SizeCapError(count_, std::uint64_t{1} << 40);
    }

    std::size_t n_, da_, db_, pairs_;
    std::uint64_t count_ = 1;
    std::vector<std::uint64_t> diag_weight_;
    std::vector<std::uint64_t> pair_weight_;
};

/// b_{i,j} of a decoded tensor, 0-based i < j.
inline std::uint32_t pair_at(const TensorIndex& t, std::size_t i, std::size_t j) {
    return t.pairs[pair_index(t.diag.size(), i, j)];
}

/// The contiguous diagonal block [begin, end) of t as a basis tensor of degree end - begin.
inline TensorIndex sub_tensor(const TensorIndex& t, std::size_t begin, std::size_t end) {
    TensorIndex s;
    s.diag.assign(t.diag.begin() + static_cast<std::ptrdiff_t>(begin), t.diag.begin() + static_cast<std::ptrdiff_t>(end));
    for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = i + 1; j < end; ++j) s.pairs.push_back(pair_at(t, i, j));
    return s;
}

/// A tensor matrix whose entries are arbitrary vectors rather than basis elements.
template <Field K>
struct TensorArg {
    std::vector<SparseVec<K>> diag;   // A-vectors
    std::vector<SparseVec<K>> pairs;  // B-vectors, canonical pair order
};

/// Multilinear expansion of a TensorArg into basis offsets: emit(offset, coefficient).
template <Field K, class Emit>
void expand(const K& k, const TensorCodec& codec, const TensorArg<K>& arg, Emit&& emit) {
    const std::size_t nd = arg.diag.size(), np = arg.pairs.size();
    if (nd != codec.degree() || np != codec.pairs()) throw PreconditionError("tensor argument has the wrong shape");
    const std::size_t total = nd + np;
    std::vector<const SparseVec<K>*> factors;
    std::vector<std::uint64_t> weights;
    factors.reserve(total);
    for (std::size_t i = 0; i < nd; ++i) {
        if (arg.diag[i].empty()) return;
        factors.push_back(&arg.diag[i]);
        weights.push_back(codec.diag_weight(i));
    }
    for (std::size_t p = 0; p < np; ++p) {
        if (arg.pairs[p].empty()) return;
        factors.push_back(&arg.pairs[p]);
        weights.push_back(codec.pair_weight(p));
    }
    if (total == 0) {
        emit(std::uint64_t{0}, k.one());
        return;
    }
    // Iterative odometer over the supports.
    std::vector<std::size_t> pos(total, 0);
    std::vector<typename K::Element> coef(total + 1, k.one());
    std::vector<std::uint64_t> off(total + 1, 0);
    std::size_t level = 0;
    while (true) {
        const auto& [idx, val] = (*factors[level])[pos[level]];
        coef[level + 1] = k.mul(coef[level], val);
        off[level + 1] = off[level] + idx * weights[level];
        if (level + 1 == total) {
            emit(off[total], coef[total]);
            while (true) {
                if (++pos[level] < factors[level]->size()) break;
                pos[level] = 0;
                if (level == 0) return;
                --level;
            }
        } else {
            ++level;
        }
    }
}

/// Product of B-basis elements; the empty product is 1_B.
template <Field K>
SparseVec<K> basis_product(const FiniteAlgebra<K>& B, std::span<const std::uint32_t> factors) {
    if (factors.empty()) return B.unit();
    SparseVec<K> out = B.basis_vector(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i) out = B.multiply_basis_right(out, factors[i]);
    return out;
}

/// Collapses consecutive diagonal blocks of a basis tensor into single slots.
///
/// `blocks[u]` is the half-open range of original positions merged into slot u
/// (it may be empty, for an inserted 0-cochain) and `values[u]` is the A-vector
/// placed on the diagonal there. Off-diagonal slot (u, v) receives the product of
/// the original b_{r,s} over r in block u and s in block v.
template <Field K>
TensorArg<K> collapse(const FiniteAlgebra<K>& B, const TensorIndex& t,
                      const std::vector<std::pair<std::size_t, std::size_t>>& blocks,
                      std::vector<SparseVec<K>> values) {
    TensorArg<K> arg;
    const std::size_t m = blocks.size();
    arg.diag = std::move(values);
    arg.pairs.reserve(pair_count(m));
    std::vector<std::uint32_t> factors;
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = u + 1; v < m; ++v) {
            factors.clear();
            for (std::size_t r = blocks[u].first; r < blocks[u].second; ++r)
                for (std::size_t s = blocks[v].first; s < blocks[v].second; ++s) factors.push_back(pair_at(t, r, s));
            arg.pairs.push_back(basis_product(B, std::span<const std::uint32_t>(factors)));
        }
    return arg;
}

}  // namespace secohom
