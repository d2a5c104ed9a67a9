#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "secohom/error.hpp"
#include "secohom/linalg.hpp"
#include "secohom/tensor.hpp"

namespace secohom {

/// Shape of C^n = Hom(A^{(x)n} (x) B^{(x)n(n-1)/2}, M).
struct CochainShape {
    std::size_t degree = 0;
    std::size_t dim_a = 1;
    std::size_t dim_b = 1;
    std::size_t dim_m = 0;

    bool operator==(const CochainShape&) const = default;

    TensorCodec codec() const { return TensorCodec(degree, dim_a, dim_b); }
    /// Number of coordinates, dim_m times the number of basis tensors (saturating).
    std::uint64_t size() const { return saturating_mul(codec().count(), dim_m); }
};

/// A cochain as a dense coefficient table. Coordinate (offset, r) lives at
/// offset * dim_m + r: tensor offset major, M-basis minor.
template <Field K>
class Cochain {
public:
    using Element = typename K::Element;

    Cochain(K field, CochainShape shape)
        : field_(std::move(field)), shape_(shape), codec_(shape.codec()) {
        data_.assign(static_cast<std::size_t>(codec_.count() * shape.dim_m), field_.zero());
    }

    Cochain(K field, CochainShape shape, Vec<K> data) : Cochain(std::move(field), shape) {
        if (data.size() != data_.size())
            throw PreconditionError("cochain table has length " + std::to_string(data.size()) + ", expected " +
                                    std::to_string(data_.size()));
        data_ = std::move(data);
    }

    const K& field() const { return field_; }
    const CochainShape& shape() const { return shape_; }
    std::size_t degree() const { return shape_.degree; }
    std::size_t module_dim() const { return shape_.dim_m; }
    const TensorCodec& codec() const { return codec_; }
    std::uint64_t tensor_count() const { return codec_.count(); }

    const Vec<K>& data() const { return data_; }
    Vec<K>& data() { return data_; }

    Vec<K> value(std::uint64_t offset) const {
        auto first = data_.begin() + static_cast<std::ptrdiff_t>(offset * shape_.dim_m);
        return Vec<K>(first, first + static_cast<std::ptrdiff_t>(shape_.dim_m));
    }
    Vec<K> value(const TensorIndex& t) const { return value(codec_.encode(t)); }

    void set_value(std::uint64_t offset, const Vec<K>& v) {
        if (v.size() != shape_.dim_m) throw PreconditionError("value has wrong module dimension");
        for (std::size_t r = 0; r < v.size(); ++r) data_[offset * shape_.dim_m + r] = v[r];
    }

    /// Adds coef * f(offset) into acc.
    void accumulate(Vec<K>& acc, std::uint64_t offset, const Element& coef) const {
        const std::size_t base = static_cast<std::size_t>(offset * shape_.dim_m);
        for (std::size_t r = 0; r < shape_.dim_m; ++r)
            if (!field_.is_zero(data_[base + r])) field_.add_mul(acc[r], coef, data_[base + r]);
    }

    /// f evaluated multilinearly on a tensor of vectors.
    Vec<K> evaluate(const TensorArg<K>& arg) const {
        Vec<K> acc(shape_.dim_m, field_.zero());
        expand(field_, codec_, arg, [&](std::uint64_t off, const Element& c) { accumulate(acc, off, c); });
        return acc;
    }

    bool is_zero() const { return secohom::is_zero(field_, data_); }

    bool operator==(const Cochain& o) const { return shape_ == o.shape_ && equal(field_, data_, o.data_); }

    Cochain& operator+=(const Cochain& o) {
        require_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) field_.add_to(data_[i], o.data_[i]);
        return *this;
    }
    Cochain& operator-=(const Cochain& o) {
        require_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) field_.sub_from(data_[i], o.data_[i]);
        return *this;
    }
    Cochain& operator*=(const Element& c) {
        for (auto& x : data_) x = field_.mul(c, x);
        return *this;
    }
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const Element& c, Cochain a) { return a *= c; }
    Cochain operator-() const {
        Cochain out = *this;
        for (auto& x : out.data_) x = field_.neg(x);
        return out;
    }

    void require_same(const Cochain& o) const {
        if (!(shape_ == o.shape_)) throw PreconditionError("cochain shapes differ");
    }

private:
    K field_;
    CochainShape shape_;
    TensorCodec codec_;
    Vec<K> data_;
};

/// Small-integer random cochain; entries uniform in [-spread, spread], deterministic
/// for a given engine state.
template <Field K>
Cochain<K> random_cochain(const K& k, CochainShape shape, std::mt19937_64& rng, int spread = 3) {
    Cochain<K> f(k, shape);
    for (auto& x : f.data()) x = k.from_int(static_cast<long>(rng() % (2 * spread + 1)) - spread);
    return f;
}

}  // namespace secohom
