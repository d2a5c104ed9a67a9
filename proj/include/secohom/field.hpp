#pragma once

// Exact scalar fields. Generic code is written against the Field concept and
// performs all arithmetic through a field object, so the prime-field modulus
// can be chosen at run time.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "secohom/error.hpp"

namespace secohom {

template <class K>
concept Field = std::copyable<K> && requires(const K& k, const typename K::Element& a,
                                             typename K::Element& acc, long n,
                                             std::string_view text) {
    { k.zero() } -> std::same_as<typename K::Element>;
    { k.one() } -> std::same_as<typename K::Element>;
    { k.from_int(n) } -> std::same_as<typename K::Element>;
    { k.add(a, a) } -> std::same_as<typename K::Element>;
    { k.sub(a, a) } -> std::same_as<typename K::Element>;
    { k.mul(a, a) } -> std::same_as<typename K::Element>;
    { k.neg(a) } -> std::same_as<typename K::Element>;
    { k.inv(a) } -> std::same_as<typename K::Element>;
    { k.is_zero(a) } -> std::same_as<bool>;
    { k.equal(a, a) } -> std::same_as<bool>;
    k.add_mul(acc, a, a);
    k.add_to(acc, a);
    k.sub_from(acc, a);
    { k.characteristic() } -> std::convertible_to<std::uint64_t>;
    { k.name() } -> std::same_as<std::string>;
    { k.to_string(a) } -> std::same_as<std::string>;
    { k.parse(text) } -> std::same_as<typename K::Element>;
};

/// The rationals, backed by GMP. Elements are always canonical (gcd 1, positive denominator).
class RationalField {
public:
    using Element = mpq_class;

    Element zero() const { return Element(0); }
    Element one() const { return Element(1); }
    Element from_int(long n) const { return Element(n); }

    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    Element inv(const Element& a) const {
        if (sgn(a) == 0) throw PreconditionError("division by zero");
        return 1 / a;
    }
    void add_mul(Element& acc, const Element& a, const Element& b) const { acc += a * b; }
    void add_to(Element& acc, const Element& a) const { acc += a; }
    void sub_from(Element& acc, const Element& a) const { acc -= a; }

    bool is_zero(const Element& a) const { return sgn(a) == 0; }
    bool equal(const Element& a, const Element& b) const { return a == b; }

    std::uint64_t characteristic() const { return 0; }
    std::string name() const { return "Q"; }

    /// Canonical "p/q" form, or "p" for integers.
    std::string to_string(const Element& a) const { return a.get_str(); }

    Element parse(std::string_view text) const {
        std::string s(text);
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        if (!s.empty() && s.front() == '+') s.erase(s.begin());
        Element value;
        if (s.empty() || value.set_str(s, 10) != 0)
            throw ParseError("invalid rational '" + std::string(text) + "'");
        if (value.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        value.canonicalize();
        return value;
    }

    bool operator==(const RationalField&) const { return true; }
};

/// GF(p) for a prime p < 2^31. Elements are residues in [0, p).
class PrimeField {
public:
    using Element = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 2 || p >= (1ULL << 31) || !is_prime(p))
            throw ParseError("GF(p) needs a prime 2 <= p < 2^31, got " + std::to_string(p));
    }

    std::uint64_t modulus() const { return p_; }

    Element zero() const { return 0; }
    Element one() const { return 1 % p_; }
    Element from_int(long n) const {
        long r = n % static_cast<long>(p_);
        return static_cast<Element>(r < 0 ? r + static_cast<long>(p_) : r);
    }

    Element add(Element a, Element b) const {
        Element s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
    Element mul(Element a, Element b) const { return (a * b) % p_; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element inv(Element a) const {
        if (a == 0) throw PreconditionError("division by zero in GF(" + std::to_string(p_) + ")");
        return pow(a, p_ - 2);
    }
    void add_mul(Element& acc, Element a, Element b) const { acc = (acc + a * b) % p_; }
    void add_to(Element& acc, Element a) const { acc = add(acc, a); }
    void sub_from(Element& acc, Element a) const { acc = sub(acc, a); }

    bool is_zero(Element a) const { return a == 0; }
    bool equal(Element a, Element b) const { return a == b; }

    std::uint64_t characteristic() const { return p_; }
    std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
    std::string to_string(Element a) const { return std::to_string(a); }

    /// Accepts integers and "p/q" rationals whose denominator is a unit mod p.
    Element parse(std::string_view text) const {
        mpq_class q = RationalField{}.parse(text);
        return reduce(q);
    }

    Element reduce(const mpq_class& q) const {
        mpz_class num = q.get_num() % mpz_class(static_cast<unsigned long>(p_));
        mpz_class den = q.get_den() % mpz_class(static_cast<unsigned long>(p_));
        if (num < 0) num += static_cast<unsigned long>(p_);
        if (den == 0)
            throw PreconditionError("denominator of " + q.get_str() + " vanishes mod " +
                                    std::to_string(p_));
        return mul(num.get_ui(), inv(den.get_ui()));
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    Element pow(Element base, std::uint64_t e) const {
        Element r = 1;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    std::uint64_t p_;
};

static_assert(Field<RationalField>);
static_assert(Field<PrimeField>);

}  // namespace secohom
