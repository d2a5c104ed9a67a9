#pragma once

// Polynomials in at most two variables over an exact field, and the
// polynomial-algebra computations around ker Phi_2: the sigma cocycles, the
// quotient k[X]/<f'>, a finite-degree Jacobian probe and the eps_t deformation.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "secohom/error.hpp"
#include "secohom/field.hpp"
#include "secohom/linalg.hpp"

namespace secohom {

using Monomial = std::pair<std::uint32_t, std::uint32_t>;  // exponents of X, Y

template <Field K>
class Poly {
public:
    using Element = typename K::Element;

    explicit Poly(K field) : field_(std::move(field)) {}

    static Poly constant(const K& k, const Element& c) {
        Poly p(k);
        p.add_term({0, 0}, c);
        return p;
    }
    static Poly monomial(const K& k, std::uint32_t i, std::uint32_t j = 0, std::optional<Element> c = std::nullopt) {
        Poly p(k);
        p.add_term({i, j}, c ? *c : k.one());
        return p;
    }
    static Poly x(const K& k) { return monomial(k, 1, 0); }
    static Poly y(const K& k) { return monomial(k, 0, 1); }

    const K& field() const { return field_; }
    const std::map<Monomial, Element>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Element coefficient(Monomial m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    void add_term(Monomial m, const Element& c) {
        if (field_.is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (fresh) return;
        it->second = field_.add(it->second, c);
        if (field_.is_zero(it->second)) terms_.erase(it);
    }

    /// Total degree; -1 for the zero polynomial.
    long degree() const {
        long d = -1;
        for (const auto& [m, c] : terms_) d = std::max<long>(d, m.first + m.second);
        return d;
    }

    bool uses_y() const {
        return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.second != 0; });
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, field_.neg(c));
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const { return scaled(field_.neg(field_.one())); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out(a.field_);
        for (const auto& [m, c] : a.terms_)
            for (const auto& [n, d] : b.terms_) out.add_term({m.first + n.first, m.second + n.second}, a.field_.mul(c, d));
        return out;
    }

    Poly scaled(const Element& c) const {
        Poly out(field_);
        for (const auto& [m, d] : terms_) out.add_term(m, field_.mul(c, d));
        return out;
    }

    Poly pow(std::uint32_t e) const {
        Poly out = constant(field_, field_.one());
        for (std::uint32_t i = 0; i < e; ++i) out = out * *this;
        return out;
    }

    /// d/dX (var 0) or d/dY (var 1).
    Poly derivative(int var = 0) const {
        Poly out(field_);
        for (const auto& [m, c] : terms_) {
            const auto e = var == 0 ? m.first : m.second;
            if (e == 0) continue;
            Monomial n = var == 0 ? Monomial{m.first - 1, m.second} : Monomial{m.first, m.second - 1};
            out.add_term(n, field_.mul(field_.from_int(static_cast<long>(e)), c));
        }
        return out;
    }

    /// p(f, g): X replaced by f and Y by g.
    Poly compose(const Poly& f, const Poly& g) const {
        Poly out(field_);
        for (const auto& [m, c] : terms_) out += (f.pow(m.first) * g.pow(m.second)).scaled(c);
        return out;
    }
    Poly compose(const Poly& f) const { return compose(f, Poly(field_)); }

    /// Drops terms of total degree above d.
    Poly truncated(long d) const {
        Poly out(field_);
        for (const auto& [m, c] : terms_)
            if (static_cast<long>(m.first + m.second) <= d) out.add_term(m, c);
        return out;
    }

    bool operator==(const Poly& o) const { return (*this - o).is_zero(); }

    std::string to_string(std::string_view vars = "XY") const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            std::string coef = field_.to_string(c);
            bool negative = !coef.empty() && coef[0] == '-';
            if (negative) coef.erase(0, 1);
            if (out.empty()) out = negative ? "-" : "";
            else out += negative ? " - " : " + ";
            std::string mono;
            auto power = [&](char v, std::uint32_t e) {
                if (e == 0) return;
                if (!mono.empty()) mono += "*";
                mono += v;
                if (e > 1) mono += "^" + std::to_string(e);
            };
            power(vars[0], m.first);
            power(vars[1], m.second);
            if (mono.empty()) out += coef;
            else if (coef == "1") out += mono;
            else out += coef + "*" + mono;
        }
        return out;
    }

private:
    K field_;
    std::map<Monomial, Element> terms_;
};

/// Parses sums of terms like "3/2*X^2*Y - X + 1". Variables are the two letters of `vars`.
template <Field K>
Poly<K> parse_poly(const K& k, std::string_view text, std::string_view vars = "XY") {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty polynomial");
    Poly<K> out(k);
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) { throw ParseError("polynomial \"" + std::string(text) + "\": " + why); };
    auto read_uint = [&]() {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected a number at position " + std::to_string(start));
        return s.substr(start, pos - start);
    };
    while (pos < s.size()) {
        bool negative = false;
        if (s[pos] == '+' || s[pos] == '-') {
            negative = s[pos] == '-';
            ++pos;
        } else if (pos != 0) {
            fail("expected + or - at position " + std::to_string(pos));
        }
        auto coef = k.one();
        Monomial m{0, 0};
        bool any = false;
        while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
            if (any) {
                if (s[pos] != '*') fail("expected * at position " + std::to_string(pos));
                ++pos;
            }
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::string num = read_uint();
                if (pos < s.size() && s[pos] == '/') {
                    ++pos;
                    num += "/" + read_uint();
                }
                coef = k.mul(coef, k.parse(num));
            } else if (pos < s.size() && (s[pos] == vars[0] || s[pos] == vars[1])) {
                const bool first = s[pos] == vars[0];
                ++pos;
                std::uint32_t e = 1;
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    e = static_cast<std::uint32_t>(std::stoul(read_uint()));
                }
                (first ? m.first : m.second) += e;
            } else {
                fail("unexpected character at position " + std::to_string(pos));
            }
            any = true;
        }
        if (!any) fail("empty term");
        out.add_term(m, negative ? k.neg(coef) : coef);
    }
    return out;
}

// ---------------------------------------------------------------------------
// One variable: A = M = k[X], B = k[t], eps(t) = f.

/// sigma_q(P (x) Q (x) alpha) = q P Q alpha'(f)
template <Field K>
Poly<K> sigma_eval(const Poly<K>& f, const Poly<K>& q, const Poly<K>& P, const Poly<K>& Q, const Poly<K>& alpha) {
    return q * P * Q * alpha.derivative().compose(f);
}

/// Two variables: B = k[s,t], eps(s) = f, eps(t) = g.
/// sigma_{a,b}(P (x) Q (x) L) = P Q (dL/ds(f,g) a + dL/dt(f,g) b)
template <Field K>
Poly<K> sigma2_eval(const Poly<K>& f, const Poly<K>& g, const Poly<K>& a, const Poly<K>& b, const Poly<K>& P,
                    const Poly<K>& Q, const Poly<K>& L) {
    return P * Q * (L.derivative(0).compose(f, g) * a + L.derivative(1).compose(f, g) * b);
}

/// A 2-cochain on polynomial algebras, (P, Q, alpha) -> value.
template <Field K>
using PolyCochain2 = std::function<Poly<K>(const Poly<K>&, const Poly<K>&, const Poly<K>&)>;

/// (delta sigma)(a1, a2, a3; b12, b13, b23) for a 2-cochain on A with eps : B -> A.
template <Field K>
Poly<K> delta2_poly(const PolyCochain2<K>& sigma, const std::function<Poly<K>(const Poly<K>&)>& eps, const Poly<K>& a1,
                    const Poly<K>& a2, const Poly<K>& a3, const Poly<K>& b12, const Poly<K>& b13, const Poly<K>& b23) {
    Poly<K> out = a1 * eps(b12 * b13) * sigma(a2, a3, b23);
    out -= sigma(eps(b12) * a1 * a2, a3, b13 * b23);
    out += sigma(a1, eps(b23) * a2 * a3, b12 * b13);
    out -= sigma(a1, a2, b12) * a3 * eps(b13 * b23);
    return out;
}

/// delta^eps_2(sigma) = 0 on all monomial inputs X^i (A-slots) and t^l (B-slots) with
/// sum i + deg(f) * sum l <= bound.
template <Field K>
bool verify_cocycle_1var(const Poly<K>& f, const PolyCochain2<K>& sigma, long bound) {
    const K& k = f.field();
    const long df = std::max<long>(f.degree(), 1);
    auto eps = [&](const Poly<K>& beta) { return beta.compose(f); };
    std::vector<long> e(6, 0);
    // slots 0..2 are A-exponents, 3..5 are B-exponents weighted by deg f
    std::function<bool(std::size_t, long)> rec = [&](std::size_t slot, long budget) -> bool {
        if (slot == 6) {
            auto X = [&](long i) { return Poly<K>::monomial(k, static_cast<std::uint32_t>(i)); };
            return delta2_poly<K>(sigma, eps, X(e[0]), X(e[1]), X(e[2]), X(e[3]), X(e[4]), X(e[5])).is_zero();
        }
        const long weight = slot < 3 ? 1 : df;
        for (long v = 0; v * weight <= budget; ++v) {
            e[slot] = v;
            if (!rec(slot + 1, budget - v * weight)) return false;
        }
        return true;
    };
    return rec(0, bound);
}

template <Field K>
bool verify_sigma_cocycle(const Poly<K>& f, const Poly<K>& q, long bound) {
    if (bound < f.degree()) throw PreconditionError("degree bound below deg f");
    PolyCochain2<K> sigma = [&](const Poly<K>& P, const Poly<K>& Q, const Poly<K>& alpha) {
        return sigma_eval(f, q, P, Q, alpha);
    };
    return verify_cocycle_1var(f, sigma, bound);
}

/// Two-variable analogue over monomials X^i Y^j and s^l t^m.
template <Field K>
bool verify_sigma2_cocycle(const Poly<K>& f, const Poly<K>& g, const Poly<K>& a, const Poly<K>& b, long bound) {
    const K& k = f.field();
    const long df = std::max<long>(f.degree(), 1), dg = std::max<long>(g.degree(), 1);
    auto eps = [&](const Poly<K>& beta) { return beta.compose(f, g); };
    PolyCochain2<K> sigma = [&](const Poly<K>& P, const Poly<K>& Q, const Poly<K>& L) {
        return sigma2_eval(f, g, a, b, P, Q, L);
    };
    std::vector<std::uint32_t> e(12, 0);
    std::function<bool(std::size_t, long)> rec = [&](std::size_t slot, long budget) -> bool {
        if (slot == 12) {
            auto M = [&](std::size_t s) { return Poly<K>::monomial(k, e[2 * s], e[2 * s + 1]); };
            return delta2_poly<K>(sigma, eps, M(0), M(1), M(2), M(3), M(4), M(5)).is_zero();
        }
        long weight = 1;
        if (slot >= 6) weight = slot % 2 == 0 ? df : dg;
        for (long v = 0; v * weight <= budget; ++v) {
            e[slot] = static_cast<std::uint32_t>(v);
            if (!rec(slot + 1, budget - v * weight)) return false;
        }
        return true;
    };
    return rec(0, bound);
}

/// dim_k k[X]/<f'>, or nullopt when f' = 0 (infinite).
template <Field K>
std::optional<std::size_t> ker_phi2_dim_1var(const Poly<K>& f) {
    if (f.uses_y()) throw PreconditionError("f must be a polynomial in X");
    if (f.degree() <= 0) throw PreconditionError("f constant");
    auto d = f.derivative();
    if (d.is_zero()) return std::nullopt;
    return static_cast<std::size_t>(d.degree());
}

/// Monomials X^i Y^j with i + j <= d, in a fixed order.
inline std::vector<Monomial> monomials_up_to(long d) {
    std::vector<Monomial> out;
    for (long t = 0; t <= d; ++t)
        for (long i = t; i >= 0; --i) out.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t - i));
    return out;
}

/// dim of (k[X,Y]_{<=d})^2 modulo {J(f,g) (v,w) truncated to degree <= d : deg v, deg w <= e}, where
/// e = d - (largest degree among the Jacobian entries). In characteristic 0, e = d - max(deg f, deg g) + 1.
template <Field K>
std::size_t jacobian_cokernel_probe(const Poly<K>& f, const Poly<K>& g, long d) {
    const K& k = f.field();
    if (d < std::max(f.degree(), g.degree())) throw PreconditionError("probe degree below max(deg f, deg g)");
    const Poly<K> J[2][2] = {{f.derivative(0), f.derivative(1)}, {g.derivative(0), g.derivative(1)}};
    long jdeg = -1;
    for (const auto& row : J)
        for (const auto& p : row) jdeg = std::max(jdeg, p.degree());
    const auto target = monomials_up_to(d);
    std::map<Monomial, std::uint32_t> index;
    for (std::size_t i = 0; i < target.size(); ++i) index[target[i]] = static_cast<std::uint32_t>(i);
    const std::size_t n = target.size();

    std::vector<SparseVec<K>> images;
    if (jdeg >= 0) {
        for (int slot = 0; slot < 2; ++slot)
            for (const auto& m : monomials_up_to(d - jdeg)) {
                const auto mono = Poly<K>::monomial(k, m.first, m.second);
                Vec<K> v(2 * n, k.zero());
                for (int comp = 0; comp < 2; ++comp) {
                    const auto image = (J[comp][slot] * mono).truncated(d);
                    for (const auto& [t, c] : image.terms()) v[comp * n + index.at(t)] = c;
                }
                images.push_back(to_sparse(k, v));
            }
    }
    auto span = Subspace<K>::span(k, 2 * n, images);
    return 2 * n - span.dim();
}

/// alpha(f + t p) mod t^2 via dual-number Horner evaluation; returns the t-coefficient.
template <Field K>
Poly<K> dual_linear_term(const Poly<K>& alpha, const Poly<K>& f, const Poly<K>& p) {
    const K& k = f.field();
    Poly<K> c0(k), c1(k);
    const long deg = alpha.degree();
    for (long e = deg; e >= 0; --e) {
        // (c0 + t c1)(f + t p) + alpha_e
        Poly<K> n0 = c0 * f, n1 = c0 * p + c1 * f;
        n0 += Poly<K>::constant(k, alpha.coefficient({static_cast<std::uint32_t>(e), 0}));
        c0 = std::move(n0);
        c1 = std::move(n1);
    }
    return c1;
}

/// The t-linear part of eps_t(alpha) P Q with eps_t(t) = f + t d, against sigma_p (d = p unless given), on monomials
/// P = X^i, Q = X^j, alpha = t^l with i + j + deg(f) l <= bound.
template <Field K>
bool deformed_epsilon_check(const Poly<K>& f, const Poly<K>& p, long bound, const Poly<K>& d) {
    const K& k = f.field();
    const long df = std::max<long>(f.degree(), 1);
    for (long i = 0; i <= bound; ++i)
        for (long j = 0; i + j <= bound; ++j)
            for (long l = 0; i + j + df * l <= bound; ++l) {
                const auto P = Poly<K>::monomial(k, static_cast<std::uint32_t>(i));
                const auto Q = Poly<K>::monomial(k, static_cast<std::uint32_t>(j));
                const auto alpha = Poly<K>::monomial(k, static_cast<std::uint32_t>(l));
                if (!(dual_linear_term(alpha, f, d) * P * Q == sigma_eval(f, p, P, Q, alpha))) return false;
            }
    return true;
}

template <Field K>
bool deformed_epsilon_check(const Poly<K>& f, const Poly<K>& p, long bound) {
    return deformed_epsilon_check(f, p, bound, p);
}

/// Whether sigma_q - sigma_p = delta^eps_1 u for some linear u on k[X], with u(X^i) of degree
/// <= bound + slack, tested on monomial triples (X^i, X^j, t^l) with i + j + deg(f) l <= bound.
/// delta u(a, b, alpha) = a eps(alpha) u(b) - u(a b eps(alpha)) + u(a) b eps(alpha) is linear in the
/// unknown coefficients u_{i,c} (coefficient of X^c in u(X^i)); one equation per output power of X.
template <Field K>
bool sigma_difference_is_coboundary(const Poly<K>& f, const Poly<K>& q, const Poly<K>& p, long bound, long slack = 2) {
    using Element = typename K::Element;
    const K& k = f.field();
    const long df = std::max<long>(f.degree(), 1);
    const long top = bound + slack;
    const std::size_t width = static_cast<std::size_t>(top + 1);
    const std::size_t unknowns = static_cast<std::size_t>(bound + 1) * width;
    const long out_top = 2 * bound + top + 1;
    const auto r = q - p;
    auto X = [&](long e) { return Poly<K>::monomial(k, static_cast<std::uint32_t>(e)); };

    std::vector<SparseVec<K>> rows;
    Vec<K> rhs;
    for (long i = 0; i <= bound; ++i)
        for (long j = 0; i + j <= bound; ++j)
            for (long l = 0; i + j + df * l <= bound; ++l) {
                const auto fl = f.pow(static_cast<std::uint32_t>(l));
                const auto target = sigma_eval(f, r, X(i), X(j), X(l));
                std::vector<std::map<std::uint32_t, Element>> eq(static_cast<std::size_t>(out_top + 1));
                auto put = [&](long c, std::size_t var, const Element& v) {
                    auto [it, fresh] = eq[static_cast<std::size_t>(c)].emplace(static_cast<std::uint32_t>(var), v);
                    if (!fresh) it->second = k.add(it->second, v);
                };
                for (const auto& [m, c] : fl.terms())
                    for (long e = 0; e <= top; ++e) {
                        put(i + static_cast<long>(m.first) + e, static_cast<std::size_t>(j) * width + e, c);
                        put(j + static_cast<long>(m.first) + e, static_cast<std::size_t>(i) * width + e, c);
                    }
                const auto merged = X(i + j) * fl;
                for (const auto& [m, c] : merged.terms())
                    for (long e = 0; e <= top; ++e) put(e, m.first * width + e, k.neg(c));
                for (long c = 0; c <= out_top; ++c) {
                    SparseVec<K> row;
                    for (const auto& [var, v] : eq[static_cast<std::size_t>(c)])
                        if (!k.is_zero(v)) row.emplace_back(var, v);
                    auto b = target.coefficient({static_cast<std::uint32_t>(c), 0});
                    if (row.empty() && k.is_zero(b)) continue;
                    rows.push_back(std::move(row));
                    rhs.push_back(b);
                }
            }
    Matrix<K> m(k, rows.size(), unknowns);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return solve(m, rhs).has_value();
}

}  // namespace secohom
