#pragma once

// Randomised checks of the Gerstenhaber-type identities, shared by the unit
// tests (few samples) and the acceptance runner (at least 100 per identity).

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "secohom/extensions.hpp"
#include "secohom/gerstenhaber.hpp"

namespace identities {

using namespace secohom;
using K = RationalField;
using C = Cochain<K>;

struct Tally {
    std::string name;
    std::size_t tuples = 0;
    std::size_t failures = 0;
};

inline C signed_by(long e, C c) { return (e % 2) ? -c : c; }

struct Degrees {
    std::size_t m, n, p;
};

/// Degree triples with m, n, p <= 2 accepted by `keep`, cycled until `count` tuples are checked.
inline Tally run(const std::string& name, std::size_t count, const std::function<bool(const Degrees&)>& keep,
                 const std::function<bool(const Degrees&)>& check) {
    std::vector<Degrees> pool;
    for (std::size_t m = 0; m <= 2; ++m)
        for (std::size_t n = 0; n <= 2; ++n)
            for (std::size_t p = 0; p <= 2; ++p)
                if (keep({m, n, p})) pool.push_back({m, n, p});
    Tally t{name};
    for (std::size_t i = 0; i < count; ++i) {
        ++t.tuples;
        if (!check(pool[i % pool.size()])) ++t.failures;
    }
    return t;
}

inline std::vector<Tally> gerstenhaber_suite(const SecondaryComplex<K>& cx, std::size_t count, std::mt19937_64& rng) {
    const K Q;
    auto R = [&](std::size_t d) { return random_cochain(Q, cx.shape(d), rng); };
    const auto pi = pi_cochain(cx);
    std::vector<Tally> out;

    out.push_back(run("Leibniz rule for the cup product", count, [](const Degrees& d) { return d.m + d.n <= 3 && d.p == 0; },
                      [&](const Degrees& d) {
                          auto f = R(d.m), g = R(d.n);
                          return cx.delta(cup(cx, f, g)) == cup(cx, cx.delta(f), g) + signed_by(d.m, cup(cx, f, cx.delta(g)));
                      }));
    out.push_back(run("cup product through insertions", count, [](const Degrees& d) { return d.p == 0; },
                      [&](const Degrees& d) {
                          auto f = R(d.m), g = R(d.n);
                          return cup(cx, f, g) == comp_i(cx, comp_i(cx, pi, f, 0), g, d.m);
                      }));
    out.push_back(run("differential as bracket with -pi", count, [](const Degrees& d) { return d.n == 0 && d.p == 0; },
                      [&](const Degrees& d) {
                          auto f = R(d.m);
                          return cx.delta(f) == bracket(cx, f, -pi);
                      }));
    out.push_back(run("pre-Lie identity, disjoint insertions", count, [](const Degrees& d) { return d.m == 2; },
                      [&](const Degrees& d) {
                          auto f = R(d.m), g = R(d.n), h = R(d.p);
                          const std::size_t i = 1, j = 0;  // the only j < i when m = 2
                          return comp_i(cx, comp_i(cx, f, g, i), h, j) == comp_i(cx, comp_i(cx, f, h, j), g, i + d.p - 1);
                      }));
    out.push_back(run("pre-Lie identity, nested insertions", count, [](const Degrees& d) { return d.m >= 1 && d.n >= 1; },
                      [&](const Degrees& d) {
                          auto f = R(d.m), g = R(d.n), h = R(d.p);
                          bool ok = true;
                          for (std::size_t i = 0; i < d.m; ++i)
                              for (std::size_t j = i; j <= i + d.n - 1; ++j)
                                  ok = ok && comp_i(cx, comp_i(cx, f, g, i), h, j) == comp_i(cx, f, comp_i(cx, g, h, j - i), i);
                          return ok;
                      }));
    out.push_back(run("homotopy formula for graded commutativity", count, [](const Degrees& d) { return d.m >= 1 && d.p == 0; },
                      [&](const Degrees& d) {
                          auto f = R(d.m), g = R(d.n);
                          const long s = static_cast<long>(d.n) + 1;
                          auto lhs = circle(cx, f, cx.delta(g)) - cx.delta(circle(cx, f, g)) + signed_by(s, circle(cx, cx.delta(f), g));
                          auto rhs = signed_by(s, cup(cx, g, f) - signed_by(static_cast<long>(d.m * d.n), cup(cx, f, g)));
                          return lhs == rhs;
                      }));
    out.push_back(run("cup product associativity", count, [](const Degrees& d) { return d.m + d.n + d.p <= 4; },
                      [&](const Degrees& d) {
                          auto f = R(d.m), g = R(d.n), h = R(d.p);
                          return cup(cx, cup(cx, f, g), h) == cup(cx, f, cup(cx, g, h));
                      }));
    out.push_back(run("graded Jacobi identity", count, [](const Degrees& d) { return d.m >= 1 && d.n >= 1 && d.p >= 1; },
                      [&](const Degrees& d) {
                          auto f = R(d.m), g = R(d.n), h = R(d.p);
                          const long a = static_cast<long>(d.m) - 1, b = static_cast<long>(d.n) - 1, c = static_cast<long>(d.p) - 1;
                          auto J = signed_by(a * c, bracket(cx, f, bracket(cx, g, h))) + signed_by(b * a, bracket(cx, g, bracket(cx, h, f))) +
                                   signed_by(c * b, bracket(cx, h, bracket(cx, f, g)));
                          return J.is_zero();
                      }));

    // Graded commutativity on cocycles, up to an explicit coboundary.
    std::vector<CohomologySpace<K>> h;
    for (std::size_t d = 0; d <= 2; ++d) h.push_back(cx.cohomology(d));
    auto random_cocycle_of = [&](std::size_t d) {
        C z = cx.zero(d);
        std::uniform_int_distribution<int> coef(-3, 3);
        for (const auto& r : h[d].representatives()) z += mpq_class(coef(rng)) * r;
        if (d > 0) z += cx.delta(R(d - 1));
        return z;
    };
    std::map<std::size_t, Subspace<K>> boundaries;
    auto is_coboundary = [&](const C& c) {
        const std::size_t d = c.degree();
        if (!boundaries.count(d)) boundaries.emplace(d, column_space(cx.delta_matrix(d - 1).matrix));
        return boundaries.at(d).contains(c.data());
    };
    out.push_back(run("graded commutativity up to coboundary", count, [](const Degrees& d) { return d.p == 0; },
                      [&](const Degrees& d) {
                          auto f = random_cocycle_of(d.m), g = random_cocycle_of(d.n);
                          auto diff = cup(cx, f, g) - signed_by(static_cast<long>(d.m * d.n), cup(cx, g, f));
                          if (d.m + d.n == 0) return diff.is_zero();
                          // The homotopy formula names the primitive: +-delta(f o g).
                          const long e = static_cast<long>(d.m * d.n + d.n + 1);
                          if (d.m >= 1 && !(diff == signed_by(e, cx.delta(circle(cx, f, g))))) return false;
                          return is_coboundary(diff);
                      }));
    return out;
}

}  // namespace identities
