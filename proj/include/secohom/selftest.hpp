#pragma once

// A compact run of the engine's invariant suites, used by `secohom selftest`.

#include <cstddef>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "secohom/catalog.hpp"
#include "secohom/complex.hpp"
#include "secohom/extensions.hpp"
#include "secohom/gerstenhaber.hpp"
#include "secohom/hodge.hpp"
#include "secohom/poly.hpp"

namespace secohom {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

namespace detail {

inline CheckResult run_check(const std::string& name, const std::function<std::string()>& body) {
    try {
        auto failure = body();
        return {name, failure.empty(), failure};
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

}  // namespace detail

inline std::vector<CheckResult> run_selftest(std::uint64_t seed = 20240601) {
    using K = RationalField;
    const K Q;
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    auto catalog = [&] {
        return std::vector<std::pair<std::string, Triple<K>>>{{"T2", triple_t2(Q)}, {"T3", triple_t3(Q)}, {"T4", triple_t4(Q)},
                                                             {"T5", triple_t5(Q)}, {"M2", triple_matrix(Q)}};
    };

    for (auto& [name, t] : catalog()) {
        out.push_back(detail::run_check("delta squared vanishes on " + name, [&]() -> std::string {
            SecondaryComplex<K> cx(t, regular_bimodule(t));
            for (std::size_t n = 0; n <= 2; ++n)
                if (!(cx.delta_matrix(n + 1).matrix * cx.delta_matrix(n).matrix).is_zero())
                    return "nonzero product at n=" + std::to_string(n);
            return "";
        }));
        out.push_back(detail::run_check("H0 and H1 closed forms on " + name, [&]() -> std::string {
            auto M = regular_bimodule(t);
            SecondaryComplex<K> cx(t, M);
            if (cx.cohomology(0).dim() != invariant_submodule(t, M).dim()) return "H0 differs from M^A";
            auto h1 = derivation_space(t, M, DerivationKind::BLinear).dim() - derivation_space(t, M, DerivationKind::Inner).dim();
            if (cx.cohomology(1).dim() != h1) return "H1 differs from Der_B/Inn";
            return "";
        }));
        out.push_back(detail::run_check("ker Phi2 matches derivation quotient on " + name, [&]() -> std::string {
            auto M = regular_bimodule(t);
            SecondaryComplex<K> cx(t, M);
            auto expected = derivation_space(t, M, DerivationKind::OnB).dim() - pullback_image(t, M).dim();
            auto got = phi_induced(cx, 2).kernel_dim;
            if (got != expected) return "got " + std::to_string(got) + ", expected " + std::to_string(expected);
            return "";
        }));
    }

    out.push_back(detail::run_check("B = k agrees with ordinary cohomology", [&]() -> std::string {
        auto t = triple_t2(Q);
        SecondaryComplex<K> cx(t, regular_bimodule(t));
        auto ord = cx.ordinary();
        for (std::size_t n = 0; n <= 3; ++n)
            if (cx.cohomology(n).dim() != ord.cohomology(n).dim()) return "degree " + std::to_string(n);
        return "";
    }));

    for (auto& [name, t] : catalog()) {
        if (name != "T2" && name != "T5") continue;
        SecondaryComplex<K> cx(t, regular_bimodule(t));
        out.push_back(detail::run_check("Gerstenhaber identities on " + name, [&]() -> std::string {
            const auto pi = pi_cochain(cx);
            if (!(cx.delta(identity_cochain(cx)) == pi)) return "delta(id) != pi";
            for (int it = 0; it < 5; ++it)
                for (std::size_t m = 0; m <= 2; ++m)
                    for (std::size_t n = 0; n <= 2; ++n) {
                        auto f = random_cochain(Q, cx.shape(m), rng), g = random_cochain(Q, cx.shape(n), rng);
                        if (!(cup(cx, f, g) == comp_i(cx, comp_i(cx, pi, f, 0), g, m))) return "cup vs insertion";
                        if (!(cx.delta(f) == bracket(cx, f, -pi))) return "delta f != [f, -pi]";
                        if (m + n <= 3) {
                            auto lhs = cx.delta(cup(cx, f, g));
                            auto rhs = cup(cx, cx.delta(f), g);
                            auto second = cup(cx, f, cx.delta(g));
                            if (m % 2) rhs -= second;
                            else rhs += second;
                            if (!(lhs == rhs)) return "Leibniz";
                        }
                    }
            return "";
        }));
        out.push_back(detail::run_check("Hodge idempotents on " + name, [&]() -> std::string {
            for (std::size_t n = 1; n <= 3; ++n) {
                auto f = random_cochain(Q, cx.shape(n), rng);
                if (!minimal_polynomial_apply(cx, f).is_zero()) return "mu_n(s_n) != 0";
                Cochain<K> sum(Q, f.shape());
                for (std::size_t k = 1; k <= n; ++k) {
                    auto e = idempotent_apply(cx, k, f);
                    sum += e;
                    if (!(idempotent_apply(cx, k, e) == e)) return "not idempotent";
                    if (n <= 2 && !(cx.delta(e) == idempotent_apply(cx, k, cx.delta(f)))) return "delta does not commute";
                }
                if (!(sum == f)) return "idempotents do not sum to 1";
            }
            std::size_t total = 0;
            for (const auto& c : hodge_decomposition(cx, 2)) total += c.dim;
            if (total != cx.cohomology(2).dim()) return "Hodge dims do not sum to H2";
            return "";
        }));
        out.push_back(detail::run_check("extension round trip on " + name, [&]() -> std::string {
            auto h2 = cx.cohomology(2);
            for (int it = 0; it < 3; ++it) {
                auto c = random_cocycle(cx, h2, rng);
                auto e = extension_from_cocycle(cx, c);
                if (!classes_equivalent(cx, cocycle_from_section(cx, e), c).equivalent) return "class changed";
                if (!key_identity_holds(cx, c)) return "key identity";
                if (!first_obstruction(cx, c).closed) return "obstruction not closed";
            }
            return "";
        }));
    }

    out.push_back(detail::run_check("k[X]/<f'> dimensions", [&]() -> std::string {
        for (unsigned n = 2; n <= 6; ++n) {
            auto d = ker_phi2_dim_1var(Poly<K>::monomial(Q, n));
            if (!d || *d != n - 1) return "X^" + std::to_string(n);
        }
        for (unsigned p : {2u, 3u, 5u}) {
            PrimeField F(p);
            auto f = Poly<PrimeField>::monomial(F, 1) + Poly<PrimeField>::monomial(F, p);
            auto d = ker_phi2_dim_1var(f);
            if (!d || *d != 0) return "X + X^" + std::to_string(p) + " over GF(" + std::to_string(p) + ")";
        }
        return "";
    }));
    out.push_back(detail::run_check("sigma cocycles", [&]() -> std::string {
        auto f = parse_poly(Q, "X^2");
        if (!verify_sigma_cocycle(f, parse_poly(Q, "X"), 6)) return "sigma_X not closed";
        if (!deformed_epsilon_check(f, parse_poly(Q, "1"), 6)) return "eps_t deformation";
        return "";
    }));
    return out;
}

}  // namespace secohom
