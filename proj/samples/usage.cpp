// Small tour of the library on k[x]/(x^3) over k[y]/(y^2), y -> x^2.

#include <iostream>
#include <random>

#include "secohom/catalog.hpp"
#include "secohom/extensions.hpp"
#include "secohom/gerstenhaber.hpp"
#include "secohom/hodge.hpp"

int main() {
    using namespace secohom;
    const RationalField Q;
    auto t = triple_t5(Q);
    SecondaryComplex<RationalField> cx(t, regular_bimodule(t));

    for (std::size_t n = 0; n <= 2; ++n) {
        auto h = cx.cohomology(n);
        std::cout << "H^" << n << ": dim " << h.dim() << ", ker Phi " << phi_induced(cx, n).kernel_dim << "\n";
    }

    auto h2 = cx.cohomology(2);
    auto c = h2.representatives().back();
    auto e = extension_from_cocycle(cx, c);
    std::cout << "extension algebra has dimension " << e.algebra().dim() << "\n";
    std::cout << "obstruction of c vanishes: " << std::boolalpha << first_obstruction(cx, c).vanishes << "\n";

    for (const auto& piece : hodge_decomposition(cx, 2)) std::cout << "Hodge piece " << piece.k << ": " << piece.dim << "\n";

    std::mt19937_64 rng(1);
    auto f = random_cochain(Q, cx.shape(1), rng);
    auto g = random_cochain(Q, cx.shape(1), rng);
    std::cout << "[f, g] is a " << bracket(cx, f, g).degree() << "-cochain\n";
}
