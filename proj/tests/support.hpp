#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "secohom/catalog.hpp"
#include "secohom/complex.hpp"

namespace support {

using K = secohom::RationalField;
inline const K Q;

struct Named {
    std::string name;
    secohom::Triple<K> triple;
};

inline std::vector<Named> all_triples() {
    using namespace secohom;
    return {{"T2", triple_t2(Q)}, {"T3", triple_t3(Q)}, {"T4", triple_t4(Q)}, {"T5", triple_t5(Q)}, {"M2", triple_matrix(Q)}};
}

inline secohom::SecondaryComplex<K> regular(const secohom::Triple<K>& t) {
    return secohom::SecondaryComplex<K>(t, secohom::regular_bimodule(t));
}

inline mpq_class q(const char* s) { return mpq_class(s); }

}  // namespace support
