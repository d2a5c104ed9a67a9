#pragma once

// JSON spec files for triples/modules and cochains, and report helpers.
//
// Triple spec ("secohom-triple/1"):
//   { "format": "secohom-triple/1", "field": "Q" | "GF(p)",
//     "A": { "dim": d, "labels": [...], "unit": vec, "mult": [vec, ...] },   // mult[i*d + j] = e_i e_j
//     "B": { ... },
//     "eps": [[...], ...],                                                   // dim A rows x dim B columns
//     "modules": [ "regular" | { "name": s, "dim": m, "left": [mat, ...], "right": [mat, ...] } ] }
// A vec is a dense array of scalars or a sparse object {"index": scalar}; a mat is an array of rows.
// Scalars are integers or strings "p/q".
//
// Cochain file ("secohom-cochain/1"):
//   { "format": "secohom-cochain/1", "degree": n, "module": index,
//     "values": [vec, ...] }                        // one M-vector per basis tensor, in offset order
//   or "entries": [ { "offset": o | "tensor": {"diag": [...], "pairs": [...]}, "value": vec }, ... ]

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "secohom/algebra.hpp"
#include "secohom/cochain.hpp"
#include "secohom/complex.hpp"
#include "secohom/error.hpp"

namespace secohom {

using Json = nlohmann::json;

inline constexpr const char* kTripleFormat = "secohom-triple/1";
inline constexpr const char* kCochainFormat = "secohom-cochain/1";
inline constexpr const char* kReportFormat = "secohom-report/1";

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

/// "Q" -> 0, "GF(p)" -> p.
inline unsigned long parse_field_name(const std::string& name) {
    if (name == "Q") return 0;
    if (name.size() > 4 && name.rfind("GF(", 0) == 0 && name.back() == ')') {
        const auto digits = name.substr(3, name.size() - 4);
        if (digits.find_first_not_of("0123456789") == std::string::npos && !digits.empty()) {
            const unsigned long p = std::stoul(digits);
            if (!PrimeField::is_prime(p) || p >= (1UL << 31)) throw ParseError("field " + name + ": modulus must be a prime below 2^31");
            return p;
        }
    }
    throw ParseError("unknown field \"" + name + "\" (expected Q or GF(p))");
}

namespace detail {

inline const Json& member(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

inline std::size_t as_size(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw ParseError(where + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

template <Field K>
typename K::Element scalar(const K& k, const Json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return k.from_int(j.get<long>());
        if (j.is_string()) return k.parse(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

template <Field K>
Vec<K> vector(const K& k, const Json& j, std::size_t n, const std::string& where) {
    Vec<K> v(n, k.zero());
    if (j.is_array()) {
        if (j.size() != n) throw ParseError(where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
        for (std::size_t i = 0; i < n; ++i) v[i] = scalar(k, j[i], where + "[" + std::to_string(i) + "]");
    } else if (j.is_object()) {
        for (const auto& [key, val] : j.items()) {
            std::size_t idx = 0;
            try {
                idx = std::stoul(key);
            } catch (const std::exception&) {
                throw ParseError(where + ": bad index \"" + key + "\"");
            }
            if (idx >= n) throw ParseError(where + ": index " + key + " out of range");
            v[idx] = scalar(k, val, where + "." + key);
        }
    } else {
        throw ParseError(where + ": expected an array or a sparse object");
    }
    return v;
}

template <Field K>
Matrix<K> matrix(const K& k, const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!j.is_array() || j.size() != rows) throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
    std::vector<Vec<K>> dense;
    for (std::size_t r = 0; r < rows; ++r) dense.push_back(vector(k, j[r], cols, where + "[" + std::to_string(r) + "]"));
    return Matrix<K>::from_dense(k, dense, cols);
}

template <Field K>
FiniteAlgebra<K> algebra(const K& k, const Json& j, const std::string& where) {
    const std::size_t d = as_size(member(j, "dim", where), where + ".dim");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    const auto& mult = member(j, "mult", where);
    if (!mult.is_array() || mult.size() != d * d)
        throw ParseError(where + ".mult: expected " + std::to_string(d * d) + " products");
    std::vector<Vec<K>> table;
    for (std::size_t t = 0; t < d * d; ++t) table.push_back(vector(k, mult[t], d, where + ".mult[" + std::to_string(t) + "]"));
    auto unit = vector(k, member(j, "unit", where), d, where + ".unit");
    try {
        return validate_algebra(k, d, std::move(labels), table, unit);
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

}  // namespace detail

/// A parsed spec file: the triple and its modules.
template <Field K>
struct TripleSpec {
    Triple<K> triple;
    std::vector<std::string> module_names;
    std::vector<Bimodule<K>> modules;

    const Bimodule<K>& module(std::size_t i) const {
        if (i >= modules.size()) throw PreconditionError("spec has no module " + std::to_string(i));
        return modules[i];
    }
};

template <Field K>
TripleSpec<K> load_triple_spec(const K& k, const Json& j, const std::string& where = "spec") {
    if (!j.is_object() || j.value("format", "") != kTripleFormat)
        throw ParseError(where + ": expected \"format\": \"" + std::string(kTripleFormat) + "\"");
    auto A = detail::algebra(k, detail::member(j, "A", where), where + ".A");
    auto B = detail::algebra(k, detail::member(j, "B", where), where + ".B");
    auto eps = detail::matrix(k, detail::member(j, "eps", where), A.dim(), B.dim(), where + ".eps");
    std::optional<Triple<K>> t;
    try {
        t.emplace(validate_triple(std::move(A), std::move(B), std::move(eps)));
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
    TripleSpec<K> spec{std::move(*t), {}, {}};
    Json mods = j.contains("modules") ? j.at("modules") : Json::array({"regular"});
    if (!mods.is_array()) throw ParseError(where + ".modules: expected an array");
    for (std::size_t i = 0; i < mods.size(); ++i) {
        const std::string w = where + ".modules[" + std::to_string(i) + "]";
        const auto& m = mods[i];
        if (m.is_string()) {
            if (m.get<std::string>() != "regular") throw ParseError(w + ": unknown module \"" + m.get<std::string>() + "\"");
            spec.module_names.push_back("regular");
            spec.modules.push_back(regular_bimodule(spec.triple));
            continue;
        }
        const std::size_t dim = detail::as_size(detail::member(m, "dim", w), w + ".dim");
        const std::size_t da = spec.triple.A().dim();
        std::vector<Matrix<K>> left, right;
        const auto& L = detail::member(m, "left", w);
        const auto& R = detail::member(m, "right", w);
        if (!L.is_array() || L.size() != da || !R.is_array() || R.size() != da)
            throw ParseError(w + ": needs one left and one right matrix per A-basis element");
        for (std::size_t a = 0; a < da; ++a) {
            left.push_back(detail::matrix(k, L[a], dim, dim, w + ".left[" + std::to_string(a) + "]"));
            right.push_back(detail::matrix(k, R[a], dim, dim, w + ".right[" + std::to_string(a) + "]"));
        }
        try {
            spec.modules.push_back(validate_bimodule(spec.triple, dim, std::move(left), std::move(right)));
        } catch (const ValidationError& e) {
            throw ValidationError(w + ": " + e.what());
        }
        spec.module_names.push_back(m.value("name", "module" + std::to_string(i)));
    }
    return spec;
}

template <Field K>
TripleSpec<K> load_triple_spec_file(const K& k, const std::string& path) {
    return load_triple_spec(k, read_json_file(path), path);
}

/// Field named in a spec file.
inline std::string spec_field(const Json& j, const std::string& where = "spec") {
    if (!j.is_object() || !j.contains("field")) return "Q";
    if (!j.at("field").is_string()) throw ParseError(where + ".field: expected a string");
    return j.at("field").get<std::string>();
}

struct CochainHeader {
    std::size_t degree;
    std::size_t module;
};

inline CochainHeader cochain_header(const Json& j, const std::string& where = "cochain") {
    if (!j.is_object() || j.value("format", "") != kCochainFormat)
        throw ParseError(where + ": expected \"format\": \"" + std::string(kCochainFormat) + "\"");
    CochainHeader h{detail::as_size(detail::member(j, "degree", where), where + ".degree"), 0};
    if (j.contains("module")) h.module = detail::as_size(j.at("module"), where + ".module");
    return h;
}

template <Field K>
Cochain<K> load_cochain(const SecondaryComplex<K>& cx, const Json& j, const std::string& where = "cochain") {
    const auto h = cochain_header(j, where);
    Cochain<K> f = cx.zero(h.degree);
    const K& k = cx.field();
    const std::size_t dm = cx.module().dim();
    if (j.contains("values")) {
        const auto& vals = j.at("values");
        if (!vals.is_array() || vals.size() != f.tensor_count())
            throw ParseError(where + ".values: expected " + std::to_string(f.tensor_count()) + " values");
        for (std::size_t o = 0; o < vals.size(); ++o)
            f.set_value(o, detail::vector(k, vals[o], dm, where + ".values[" + std::to_string(o) + "]"));
    } else if (j.contains("entries")) {
        const auto& entries = j.at("entries");
        if (!entries.is_array()) throw ParseError(where + ".entries: expected an array");
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const std::string w = where + ".entries[" + std::to_string(e) + "]";
            const auto& entry = entries[e];
            std::uint64_t offset = 0;
            if (entry.contains("offset")) {
                offset = detail::as_size(entry.at("offset"), w + ".offset");
                if (offset >= f.tensor_count()) throw ParseError(w + ".offset: out of range");
            } else {
                const auto& t = detail::member(entry, "tensor", w);
                TensorIndex idx;
                idx.diag = detail::member(t, "diag", w + ".tensor").get<std::vector<std::uint32_t>>();
                if (t.contains("pairs")) idx.pairs = t.at("pairs").get<std::vector<std::uint32_t>>();
                try {
                    offset = f.codec().encode(idx);
                } catch (const PreconditionError& ex) {
                    throw ParseError(w + ".tensor: " + ex.what());
                }
            }
            auto v = detail::vector(k, detail::member(entry, "value", w), dm, w + ".value");
            auto cur = f.value(offset);
            for (std::size_t r = 0; r < dm; ++r) cur[r] = k.add(cur[r], v[r]);
            f.set_value(offset, cur);
        }
    } else {
        throw ParseError(where + ": needs \"values\" or \"entries\"");
    }
    return f;
}

/// Sparse cochain document: only nonzero tensor values are listed.
template <Field K>
Json cochain_to_json(const Cochain<K>& f, std::size_t module = 0) {
    const K& k = f.field();
    Json entries = Json::array();
    for (std::uint64_t o = 0; o < f.tensor_count(); ++o) {
        const auto v = f.value(o);
        if (is_zero(k, v)) continue;
        const auto idx = f.codec().decode(o);
        Json value = Json::object();
        for (std::size_t r = 0; r < v.size(); ++r)
            if (!k.is_zero(v[r])) value[std::to_string(r)] = k.to_string(v[r]);
        entries.push_back({{"offset", o}, {"tensor", {{"diag", idx.diag}, {"pairs", idx.pairs}}}, {"value", value}});
    }
    return {{"format", kCochainFormat}, {"degree", f.degree()}, {"module", module}, {"entries", entries}};
}

template <Field K>
Json vector_to_json(const K& k, const Vec<K>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(k.to_string(x));
    return out;
}

template <Field K>
Json matrix_to_json(const Matrix<K>& m) {
    Json out = Json::array();
    for (const auto& row : m.dense()) out.push_back(vector_to_json(m.field(), row));
    return out;
}

template <Field K>
Json algebra_to_json(const FiniteAlgebra<K>& a) {
    const K& k = a.field();
    Json mult = Json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Json v = Json::object();
            for (const auto& [q, x] : a.basis_product(i, j)) v[std::to_string(q)] = k.to_string(x);
            mult.push_back(v);
        }
    return {{"dim", a.dim()}, {"labels", a.labels()}, {"unit", vector_to_json(k, to_dense(k, a.unit(), a.dim()))}, {"mult", mult}};
}

/// Deterministic serialization: keys sorted, two-space indent, trailing newline.
inline std::string emit_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace secohom
