// secohom: command-line front end.
//
// Exit codes: 0 success, 1 property failure, 2 parse/validation error,
// 3 size cap exceeded, 4 precondition error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "secohom/complex.hpp"
#include "secohom/extensions.hpp"
#include "secohom/gerstenhaber.hpp"
#include "secohom/hodge.hpp"
#include "secohom/io.hpp"
#include "secohom/poly.hpp"
#include "secohom/selftest.hpp"

using namespace secohom;

namespace {

enum Exit { kOk = 0, kPropertyFailure = 1, kParse = 2, kSizeCap = 3, kPrecondition = 4 };

struct Options {
    std::string output = "text";
    std::uint64_t max_basis = kDefaultMaxBasis;
    std::string spec;
    std::size_t module = 0;
    std::string degrees = "0..2";
    std::string flavor = "secondary";
    std::size_t degree = 2;
    std::vector<std::string> cochains;
    std::string cocycle;
    bool roundtrip = false;
    std::string out_file;
    // poly
    std::string field = "Q";
    std::string f, g, q, p, a, b;
    long bound = 6;
    long probe_degree = 3;
};

struct Report {
    Json data = Json::object();
    std::ostringstream text;
    int status = kOk;
};

std::pair<std::size_t, std::size_t> parse_degree_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            auto n = std::stoul(s);
            return {n, n};
        }
        auto lo = std::stoul(s.substr(0, dots)), hi = std::stoul(s.substr(dots + 2));
        if (lo > hi) throw ParseError("empty degree range " + s);
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw ParseError("bad degree range \"" + s + "\" (expected a..b)");
    }
}

template <Field K>
SecondaryComplex<K> complex_from(const TripleSpec<K>& spec, const Options& o) {
    return SecondaryComplex<K>(spec.triple, spec.module(o.module), o.max_basis);
}

template <Field K>
Cochain<K> read_cochain(const SecondaryComplex<K>& cx, const std::string& path) {
    return load_cochain(cx, read_json_file(path), path);
}

void write_cochain_output(const Json& cochain, const Options& o, Report& r) {
    if (o.out_file.empty()) return;
    std::ofstream out(o.out_file);
    if (!out) throw ParseError(o.out_file + ": cannot write");
    out << emit_report(cochain);
    r.text << "wrote " << o.out_file << "\n";
}

template <Field K>
void describe_cochain(const Cochain<K>& f, Report& r) {
    const auto doc = cochain_to_json(f);
    r.text << "degree " << f.degree() << ", " << doc["entries"].size() << " nonzero values\n";
    for (const auto& e : doc["entries"]) {
        r.text << "  diag " << e["tensor"]["diag"].dump() << " pairs " << e["tensor"]["pairs"].dump() << " -> "
               << e["value"].dump() << "\n";
    }
}

template <Field K>
void cmd_validate(const TripleSpec<K>& spec, const Options&, Report& r) {
    const auto& t = spec.triple;
    Json mods = Json::array();
    for (std::size_t i = 0; i < spec.modules.size(); ++i)
        mods.push_back({{"name", spec.module_names[i]}, {"dim", spec.modules[i].dim()}});
    r.data = {{"valid", true}, {"dim_A", t.A().dim()}, {"dim_B", t.B().dim()}, {"A_commutative", t.A().is_commutative()},
              {"modules", mods}};
    r.text << "valid triple: dim A = " << t.A().dim() << ", dim B = " << t.B().dim()
           << (t.A().is_commutative() ? ", A commutative" : ", A noncommutative") << "\n";
    for (std::size_t i = 0; i < spec.modules.size(); ++i)
        r.text << "module " << i << " (" << spec.module_names[i] << "): dim " << spec.modules[i].dim() << "\n";
}

template <Field K>
Json cohomology_entry(const CohomologySpace<K>& h, std::uint64_t cochains) {
    Json reps = Json::array();
    for (const auto& rep : h.representatives()) reps.push_back(cochain_to_json(rep)["entries"]);
    return {{"degree", h.degree()},
            {"dim_cochains", cochains},
            {"dim_cocycles", h.cocycles().dim()},
            {"dim_coboundaries", h.coboundaries().dim()},
            {"dim", h.dim()},
            {"representatives", reps}};
}

template <Field K>
void cmd_cohomology(const TripleSpec<K>& spec, const Options& o, Report& r) {
    auto [lo, hi] = parse_degree_range(o.degrees);
    if (o.flavor != "secondary" && o.flavor != "ordinary") throw ParseError("flavor must be ordinary or secondary");
    auto cx = complex_from(spec, o);
    Json rows = Json::array();
    const bool secondary = o.flavor == "secondary";
    r.text << "degree  dim C^n  dim Z^n  dim B^n  dim H^n" << (secondary ? "  ker Phi" : "") << "\n";
    for (std::size_t n = lo; n <= hi; ++n) {
        Json row;
        if (secondary) {
            auto h = cx.cohomology(n);
            row = cohomology_entry(h, cx.dim(n));
            auto phi = phi_induced(cx, n);
            row["ker_phi"] = phi.kernel_dim;
            row["image_phi"] = phi.image_dim;
        } else {
            auto ord = cx.ordinary();
            row = cohomology_entry(ord.cohomology(n), ord.dim(n));
        }
        r.text << std::left << std::setw(8) << n << std::setw(9) << row["dim_cochains"].get<std::uint64_t>()
               << std::setw(9) << row["dim_cocycles"].get<std::size_t>() << std::setw(9)
               << row["dim_coboundaries"].get<std::size_t>();
        if (secondary) r.text << std::setw(9) << row["dim"].get<std::size_t>() << row["ker_phi"].get<std::size_t>();
        else r.text << row["dim"].get<std::size_t>();
        r.text << "\n";
        rows.push_back(row);
    }
    r.data = {{"flavor", o.flavor}, {"module", o.module}, {"degrees", rows}};
}

template <Field K>
void cmd_phi(const TripleSpec<K>& spec, const Options& o, Report& r) {
    auto cx = complex_from(spec, o);
    auto phi = phi_induced(cx, o.degree);
    r.data = {{"degree", o.degree},
              {"dim_secondary", phi.secondary_dim},
              {"dim_ordinary", phi.ordinary_dim},
              {"kernel_dim", phi.kernel_dim},
              {"image_dim", phi.image_dim},
              {"matrix", matrix_to_json(phi.matrix)}};
    r.text << "Phi_" << o.degree << ": H^" << o.degree << " secondary (dim " << phi.secondary_dim << ") -> ordinary (dim "
           << phi.ordinary_dim << "), kernel " << phi.kernel_dim << ", image " << phi.image_dim << "\n";
    if (o.degree == 2) {
        const auto& M = spec.module(o.module);
        auto quotient = derivation_space(spec.triple, M, DerivationKind::OnB).dim() - pullback_image(spec.triple, M).dim();
        r.data["derivation_quotient_dim"] = quotient;
        r.text << "dim Der_k(B,M) / eps*(Der_k(A,M)) = " << quotient << "\n";
        if (quotient != phi.kernel_dim) r.status = kPropertyFailure;
    }
}

template <Field K>
void cmd_hodge(const TripleSpec<K>& spec, const Options& o, Report& r) {
    auto cx = complex_from(spec, o);
    auto parts = hodge_decomposition(cx, o.degree);
    const auto total = cx.cohomology(o.degree).dim();
    Json comps = Json::array();
    std::size_t sum = 0;
    r.text << "Hodge decomposition of H^" << o.degree << " (dim " << total << ")\n";
    for (const auto& c : parts) {
        comps.push_back({{"k", c.k}, {"dim", c.dim}});
        sum += c.dim;
        r.text << "  H^{" << c.k << "," << o.degree - c.k << "} = " << c.dim << "\n";
    }
    r.data = {{"degree", o.degree}, {"components", comps}, {"dim_total", total}};
    if (sum != total) r.status = kPropertyFailure;
}

template <Field K>
void cmd_product(const TripleSpec<K>& spec, const Options& o, Report& r, bool is_cup) {
    if (o.cochains.size() != 2) throw ParseError("need exactly two --cochain files");
    auto cx = complex_from(spec, o);
    auto f = read_cochain(cx, o.cochains[0]);
    auto g = read_cochain(cx, o.cochains[1]);
    auto h = is_cup ? cup(cx, f, g) : bracket(cx, f, g);
    r.data = {{"result", cochain_to_json(h, o.module)}};
    describe_cochain(h, r);
    write_cochain_output(r.data["result"], o, r);
}

template <Field K>
void cmd_extension(const TripleSpec<K>& spec, const Options& o, Report& r) {
    auto cx = complex_from(spec, o);
    auto c = read_cochain(cx, o.cocycle);
    auto e = extension_from_cocycle(cx, c);
    const bool family = family_product_consistent(cx, c, e);
    r.data = {{"X", algebra_to_json(e.algebra())}, {"eps_X", matrix_to_json(e.eps())}, {"family_product_consistent", family}};
    r.text << "extension X of dimension " << e.algebra().dim() << " (A-part " << e.dim_a << ", M-part " << e.dim_m << ")\n";
    r.text << "unit 1_X = " << vector_to_json(cx.field(), to_dense(cx.field(), e.algebra().unit(), e.algebra().dim())).dump() << "\n";
    r.text << "product family consistent with eps_X: " << (family ? "yes" : "no") << "\n";
    if (!family) r.status = kPropertyFailure;
    if (o.roundtrip) {
        auto cs = cocycle_from_section(cx, e);
        const bool same = classes_equivalent(cx, cs, c).equivalent;
        r.data["roundtrip_class_preserved"] = same;
        r.text << "round trip preserves the class: " << (same ? "yes" : "no") << "\n";
        if (!same) r.status = kPropertyFailure;
    }
}

template <Field K>
void cmd_obstruction(const TripleSpec<K>& spec, const Options& o, Report& r) {
    auto cx = complex_from(spec, o);
    auto c = read_cochain(cx, o.cocycle);
    auto ob = first_obstruction(cx, c);
    r.data = {{"closed", ob.closed}, {"vanishes", ob.vanishes}, {"obstruction", cochain_to_json(ob.value, o.module)}};
    r.text << "c o c is " << (ob.closed ? "a cocycle" : "NOT a cocycle") << "; its class "
           << (ob.vanishes ? "vanishes" : "is nonzero") << " in H^3\n";
    if (!ob.closed) r.status = kPropertyFailure;
}

template <Field K>
void run_spec_command(const K& k, const Json& j, const std::string& command, const Options& o, Report& r) {
    auto spec = load_triple_spec(k, j, o.spec);
    if (command == "validate") cmd_validate(spec, o, r);
    else if (command == "cohomology") cmd_cohomology(spec, o, r);
    else if (command == "phi") cmd_phi(spec, o, r);
    else if (command == "hodge") cmd_hodge(spec, o, r);
    else if (command == "cup") cmd_product(spec, o, r, true);
    else if (command == "bracket") cmd_product(spec, o, r, false);
    else if (command == "extension") cmd_extension(spec, o, r);
    else if (command == "obstruction") cmd_obstruction(spec, o, r);
}

template <Field K>
void run_poly_command(const K& k, const std::string& command, const Options& o, Report& r) {
    auto need = [&](const std::string& s, const char* flag) {
        if (s.empty()) throw ParseError(std::string("missing --") + flag);
        return parse_poly(k, s);
    };
    if (command == "kerphi") {
        auto f = need(o.f, "f");
        auto d = ker_phi2_dim_1var(f);
        r.data = {{"f", f.to_string()}, {"ker_phi2_dim", d ? Json(*d) : Json("infinite")}};
        r.text << (d ? std::to_string(*d) : std::string("infinite")) << "\n";
    } else if (command == "jacobian") {
        auto f = need(o.f, "f"), g = need(o.g, "g");
        auto v = jacobian_cokernel_probe(f, g, o.probe_degree);
        r.data = {{"f", f.to_string()}, {"g", g.to_string()}, {"degree", o.probe_degree}, {"cokernel_dim", v}};
        r.text << v << "\n";
    } else if (command == "sigma") {
        auto f = need(o.f, "f");
        bool ok = false;
        if (!o.g.empty()) {
            auto g = need(o.g, "g"), a = need(o.a, "a"), b = need(o.b, "b");
            ok = verify_sigma2_cocycle(f, g, a, b, o.bound);
        } else {
            ok = verify_sigma_cocycle(f, need(o.q, "q"), o.bound);
        }
        r.data = {{"f", f.to_string()}, {"bound", o.bound}, {"cocycle", ok}};
        r.text << (ok ? "cocycle" : "NOT a cocycle") << " up to degree " << o.bound << "\n";
        if (!ok) r.status = kPropertyFailure;
    } else if (command == "deform") {
        auto f = need(o.f, "f"), p = need(o.p, "p");
        const bool ok = deformed_epsilon_check(f, p, o.bound);
        r.data = {{"f", f.to_string()}, {"p", p.to_string()}, {"bound", o.bound}, {"matches_sigma_p", ok}};
        r.text << (ok ? "t-linear term equals sigma_p" : "t-linear term differs from sigma_p") << " up to degree " << o.bound << "\n";
        if (!ok) r.status = kPropertyFailure;
    }
}

void run_selftest_command(Report& r) {
    Json checks = Json::array();
    for (const auto& c : run_selftest()) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        r.text << (c.passed ? "PASS  " : "FAIL  ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        if (!c.passed) r.status = kPropertyFailure;
    }
    r.data = {{"checks", checks}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secohom: secondary Hochschild cohomology of finite-dimensional triples"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    if (const char* env = std::getenv("SECOHOM_MAX_BASIS")) {
        try {
            o.max_basis = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: SECOHOM_MAX_BASIS must be a positive integer\n";
            return kParse;
        }
    }
    app.add_option("--output", o.output, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--max-basis", o.max_basis, "refuse cochain spaces with more coordinates than this");

    auto spec_cmd = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("spec", o.spec, "triple spec file")->required();
        sub->add_option("--module", o.module, "module index in the spec");
        return sub;
    };
    spec_cmd("validate", "check all axioms of a spec file");
    auto* coh = spec_cmd("cohomology", "cohomology dimensions and representatives");
    coh->add_option("--degrees", o.degrees, "degree range a..b");
    coh->add_option("--flavor", o.flavor, "ordinary or secondary");
    spec_cmd("phi", "the comparison map to ordinary cohomology")->add_option("--degree", o.degree);
    spec_cmd("hodge", "Hodge decomposition")->add_option("--degree", o.degree);
    for (const char* name : {"cup", "bracket"}) {
        auto* sub = spec_cmd(name, std::string(name) + " of two cochains");
        sub->add_option("--cochain", o.cochains, "cochain file (twice)")->required();
        sub->add_option("--out", o.out_file, "write the result cochain here");
    }
    auto* ext = spec_cmd("extension", "square-zero extension from a 2-cocycle");
    ext->add_option("--cocycle", o.cocycle)->required();
    ext->add_flag("--roundtrip", o.roundtrip, "recover the cocycle from the canonical section");
    spec_cmd("obstruction", "class of c o c in H^3")->add_option("--cocycle", o.cocycle)->required();

    auto* poly = app.add_subcommand("poly", "polynomial computations");
    poly->require_subcommand(1);
    poly->fallthrough();
    auto poly_cmd = [&](const std::string& name, const std::string& help) {
        auto* sub = poly->add_subcommand(name, help);
        sub->add_option("--field", o.field, "Q or GF(p)");
        sub->add_option("--f", o.f, "polynomial in X (and Y)");
        return sub;
    };
    poly_cmd("kerphi", "dim k[X]/<f'>");
    auto* jac = poly_cmd("jacobian", "finite-degree Jacobian cokernel probe");
    jac->add_option("--g", o.g);
    jac->add_option("--degree", o.probe_degree);
    auto* sig = poly_cmd("sigma", "check that sigma_q (or sigma_{a,b}) is a cocycle");
    sig->add_option("--q", o.q);
    sig->add_option("--g", o.g);
    sig->add_option("--a", o.a);
    sig->add_option("--b", o.b);
    sig->add_option("--bound", o.bound);
    auto* def = poly_cmd("deform", "t-linear term of eps_t(t) = f + t p against sigma_p");
    def->add_option("--p", o.p);
    def->add_option("--bound", o.bound);
    app.add_subcommand("selftest", "run the invariant suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    Report r;
    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "selftest") {
            run_selftest_command(r);
        } else if (command == "poly") {
            const std::string sub = poly->get_subcommands().front()->get_name();
            command += " " + sub;
            const auto p = parse_field_name(o.field);
            if (p == 0) run_poly_command(RationalField{}, sub, o, r);
            else run_poly_command(PrimeField(p), sub, o, r);
            r.data["field"] = o.field;
        } else {
            const Json j = read_json_file(o.spec);
            const auto field = spec_field(j, o.spec);
            const auto p = parse_field_name(field);
            if (p == 0) run_spec_command(RationalField{}, j, command, o, r);
            else run_spec_command(PrimeField(p), j, command, o, r);
            r.data["field"] = field;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const SizeCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSizeCap;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kPropertyFailure;
    }

    if (o.output == "json") {
        Json report = {{"format", kReportFormat}, {"command", command}, {"status", r.status}, {"result", r.data}};
        std::cout << emit_report(report);
    } else {
        std::cout << r.text.str();
    }
    return r.status;
}
