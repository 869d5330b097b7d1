// Command-line front end: sequences, operator fits, polytope screens,
// Frobenius bases and the full certification pipeline, all as JSON.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "aperyforge/certify.hpp"

using namespace aperyforge;

namespace {

struct CommonOpts {
    std::string input;
    std::string phi_text;
    int n = 0;
    long terms = 200;
    long precision = 256;
    long r = 1;
    std::string C = "1";
    std::optional<int> sign;
    std::string q0;
    bool pretty = false;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--input", o.input, "polynomial or config JSON file");
    cmd->add_option("--phi", o.phi_text, "inline polynomial expression");
    cmd->add_option("--n", o.n, "number of variables for --phi");
    cmd->add_option("--terms", o.terms, "series truncation M");
    cmd->add_option("--precision", o.precision, "working precision in bits");
    cmd->add_option("--r", o.r, "facile cover degree");
    cmd->add_option("--C", o.C, "involution constant");
    cmd->add_option("--sign", o.sign, "involution sign (+1 or -1)");
    cmd->add_option("--q0", o.q0, "recurrence seed P/Q (default unit seed)");
    cmd->add_flag("--pretty", o.pretty, "indent JSON output");
    cmd->add_flag("--json", [](std::int64_t) {}, "JSON output (default)");
    cmd->add_option("--out", o.out, "write output to a file");
}

CertifyConfig load_config(const CommonOpts& o) {
    CertifyConfig c;
    bool have_phi = false;
    if (!o.input.empty()) {
        std::ifstream in(o.input);
        if (!in.good()) throw std::runtime_error("cannot open " + o.input);
        Json j = Json::parse(in);
        if (j.contains("phi")) {
            c = config_from_json(j);
        } else {
            c.phi = laurent_from_json(j);
            c.n = c.phi.dim();
        }
        have_phi = true;
    }
    if (!o.phi_text.empty()) {
        if (o.n <= 0) throw std::runtime_error("--phi requires --n");
        c.phi = parse_laurent(o.phi_text, o.n);
        c.n = o.n;
        have_phi = true;
    }
    if (!have_phi) throw std::runtime_error("no polynomial: use --input or --phi");
    // command-line flags override file fields
    c.terms = o.terms;
    c.precision = o.precision;
    c.r_cover = o.r;
    c.C = mpz_class(o.C);
    if (o.sign) c.sign = *o.sign;
    if (!o.q0.empty()) c.q0 = rat_from_string(o.q0);
    return c;
}

int emit(const Json& j, const CommonOpts& o) {
    std::string text = o.pretty ? j.dump(2) : j.dump();
    text += "\n";
    if (!o.out.empty()) {
        std::ofstream out(o.out);
        if (!out.good()) {
            std::cerr << "cannot write " << o.out << "\n";
            return 1;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"apery-forge: exact irrationality-certificate pipeline for "
                 "integral Laurent polynomials"};
    app.require_subcommand(1);

    CommonOpts o;
    auto* seq = app.add_subcommand("sequence", "print the period sequence a_m = [phi^m]_0");
    add_common(seq, o);
    auto* fit = app.add_subcommand("fit", "fit the annihilating operator and print it");
    add_common(fit, o);
    auto* cert = app.add_subcommand("certify", "run the full certification pipeline");
    add_common(cert, o);
    auto* poly = app.add_subcommand("polytope", "Newton polytope screen report");
    add_common(poly, o);
    auto* frob = app.add_subcommand("frobenius", "Frobenius basis and denominator bound");
    add_common(frob, o);

    auto* gen = app.add_subcommand("generate", "emit catalog, vz or cellular polynomials");
    std::string kind;
    int vz_n = 2;
    std::string perm;
    gen->add_option("kind", kind, "catalog | vz | cellular")->required();
    gen->add_option("--n", vz_n, "vz polynomial index");
    gen->add_option("--perm", perm, "cellular permutation, e.g. 1,3,5,2,4");
    gen->add_flag("--pretty", o.pretty, "indent JSON output");
    gen->add_option("--out", o.out, "write output to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            if (kind == "catalog") return emit(catalog_to_json(builtin_catalog()), o);
            if (kind == "vz") {
                auto [psi, phi] = vz_polynomial(vz_n);
                Json j;
                j["schema"] = "apery-forge/1";
                j["psi"] = laurent_to_json(psi);
                j["phi"] = laurent_to_json(phi);
                return emit(j, o);
            }
            if (kind == "cellular") {
                CyclicPermutation sigma;
                std::string tok;
                for (char ch : perm + ",") {
                    if (ch == ',') {
                        if (!tok.empty()) sigma.image.push_back(std::stoi(tok));
                        tok.clear();
                    } else {
                        tok += ch;
                    }
                }
                LaurentPoly phi = cellular_laurent(sigma);
                Json j;
                j["schema"] = "apery-forge/1";
                j["convergent"] = true;
                j["phi"] = laurent_to_json(phi);
                return emit(j, o);
            }
            std::cerr << "unknown kind: " << kind << "\n";
            return 1;
        }

        CertifyConfig cfg = load_config(o);

        if (seq->parsed()) {
            RationalSequence a = constant_term_powers(cfg.phi, std::min<long>(cfg.terms, 48));
            if (cfg.terms > 48) {
                auto d = fit_operator(a, cfg.n, 3);
                if (d) {
                    std::map<long, mpq_class> seeds;
                    for (long m = 0; m < static_cast<long>(a.values.size()); ++m)
                        seeds[m] = a.values[static_cast<std::size_t>(m)];
                    a = solve_recurrence(operator_to_recurrence(*d), seeds, cfg.terms);
                }
            }
            return emit(sequence_to_json(a), o);
        }
        if (fit->parsed()) {
            RationalSequence a = constant_term_powers(cfg.phi, std::min<long>(cfg.terms, 48));
            auto d = fit_operator(a, cfg.n, 3);
            if (!d) {
                std::cerr << "no annihilating operator within bounds\n";
                return 3;
            }
            return emit(operator_to_json(*d), o);
        }
        if (poly->parsed()) {
            NewtonPolytope p = newton_polytope(cfg.phi);
            Json j;
            j["schema"] = "apery-forge/1";
            j["n"] = p.n;
            j["full-dim"] = p.full_dim;
            Json verts = Json::array();
            for (const auto& v : p.vertices) verts.push_back(v);
            j["vertices"] = std::move(verts);
            Json facets = Json::array();
            for (const auto& f : p.facets) {
                Json ff;
                Json nu = Json::array();
                for (const auto& c : f.normal) nu.push_back(c.get_str());
                ff["normal"] = std::move(nu);
                ff["offset"] = f.offset.get_str();
                facets.push_back(std::move(ff));
            }
            j["facets"] = std::move(facets);
            j["lattice-points"] = p.lattice_points.size();
            ReflexiveResult refl = is_reflexive(p);
            j["reflexive"] = refl.reflexive;
            if (!refl.reflexive) j["reason"] = refl.reason;
            j["unique-interior-point"] = has_unique_interior_point(p);
            j["positivity"] = positivity_check(cfg.phi);
            if (cfg.n >= 2 && p.full_dim) {
                Json tags = Json::array();
                for (const auto& [face, fp] : face_polynomials(cfg.phi, p, cfg.n - 1))
                    tags.push_back(is_cyclotomic(fp) ? "cyclotomic" : "non-cyclotomic");
                j["edge-tags"] = std::move(tags);
                if (cfg.n == 3) {
                    Json tags2 = Json::array();
                    for (const auto& [face, fp] : face_polynomials(cfg.phi, p, 1)) {
                        SteinbergClass c = steinberg_classify(fp);
                        tags2.push_back(c == SteinbergClass::SteinbergCatalog ? "steinberg"
                                        : c == SteinbergClass::CyclotomicProduct
                                            ? "cyclotomic-product"
                                            : "unknown");
                    }
                    j["face-tags"] = std::move(tags2);
                }
            }
            return emit(j, o);
        }
        if (frob->parsed()) {
            RationalSequence a = constant_term_powers(cfg.phi, std::min<long>(cfg.terms, 48));
            auto d = fit_operator(a, cfg.n, 3);
            if (!d) {
                std::cerr << "no annihilating operator within bounds\n";
                return 3;
            }
            long M = std::min<long>(cfg.terms, 100);
            FrobeniusBasis basis = frobenius_solutions(*d, M);
            Json j;
            j["schema"] = "apery-forge/1";
            j["n"] = basis.order;
            j["M"] = basis.truncation;
            Json rows = Json::array();
            for (const auto& row : basis.f) {
                Json r = Json::array();
                for (const auto& c : row) r.push_back(rat_to_string(c));
                rows.push_back(std::move(r));
            }
            j["f"] = std::move(rows);
            auto eps = frobenius_denominator_certificate(basis, M);
            if (std::holds_alternative<mpz_class>(eps))
                j["eps"] = std::get<mpz_class>(eps).get_str();
            else
                j["eps"] = nullptr;
            return emit(j, o);
        }
        if (cert->parsed()) {
            CertificateReport rep = run_certificate(cfg);
            emit(report_to_json(rep), o);
            return rep.exit_code();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
