#include "aperyforge/certify.hpp"

#include <algorithm>

namespace aperyforge {

bool positivity_check(const LaurentPoly& phi) {
    if (phi.is_zero()) return false;
    LaurentPoly neg = phi.negate_variables();
    for (const auto& [e, c] : neg.terms())
        if (c <= 0) return false;
    return true;
}

namespace {

const char* flag_name(FlagState s) {
    switch (s) {
        case FlagState::Pass: return "pass";
        case FlagState::ScreenedPass: return "screened-pass";
        case FlagState::Fail: return "fail";
        case FlagState::Inconclusive: return "inconclusive";
        default: return "skipped";
    }
}

struct StageError : std::runtime_error {
    std::string stage;
    StageError(std::string st, const std::string& what)
        : std::runtime_error(what), stage(std::move(st)) {}
};

template <typename F>
auto stage(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

} // namespace

std::string CertificateReport::verdict_string() const {
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) {
            if (!s.empty()) s += ",";
            s += x;
        }
        return s;
    };
    switch (verdict) {
        case Verdict::Certified: return "CERTIFIED-AT-DESK-SCALE";
        case Verdict::HypothesisFailed: return "HYPOTHESIS-FAILED(" + join(failed) + ")";
        default: return "INCONCLUSIVE(" + join(inconclusive) + ")";
    }
}

CertificateReport run_certificate(const CertifyConfig& config) {
    CertificateReport rep;
    rep.config = config;
    auto flag = [&](const std::string& name, FlagState st) {
        rep.hypotheses.emplace_back(name, st);
        if (st == FlagState::Fail) rep.failed.push_back(name);
        if (st == FlagState::Inconclusive) rep.inconclusive.push_back(name);
    };

    try {
        if (config.terms < 40) throw StageError("config", "terms must be >= 40");
        if (config.r_cover < 1) throw StageError("config", "r must be >= 1");
        if (config.precision < 64) throw StageError("config", "precision must be >= 64");
        if (config.phi.dim() != config.n) throw StageError("config", "dimension mismatch");
        const int n = config.n;

        // polytope screens
        NewtonPolytope poly = stage("polytope", [&] { return newton_polytope(config.phi); });
        if (config.check_polytope) {
            ReflexiveResult refl = is_reflexive(poly);
            flag("reflexive", refl.reflexive ? FlagState::Pass : FlagState::Fail);
            flag("unique-interior-point",
                 has_unique_interior_point(poly) ? FlagState::Pass : FlagState::Fail);
        } else {
            flag("reflexive", FlagState::Skipped);
            flag("unique-interior-point", FlagState::Skipped);
        }
        flag("positivity", !config.check_positivity ? FlagState::Skipped
                           : positivity_check(config.phi) ? FlagState::Pass
                                                          : FlagState::Fail);
        if (config.check_temperedness && n >= 2 && poly.full_dim) {
            bool edges_ok = stage("temperedness", [&] {
                for (const auto& [face, fp] : face_polynomials(config.phi, poly, n - 1))
                    if (!is_cyclotomic(fp)) return false;
                return true;
            });
            bool faces_ok = true;
            if (n == 3) {
                faces_ok = stage("temperedness", [&] {
                    for (const auto& [face, fp] : face_polynomials(config.phi, poly, 1))
                        if (steinberg_classify(fp) == SteinbergClass::Unknown) return false;
                    return true;
                });
            }
            // sufficient conditions only: failure of the screen is inconclusive
            flag("temperedness", edges_ok && faces_ok ? FlagState::ScreenedPass
                                                      : FlagState::Inconclusive);
        } else {
            flag("temperedness",
                 config.check_temperedness ? FlagState::ScreenedPass : FlagState::Skipped);
        }

        // period sequence: direct prefix, extended through the fitted recurrence
        const long direct = std::min<long>(config.terms, 48);
        rep.a = stage("sequence", [&] { return constant_term_powers(config.phi, direct); });

        auto fitted = stage("fit", [&] { return fit_operator(rep.a, n, 3); });
        if (!fitted) throw StageError("fit", "no annihilating operator within bounds");
        rep.fitted = *fitted;

        PolynomialRecurrence arec = operator_to_recurrence(*fitted);
        if (config.terms > direct) {
            std::map<long, mpq_class> seeds;
            for (long m = 0; m <= direct; ++m) seeds[m] = rep.a.values[static_cast<std::size_t>(m)];
            rep.a = stage("sequence-extend",
                          [&] { return solve_recurrence(arec, seeds, config.terms); });
        }

        rep.structural = structural_checks(*fitted, n);
        flag("operator-integral", rep.structural.integral ? FlagState::Pass : FlagState::Fail);
        flag("mum", rep.structural.mum ? FlagState::Pass : FlagState::Fail);
        flag("delta-phi-2", rep.structural.delta_phi == 2 ? FlagState::Pass : FlagState::Fail);
        flag("conifold-shape",
             rep.structural.conifold_shape ? FlagState::Pass : FlagState::Fail);

        if (config.check_involution) {
            bool inv = false;
            for (int s : config.sign ? std::vector<int>{*config.sign} : std::vector<int>{1, -1}) {
                if (stage("involution",
                          [&] { return involutive_symmetry_check(*fitted, config.C, s); })) {
                    inv = true;
                    rep.involution_sign = s;
                    break;
                }
            }
            flag("involutive-symmetry", inv ? FlagState::Pass : FlagState::Fail);
        } else {
            flag("involutive-symmetry", FlagState::Skipped);
        }

        if (rep.structural.delta_phi != 2) {
            // conifold radius needs the quadratic leading coefficient
            rep.verdict = Verdict::HypothesisFailed;
            return rep;
        }

        rep.r_phi = stage("r-phi", [&] {
            return quadratic_smallest_root(fitted->coeff(fitted->order()), config.precision);
        });
        rep.radius = stage("radius-estimate", [&] { return radius_estimate(rep.a, config.precision); });

        if (config.check_gate) {
            rep.gate = stage("gate", [&] {
                return gate_check(rep.r_phi->root.to_real(config.precision, MPFR_RNDU), n,
                                  config.C);
            });
            flag("gate", rep.gate->pass ? FlagState::Pass : FlagState::Fail);
        } else {
            flag("gate", FlagState::Skipped);
        }

        // inhomogeneous sequence: D b = -+ Q0 lambda, i.e. seeds (0, Q0)
        mpq_class q0 = config.q0.value_or(mpq_class(1));
        rep.b = stage("b-sequence", [&] {
            return solve_recurrence(arec, {{0, mpq_class(0)}, {1, q0}}, config.terms);
        });

        auto eps_b = stage("denominator-certificate", [&] {
            return denom_split_certificate(rep.b, n, config.r_cover, config.terms);
        });
        if (std::holds_alternative<mpz_class>(eps_b)) {
            rep.eps_b = std::get<mpz_class>(eps_b);
        } else {
            rep.inconclusive.push_back("denominator-certificate");
        }

        auto frob = stage("frobenius", [&] {
            FrobeniusBasis basis = frobenius_solutions(*fitted, std::min<long>(config.terms, 100));
            return frobenius_denominator_certificate(basis, basis.truncation);
        });
        if (std::holds_alternative<mpz_class>(frob)) {
            rep.frobenius_eps = std::get<mpz_class>(frob);
        } else {
            rep.inconclusive.push_back("frobenius-certificate");
        }

        rep.v0 = stage("limit", [&] { return apery_limit(rep.a, rep.b, config.precision); });
        rep.match = stage("constant-match", [&] {
            auto catalog = constant_catalog(config.precision);
            return match_constant(rep.v0->value, rep.v0->error_bar, catalog);
        });
        if (!rep.match->matched) rep.inconclusive.push_back("constant-match");

        if (!rep.failed.empty()) rep.verdict = Verdict::HypothesisFailed;
        else if (!rep.inconclusive.empty()) rep.verdict = Verdict::Inconclusive;
        else rep.verdict = Verdict::Certified;
        return rep;
    } catch (const StageError& e) {
        rep.error = e.what();
        rep.inconclusive.push_back(e.stage);
        rep.verdict = rep.failed.empty() ? Verdict::Inconclusive : Verdict::HypothesisFailed;
        return rep;
    }
}

//
// ---- serialization ----
//

Json operator_to_json(const DeltaOperator& d) {
    Json coeffs = Json::array();
    for (int k = 0; k <= d.order(); ++k) {
        Json poly = Json::array();
        for (const auto& c : d.coeff(k)) poly.push_back(c.get_str());
        coeffs.push_back(std::move(poly));
    }
    Json j;
    j["var"] = "t";
    j["coeffs"] = std::move(coeffs);
    j["scale"] = rat_to_string(d.scale());
    return j;
}

DeltaOperator operator_from_json(const Json& j) {
    std::vector<QPoly> coeffs;
    for (const auto& poly : j.at("coeffs")) {
        QPoly p;
        for (const auto& c : poly) p.push_back(rat_from_string(c.get<std::string>()));
        coeffs.push_back(std::move(p));
    }
    return DeltaOperator(coeffs, rat_from_string(j.value("scale", std::string("1"))));
}

Json config_to_json(const CertifyConfig& c) {
    Json j;
    j["schema"] = "apery-forge/1";
    j["phi"] = laurent_to_json(c.phi);
    j["n"] = c.n;
    j["terms"] = c.terms;
    j["r"] = c.r_cover;
    j["C"] = c.C.get_str();
    if (c.sign) j["sign"] = *c.sign;
    if (c.q0) j["q0"] = rat_to_string(*c.q0);
    j["precision"] = static_cast<long>(c.precision);
    Json toggles;
    toggles["polytope"] = c.check_polytope;
    toggles["positivity"] = c.check_positivity;
    toggles["temperedness"] = c.check_temperedness;
    toggles["involution"] = c.check_involution;
    toggles["gate"] = c.check_gate;
    j["checks"] = std::move(toggles);
    return j;
}

CertifyConfig config_from_json(const Json& j) {
    CertifyConfig c;
    c.phi = laurent_from_json(j.at("phi"));
    c.n = j.value("n", c.phi.dim());
    c.terms = j.value("terms", 200L);
    c.r_cover = j.value("r", 1L);
    c.C = mpz_class(j.value("C", std::string("1")));
    if (j.contains("sign")) c.sign = j.at("sign").get<int>();
    if (j.contains("q0")) c.q0 = rat_from_string(j.at("q0").get<std::string>());
    c.precision = j.value("precision", 256L);
    if (j.contains("checks")) {
        const Json& t = j.at("checks");
        c.check_polytope = t.value("polytope", true);
        c.check_positivity = t.value("positivity", true);
        c.check_temperedness = t.value("temperedness", true);
        c.check_involution = t.value("involution", true);
        c.check_gate = t.value("gate", true);
    }
    return c;
}

namespace {

Json surd_json(const QuadSurd& s) {
    Json j;
    j["p"] = s.p.get_str();
    j["q"] = s.q.get_str();
    j["d"] = s.d.get_str();
    j["e"] = s.e.get_str();
    return j;
}

Json seq_prefix_json(const RationalSequence& s, long count) {
    Json arr = Json::array();
    for (long m = 0; m < count && s.has(m); ++m) arr.push_back(rat_to_string(s.at(m)));
    return arr;
}

} // namespace

Json report_to_json(const CertificateReport& r) {
    Json j;
    j["schema"] = "apery-forge/1";
    j["config"] = config_to_json(r.config);

    Json hyp;
    for (const auto& [name, st] : r.hypotheses) hyp[name] = flag_name(st);
    j["hypotheses"] = std::move(hyp);

    Json stages;
    stages["a-prefix"] = seq_prefix_json(r.a, 13);
    if (r.fitted) {
        Json op;
        op["operator"] = operator_to_json(*r.fitted);
        op["integral"] = r.structural.integral;
        op["mum"] = r.structural.mum;
        op["delta-phi"] = r.structural.delta_phi;
        op["conifold-shape"] = r.structural.conifold_shape;
        stages["picard-fuchs"] = std::move(op);
    }
    if (r.involution_sign) stages["involution-sign"] = *r.involution_sign;
    if (r.r_phi) {
        Json rr;
        rr["surd"] = surd_json(r.r_phi->root);
        rr["value"] = r.r_phi->value.to_string();
        rr["certified"] = true;
        stages["r-phi"] = std::move(rr);
    }
    if (r.radius) {
        Json rr;
        rr["value"] = r.radius->value.to_string();
        rr["error-bar"] = r.radius->error_bar.to_string();
        rr["certified"] = false;
        stages["radius-estimate"] = std::move(rr);
    }
    if (r.gate) {
        Json g;
        g["r-phi"] = r.gate->r_phi.to_string();
        g["n"] = r.gate->n;
        g["C"] = r.gate->C.get_str();
        g["product"] = r.gate->product.to_string();
        g["pass"] = r.gate->pass;
        stages["gate"] = std::move(g);
    }
    if (!r.b.values.empty()) stages["b-prefix"] = seq_prefix_json(r.b, 13);
    if (r.eps_b) stages["eps-B"] = r.eps_b->get_str();
    if (r.frobenius_eps) stages["frobenius-eps"] = r.frobenius_eps->get_str();
    if (r.v0) {
        Json v;
        v["value"] = r.v0->value.to_string();
        v["error-bar"] = r.v0->error_bar.to_string();
        v["used-index"] = r.v0->used_index;
        v["certified"] = false;
        stages["v0"] = std::move(v);
    }
    if (r.match) {
        Json m;
        m["matched"] = r.match->matched;
        if (r.match->matched) {
            m["constant"] = r.match->name;
            m["multiple"] = rat_to_string(r.match->multiple);
        }
        stages["constant-match"] = std::move(m);
    }
    j["stages"] = std::move(stages);

    j["failed"] = r.failed;
    j["inconclusive"] = r.inconclusive;
    if (!r.error.empty()) j["error"] = r.error;
    j["verdict"] = r.verdict_string();
    j["exit-code"] = r.exit_code();
    return j;
}

} // namespace aperyforge
