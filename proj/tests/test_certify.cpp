#include <doctest.h>

#include "aperyforge/certify.hpp"
#include "oracles.hpp"

using namespace aperyforge;

static CertifyConfig apery_config(long terms = 80) {
    CertifyConfig c;
    c.phi = parse_laurent(oracles::kPhiZeta3, 3);
    c.n = 3;
    c.r_cover = 2;
    c.terms = terms;
    return c;
}

TEST_CASE("positivity_check") {
    CHECK(positivity_check(parse_laurent(oracles::kPhiZeta3, 3)));
    CHECK_FALSE(positivity_check(parse_laurent("1+x1", 1)));
    CHECK(positivity_check(parse_laurent(oracles::kPhiN1B1, 1)));
}

TEST_CASE("run_certificate: the zeta(3) example end to end") {
    CertificateReport rep = run_certificate(apery_config());
    CHECK(rep.verdict == Verdict::Certified);
    CHECK(rep.exit_code() == 0);
    CHECK(rep.verdict_string() == "CERTIFIED-AT-DESK-SCALE");
    REQUIRE(rep.gate.has_value());
    CHECK(rep.gate->pass);
    CHECK(rep.gate->product.to_double() == doctest::Approx(0.5913).epsilon(2e-3));
    REQUIRE(rep.match.has_value());
    CHECK(rep.match->name == "zeta(3)");
    CHECK(rep.match->multiple == mpq_class(1, 6));
    REQUIRE(rep.r_phi.has_value());
    CHECK(rep.r_phi->root.p == 17);
    CHECK(rep.eps_b.has_value());
    CHECK(rep.frobenius_eps.has_value());
    REQUIRE(rep.involution_sign.has_value());
    CHECK(*rep.involution_sign == 1);
}

TEST_CASE("run_certificate: gate failure for phi-IV") {
    CertifyConfig c;
    c.phi = parse_laurent(oracles::kPhiIV, 3);
    c.n = 3;
    c.C = 64;
    c.terms = 60;
    CertificateReport rep = run_certificate(c);
    CHECK(rep.verdict == Verdict::HypothesisFailed);
    CHECK(rep.exit_code() == 2);
    CHECK(rep.verdict_string() == "HYPOTHESIS-FAILED(gate)");
    REQUIRE(rep.gate.has_value());
    CHECK(rep.gate->product.to_double() == doctest::Approx(80.34).epsilon(1e-3));
}

TEST_CASE("run_certificate: the n = 1 log family") {
    CertifyConfig c;
    c.phi = parse_laurent(oracles::kPhiN1B1, 1);
    c.n = 1;
    c.terms = 60;
    CertificateReport rep = run_certificate(c);
    CHECK(rep.verdict == Verdict::Certified);
    REQUIRE(rep.match.has_value());
    CHECK(rep.match->name == "log(2/1)");
}

TEST_CASE("determinism: identical configs yield byte-identical reports") {
    CertifyConfig c = apery_config(60);
    std::string a = report_to_json(run_certificate(c)).dump();
    std::string b = report_to_json(run_certificate(c)).dump();
    CHECK(a == b);
}

TEST_CASE("Q0-scale equivariance") {
    CertifyConfig unit = apery_config(60);
    CertifyConfig scaled = apery_config(60);
    scaled.q0 = mpq_class(-12);
    CertificateReport ru = run_certificate(unit);
    CertificateReport rs = run_certificate(scaled);
    REQUIRE(ru.verdict == Verdict::Certified);
    REQUIRE(rs.verdict == Verdict::Certified);
    // b scales exactly
    for (long m = 0; m <= 60; ++m)
        CHECK(rs.b.at(m) == mpq_class(-12) * ru.b.at(m));
    // the identified constant is invariant, the multiple rescales
    CHECK(rs.match->name == ru.match->name);
    CHECK(rs.match->multiple == mpq_class(-12) * ru.match->multiple);
    CHECK(rs.match->multiple == -2);
}

TEST_CASE("homogeneous seeds reproduce the period sequence in the report") {
    CertificateReport rep = run_certificate(apery_config(60));
    LaurentPoly phi = parse_laurent(oracles::kPhiZeta3, 3);
    RationalSequence direct = constant_term_powers(phi, 12);
    for (long m = 0; m <= 12; ++m) CHECK(rep.a.at(m) == direct.at(m));
}

TEST_CASE("verdict monotonicity under toggles") {
    CertifyConfig base = apery_config(60);
    REQUIRE(run_certificate(base).verdict == Verdict::Certified);
    for (int which = 0; which < 5; ++which) {
        CertifyConfig c = base;
        if (which == 0) c.check_polytope = false;
        if (which == 1) c.check_positivity = false;
        if (which == 2) c.check_temperedness = false;
        if (which == 3) c.check_involution = false;
        if (which == 4) c.check_gate = false;
        CHECK(run_certificate(c).verdict == Verdict::Certified);
    }
}

TEST_CASE("stage errors surface as INCONCLUSIVE, never silently") {
    CertifyConfig c;
    c.phi = parse_laurent("1+x1", 1); // delta_phi != 2 downstream
    c.n = 1;
    c.terms = 60;
    CertificateReport rep = run_certificate(c);
    CHECK(rep.verdict == Verdict::HypothesisFailed); // reflexivity and shape fail first
    CHECK(!rep.failed.empty());

    CertifyConfig bad = apery_config(10); // violates terms >= 40
    CertificateReport rb = run_certificate(bad);
    CHECK(rb.verdict == Verdict::Inconclusive);
    CHECK(rb.exit_code() == 3);
    CHECK(!rb.error.empty());
}

TEST_CASE("config json round trip") {
    CertifyConfig c = apery_config(77);
    c.q0 = mpq_class(3, 7);
    c.sign = -1;
    c.check_gate = false;
    Json j = config_to_json(c);
    CertifyConfig back = config_from_json(j);
    CHECK(back.phi == c.phi);
    CHECK(back.terms == 77);
    CHECK(back.q0 == c.q0);
    CHECK(back.sign == c.sign);
    CHECK(back.check_gate == false);
    CHECK(config_to_json(back) == j);
}

TEST_CASE("operator json round trip") {
    DeltaOperator d({QPoly{0, -5, 1}, QPoly{0, -27, 3}, QPoly{0, -51, 3}, QPoly{1, -34, 1}});
    Json j = operator_to_json(d);
    CHECK(j["var"] == "t");
    DeltaOperator back = operator_from_json(j);
    CHECK(back == d);
}
