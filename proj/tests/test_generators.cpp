#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "aperyforge/generators.hpp"
#include "aperyforge/polytope.hpp"
#include "oracles.hpp"

using namespace aperyforge;

TEST_CASE("n1_family") {
    CatalogEntry e = n1_family(1);
    CHECK(e.phi == parse_laurent(oracles::kPhiN1B1, 1));
    CHECK(e.C == 1);
    CHECK(e.r_cover == 1);
    CHECK(e.expected_constant == "log(2/1)");
    REQUIRE(e.expected_r_phi.has_value());
    CHECK(e.expected_r_phi->p == 3);
    CHECK(e.expected_r_phi->q == -2);
    CHECK(e.expected_r_phi->d == 2);
    // r_phi < e^{-1} for every b
    for (long b = 1; b <= 6; ++b) {
        CatalogEntry f = n1_family(b);
        double r = f.expected_r_phi->to_real(128).to_double();
        CHECK(r < 0.3678794412);
        // periods match Legendre values at a = 2b + 1
        RationalSequence a = constant_term_powers(f.phi, 8);
        auto pk = oracles::legendre_values(2 * b + 1, 8);
        for (int k = 0; k <= 8; ++k)
            CHECK(a.values[static_cast<std::size_t>(k)] == pk[static_cast<std::size_t>(k)]);
    }
}

TEST_CASE("builtin_catalog shape and fixture values") {
    auto cat = builtin_catalog();
    CHECK(cat.size() >= 7);

    auto find = [&](const std::string& name) -> const CatalogEntry& {
        for (const auto& e : cat)
            if (e.name == name) return e;
        REQUIRE(false);
        return cat[0];
    };

    const CatalogEntry& ap = find("apery-zeta3");
    CHECK(ap.r_cover == 2);
    CHECK(ap.n == 3);
    CHECK(constant_term_powers(ap.phi, 3).values == std::vector<mpq_class>{1, 5, 73, 1445});

    const CatalogEntry& zg = find("zagier-E");
    CHECK(zg.expected_constant == "catalan");
    // r_phi * C = 4 exactly
    REQUIRE(zg.expected_r_phi.has_value());
    CHECK(zg.expected_r_phi->is_rational());
    mpq_class rc = mpq_class(zg.expected_r_phi->p, zg.expected_r_phi->e) * zg.C;
    rc.canonicalize();
    CHECK(rc == 4);

    const CatalogEntry& bb = find("baby-apery-zeta2");
    CHECK(bb.sign == -1);
    CHECK(constant_term_powers(bb.phi, 3).values == std::vector<mpq_class>{1, 3, 19, 147});
}

TEST_CASE("catalog fixtures: stored operators annihilate the period series") {
    for (const auto& e : builtin_catalog()) {
        if (!e.expected_operator) continue;
        RationalSequence a = constant_term_powers(e.phi, 20);
        TruncSeries f(a.values.begin(), a.values.end());
        TruncSeries g = aperyforge::apply(*e.expected_operator, f);
        for (const auto& c : g) CHECK(c == 0);
    }
}

TEST_CASE("catalog fixtures: stored r_phi is the smallest root of the stored operator") {
    for (const auto& e : builtin_catalog()) {
        if (!e.expected_operator || !e.expected_r_phi) continue;
        const auto& lead = e.expected_operator->coeff(e.expected_operator->order());
        if (polyutil::deg(lead) != 2) continue;
        SmallestRoot root = quadratic_smallest_root(lead);
        CHECK(root.root.p == e.expected_r_phi->p);
        CHECK(root.root.q == e.expected_r_phi->q);
        CHECK(root.root.e == e.expected_r_phi->e);
    }
}

TEST_CASE("catalog near-example operators rederived from their sequences") {
    // the fixture operators for phi-II .. phi-IV come from refitting; verify
    for (const std::string name : {"phi-II", "phi-III", "phi-IV"}) {
        auto cat = builtin_catalog();
        auto it = std::find_if(cat.begin(), cat.end(),
                               [&](const CatalogEntry& e) { return e.name == name; });
        REQUIRE(it != cat.end());
        RationalSequence a = constant_term_powers(it->phi, 42);
        auto fit = fit_operator(a, 3, 3);
        REQUIRE(fit.has_value());
        CHECK(fit->proportional_to(*it->expected_operator).has_value());
    }
}

TEST_CASE("catalog json fixture matches the builtin catalog") {
    Json j = catalog_to_json(builtin_catalog());
    CHECK(j["schema"] == "apery-forge/1");
    CHECK(j["catalog"].size() >= 7);
    // the shipped fixture file is this object, byte for byte
    std::ifstream in(std::string(AF_SOURCE_DIR) + "/data/catalog.json");
    REQUIRE(in.good());
    Json disk = Json::parse(in);
    CHECK(disk == j);
}

TEST_CASE("vz_polynomial") {
    auto [psi2, phi2] = vz_polynomial(2);
    LaurentPoly expect_psi2 = parse_laurent("x1*x2+1-x2", 2);
    CHECK(psi2 == expect_psi2);

    RationalSequence a2 = constant_term_powers(phi2, 3);
    CHECK(a2.values == std::vector<mpq_class>{1, 3, 19, 147});

    auto [psi3, phi3] = vz_polynomial(3);
    RationalSequence a3 = constant_term_powers(phi3, 3);
    CHECK(a3.values == std::vector<mpq_class>{1, 5, 73, 1445});

    // support bound [-1, 1]^n
    for (int n = 1; n <= 6; ++n) {
        auto [psi, phi] = vz_polynomial(n);
        std::vector<int> mn, mx;
        phi.support_bounds(mn, mx);
        for (int i = 0; i < n; ++i) {
            CHECK(mn[static_cast<std::size_t>(i)] >= -1);
            CHECK(mx[static_cast<std::size_t>(i)] <= 1);
        }
    }

    // phi_2 equals the baby Apery polynomial after inverting one variable
    LaurentPoly baby = parse_laurent(oracles::kPhiZeta2, 2);
    MonomialMap invert_y{{0, 1}, {1, -1}};
    CHECK(monomial_substitute(phi2, invert_y) == baby);
}

TEST_CASE("is_convergent") {
    CyclicPermutation ident{{1, 2, 3, 4, 5}};
    CHECK_FALSE(is_convergent(ident));

    CyclicPermutation pent{{1, 3, 5, 2, 4}};
    CHECK(is_convergent(pent));

    // any permutation with window {5,1,2} of adjacent entries fails
    CyclicPermutation bad{{5, 1, 2, 4, 3}};
    CHECK_FALSE(is_convergent(bad));

    int count = 0;
    std::vector<int> img{1, 2, 3, 4, 5};
    do {
        if (is_convergent(CyclicPermutation{img})) ++count;
    } while (std::next_permutation(img.begin(), img.end()));
    CHECK(count == 10);
}

TEST_CASE("is_convergent: dihedral invariance") {
    std::vector<int> img{1, 2, 3, 4, 5};
    do {
        CyclicPermutation sigma{img};
        bool base = is_convergent(sigma);
        // rotation of the index circle
        CyclicPermutation rot{{img[1], img[2], img[3], img[4], img[0]}};
        CHECK(is_convergent(rot) == base);
        // reflection of the index circle
        CyclicPermutation refl{{img[4], img[3], img[2], img[1], img[0]}};
        CHECK(is_convergent(refl) == base);
    } while (std::next_permutation(img.begin(), img.end()));
}

TEST_CASE("cellular_laurent: pentagon configuration") {
    CyclicPermutation pent{{1, 3, 5, 2, 4}};
    LaurentPoly phi = cellular_laurent(pent);
    CHECK(phi.dim() == 2);
    std::vector<int> mn, mx;
    phi.support_bounds(mn, mx);
    for (int i = 0; i < 2; ++i) {
        CHECK(mn[static_cast<std::size_t>(i)] >= -1);
        CHECK(mx[static_cast<std::size_t>(i)] <= 1);
    }
    // theta_sigma/theta carries the opposite lambda sign: negating the
    // polynomial recovers the baby Apery period sequence on the nose
    RationalSequence a = constant_term_powers(-phi, 6);
    RationalSequence baby = constant_term_powers(parse_laurent(oracles::kPhiZeta2, 2), 6);
    CHECK(a.values == baby.values);
}

TEST_CASE("cellular_laurent: exhaustive over S5 with held-out verification") {
    std::vector<int> img{1, 2, 3, 4, 5};
    int built = 0;
    do {
        CyclicPermutation sigma{img};
        if (!is_convergent(sigma)) continue;
        LaurentPoly phi = cellular_laurent(sigma); // throws if verification fails
        ++built;
        CHECK(phi.term_count() == 8);
    } while (std::next_permutation(img.begin(), img.end()));
    CHECK(built == 10);
}

TEST_CASE("cellular_laurent rejects non-convergent input") {
    CyclicPermutation ident{{1, 2, 3, 4, 5}};
    CHECK_THROWS_AS(cellular_laurent(ident), std::invalid_argument);
}
