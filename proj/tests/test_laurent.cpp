#include <doctest.h>

#include <random>

#include "aperyforge/json_io.hpp"
#include "aperyforge/laurent.hpp"
#include "oracles.hpp"

using namespace aperyforge;

static LaurentPoly rand_poly(std::mt19937& rng, int n, int nterms) {
    std::uniform_int_distribution<int> ed(-2, 2), cd(-5, 5);
    LaurentPoly f(n);
    for (int t = 0; t < nterms; ++t) {
        ExponentVector e(static_cast<std::size_t>(n));
        for (auto& v : e) v = ed(rng);
        f.add_term(e, cd(rng));
    }
    return f;
}

TEST_CASE("parse: canonical forms and round trip") {
    LaurentPoly f = parse_laurent("-x1 + 3 - 2*x1^-1", 1);
    CHECK(f.term_count() == 3);
    CHECK(f.coeff({1}) == -1);
    CHECK(f.coeff({0}) == 3);
    CHECK(f.coeff({-1}) == -2);
    CHECK(parse_laurent(f.to_string(), 1) == f);

    LaurentPoly g = parse_laurent(oracles::kPhiZeta2, 2);
    CHECK(g.term_count() == 8);
    // independent hand expansion of x^-1 y^-1 (1-x)(1-y)(1-x-y)
    LaurentPoly expected(2);
    expected.add_term({-1, -1}, 1);
    expected.add_term({0, -1}, -2);
    expected.add_term({-1, 0}, -2);
    expected.add_term({1, -1}, 1);
    expected.add_term({-1, 1}, 1);
    expected.add_term({0, 0}, 3);
    expected.add_term({1, 0}, -1);
    expected.add_term({0, 1}, -1);
    CHECK(g == expected);
    CHECK(parse_laurent(g.to_string(), 2) == g);
}

TEST_CASE("parse: rational coefficients and errors") {
    LaurentPoly f = parse_laurent("1/2*x1 - 3/4", 1);
    CHECK(f.coeff({1}) == mpq_class(1, 2));
    CHECK(f.coeff({0}) == mpq_class(-3, 4));

    CHECK_THROWS_AS(parse_laurent("x1^^2", 1), SyntaxError);
    try {
        parse_laurent("x1^^2", 1);
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 2);
    }
    CHECK_THROWS_AS(parse_laurent("x3+1", 2), SyntaxError); // dimension mismatch
    CHECK_THROWS_AS(parse_laurent("1/0", 1), SyntaxError);
}

TEST_CASE("mul: identities and a squared constant term") {
    LaurentPoly one = LaurentPoly::constant(1, 1);
    LaurentPoly a = parse_laurent("1-x1", 1), b = parse_laurent("1+x1", 1);
    CHECK(a * b == parse_laurent("1-x1^2", 1));

    LaurentPoly f = parse_laurent(oracles::kPhiN1B1, 1);
    CHECK(f * one == f);
    LaurentPoly f2 = f * f;
    CHECK(f2.coeff({0}) == 13);

    LaurentPoly g = parse_laurent("x1+x2", 2);
    CHECK_THROWS_AS(f * g, std::invalid_argument);
}

TEST_CASE("mul: commutative and associative on random triples") {
    std::mt19937 rng(20240811);
    for (int it = 0; it < 30; ++it) {
        LaurentPoly f = rand_poly(rng, 2, 4), g = rand_poly(rng, 2, 4), h = rand_poly(rng, 2, 3);
        CHECK(f * g == g * f);
        CHECK((f * g) * h == f * (g * h));
    }
}

TEST_CASE("constant_term_powers: catalog prefixes") {
    LaurentPoly baby = parse_laurent(oracles::kPhiZeta2, 2);
    RationalSequence s = constant_term_powers(baby, 3);
    CHECK(s.values == std::vector<mpq_class>{1, 3, 19, 147});

    LaurentPoly ap = parse_laurent(oracles::kPhiZeta3, 3);
    RationalSequence t = constant_term_powers(ap, 3);
    CHECK(t.values == std::vector<mpq_class>{1, 5, 73, 1445});

    LaurentPoly leg = parse_laurent(oracles::kPhiN1B1, 1);
    RationalSequence u = constant_term_powers(leg, 10);
    auto pk = oracles::legendre_values(3, 10);
    for (int k = 0; k <= 10; ++k)
        CHECK(u.values[static_cast<std::size_t>(k)] == pk[static_cast<std::size_t>(k)]);
    CHECK(u.values[3] == 63);
}

TEST_CASE("constant_term_powers: pruning agrees with naive expansion") {
    for (const std::string* src : {&oracles::kPhiZeta2, &oracles::kPhiN1B1, &oracles::kPhiZagierE}) {
        int n = (src == &oracles::kPhiN1B1) ? 1 : 2;
        LaurentPoly f = parse_laurent(*src, n);
        RationalSequence fast = constant_term_powers(f, 8, true);
        RationalSequence slow = constant_term_powers(f, 8, false);
        CHECK(fast.values == slow.values);
    }
    LaurentPoly ap = parse_laurent(oracles::kPhiZeta3, 3);
    CHECK(constant_term_powers(ap, 8, true).values == constant_term_powers(ap, 8, false).values);
}

TEST_CASE("constant_term_powers: integrality for integral phi") {
    for (const std::string* src : {&oracles::kPhiZeta2, &oracles::kPhiII, &oracles::kPhiIV}) {
        LaurentPoly f = parse_laurent(*src, src == &oracles::kPhiZeta2 ? 2 : 3);
        REQUIRE(f.is_integral());
        for (const auto& v : constant_term_powers(f, 10).values)
            CHECK(v.get_den() == 1);
    }
}

TEST_CASE("monomial_substitute: transposition, inversion, identity") {
    LaurentPoly f = parse_laurent("2*x1^2*x2^-1 + x2", 2);
    MonomialMap swap{{1, 0}, {1, 1}};
    LaurentPoly g = monomial_substitute(f, swap);
    CHECK(g.coeff({-1, 2}) == 2);
    CHECK(g.coeff({1, 0}) == 1);

    MonomialMap ident{{0, 1}, {1, 1}};
    CHECK(monomial_substitute(f, ident) == f);

    LaurentPoly baby = parse_laurent(oracles::kPhiZeta2, 2);
    MonomialMap invert{{0, 1}, {-1, -1}};
    RationalSequence s = constant_term_powers(monomial_substitute(baby, invert), 4);
    CHECK(s.values == std::vector<mpq_class>{1, 3, 19, 147, 1251});

    MonomialMap bad{{0, 0}, {1, 1}};
    CHECK_THROWS_AS(monomial_substitute(f, bad), std::invalid_argument);
}

TEST_CASE("constant-term sequence invariant under all signed permutations") {
    LaurentPoly baby = parse_laurent(oracles::kPhiZeta2, 2);
    RationalSequence ref2 = constant_term_powers(baby, 5);
    int perms2[2][2] = {{0, 1}, {1, 0}};
    for (auto& p : perms2)
        for (int s0 : {1, -1})
            for (int s1 : {1, -1}) {
                MonomialMap m{{p[0], p[1]}, {s0, s1}};
                CHECK(constant_term_powers(monomial_substitute(baby, m), 5).values == ref2.values);
            }

    LaurentPoly ap = parse_laurent(oracles::kPhiZeta3, 3);
    RationalSequence ref3 = constant_term_powers(ap, 4);
    int idx[3] = {0, 1, 2};
    std::sort(idx, idx + 3);
    do {
        for (int mask = 0; mask < 8; ++mask) {
            MonomialMap m{{idx[0], idx[1], idx[2]},
                          {(mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1, (mask & 4) ? -1 : 1}};
            CHECK(constant_term_powers(monomial_substitute(ap, m), 4).values == ref3.values);
        }
    } while (std::next_permutation(idx, idx + 3));
}

TEST_CASE("eval_rational") {
    LaurentPoly f = parse_laurent("1-x1-x2", 2);
    CHECK(eval_rational(f, {mpq_class(1, 2), mpq_class(1, 4)}) == mpq_class(1, 4));

    LaurentPoly g = parse_laurent(oracles::kPhiN1B1, 1);
    CHECK(eval_rational(g, {mpq_class(1)}) == 0);

    LaurentPoly c = LaurentPoly::constant(3, 7);
    CHECK(eval_rational(c, {mpq_class(2), mpq_class(-3), mpq_class(5, 7)}) == 7);

    CHECK_THROWS_AS(eval_rational(g, {mpq_class(0)}), std::domain_error);
}

TEST_CASE("json round trip") {
    std::mt19937 rng(7);
    for (int it = 0; it < 20; ++it) {
        LaurentPoly f = rand_poly(rng, 3, 5);
        Json j = laurent_to_json(f);
        CHECK(laurent_from_json(j) == f);
        CHECK(laurent_to_json(laurent_from_json(j)) == j);
    }
    LaurentPoly q(2);
    q.add_term({-1, 2}, mpq_class(3, 7));
    Json j = laurent_to_json(q);
    CHECK(j["terms"][0]["coef"] == "3/7");
}
