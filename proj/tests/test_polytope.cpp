#include <doctest.h>

#include <random>

#include "aperyforge/polytope.hpp"
#include "oracles.hpp"

using namespace aperyforge;

TEST_CASE("newton_polytope: segment, point, polygon") {
    LaurentPoly leg = parse_laurent(oracles::kPhiN1B1, 1);
    NewtonPolytope seg = newton_polytope(leg);
    CHECK(seg.full_dim);
    CHECK(seg.vertices == std::vector<ExponentVector>{{-1}, {1}});
    CHECK(seg.lattice_points.size() == 3);

    LaurentPoly mono = parse_laurent("5*x1^2*x2", 2);
    NewtonPolytope pt = newton_polytope(mono);
    CHECK_FALSE(pt.full_dim);
    CHECK(pt.vertices == std::vector<ExponentVector>{{2, 1}});

    LaurentPoly baby = parse_laurent(oracles::kPhiZeta2, 2);
    NewtonPolytope poly = newton_polytope(baby);
    CHECK(poly.full_dim);
    ExponentVector origin{0, 0};
    CHECK(std::find(poly.interior_points.begin(), poly.interior_points.end(), origin) !=
          poly.interior_points.end());
    CHECK(poly.lattice_points.size() >= poly.support.size());
}

TEST_CASE("is_reflexive") {
    LaurentPoly ap = parse_laurent(oracles::kPhiZeta3, 3);
    ReflexiveResult r = is_reflexive(newton_polytope(ap));
    CHECK(r.reflexive);

    LaurentPoly seg = parse_laurent("x1^-1+x1", 1);
    ReflexiveResult s = is_reflexive(newton_polytope(seg));
    CHECK(s.reflexive);
    CHECK(s.dual_vertices == std::vector<ExponentVector>{{-1}, {1}});

    LaurentPoly seg2 = parse_laurent("x1^-1+x1^2", 1);
    ReflexiveResult t = is_reflexive(newton_polytope(seg2));
    CHECK_FALSE(t.reflexive);
    CHECK(t.reason == "facet offset != 1");

    LaurentPoly off = parse_laurent("1+x1+x2", 2); // origin on the boundary
    ReflexiveResult u = is_reflexive(newton_polytope(off));
    CHECK_FALSE(u.reflexive);
    CHECK(u.reason == "origin not interior");
}

TEST_CASE("reflexive implies unique interior point; dual of dual") {
    for (const std::string* src : {&oracles::kPhiZeta2, &oracles::kPhiZeta3, &oracles::kPhiII,
                                   &oracles::kPhiIII, &oracles::kPhiIV, &oracles::kPhiZagierE}) {
        int n = (src == &oracles::kPhiZeta2 || src == &oracles::kPhiZagierE) ? 2 : 3;
        NewtonPolytope p = newton_polytope(parse_laurent(*src, n));
        ReflexiveResult r = is_reflexive(p);
        if (!r.reflexive) continue;
        CHECK(has_unique_interior_point(p));
        // dual of dual: hull of the dual vertices has the original vertices as dual
        LaurentPoly dual(n);
        for (const auto& v : r.dual_vertices) dual.add_term(v, 1);
        ReflexiveResult rr = is_reflexive(newton_polytope(dual));
        REQUIRE(rr.reflexive);
        std::vector<ExponentVector> orig = p.vertices;
        std::sort(orig.begin(), orig.end());
        CHECK(rr.dual_vertices == orig);
    }
}

TEST_CASE("has_unique_interior_point") {
    LaurentPoly sq = parse_laurent("x1*x2+x1*x2^-1+x1^-1*x2+x1^-1*x2^-1", 2);
    CHECK(has_unique_interior_point(newton_polytope(sq)));

    LaurentPoly wide = parse_laurent("x1^-2+x1^2", 1);
    CHECK_FALSE(has_unique_interior_point(newton_polytope(wide)));
}

TEST_CASE("face_polynomials: baby apery edges are cyclotomic") {
    LaurentPoly baby = parse_laurent(oracles::kPhiZeta2, 2);
    NewtonPolytope p = newton_polytope(baby);
    auto edges = face_polynomials(baby, p, 1);
    CHECK(edges.size() >= 3);
    for (const auto& [face, poly] : edges) {
        CHECK(poly.dim() == 1);
        CHECK(is_cyclotomic(poly)); // each edge polynomial is (x-1) or (x-1)^2 up to monomial
    }
}

TEST_CASE("face_polynomials: zeta(3) example, edges and 2-faces") {
    LaurentPoly ap = parse_laurent(oracles::kPhiZeta3, 3);
    NewtonPolytope p = newton_polytope(ap);

    auto edges = face_polynomials(ap, p, 2);
    CHECK(!edges.empty());
    for (const auto& [face, poly] : edges) CHECK(is_cyclotomic(poly));

    auto faces2 = face_polynomials(ap, p, 1);
    CHECK(!faces2.empty());
    for (const auto& [face, poly] : faces2) {
        CHECK(poly.dim() == 2);
        SteinbergClass c = steinberg_classify(poly);
        CHECK(c != SteinbergClass::Unknown);
    }
}

TEST_CASE("face polynomial supports are invariant under signed permutations") {
    LaurentPoly baby = parse_laurent(oracles::kPhiZeta2, 2);
    auto support_multiset = [](const LaurentPoly& f) {
        NewtonPolytope p = newton_polytope(f);
        std::vector<std::vector<std::size_t>> sizes;
        for (int codim = 1; codim <= f.dim() - 1; ++codim) {
            std::vector<std::size_t> counts;
            for (const auto& [face, poly] : face_polynomials(f, p, codim))
                counts.push_back(poly.term_count());
            std::sort(counts.begin(), counts.end());
            sizes.push_back(counts);
        }
        return sizes;
    };
    auto ref = support_multiset(baby);
    for (int mask = 0; mask < 4; ++mask)
        for (int swap = 0; swap < 2; ++swap) {
            MonomialMap m{swap ? std::vector<int>{1, 0} : std::vector<int>{0, 1},
                          {(mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1}};
            CHECK(support_multiset(monomial_substitute(baby, m)) == ref);
        }
}

TEST_CASE("is_cyclotomic basics") {
    CHECK(is_cyclotomic(ZPoly{-1, 1}));        // x - 1
    CHECK(is_cyclotomic(ZPoly{1, 1, 1}));      // x^2 + x + 1
    CHECK_FALSE(is_cyclotomic(ZPoly{-1, -1, 1})); // x^2 - x - 1: golden ratio
    CHECK(is_cyclotomic(ZPoly{1, 2, 1}));      // (x+1)^2
    CHECK(is_cyclotomic(ZPoly{0, 0, 7}));      // unit times x^2
    CHECK_FALSE(is_cyclotomic(ZPoly{-2, 1}));  // x - 2
    CHECK_FALSE(is_cyclotomic(ZPoly{1, -3, 1}));
    CHECK_THROWS_AS(is_cyclotomic(ZPoly{}), std::invalid_argument);
}

TEST_CASE("is_cyclotomic against the x^N - 1 divisibility oracle") {
    // oracle: p cyclotomic (up to units) iff its squarefree part divides
    // x^N - 1 for some N <= 210, valid for deg <= 8
    auto qdiv_rem = [](std::vector<mpq_class> a, const std::vector<mpq_class>& b) {
        int db = polyutil::deg(b);
        for (int d = polyutil::deg(a); d >= db && d >= 0; --d) {
            mpq_class c = a[static_cast<std::size_t>(d)];
            if (c == 0) continue;
            mpq_class f = c / b[static_cast<std::size_t>(db)];
            for (int i = 0; i <= db; ++i)
                a[static_cast<std::size_t>(d - db + i)] -= f * b[static_cast<std::size_t>(i)];
        }
        polyutil::trim(a);
        return a;
    };
    auto squarefree_part = [&](const ZPoly& p) {
        std::vector<mpq_class> a(p.begin(), p.end()), d;
        for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mpq_class(i) * a[i]);
        polyutil::trim(d);
        // gcd(a, a') by the Euclidean algorithm
        std::vector<mpq_class> u = a, v = d;
        while (!v.empty()) {
            auto r = qdiv_rem(u, v);
            u = v;
            v = r;
        }
        if (polyutil::deg(u) <= 0) return a;
        // a / gcd: monicize gcd then long-divide exactly
        std::vector<mpq_class> q;
        int du = polyutil::deg(u);
        std::vector<mpq_class> rem = a;
        q.assign(a.size(), mpq_class(0));
        for (int dd = polyutil::deg(rem); dd >= du; --dd) {
            mpq_class c = rem[static_cast<std::size_t>(dd)];
            if (c == 0) continue;
            mpq_class f = c / u[static_cast<std::size_t>(du)];
            q[static_cast<std::size_t>(dd - du)] = f;
            for (int i = 0; i <= du; ++i)
                rem[static_cast<std::size_t>(dd - du + i)] -= f * u[static_cast<std::size_t>(i)];
        }
        polyutil::trim(q);
        return q;
    };
    auto oracle = [&](ZPoly praw) {
        std::size_t k = 0;
        while (k < praw.size() && praw[k] == 0) ++k;
        praw.erase(praw.begin(), praw.begin() + static_cast<long>(k));
        polyutil::trim(praw);
        if (praw.empty()) return false;
        if (polyutil::deg(praw) == 0) return true;
        std::vector<mpq_class> p = squarefree_part(praw);
        for (int N = 1; N <= 210; ++N) {
            // remainder of x^N - 1 mod p over Q
            std::vector<mpq_class> r(static_cast<std::size_t>(N) + 1, mpq_class(0));
            r[static_cast<std::size_t>(N)] = 1;
            r[0] -= 1;
            int dp = polyutil::deg(p);
            for (int d = N; d >= dp; --d) {
                mpq_class c = r[static_cast<std::size_t>(d)];
                if (c == 0) continue;
                mpq_class f = c / p[static_cast<std::size_t>(dp)];
                for (int i = 0; i <= dp; ++i)
                    r[static_cast<std::size_t>(d - dp + i)] -= f * p[static_cast<std::size_t>(i)];
            }
            bool zero = true;
            for (const auto& c : r)
                if (c != 0) { zero = false; break; }
            if (zero) return true;
        }
        return false;
    };

    // all products of cyclotomic polynomials up to degree 6 stay in the catalog
    std::vector<ZPoly> cyclo = {
        {-1, 1}, {1, 1}, {1, 1, 1}, {1, 0, 1}, {1, 1, 1, 1, 1}, {1, -1, 1}, {1, 0, 0, 1, 0, 0, 1},
        {1, -1, 1, -1, 1}, {-1, 0, 0, 1}, {1, 0, 0, 1}};
    std::mt19937 rng(17);
    std::uniform_int_distribution<std::size_t> pick(0, cyclo.size() - 1);
    for (int it = 0; it < 120; ++it) {
        ZPoly prod{1};
        for (int f = 0; f < 3; ++f) {
            const ZPoly& c = cyclo[pick(rng)];
            ZPoly next(prod.size() + c.size() - 1, mpz_class(0));
            for (std::size_t i = 0; i < prod.size(); ++i)
                for (std::size_t j = 0; j < c.size(); ++j) next[i + j] += prod[i] * c[j];
            prod = std::move(next);
            if (polyutil::deg(prod) > 8) break;
        }
        if (polyutil::deg(prod) > 8) continue;
        CHECK(is_cyclotomic(prod));
        CHECK(oracle(prod));
    }

    // random small polynomials: both routes must agree in both directions
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> degd(1, 8);
    for (int it = 0; it < 400; ++it) {
        ZPoly p(static_cast<std::size_t>(degd(rng)) + 1);
        for (auto& c : p) c = coef(rng);
        if (polyutil::deg(p) < 1) continue;
        CHECK(is_cyclotomic(p) == oracle(p));
    }
}

TEST_CASE("steinberg_classify") {
    CHECK(steinberg_classify(parse_laurent("1-x1-x2", 2)) == SteinbergClass::SteinbergCatalog);
    CHECK(steinberg_classify(parse_laurent("(x1-1)*(x1-1)*(x2-1)", 2)) ==
          SteinbergClass::CyclotomicProduct);
    CHECK(steinberg_classify(parse_laurent("1-x1-x2-x1*x2", 2)) == SteinbergClass::Unknown);
    CHECK(steinberg_classify(parse_laurent("(1-x1-x2)*(x2-1)", 2)) ==
          SteinbergClass::SteinbergCatalog);
    CHECK(steinberg_classify(parse_laurent("(x1^2+x1+1)*(x2-1)", 2)) ==
          SteinbergClass::CyclotomicProduct);
    CHECK(steinberg_classify(parse_laurent("x1*x2^-1*(1-x1*x2+x2)", 2)) ==
          SteinbergClass::SteinbergCatalog); // sheared catalog line, up to monomial
}

TEST_CASE("quasi_effectivity_check") {
    // product of two projective lines
    MoriData p1p1{{{-2, 1, 1, 0, 0}, {-2, 0, 0, 1, 1}}};
    std::vector<ExponentVector> pts = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    QuasiEffectivityResult r = quasi_effectivity_check(p1p1, 20, pts);
    CHECK(r.verdict == EffectivityVerdict::AllEffective);

    // Hirzebruch-type data: one generator with a single negative entry
    MoriData f2{{{0, -2, 1, 1, 0}, {-2, 1, 0, 0, 1}}};
    std::vector<ExponentVector> f2pts = {{0, 1}, {1, 0}, {-1, 2}, {0, -1}};
    QuasiEffectivityResult q = quasi_effectivity_check(f2, 12, f2pts);
    CHECK(q.verdict == EffectivityVerdict::QuasiEffective);
    REQUIRE(q.witness.has_value());

    // two negatives at n = (1, 1)
    MoriData bad{{{0, -1, 1, 0, 0}, {0, 0, 0, -1, 1}}};
    QuasiEffectivityResult f = quasi_effectivity_check(bad, 3);
    CHECK(f.verdict == EffectivityVerdict::Fails);
    REQUIRE(f.witness.has_value());
    CHECK(f.witness->n == std::vector<long>{1, 1});

    // inconsistent generator against supplied lattice points
    MoriData broken{{{-2, 1, 1, 0, 0}}};
    std::vector<ExponentVector> wrong = {{1, 0}, {1, 0}, {0, 1}, {0, -1}};
    CHECK_THROWS_AS(quasi_effectivity_check(broken, 4, wrong), std::invalid_argument);

    // facile-pencil degree inequality with unit offsets
    QuasiEffectivityResult d = quasi_effectivity_check(f2, 8, f2pts, {1, 1, 1, 1});
    CHECK_FALSE(d.degree_inequality_ok); // offsets 1 are too small for the -2 entry
    QuasiEffectivityResult d2 = quasi_effectivity_check(p1p1, 8, pts, {1, 1, 1, 1});
    CHECK(d2.degree_inequality_ok);
}
