#include "aperyforge/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "aperyforge/ode.hpp"

namespace aperyforge {

namespace {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;

mpz_class det_bareiss(ZMat a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

long rank_of(ZMat a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            mpz_class f1 = a[r][c], f2 = a[i][c];
            mpz_class g = int_gcd(f1, f2);
            f1 /= g;
            f2 /= g;
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = a[i][j] * f1 - a[r][j] * f2;
        }
        ++r;
    }
    return static_cast<long>(r);
}

long affine_rank(const std::vector<ExponentVector>& pts) {
    if (pts.size() <= 1) return 0;
    ZMat dirs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        ZVec d(pts[0].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        dirs.push_back(std::move(d));
    }
    return rank_of(std::move(dirs));
}

// primitive normal of the hyperplane through n points, or empty when degenerate
ZVec hyperplane_normal(const std::vector<ExponentVector>& pts) {
    const std::size_t n = pts[0].size();
    ZMat dirs; // (n-1) x n
    for (std::size_t i = 1; i < pts.size(); ++i) {
        ZVec d(n);
        for (std::size_t j = 0; j < n; ++j) d[j] = pts[i][j] - pts[0][j];
        dirs.push_back(std::move(d));
    }
    ZVec nu(n);
    mpz_class g = 0;
    for (std::size_t j = 0; j < n; ++j) {
        ZMat minor;
        for (const auto& d : dirs) {
            ZVec row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(d[c]);
            minor.push_back(std::move(row));
        }
        nu[j] = (j % 2 == 0 ? 1 : -1) * det_bareiss(std::move(minor));
        g = int_gcd(g, nu[j]);
    }
    if (g == 0) return {};
    for (auto& c : nu) c /= g;
    return nu;
}

mpz_class dot(const ZVec& nu, const ExponentVector& p) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < nu.size(); ++i) s += nu[i] * p[i];
    return s;
}

// Hermite-style row echelon basis of the lattice generated by the rows.
ZMat hermite_basis(ZMat a) {
    if (a.empty()) return a;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a[i][c] != 0 && (best == rows || abs(a[i][c]) < abs(a[best][c]))) best = i;
            if (best == rows) break;
            std::swap(a[r], a[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                if (q != 0)
                    for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
                if (a[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0)
            for (std::size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
        for (std::size_t i = 0; i < r; ++i) { // reduce entries above the pivot
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
            if (q != 0)
                for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        }
        ++r;
    }
    a.resize(r);
    return a;
}

// integer coordinates of v in the row basis (echelon form), throws if not in the lattice
ZVec lattice_coords(const ZMat& basis, const ZVec& v) {
    ZVec coords(basis.size(), mpz_class(0));
    ZVec rem = v;
    for (std::size_t r = 0; r < basis.size(); ++r) {
        std::size_t piv = 0;
        while (piv < basis[r].size() && basis[r][piv] == 0) ++piv;
        if (piv == basis[r].size()) continue;
        if (rem[piv] % basis[r][piv] != 0)
            throw std::logic_error("face point outside the generated lattice");
        mpz_class q = rem[piv] / basis[r][piv];
        coords[r] = q;
        for (std::size_t j = 0; j < rem.size(); ++j) rem[j] -= q * basis[r][j];
    }
    for (const auto& x : rem)
        if (x != 0) throw std::logic_error("face point outside the face span");
    return coords;
}

} // namespace

NewtonPolytope newton_polytope(const LaurentPoly& phi) {
    if (phi.is_zero()) throw std::domain_error("zero polynomial");
    NewtonPolytope p;
    p.n = phi.dim();
    for (const auto& [e, c] : phi.terms()) p.support.push_back(e);
    std::sort(p.support.begin(), p.support.end());
    p.support.erase(std::unique(p.support.begin(), p.support.end()), p.support.end());

    const long rank = affine_rank(p.support);
    p.full_dim = (rank == p.n);
    if (!p.full_dim) {
        if (p.support.size() == 1) p.vertices = p.support;
        return p;
    }

    // facets: one-sided hyperplanes through n-subsets of support points
    std::set<std::pair<ZVec, mpz_class>> seen;
    const std::size_t nsup = p.support.size();
    auto try_subset = [&](const std::vector<std::size_t>& sel) {
        std::vector<ExponentVector> pts;
        for (auto i : sel) pts.push_back(p.support[i]);
        ZVec nu = hyperplane_normal(pts);
        if (nu.empty()) return;
        mpz_class level = dot(nu, pts[0]);
        bool above = false, below = false;
        for (const auto& q : p.support) {
            int cmp = sgn(mpz_class(dot(nu, q) - level));
            if (cmp > 0) above = true;
            if (cmp < 0) below = true;
            if (above && below) return;
        }
        if (below) {
            for (auto& c : nu) c = -c;
            level = -level;
        }
        // inequality <nu, x> >= level holds on the polytope
        seen.emplace(nu, -level);
    };
    // iterate all n-subsets
    std::vector<std::size_t> comb(static_cast<std::size_t>(p.n));
    for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = i;
    if (nsup >= comb.size()) {
        while (true) {
            try_subset(comb);
            // next combination
            long i = static_cast<long>(comb.size()) - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] ==
                                 nsup - comb.size() + static_cast<std::size_t>(i))
                --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < comb.size(); ++j)
                comb[j] = comb[j - 1] + 1;
        }
    }
    for (const auto& [nu, off] : seen) p.facets.push_back(Facet{nu, off});

    // vertices: support points whose active facet normals span R^n
    for (const auto& q : p.support) {
        ZMat active;
        for (const auto& f : p.facets)
            if (dot(f.normal, q) == -f.offset) active.push_back(f.normal);
        if (static_cast<int>(rank_of(active)) == p.n) p.vertices.push_back(q);
    }

    // lattice points: scan the bounding box against all facet inequalities
    std::vector<int> lo(static_cast<std::size_t>(p.n)), hi(static_cast<std::size_t>(p.n));
    for (int i = 0; i < p.n; ++i) {
        auto ui = static_cast<std::size_t>(i);
        lo[ui] = hi[ui] = p.support[0][ui];
        for (const auto& q : p.support) {
            lo[ui] = std::min(lo[ui], q[ui]);
            hi[ui] = std::max(hi[ui], q[ui]);
        }
    }
    ExponentVector cur(lo.begin(), lo.end());
    while (true) {
        bool inside = true, strict = true;
        for (const auto& f : p.facets) {
            int cmp = sgn(mpz_class(dot(f.normal, cur) + f.offset));
            if (cmp < 0) { inside = false; break; }
            if (cmp == 0) strict = false;
        }
        if (inside) {
            p.lattice_points.push_back(cur);
            if (strict) p.interior_points.push_back(cur);
        }
        int i = p.n - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == hi[static_cast<std::size_t>(i)]) {
            cur[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
            --i;
        }
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
    }
    return p;
}

ReflexiveResult is_reflexive(const NewtonPolytope& p) {
    ReflexiveResult res;
    if (!p.full_dim) {
        res.reason = "not full-dimensional";
        return res;
    }
    ExponentVector origin(static_cast<std::size_t>(p.n), 0);
    bool interior = std::find(p.interior_points.begin(), p.interior_points.end(), origin) !=
                    p.interior_points.end();
    if (!interior) {
        res.reason = "origin not interior";
        return res;
    }
    for (const auto& f : p.facets)
        if (f.offset != 1) {
            res.reason = "facet offset != 1";
            return res;
        }
    res.reflexive = true;
    for (const auto& f : p.facets) {
        ExponentVector v(static_cast<std::size_t>(p.n));
        for (int i = 0; i < p.n; ++i)
            v[static_cast<std::size_t>(i)] = static_cast<int>(f.normal[static_cast<std::size_t>(i)].get_si());
        res.dual_vertices.push_back(v);
    }
    std::sort(res.dual_vertices.begin(), res.dual_vertices.end());
    return res;
}

bool has_unique_interior_point(const NewtonPolytope& p) {
    if (!p.full_dim) return false;
    ExponentVector origin(static_cast<std::size_t>(p.n), 0);
    return p.interior_points.size() == 1 && p.interior_points[0] == origin;
}

std::vector<Face> faces_of_codim(const NewtonPolytope& p, int codim) {
    std::vector<Face> out;
    if (!p.full_dim || codim < 1 || codim > p.n - 1) return out;

    // descend the face lattice: codim-(j+1) faces are intersections of
    // codim-j faces with facets, of the right affine rank
    std::set<std::vector<ExponentVector>> level;
    for (const auto& f : p.facets) {
        std::vector<ExponentVector> pts;
        for (const auto& q : p.lattice_points)
            if (dot(f.normal, q) == -f.offset) pts.push_back(q);
        if (!pts.empty() && affine_rank(pts) == p.n - 1) level.insert(pts);
    }
    for (int j = 2; j <= codim; ++j) {
        std::set<std::vector<ExponentVector>> next;
        for (const auto& face : level) {
            for (const auto& f : p.facets) {
                std::vector<ExponentVector> pts;
                for (const auto& q : face)
                    if (dot(f.normal, q) == -f.offset) pts.push_back(q);
                if (!pts.empty() && affine_rank(pts) == p.n - j) next.insert(pts);
            }
        }
        level = std::move(next);
    }
    for (const auto& pts : level) {
        Face face;
        face.codim = codim;
        face.points = pts;
        face.anchor = *std::min_element(pts.begin(), pts.end());
        ZMat dirs;
        for (const auto& q : pts) {
            ZVec d(static_cast<std::size_t>(p.n));
            bool nonzero = false;
            for (int i = 0; i < p.n; ++i) {
                d[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i)] -
                                                 face.anchor[static_cast<std::size_t>(i)];
                nonzero = nonzero || d[static_cast<std::size_t>(i)] != 0;
            }
            if (nonzero) dirs.push_back(std::move(d));
        }
        face.basis = hermite_basis(std::move(dirs));
        out.push_back(std::move(face));
    }
    return out;
}

std::vector<std::pair<Face, LaurentPoly>> face_polynomials(const LaurentPoly& phi,
                                                           const NewtonPolytope& p, int codim) {
    if (codim < 1 || codim > p.n - 1)
        throw std::invalid_argument("codim must be in [1, n-1]");
    std::vector<std::pair<Face, LaurentPoly>> out;
    std::vector<Face> faces = faces_of_codim(p, codim);
    for (Face& face : faces) {
        const int dim = p.n - codim;
        LaurentPoly restricted(dim);
        std::set<ExponentVector> on_face(face.points.begin(), face.points.end());
        for (const auto& [e, c] : phi.terms()) {
            if (!on_face.count(e)) continue;
            ZVec d(static_cast<std::size_t>(p.n));
            for (int i = 0; i < p.n; ++i)
                d[static_cast<std::size_t>(i)] =
                    e[static_cast<std::size_t>(i)] - face.anchor[static_cast<std::size_t>(i)];
            ZVec coords = lattice_coords(face.basis, d);
            ExponentVector ce(static_cast<std::size_t>(dim), 0);
            for (std::size_t i = 0; i < coords.size() && i < static_cast<std::size_t>(dim); ++i)
                ce[i] = static_cast<int>(coords[i].get_si());
            restricted.add_term(ce, c);
        }
        if (!restricted.is_zero()) out.emplace_back(std::move(face), std::move(restricted));
    }
    return out;
}

//
// ---- cyclotomy ----
//

namespace {

ZPoly strip_and_normalize(ZPoly p) {
    // remove x^k factors, divide content, make leading positive
    std::size_t k = 0;
    while (k < p.size() && p[k] == 0) ++k;
    p.erase(p.begin(), p.begin() + static_cast<long>(k));
    polyutil::trim(p);
    if (p.empty()) return p;
    mpz_class g = polyutil::content(p);
    if (p.back() < 0) g = -g;
    for (auto& c : p) c /= g;
    return p;
}

ZPoly graeffe_step(const ZPoly& p) {
    // g(x^2) = +- p(x) p(-x)
    const std::size_t n = p.size();
    ZPoly prod(2 * n - 1, mpz_class(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (p[j] == 0) continue;
            mpz_class term = p[i] * p[j];
            prod[i + j] += (j % 2 == 0) ? term : -term;
        }
    }
    ZPoly g((prod.size() + 1) / 2);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = prod[2 * i];
    return strip_and_normalize(std::move(g));
}

} // namespace

bool is_cyclotomic(const ZPoly& p_in) {
    ZPoly p = strip_and_normalize(p_in);
    if (p.empty()) throw std::invalid_argument("zero polynomial");
    const int d = polyutil::deg(p);
    if (d == 0) return true; // unit after stripping
    // coefficient bound for products of cyclotomics of this degree
    mpz_class bound;
    mpz_bin_uiui(bound.get_mpz_t(), static_cast<unsigned long>(d),
                 static_cast<unsigned long>(d / 2));
    std::set<ZPoly> seen;
    seen.insert(p);
    const int max_iter = 2 * d * d + 16;
    for (int it = 0; it < max_iter; ++it) {
        for (const auto& c : p)
            if (abs(c) > bound) return false;
        p = graeffe_step(p);
        if (polyutil::deg(p) != d) return false; // root at 0 appeared: |lead| > 1
        if (!seen.insert(p).second) return true; // periodic
    }
    return false;
}

bool is_cyclotomic(const LaurentPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial");
    if (f.dim() != 1) throw std::invalid_argument("expected a univariate polynomial");
    int mn = f.terms().begin()->first[0];
    int mx = f.terms().rbegin()->first[0];
    ZPoly p(static_cast<std::size_t>(mx - mn) + 1, mpz_class(0));
    mpz_class den = 1;
    for (const auto& [e, c] : f.terms()) den = int_lcm(den, c.get_den());
    for (const auto& [e, c] : f.terms()) {
        mpq_class v = c * den;
        p[static_cast<std::size_t>(e[0] - mn)] = v.get_num();
    }
    return is_cyclotomic(p);
}

//
// ---- Steinberg screen ----
//

namespace {

LaurentPoly strip_monomial(const LaurentPoly& f) {
    std::vector<int> mn, mx;
    f.support_bounds(mn, mx);
    LaurentPoly out(f.dim());
    ExponentVector e2(static_cast<std::size_t>(f.dim()));
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t i = 0; i < e2.size(); ++i) e2[i] = e[i] - mn[i];
        out.add_term(e2, c);
    }
    return out;
}

// exact division of Laurent polynomials by lex-leading-term reduction; the
// lex group order has no minimal element, so non-divisors are cut off by an
// iteration cap rather than by remainder growth
std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly rem = f, quo(f.dim());
    const auto& glt = *g.terms().rbegin();
    long cap = 64 * static_cast<long>(f.term_count() + g.term_count()) + 256;
    while (!rem.is_zero()) {
        if (--cap < 0) return std::nullopt;
        const auto& rlt = *rem.terms().rbegin();
        ExponentVector q(rlt.first.size());
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = rlt.first[i] - glt.first[i];
        mpq_class c = rlt.second / glt.second;
        LaurentPoly t = LaurentPoly::monomial(f.dim(), q, c);
        quo = quo + t;
        rem = rem - t * g;
    }
    return quo;
}

std::optional<LaurentPoly> try_factor(const LaurentPoly& p, const LaurentPoly& cand) {
    auto q = divide_exact(p, cand);
    if (!q) return std::nullopt;
    // Laurent division tolerance: the quotient may carry a monomial shift
    return strip_monomial(*q);
}

// support on one line through the anchor -> rewrite as univariate
std::optional<ZPoly> as_univariate(const LaurentPoly& p) {
    std::vector<ExponentVector> sup;
    for (const auto& [e, c] : p.terms()) sup.push_back(e);
    if (affine_rank(sup) > 1) return std::nullopt;
    const ExponentVector& a = sup.front();
    ZVec dir;
    for (const auto& e : sup) {
        ZVec d(e.size());
        bool nz = false;
        for (std::size_t i = 0; i < e.size(); ++i) {
            d[i] = e[i] - a[i];
            nz = nz || d[i] != 0;
        }
        if (nz) { dir = d; break; }
    }
    if (dir.empty()) return ZPoly{mpz_class(1)}; // single term: unit
    mpz_class g = 0;
    for (const auto& c : dir) g = int_gcd(g, c);
    for (auto& c : dir) c /= g;
    // position of each term along dir
    long mx = 0;
    std::map<long, mpq_class> coeffs;
    for (const auto& [e, c] : p.terms()) {
        // t = (e - a) . dir / |dir|^2 -- use first nonzero coordinate instead
        std::size_t piv = 0;
        while (dir[piv] == 0) ++piv;
        mpz_class num = e[piv] - a[piv];
        if (num % dir[piv] != 0) return std::nullopt;
        long t = mpz_class(num / dir[piv]).get_si();
        coeffs[t] = c;
        mx = std::max(mx, t);
    }
    ZPoly out(static_cast<std::size_t>(mx) + 1, mpz_class(0));
    mpz_class den = 1;
    for (const auto& [t, c] : coeffs) den = int_lcm(den, c.get_den());
    for (const auto& [t, c] : coeffs) {
        mpq_class v = c * den;
        out[static_cast<std::size_t>(t)] = v.get_num();
    }
    return out;
}

bool is_unimodular_equal_triangle(const LaurentPoly& p) {
    if (p.term_count() != 3) return false;
    std::vector<ExponentVector> sup;
    mpq_class mag = -1;
    for (const auto& [e, c] : p.terms()) {
        sup.push_back(e);
        mpq_class a = abs(c);
        if (mag == -1) mag = a;
        else if (a != mag) return false;
    }
    ZMat dirs;
    for (int i = 1; i <= 2; ++i) {
        ZVec d(sup[0].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = sup[static_cast<std::size_t>(i)][j] - sup[0][j];
        dirs.push_back(std::move(d));
    }
    if (dirs[0].size() != 2) return false;
    mpz_class det = dirs[0][0] * dirs[1][1] - dirs[0][1] * dirs[1][0];
    return det == 1 || det == -1;
}

std::vector<ExponentVector> polygon_directions(const LaurentPoly& p) {
    std::vector<ExponentVector> dirs;
    NewtonPolytope np = newton_polytope(p);
    if (!np.full_dim) return dirs;
    for (const auto& f : np.facets) {
        // rotate the edge normal (a, b) to the direction (-b, a), primitively
        mpz_class a = f.normal[0], b = f.normal[1];
        mpz_class g = int_gcd(a, b);
        ExponentVector d{static_cast<int>(mpz_class(-b / g).get_si()),
                         static_cast<int>(mpz_class(a / g).get_si())};
        if (d < ExponentVector{0, 0}) { d[0] = -d[0]; d[1] = -d[1]; }
        dirs.push_back(d);
    }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    return dirs;
}

} // namespace

SteinbergClass steinberg_classify(const LaurentPoly& p_in) {
    if (p_in.is_zero()) return SteinbergClass::Unknown;
    if (p_in.dim() != 2) throw std::invalid_argument("expected a bivariate polynomial");
    LaurentPoly p = strip_monomial(p_in);
    bool saw_steinberg = false;

    for (int guard = 0; guard < 64; ++guard) {
        if (p.term_count() == 1)
            return saw_steinberg ? SteinbergClass::SteinbergCatalog
                                 : SteinbergClass::CyclotomicProduct;

        if (auto uni = as_univariate(p)) {
            if (is_cyclotomic(*uni))
                return saw_steinberg ? SteinbergClass::SteinbergCatalog
                                     : SteinbergClass::CyclotomicProduct;
            return SteinbergClass::Unknown;
        }

        if (is_unimodular_equal_triangle(p)) {
            // irreducible Steinberg-type line in suitable coordinates
            return SteinbergClass::SteinbergCatalog;
        }

        bool progressed = false;
        std::vector<ExponentVector> dirs = polygon_directions(p);
        for (const auto& d : dirs) {
            for (int s : {-1, 1}) {
                LaurentPoly cand(2);
                cand.add_term(d, 1);
                cand.add_term({0, 0}, s);
                if (auto q = try_factor(p, cand)) {
                    p = *q;
                    progressed = true;
                    break;
                }
            }
            if (progressed) break;
        }
        if (progressed) continue;

        // trinomial candidates 1 + s1 x^d1 + s2 x^d2 over unimodular direction pairs
        for (std::size_t i = 0; i < dirs.size() && !progressed; ++i)
            for (std::size_t j = 0; j < dirs.size() && !progressed; ++j) {
                if (i == j) continue;
                mpz_class det = mpz_class(dirs[i][0]) * dirs[j][1] -
                                mpz_class(dirs[i][1]) * dirs[j][0];
                if (det != 1 && det != -1) continue;
                for (int s1 : {-1, 1}) {
                    for (int s2 : {-1, 1}) {
                        LaurentPoly cand(2);
                        cand.add_term({0, 0}, 1);
                        cand.add_term(dirs[i], s1);
                        cand.add_term(dirs[j], s2);
                        if (auto q = try_factor(p, cand)) {
                            p = *q;
                            saw_steinberg = true;
                            progressed = true;
                            break;
                        }
                    }
                    if (progressed) break;
                }
            }
        if (!progressed) return SteinbergClass::Unknown;
    }
    return SteinbergClass::Unknown;
}

QuasiEffectivityResult quasi_effectivity_check(const MoriData& mori, long B,
                                               const std::vector<ExponentVector>& points,
                                               const std::vector<mpz_class>& offsets) {
    const std::size_t M = mori.generators.size();
    if (M == 0) throw std::invalid_argument("no generators");
    const std::size_t N1 = mori.generators[0].size(); // N + 1 entries
    for (const auto& g : mori.generators) {
        if (g.size() != N1) throw std::invalid_argument("generator size mismatch");
        mpz_class s = 0;
        for (std::size_t i = 1; i < N1; ++i) s += g[i];
        if (g[0] != -s)
            throw std::invalid_argument("generator violates l_0 = -sum_{i>=1} l_i");
        if (!points.empty()) {
            if (points.size() != N1 - 1) throw std::invalid_argument("points size mismatch");
            std::vector<mpz_class> acc(points[0].size(), mpz_class(0));
            for (std::size_t i = 1; i < N1; ++i)
                for (std::size_t j = 0; j < acc.size(); ++j)
                    acc[j] += g[i] * points[i - 1][j];
            for (const auto& v : acc)
                if (v != 0)
                    throw std::invalid_argument("generator violates sum l_i v^(i) = 0");
        }
    }

    QuasiEffectivityResult res;
    res.verdict = EffectivityVerdict::AllEffective;
    std::vector<long> nvec(M, 0);
    while (true) {
        std::vector<mpz_class> ell(N1, mpz_class(0));
        for (std::size_t k = 0; k < M; ++k)
            for (std::size_t i = 0; i < N1; ++i) ell[i] += nvec[k] * mori.generators[k][i];
        int negatives = 0;
        for (std::size_t i = 1; i < N1; ++i)
            if (ell[i] < 0) ++negatives;
        if (negatives >= 2) {
            res.verdict = EffectivityVerdict::Fails;
            res.witness = QuasiWitness{nvec};
            return res;
        }
        if (negatives == 1 && res.verdict == EffectivityVerdict::AllEffective) {
            res.verdict = EffectivityVerdict::QuasiEffective;
            res.witness = QuasiWitness{nvec};
        }
        if (!offsets.empty()) {
            if (offsets.size() != N1 - 1) throw std::invalid_argument("offsets size mismatch");
            mpz_class lhs = 0, plus = 0;
            for (std::size_t i = 1; i < N1; ++i) {
                lhs += offsets[i - 1] * ell[i];
                if (ell[i] > 0) plus += ell[i];
            }
            if (lhs < plus) res.degree_inequality_ok = false;
        }
        std::size_t k = 0;
        while (k < M && nvec[k] == B) {
            nvec[k] = 0;
            ++k;
        }
        if (k == M) break;
        ++nvec[k];
    }
    return res;
}

} // namespace aperyforge
