/**
 * @file polytope.hpp
 * @brief Newton-polytope combinatorics and the polynomial-level hypothesis
 *        screens: reflexivity, unique interior point, face polynomials in
 *        canonical (Hermite) face coordinates, cyclotomy of edge polynomials,
 *        the Steinberg-catalog screen for 2-face polynomials, and
 *        quasi-effectivity of user-supplied Mori generators.
 */
#ifndef APERYFORGE_POLYTOPE_HPP
#define APERYFORGE_POLYTOPE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aperyforge/laurent.hpp"
#include "aperyforge/ode.hpp"
#include "aperyforge/rational.hpp"

namespace aperyforge {

struct Facet {
    std::vector<mpz_class> normal; // primitive integral
    mpz_class offset;              // <normal, x> >= -offset on the polytope
};

struct NewtonPolytope {
    int n = 1;
    bool full_dim = false;
    std::vector<ExponentVector> support;        // input exponent vectors
    std::vector<ExponentVector> vertices;
    std::vector<Facet> facets;                  // empty unless full dimensional
    std::vector<ExponentVector> lattice_points; // all of hull cap Z^n (full dim)
    std::vector<ExponentVector> interior_points;
};

struct Face {
    int codim = 0;
    std::vector<ExponentVector> points;        // lattice points of the polytope on the face
    ExponentVector anchor;                     // lexicographically smallest vertex on the face
    std::vector<std::vector<mpz_class>> basis; // rows: affine lattice basis of the face span
};

/// Mori generator vectors l^(k); each has N+1 entries (l_0, l_1, ..., l_N)
/// with l_0 = -sum_{i>=1} l_i.
struct MoriData {
    std::vector<std::vector<mpz_class>> generators;
};

NewtonPolytope newton_polytope(const LaurentPoly& phi);

struct ReflexiveResult {
    bool reflexive = false;
    std::string reason; // set when false
    std::vector<ExponentVector> dual_vertices;
};

ReflexiveResult is_reflexive(const NewtonPolytope& p);

bool has_unique_interior_point(const NewtonPolytope& p);

std::vector<Face> faces_of_codim(const NewtonPolytope& p, int codim);

/// Restriction of phi to each codimension-j face, rewritten in the canonical
/// affine lattice basis of the face.
std::vector<std::pair<Face, LaurentPoly>> face_polynomials(const LaurentPoly& phi,
                                                           const NewtonPolytope& p, int codim);

/// Kronecker criterion via bounded Graeffe root-squaring: true iff every
/// complex root of p is a root of unity (monomial factors stripped first).
bool is_cyclotomic(const ZPoly& p);
bool is_cyclotomic(const LaurentPoly& univariate);

enum class SteinbergClass { SteinbergCatalog, CyclotomicProduct, Unknown };

/// Screens a 2-face polynomial against the catalog {x +- 1, y +- 1,
/// 1 - x +- y, 1 - y +- x, cyclotomic in one variable}; Unknown means the
/// screen is inconclusive, not a failure.
SteinbergClass steinberg_classify(const LaurentPoly& p);

struct QuasiWitness {
    std::vector<long> n; // multi-index where the verdict degrades
};

enum class EffectivityVerdict { AllEffective, QuasiEffective, Fails };

struct QuasiEffectivityResult {
    EffectivityVerdict verdict = EffectivityVerdict::Fails;
    std::optional<QuasiWitness> witness;   // present when verdict degrades
    bool degree_inequality_ok = true;      // facile-pencil degree bound, when offsets given
};

/// Exhaustive scan of l(n) = sum n_k l^(k) over n in [0, B]^M. `points`,
/// when supplied, validates sum_i l_i v^(i) = 0; `offsets`, when supplied,
/// additionally verifies sum o_i l_i(n) >= |l(n)|^+.
QuasiEffectivityResult quasi_effectivity_check(
    const MoriData& mori, long B,
    const std::vector<ExponentVector>& points = {},
    const std::vector<mpz_class>& offsets = {});

} // namespace aperyforge

#endif
