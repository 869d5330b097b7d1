/**
 * @file generators.hpp
 * @brief Constructors for the polynomial families: the n = 1 Legendre-type
 *        family, the built-in catalog with its expected-value fixtures, the
 *        inductive VZ polynomials, and cellular Laurent polynomials
 *        reconstructed from convergent permutations.
 */
#ifndef APERYFORGE_GENERATORS_HPP
#define APERYFORGE_GENERATORS_HPP

#include <optional>
#include <string>
#include <vector>

#include "aperyforge/analytic.hpp"
#include "aperyforge/json_io.hpp"
#include "aperyforge/laurent.hpp"
#include "aperyforge/ode.hpp"

namespace aperyforge {

struct CatalogEntry {
    std::string name;
    LaurentPoly phi{1};
    int n = 1;
    mpz_class C = 1;  // involution constant: t -> sign / (C t)
    int sign = 1;
    long r_cover = 1; // facile cover degree
    std::string expected_constant;        // constant_catalog key, empty if none
    std::optional<QuadSurd> expected_r_phi;
    std::optional<double> expected_gate_2dp; // tabulated approximate gate value
    std::optional<DeltaOperator> expected_operator;
    std::string r_phi_provenance; // "tabulated" | "recomputed"
    std::string notes;
};

/// phi(x) = -x + a + (1 - a^2)/(4x) with a = 2b + 1; the special value is
/// log((b+1)/b) and r_phi = a - sqrt(a^2 - 1).
CatalogEntry n1_family(long b);

/// The built-in worked examples and near-examples.
std::vector<CatalogEntry> builtin_catalog();

Json catalog_to_json(const std::vector<CatalogEntry>& entries);

/// psi_n = x_1...x_n + (1 - x_n) psi_{n-1}, psi_1 = 1;
/// phi_n = (1 - x_1^{-1}) ... (1 - x_n^{-1}) psi_n.
std::pair<LaurentPoly, LaurentPoly> vz_polynomial(int n);

struct CyclicPermutation {
    std::vector<int> image; // values 1..N, a bijection
    int size() const { return static_cast<int>(image.size()); }
};

/// No cyclic window of k consecutive entries (2 <= k <= n + 1, N = n + 3)
/// maps onto a set of consecutive residues mod N.
bool is_convergent(const CyclicPermutation& sigma);

/// Reconstructs theta_sigma/theta as a Laurent polynomial on the candidate
/// support {-1, 0, 1}^n by exact interpolation through the cross-ratio chart,
/// then verifies on fresh sample points.
LaurentPoly cellular_laurent(const CyclicPermutation& sigma);

} // namespace aperyforge

#endif
