/**
 * @file linalg.hpp
 * @brief Dense exact linear algebra over Q: RREF, nullspace vector, solve.
 */
#ifndef APERYFORGE_LINALG_HPP
#define APERYFORGE_LINALG_HPP

#include <optional>
#include <vector>

#include "aperyforge/rational.hpp"

namespace aperyforge {

using QMatrix = std::vector<std::vector<mpq_class>>;

/// In-place reduced row echelon form; returns pivot column of each pivot row.
std::vector<int> rref(QMatrix& a);

/// Deterministic nullspace vector of the homogeneous system a x = 0:
/// the canonical basis vector for the first free column, or nullopt if none.
std::optional<std::vector<mpq_class>> nullspace_vector(QMatrix a, int ncols);

/// Solves the square (or overdetermined consistent) system a x = b exactly;
/// nullopt when singular/inconsistent.
std::optional<std::vector<mpq_class>> solve_linear(QMatrix a, std::vector<mpq_class> b);

} // namespace aperyforge

#endif
