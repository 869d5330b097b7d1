#include "aperyforge/linalg.hpp"

namespace aperyforge {

std::vector<int> rref(QMatrix& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t pr = 0;
    for (std::size_t c = 0; c < cols && pr < rows; ++c) {
        std::size_t sel = pr;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[pr], a[sel]);
        mpq_class inv = a[pr][c];
        for (std::size_t j = c; j < cols; ++j) a[pr][j] /= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr || a[r][c] == 0) continue;
            mpq_class f = a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[pr][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++pr;
    }
    return pivots;
}

std::optional<std::vector<mpq_class>> nullspace_vector(QMatrix a, int ncols) {
    std::vector<int> pivots = rref(a);
    std::vector<char> is_pivot(static_cast<std::size_t>(ncols), 0);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
    int free_col = -1;
    for (int c = 0; c < ncols; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) { free_col = c; break; }
    if (free_col < 0) return std::nullopt;
    std::vector<mpq_class> x(static_cast<std::size_t>(ncols), 0);
    x[static_cast<std::size_t>(free_col)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<std::size_t>(pivots[r])] = -a[r][static_cast<std::size_t>(free_col)];
    return x;
}

std::optional<std::vector<mpq_class>> solve_linear(QMatrix a, std::vector<mpq_class> b) {
    const std::size_t rows = a.size();
    if (rows == 0 || b.size() != rows) return std::nullopt;
    const std::size_t cols = a[0].size();
    for (std::size_t r = 0; r < rows; ++r) a[r].push_back(b[r]);
    std::vector<int> pivots = rref(a);
    if (!pivots.empty() && pivots.back() == static_cast<int>(cols))
        return std::nullopt; // inconsistent
    if (pivots.size() < cols) return std::nullopt; // underdetermined
    std::vector<mpq_class> x(cols);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<std::size_t>(pivots[r])] = a[r][cols];
    return x;
}

} // namespace aperyforge
