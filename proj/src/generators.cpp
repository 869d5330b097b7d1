#include "aperyforge/generators.hpp"

#include <algorithm>
#include <set>

#include "aperyforge/linalg.hpp"

namespace aperyforge {

CatalogEntry n1_family(long b) {
    if (b < 1) throw std::invalid_argument("b must be >= 1");
    const long a = 2 * b + 1;
    CatalogEntry e;
    e.name = "log-family-b" + std::to_string(b);
    e.n = 1;
    e.C = 1;
    e.sign = 1;
    e.r_cover = 1; // the family is its own facile 1-cover
    LaurentPoly phi(1);
    phi.add_term({1}, -1);
    phi.add_term({0}, a);
    phi.add_term({-1}, mpq_class(1 - a * a, 4));
    e.phi = phi;
    e.expected_constant = "log(" + std::to_string(b + 1) + "/" + std::to_string(b) + ")";
    e.expected_r_phi = quadratic_smallest_root({1, -2 * a, 1}).root; // a - sqrt(a^2-1)
    e.r_phi_provenance = "tabulated";
    e.expected_operator =
        DeltaOperator({QPoly{0, mpq_class(-a), 1}, QPoly{1, mpq_class(-2 * a), 1}});
    e.notes = "periods are Legendre values P_m(a)";
    return e;
}

std::vector<CatalogEntry> builtin_catalog() {
    std::vector<CatalogEntry> out;
    out.push_back(n1_family(1));

    {
        CatalogEntry e;
        e.name = "baby-apery-zeta2";
        e.n = 2;
        e.C = 1;
        e.sign = -1; // involution over t -> -1/t
        e.r_cover = 1;
        e.phi = parse_laurent("x1^-1*x2^-1*(1-x1)*(1-x2)*(1-x1-x2)", 2);
        e.expected_constant = "zeta(2)";
        e.expected_r_phi = QuadSurd{-11, 5, 5, 2}; // (-11 + 5 sqrt(5)) / 2
        e.r_phi_provenance = "tabulated";
        e.expected_operator =
            DeltaOperator({QPoly{0, 3, 1}, QPoly{0, 11, 2}, QPoly{-1, 11, 1}});
        e.notes = "periods 1, 3, 19, 147, ...";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "apery-zeta3";
        e.n = 3;
        e.C = 1;
        e.sign = 1;
        e.r_cover = 2; // 2:1 cover by the Fermi family
        e.phi = parse_laurent(
            "x1^-1*x2^-1*x3^-1*(x1-1)*(x2-1)*(x3-1)*(1-x1-x2+x1*x2-x1*x2*x3)", 3);
        e.expected_constant = "zeta(3)";
        e.expected_r_phi = QuadSurd{17, -12, 2, 1}; // (sqrt(2) - 1)^4
        e.r_phi_provenance = "tabulated";
        e.expected_gate_2dp = 0.59;
        e.expected_operator = DeltaOperator(
            {QPoly{0, -5, 1}, QPoly{0, -27, 3}, QPoly{0, -51, 3}, QPoly{1, -34, 1}});
        e.notes = "periods 1, 5, 73, 1445, ...";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "phi-II";
        e.n = 3;
        e.C = 16;
        e.sign = 1;
        e.phi = parse_laurent("(1-x1-x2-x3)*(1-x1^-1)*(1-x2^-1)*(1-x3^-1)", 3);
        e.expected_constant = "zeta(3)";
        e.expected_r_phi = QuadSurd{3, -2, 2, 4}; // smallest root of 16t^2-24t+1
        e.r_phi_provenance = "recomputed";
        e.expected_gate_2dp = 13.78;
        e.expected_operator = DeltaOperator(
            {QPoly{0, -4, 16}, QPoly{0, -20, 48}, QPoly{0, -36, 48}, QPoly{1, -24, 16}});
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "phi-III";
        e.n = 3;
        e.C = -27;
        e.sign = 1;
        e.phi = parse_laurent(
            "(x1+x2+x3)*(-1+x1^-1+x2^-1+x3^-1-x1^-1*x2^-1-x1^-1*x3^-1-x2^-1*x3^-1)", 3);
        e.expected_constant = "L(chi-3,3)";
        e.expected_r_phi = QuadSurd{-3, 2, 3, 9}; // smallest root of -27t^2-18t+1
        e.r_phi_provenance = "recomputed";
        e.expected_gate_2dp = 27.97;
        e.expected_operator = DeltaOperator(
            {QPoly{0, -3, -27}, QPoly{0, -15, -81}, QPoly{0, -27, -81}, QPoly{1, -18, -27}});
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "phi-IV";
        e.n = 3;
        e.C = 64;
        e.sign = 1;
        e.phi = parse_laurent("(1-x1-x2-x3)*(1-x1^-1-x2^-1-x3^-1)", 3);
        e.expected_constant = "zeta(3)";
        e.expected_r_phi = QuadSurd{1, 0, 0, 16}; // (16t-1)(4t-1): smaller root 1/16
        e.r_phi_provenance = "recomputed";
        e.expected_gate_2dp = 80.34;
        e.expected_operator = DeltaOperator(
            {QPoly{0, -4, 64}, QPoly{0, -18, 192}, QPoly{0, -30, 192}, QPoly{1, -20, 64}});
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "zagier-E";
        e.n = 2;
        e.C = 32;
        e.sign = 1;
        e.phi = parse_laurent("(x1+x1^-1)*(x2+x2^-1)+4", 2);
        e.expected_constant = "catalan"; // special value 2G
        e.expected_r_phi = QuadSurd{1, 0, 0, 8}; // (32t^2-12t+1) = (8t-1)(4t-1)
        e.r_phi_provenance = "recomputed";
        e.notes = "r_phi * C = 4: the gate fails; fiber types at the two "
                  "finite singular points do not match";
        out.push_back(std::move(e));
    }
    return out;
}

namespace {

Json surd_to_json(const QuadSurd& s) {
    Json j;
    j["p"] = s.p.get_str();
    j["q"] = s.q.get_str();
    j["d"] = s.d.get_str();
    j["e"] = s.e.get_str();
    return j;
}

Json operator_to_json_local(const DeltaOperator& d) {
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

} // namespace

Json catalog_to_json(const std::vector<CatalogEntry>& entries) {
    Json arr = Json::array();
    for (const auto& e : entries) {
        Json j;
        j["name"] = e.name;
        j["phi"] = laurent_to_json(e.phi);
        j["n"] = e.n;
        j["C"] = e.C.get_str();
        j["sign"] = e.sign;
        j["r_cover"] = e.r_cover;
        Json exp;
        exp["constant"] = e.expected_constant;
        if (e.expected_r_phi) {
            exp["r_phi"] = surd_to_json(*e.expected_r_phi);
            exp["r_phi_provenance"] = e.r_phi_provenance;
        }
        if (e.expected_gate_2dp) exp["gate_2dp"] = *e.expected_gate_2dp;
        if (e.expected_operator) exp["operator"] = operator_to_json_local(*e.expected_operator);
        j["expected"] = std::move(exp);
        if (!e.notes.empty()) j["notes"] = e.notes;
        arr.push_back(std::move(j));
    }
    Json root;
    root["schema"] = "apery-forge/1";
    root["catalog"] = std::move(arr);
    return root;
}

std::pair<LaurentPoly, LaurentPoly> vz_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    // psi_k lives in k variables; embed into n variables as we go
    LaurentPoly psi = LaurentPoly::constant(n, 1);
    for (int k = 1; k <= n; ++k) {
        if (k == 1) {
            // psi_1 = 1 by convention; nothing to do beyond the seed above
            continue;
        }
        LaurentPoly head(n); // x_1 ... x_k
        ExponentVector e(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)] = 1;
        head.add_term(e, 1);
        LaurentPoly one_minus(n);
        one_minus.add_term(ExponentVector(static_cast<std::size_t>(n), 0), 1);
        ExponentVector xk(static_cast<std::size_t>(n), 0);
        xk[static_cast<std::size_t>(k - 1)] = 1;
        one_minus.add_term(xk, -1);
        psi = head + one_minus * psi;
    }
    LaurentPoly phi = psi;
    for (int i = 0; i < n; ++i) {
        LaurentPoly fac(n);
        fac.add_term(ExponentVector(static_cast<std::size_t>(n), 0), 1);
        ExponentVector inv(static_cast<std::size_t>(n), 0);
        inv[static_cast<std::size_t>(i)] = -1;
        fac.add_term(inv, -1);
        phi = phi * fac;
    }
    return {psi, phi};
}

bool is_convergent(const CyclicPermutation& sigma) {
    const int N = sigma.size();
    if (N < 4) throw std::invalid_argument("permutation must act on at least 4 points");
    {
        std::set<int> seen(sigma.image.begin(), sigma.image.end());
        if (static_cast<int>(seen.size()) != N || *seen.begin() != 1 || *seen.rbegin() != N)
            throw std::invalid_argument("not a bijection on 1..N");
    }
    const int n = N - 3;
    // windows of k cyclically-adjacent entries, k = 2..n+1
    for (int k = 2; k <= n + 1; ++k) {
        for (int i = 0; i < N; ++i) {
            std::set<int> w;
            for (int t = 0; t < k; ++t) w.insert(sigma.image[static_cast<std::size_t>((i + t) % N)]);
            for (int a = 1; a <= N; ++a) {
                bool consecutive = true;
                for (int t = 0; t < k; ++t)
                    if (!w.count(((a - 1 + t) % N) + 1)) { consecutive = false; break; }
                if (consecutive) return false;
            }
        }
    }
    return true;
}

namespace {

// Inverse of the coordinate chart x_j = -CR(z_1, z_{n+2-j}, z_{n+3-j},
// z_{n+4-j}) with CR(a,b,c,d) = (a-b)(c-d)/((a-d)(c-b)) in the gauge
// z_1 = 0, z_{n+2} = 1, z_{n+3} = infinity: solves z_{n+1}, ..., z_2 one
// Moebius equation at a time. This slot order keeps theta_sigma/theta a
// Laurent polynomial on {-1,0,1}^n for convergent permutations.
std::vector<mpq_class> chart_to_z(const std::vector<mpq_class>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<mpq_class> z(static_cast<std::size_t>(n) + 3); // z[i] = z_i, i = 1..n+2
    z[1] = 0;
    z[static_cast<std::size_t>(n) + 2] = 1;
    // j = 1 uses the infinite gauge point: x_1 = z_{n+1} / (1 - z_{n+1})
    {
        mpq_class den = x[0] + 1;
        if (den == 0) throw std::domain_error("degenerate chart point");
        z[static_cast<std::size_t>(n) + 1] = x[0] / den;
    }
    for (int j = 2; j <= n; ++j) {
        const mpq_class& c = z[static_cast<std::size_t>(n + 3 - j)];
        const mpq_class& d = z[static_cast<std::size_t>(n + 4 - j)];
        mpq_class den = x[static_cast<std::size_t>(j - 1)] * d + d - c;
        if (den == 0) throw std::domain_error("degenerate chart point");
        z[static_cast<std::size_t>(n + 2 - j)] = x[static_cast<std::size_t>(j - 1)] * c * d / den;
    }
    return z;
}

// product over cyclic pairs of sigma skipping factors that touch the
// infinite gauge index N
mpq_class theta_finite(const std::vector<int>& image, const std::vector<mpq_class>& z) {
    const int N = static_cast<int>(image.size());
    mpq_class prod = 1;
    for (int i = 0; i < N; ++i) {
        int a = image[static_cast<std::size_t>(i)];
        int b = image[static_cast<std::size_t>((i + 1) % N)];
        if (a == N || b == N) continue;
        prod *= (z[static_cast<std::size_t>(a)] - z[static_cast<std::size_t>(b)]);
    }
    return prod;
}

std::vector<mpq_class> sample_point(int n, long t) {
    static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    std::vector<mpq_class> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        long k = t * n + i;
        mpq_class v(primes[k % 24], primes[(k + 5) % 24]);
        v.canonicalize();
        x[static_cast<std::size_t>(i)] = v;
    }
    return x;
}

} // namespace

LaurentPoly cellular_laurent(const CyclicPermutation& sigma) {
    if (!is_convergent(sigma)) throw std::invalid_argument("permutation is not convergent");
    const int N = sigma.size();
    const int n = N - 3;
    std::vector<int> identity(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) identity[static_cast<std::size_t>(i)] = i + 1;

    auto evaluate = [&](const std::vector<mpq_class>& x) -> mpq_class {
        std::vector<mpq_class> z = chart_to_z(x);
        mpq_class den = theta_finite(identity, z);
        if (den == 0) throw std::domain_error("degenerate sample");
        return theta_finite(sigma.image, z) / den;
    };

    // candidate support {-1,0,1}^n in a fixed order
    std::vector<ExponentVector> support;
    ExponentVector e(static_cast<std::size_t>(n), -1);
    while (true) {
        support.push_back(e);
        int i = n - 1;
        while (i >= 0 && e[static_cast<std::size_t>(i)] == 1) {
            e[static_cast<std::size_t>(i)] = -1;
            --i;
        }
        if (i < 0) break;
        ++e[static_cast<std::size_t>(i)];
    }
    const std::size_t S = support.size();

    long t = 0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        QMatrix rows;
        std::vector<mpq_class> rhs;
        std::vector<std::vector<mpq_class>> used;
        while (rows.size() < S && t < 4096) {
            std::vector<mpq_class> x = sample_point(n, t++);
            try {
                mpq_class val = evaluate(x);
                std::vector<mpq_class> row(S);
                for (std::size_t k = 0; k < S; ++k) {
                    mpq_class mono = 1;
                    for (int i = 0; i < n; ++i)
                        mono *= rat_pow(x[static_cast<std::size_t>(i)],
                                        support[k][static_cast<std::size_t>(i)]);
                    row[k] = mono;
                }
                rows.push_back(std::move(row));
                rhs.push_back(val);
                used.push_back(std::move(x));
            } catch (const std::domain_error&) {
                continue; // resample on degeneracy
            }
        }
        auto sol = solve_linear(rows, rhs);
        if (!sol) continue; // singular configuration: take the next sample block
        LaurentPoly phi(n);
        for (std::size_t k = 0; k < S; ++k) phi.add_term(support[k], (*sol)[k]);
        // verification on 10 held-out points
        int verified = 0;
        while (verified < 10 && t < 4096) {
            std::vector<mpq_class> x = sample_point(n, t++);
            try {
                mpq_class val = evaluate(x);
                if (eval_rational(phi, x) != val)
                    throw std::runtime_error(
                        "cellular reconstruction failed verification: support bound or "
                        "convergence precondition violated");
                ++verified;
            } catch (const std::domain_error&) {
                continue;
            }
        }
        if (verified == 10) return phi;
    }
    throw std::runtime_error("cellular reconstruction: no usable sample configuration");
}

} // namespace aperyforge
