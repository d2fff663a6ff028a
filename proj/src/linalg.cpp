#include "irrvir/linalg.hpp"

namespace irrvir {

PolyMatrix zero_matrix(std::size_t rows, std::size_t cols) {
    return PolyMatrix(rows, std::vector<LaurentPoly>(cols));
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    PolyMatrix out = zero_matrix(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t l = 0; l < k; ++l) out[i][j].add_product(a[i][l], b[l][j]);
    return out;
}

LaurentPoly det_bareiss(PolyMatrix a) {
    const std::size_t n = a.size();
    if (n == 0) return LaurentPoly(1);
    for (const auto& row : a)
        if (row.size() != n) throw Error(ErrorKind::InternalConsistency, "determinant of a non-square matrix");
    LaurentPoly prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return LaurentPoly(0);
            std::swap(a[k], a[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                LaurentPoly v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = exact_div(v, prev);
            }
            a[i][k] = LaurentPoly(0);
        }
        prev = a[k][k];
    }
    LaurentPoly d = a[n - 1][n - 1];
    return negate ? -d : d;
}

namespace {

PolyMatrix minor_of(const PolyMatrix& a, std::size_t row, std::size_t col) {
    PolyMatrix m;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == row) continue;
        std::vector<LaurentPoly> r;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (j != col) r.push_back(a[i][j]);
        m.push_back(std::move(r));
    }
    return m;
}

}  // namespace

PolyMatrix inverse_cramer(const PolyMatrix& a) {
    const std::size_t n = a.size();
    LaurentPoly det = det_bareiss(a);
    if (det.is_zero()) throw Error(ErrorKind::SingularGram, "singular matrix");
    PolyMatrix inv = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            LaurentPoly cof = det_bareiss(minor_of(a, j, i));
            if ((i + j) % 2) cof = -cof;
            inv[i][j] = exact_div(cof, det);
        }
    return inv;
}

std::vector<LaurentPoly> solve_cramer(const PolyMatrix& a, const std::vector<LaurentPoly>& b) {
    const std::size_t n = a.size();
    LaurentPoly det = det_bareiss(a);
    if (det.is_zero()) throw Error(ErrorKind::SingularGram, "singular matrix");
    std::vector<LaurentPoly> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        PolyMatrix m = a;
        for (std::size_t i = 0; i < n; ++i) m[i][j] = b[i];
        x[j] = exact_div(det_bareiss(std::move(m)), det);
    }
    return x;
}

}  // namespace irrvir
