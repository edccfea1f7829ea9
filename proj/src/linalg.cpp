#include "kcf/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <utility>

namespace kcf {

// ---------------------------------------------------------------------------
// Exact backend
// ---------------------------------------------------------------------------
namespace {

struct Echelon {
    Matrix<Rational> reduced;
    std::vector<std::size_t> pivots;
};

// Gauss-Jordan to reduced row echelon form. Zero entries are skipped so the
// cost tracks the sparsity of the (typically Kronecker-structured) inputs.
Echelon rref(Matrix<Rational> m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    Rational factor;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(m(p, c)) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
        if (m(r, c) != 1) {
            const Rational inv = 1 / m(r, c);
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(m(r, j)) != 0) m(r, j) *= inv;
        }
        std::vector<std::size_t> nz;
        for (std::size_t j = c + 1; j < cols; ++j)
            if (sgn(m(r, j)) != 0) nz.push_back(j);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m(i, c)) == 0) continue;
            factor = m(i, c);
            for (std::size_t j : nz) m(i, j) -= factor * m(r, j);
            m(i, c) = 0;
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

// Rows scaled by the lcm of their denominators; returns the integer matrix
// and the product of scales (for determinants).
std::pair<std::vector<std::vector<mpz_class>>, mpz_class> integerize(const Matrix<Rational>& m) {
    std::vector<std::vector<mpz_class>> out(m.rows(), std::vector<mpz_class>(m.cols()));
    mpz_class total = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
        total *= l;
    }
    return {std::move(out), total};
}

// Bareiss elimination in place. Returns rank; `sign` tracks row swaps.
std::size_t bareiss(std::vector<std::vector<mpz_class>>& a, std::size_t cols, int& sign) {
    const std::size_t rows = a.size();
    mpz_class prev = 1, t;
    std::size_t r = 0;
    sign = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

// Incrementally maintained echelon set used for greedy basis extension.
class IncrementalSpan {
   public:
    explicit IncrementalSpan(std::size_t dim) : dim_(dim) {}

    bool try_add(Vector<Rational> v) {
        for (const auto& [p, w] : rows_) {
            if (sgn(v[p]) == 0) continue;
            const Rational f = v[p];
            for (std::size_t j = 0; j < dim_; ++j)
                if (sgn(w[j]) != 0) v[j] -= f * w[j];
        }
        std::size_t p = 0;
        while (p < dim_ && sgn(v[p]) == 0) ++p;
        if (p == dim_) return false;
        const Rational inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        rows_.emplace_back(p, std::move(v));
        return true;
    }

   private:
    std::size_t dim_;
    std::vector<std::pair<std::size_t, Vector<Rational>>> rows_;
};

// ---------------------------------------------------------------------------
// Approx backend helpers
// ---------------------------------------------------------------------------

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
    Matrix<double> m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

struct Svd {
    Eigen::MatrixXd u, v;
    Eigen::VectorXd sigma;
    std::size_t rank = 0;
};

// Singular values at or below tolerance * max(rows, cols) * max(sigma_max, reference) are dropped.
Svd full_svd(const Eigen::MatrixXd& a, double tolerance, double reference = 0.0) {
    Svd out;
    if (a.rows() == 0 || a.cols() == 0) {
        out.u = Eigen::MatrixXd::Identity(a.rows(), a.rows());
        out.v = Eigen::MatrixXd::Identity(a.cols(), a.cols());
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.u = svd.matrixU();
    out.v = svd.matrixV();
    out.sigma = svd.singularValues();
    const double top = std::max(reference, out.sigma.size() ? out.sigma(0) : 0.0);
    const double threshold = tolerance * static_cast<double>(std::max(a.rows(), a.cols())) * top;
    for (Eigen::Index k = 0; k < out.sigma.size(); ++k)
        if (out.sigma(k) > threshold) ++out.rank;
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational specializations
// ---------------------------------------------------------------------------

std::size_t rank(const Matrix<Rational>& m, const ScalarMode& mode) {
    require_mode<Rational>(mode);
    if (m.empty()) return 0;
    auto [a, scale] = integerize(m);
    int sign = 1;
    return bareiss(a, m.cols(), sign);
}

Rational determinant(const Matrix<Rational>& m, const ScalarMode& mode) {
    require_mode<Rational>(mode);
    if (m.rows() != m.cols()) throw NotSquare();
    if (m.rows() == 0) return Rational(1);
    auto [a, scale] = integerize(m);
    int sign = 1;
    const std::size_t n = m.rows();
    if (bareiss(a, n, sign) < n) return Rational(0);
    // A skipped column would have returned rank < n, so the last entry is the determinant.
    Rational det(a[n - 1][n - 1] * sign, scale);
    det.canonicalize();
    return det;
}

std::optional<Vector<Rational>> solve_linear(const Matrix<Rational>& a, const Vector<Rational>& b,
                                             const ScalarMode& mode) {
    require_mode<Rational>(mode);
    if (a.rows() != b.size()) throw DimensionMismatch("solve_linear: rhs length mismatch");
    Matrix<Rational> aug(a.rows(), a.cols() + 1);
    aug.set_block(0, 0, a);
    for (std::size_t i = 0; i < b.size(); ++i) aug(i, a.cols()) = b[i];
    const auto [r, pivots] = rref(std::move(aug));
    Vector<Rational> x(a.cols(), Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == a.cols()) return std::nullopt;
        x[pivots[i]] = r(i, a.cols());
    }
    return x;
}

std::optional<Vector<Rational>> solve_least_squares(const Matrix<Rational>& a, const Vector<Rational>& b,
                                                    const ScalarMode& mode) {
    return solve_linear(a, b, mode);
}

Matrix<Rational> invert(const Matrix<Rational>& m, const ScalarMode& mode) {
    require_mode<Rational>(mode);
    if (m.rows() != m.cols()) throw NotSquare();
    const std::size_t n = m.rows();
    const auto [r, pivots] = rref(hstack(m, Matrix<Rational>::identity(n)));
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) throw SingularMatrix();
    return r.block(0, n, n, n);
}

Matrix<Rational> kernel(const Matrix<Rational>& m, const ScalarMode& mode, double) {
    require_mode<Rational>(mode);
    const std::size_t n = m.cols();
    const auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    Matrix<Rational> basis(n, n - pivots.size());
    std::size_t k = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        basis(f, k) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -r(i, f);
        ++k;
    }
    return basis;
}

Matrix<Rational> range_basis(const Matrix<Rational>& m, const ScalarMode& mode, double) {
    require_mode<Rational>(mode);
    const auto ech = rref(m);
    return m.select_columns(ech.pivots);
}

Matrix<Rational> extend_basis(const Matrix<Rational>& base, const Matrix<Rational>& candidates, const ScalarMode& mode,
                              double) {
    require_mode<Rational>(mode);
    if (base.rows() != candidates.rows()) throw DimensionMismatch("extend_basis: dimension mismatch");
    IncrementalSpan span(base.rows());
    for (std::size_t j = 0; j < base.cols(); ++j) span.try_add(base.column(j));
    std::vector<std::size_t> picked;
    for (std::size_t j = 0; j < candidates.cols(); ++j)
        if (span.try_add(candidates.column(j))) picked.push_back(j);
    return candidates.select_columns(picked);
}

// ---------------------------------------------------------------------------
// double specializations
// ---------------------------------------------------------------------------

std::size_t rank(const Matrix<double>& m, const ScalarMode& mode) {
    require_mode<double>(mode);
    if (m.empty()) return 0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(to_eigen(m));
    qr.setThreshold(mode.tolerance() * static_cast<double>(std::max(m.rows(), m.cols())));
    return static_cast<std::size_t>(qr.rank());
}

double determinant(const Matrix<double>& m, const ScalarMode& mode) {
    require_mode<double>(mode);
    if (m.rows() != m.cols()) throw NotSquare();
    if (m.rows() == 0) return 1.0;
    return to_eigen(m).partialPivLu().determinant();
}

std::optional<Vector<double>> solve_linear(const Matrix<double>& a, const Vector<double>& b, const ScalarMode& mode) {
    require_mode<double>(mode);
    if (a.rows() != b.size()) throw DimensionMismatch("solve_linear: rhs length mismatch");
    if (a.cols() == 0) {
        if (norm_inf(b) <= mode.tolerance()) return Vector<double>{};
        return std::nullopt;
    }
    const Eigen::MatrixXd ea = to_eigen(a);
    const Eigen::VectorXd eb = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(ea);
    cod.setThreshold(mode.tolerance() * static_cast<double>(std::max(a.rows(), a.cols())));
    const Eigen::VectorXd x = cod.solve(eb);
    const double residual = (ea * x - eb).lpNorm<Eigen::Infinity>();
    if (residual > mode.tolerance() * (1.0 + norm_inf(b))) return std::nullopt;
    return Vector<double>(x.data(), x.data() + x.size());
}

std::optional<Vector<double>> solve_least_squares(const Matrix<double>& a, const Vector<double>& b,
                                                  const ScalarMode& mode) {
    require_mode<double>(mode);
    if (a.rows() != b.size()) throw DimensionMismatch("solve_least_squares: rhs length mismatch");
    if (a.cols() == 0) return Vector<double>{};
    const Eigen::VectorXd eb = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(to_eigen(a));
    cod.setThreshold(mode.tolerance() * static_cast<double>(std::max(a.rows(), a.cols())));
    const Eigen::VectorXd x = cod.solve(eb);
    return Vector<double>(x.data(), x.data() + x.size());
}

Matrix<double> invert(const Matrix<double>& m, const ScalarMode& mode) {
    require_mode<double>(mode);
    if (m.rows() != m.cols()) throw NotSquare();
    if (m.rows() == 0) return m;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(m));
    lu.setThreshold(mode.tolerance() * static_cast<double>(m.rows()));
    if (!lu.isInvertible()) throw SingularMatrix();
    return from_eigen(lu.inverse());
}

Matrix<double> kernel(const Matrix<double>& m, const ScalarMode& mode, double reference) {
    require_mode<double>(mode);
    const Svd s = full_svd(to_eigen(m), mode.tolerance(), reference);
    const auto n = static_cast<Eigen::Index>(m.cols());
    return from_eigen(s.v.rightCols(n - static_cast<Eigen::Index>(s.rank)));
}

Matrix<double> range_basis(const Matrix<double>& m, const ScalarMode& mode, double reference) {
    require_mode<double>(mode);
    const Svd s = full_svd(to_eigen(m), mode.tolerance(), reference);
    return from_eigen(s.u.leftCols(static_cast<Eigen::Index>(s.rank)));
}

Matrix<double> extend_basis(const Matrix<double>& base, const Matrix<double>& candidates, const ScalarMode& mode,
                              double reference) {
    require_mode<double>(mode);
    if (base.rows() != candidates.rows()) throw DimensionMismatch("extend_basis: dimension mismatch");
    const Eigen::MatrixXd joint = to_eigen(hstack(base, candidates));
    const Svd whole = full_svd(joint, mode.tolerance(), reference);
    const Eigen::Index extra = static_cast<Eigen::Index>(whole.rank) - static_cast<Eigen::Index>(base.cols());
    if (extra <= 0) return Matrix<double>(base.rows(), 0);
    Eigen::MatrixXd residual = to_eigen(candidates);
    if (base.cols() > 0) {
        const Svd b = full_svd(to_eigen(base), mode.tolerance(), reference);
        const Eigen::MatrixXd ub = b.u.leftCols(static_cast<Eigen::Index>(b.rank));
        residual -= ub * (ub.transpose() * residual);
    }
    const Svd r = full_svd(residual, mode.tolerance(), std::max(reference, whole.sigma.size() ? whole.sigma(0) : 0.0));
    return from_eigen(r.u.leftCols(std::min<Eigen::Index>(extra, r.u.cols())));
}

}  // namespace kcf
