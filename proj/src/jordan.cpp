#include "kcf/jordan.hpp"

#include "kcf/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kcf {

namespace {

// Jordan chains of `m` for eigenvalue `a` whose generalized eigenspace has
// dimension `multiplicity`. Chains are returned shortest first; each chain is
// [x_1, ..., x_k] with (m - a)x_1 = 0 and (m - a)x_j = x_{j-1}.
template <class T>
std::vector<std::vector<Vector<T>>> chains_for(const Matrix<T>& m, const T& a, std::size_t multiplicity,
                                               const ScalarMode& mode) {
    const std::size_t n = m.rows();
    const Matrix<T> shifted = m - a * Matrix<T>::identity(n);

    std::vector<Matrix<T>> kernels{Matrix<T>(n, 0)};
    Matrix<T> power = Matrix<T>::identity(n);
    // Approx mode: entries of (m - a)^j below tolerance * ‖m - a‖^j are noise.
    const double step = std::max(norm_inf(shifted), 1.0);
    double reference = 1.0;
    while (kernels.back().cols() < multiplicity) {
        power = power * shifted;
        reference *= step;
        Matrix<T> k = kernel(power, mode, mode.is_exact() ? 0.0 : reference);
        if constexpr (std::is_same_v<T, double>) {
            // Approx callers pass the restriction to an invariant subspace, where
            // (m - a)^multiplicity vanishes even if rounding hides it.
            if (kernels.size() == multiplicity) k = Matrix<T>::identity(n);
        }
        if (kernels.size() > multiplicity) throw std::logic_error("generalized eigenspace did not stabilize");
        kernels.push_back(std::move(k));
    }
    const std::size_t top = kernels.size() - 1;

    std::vector<std::vector<Vector<T>>> chains;  // built top-down
    for (std::size_t level = top; level >= 1; --level) {
        Matrix<T> covered = kernels[level - 1];
        for (const auto& chain : chains) {
            if (chain.size() <= level) continue;
            covered = hstack(covered, Matrix<T>::column_vector(chain[level - 1]));
        }
        const Matrix<T> heads = extend_basis(covered, kernels[level], mode);
        for (std::size_t h = 0; h < heads.cols(); ++h) {
            std::vector<Vector<T>> chain(level);
            chain[level - 1] = heads.column(h);
            for (std::size_t j = level - 1; j >= 1; --j) chain[j - 1] = shifted * chain[j];
            chains.push_back(std::move(chain));
        }
    }
    std::size_t total = 0;
    for (const auto& chain : chains) total += chain.size();
    if (total != multiplicity) throw std::logic_error("Jordan chains do not span the generalized eigenspace");
    std::stable_sort(chains.begin(), chains.end(),
                     [](const auto& x, const auto& y) { return x.size() < y.size(); });
    return chains;
}

template <class T>
void append_chains(std::vector<Vector<T>>& columns, std::vector<FiniteDivisor<T>>& blocks,
                   const std::vector<std::vector<Vector<T>>>& chains, const T& eigenvalue) {
    for (const auto& chain : chains) {
        blocks.push_back({eigenvalue, chain.size()});
        columns.insert(columns.end(), chain.begin(), chain.end());
    }
}

template <class T>
Matrix<T> from_columns(const std::vector<Vector<T>>& columns, std::size_t n) {
    Matrix<T> out(n, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) out.set_column(j, columns[j]);
    return out;
}

JordanBasis<Rational> exact_jordan_basis(const Matrix<Rational>& m, const ScalarMode& mode) {
    const std::size_t n = m.rows();
    const auto charpoly = det_polynomial(Pencil<Rational>(Matrix<Rational>::identity(n), m), mode);
    const auto roots = rational_roots(charpoly);
    std::size_t total = 0;
    for (const auto& r : roots) total += r.multiplicity;
    if (total != n) throw IrrationalEigenvalue(to_string(charpoly));

    std::vector<Vector<Rational>> columns;
    std::vector<FiniteDivisor<Rational>> blocks;
    for (const auto& r : roots) append_chains(columns, blocks, chains_for(m, r.value, r.multiplicity, mode), r.value);
    return {from_columns(columns, n), std::move(blocks)};
}

JordanBasis<double> approx_jordan_basis(const Matrix<double>& m, double cluster_scale) {
    const std::size_t n = m.rows();
    Eigen::MatrixXd em(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) em(i, j) = m(i, j);
    const Eigen::VectorXcd values = em.eigenvalues();
    const double gap = 1e-6 * std::max(cluster_scale, 1e-300);

    std::vector<double> reals;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (std::abs(values(i).imag()) > gap)
            throw ComplexEigenvalue("complex eigenvalue " + std::to_string(values(i).real()) + (values(i).imag() < 0 ? "" : "+") +
                                    std::to_string(values(i).imag()) + "i is not supported in approx mode");
        reals.push_back(values(i).real());
    }
    std::sort(reals.begin(), reals.end());

    std::vector<Vector<double>> columns;
    std::vector<FiniteDivisor<double>> blocks;
    const ScalarMode loose = ScalarMode::approx(1e-6);
    for (std::size_t i = 0; i < reals.size();) {
        std::size_t j = i + 1;
        while (j < reals.size() && reals[j] - reals[j - 1] <= gap) ++j;
        const std::size_t mult = j - i;
        double a = 0.0;
        for (std::size_t k = i; k < j; ++k) a += reals[k];
        a /= static_cast<double>(mult);

        // Orthonormal basis of the generalized eigenspace: the right singular
        // vectors of (m - a)^mult belonging to the mult smallest singular values.
        Eigen::MatrixXd shifted = em - a * Eigen::MatrixXd::Identity(n, n), power = Eigen::MatrixXd::Identity(n, n);
        for (std::size_t k = 0; k < mult; ++k) power = power * shifted;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(power, Eigen::ComputeFullV);
        const Eigen::MatrixXd u = svd.matrixV().rightCols(static_cast<Eigen::Index>(mult));
        const Eigen::MatrixXd restricted = u.transpose() * em * u;

        Matrix<double> small(mult, mult);
        for (std::size_t r = 0; r < mult; ++r)
            for (std::size_t c = 0; c < mult; ++c) small(r, c) = restricted(r, c);
        for (const auto& chain : chains_for(small, a, mult, loose)) {
            blocks.push_back({a, chain.size()});
            for (const auto& v : chain) {
                const Eigen::VectorXd lifted = u * Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
                columns.emplace_back(lifted.data(), lifted.data() + lifted.size());
            }
        }
        i = j;
    }
    return {from_columns(columns, n), std::move(blocks)};
}

}  // namespace

template <class T>
JordanBasis<T> jordan_basis(const Matrix<T>& m, const ScalarMode& mode, double cluster_scale) {
    require_mode<T>(mode);
    if (m.rows() != m.cols()) throw NotSquare();
    if (m.rows() == 0) return {};
    if constexpr (std::is_same_v<T, Rational>)
        return exact_jordan_basis(m, mode);
    else
        return approx_jordan_basis(m, cluster_scale);
}

template <class T>
JordanBasis<T> nilpotent_basis(const Matrix<T>& n, const ScalarMode& mode) {
    require_mode<T>(mode);
    if (n.rows() != n.cols()) throw NotSquare();
    if (n.rows() == 0) return {};
    std::vector<Vector<T>> columns;
    std::vector<FiniteDivisor<T>> blocks;
    const ScalarMode chain_mode = mode.is_exact() ? mode : ScalarMode::approx(1e-6);
    append_chains(columns, blocks, chains_for(n, T(0), n.rows(), chain_mode), T(0));
    return {from_columns(columns, n.rows()), std::move(blocks)};
}

template JordanBasis<Rational> jordan_basis(const Matrix<Rational>&, const ScalarMode&, double);
template JordanBasis<double> jordan_basis(const Matrix<double>&, const ScalarMode&, double);
template JordanBasis<Rational> nilpotent_basis(const Matrix<Rational>&, const ScalarMode&);
template JordanBasis<double> nilpotent_basis(const Matrix<double>&, const ScalarMode&);

}  // namespace kcf
