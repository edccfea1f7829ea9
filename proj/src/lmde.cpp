#include "kcf/lmde.hpp"

#include "kcf/linalg.hpp"

namespace kcf {

template <class T>
void HigherOrderSystem<T>::validate() const {
    if (coefficients.size() < 2) throw InvalidStructure("a system of order n needs n + 1 >= 2 coefficient matrices");
    for (const auto& a : coefficients)
        if (a.rows() != m() || a.cols() != r()) throw InvalidStructure("coefficient matrices must share one shape");
    if (m() == 0 || r() == 0) throw InvalidStructure("coefficient matrices must be nonempty");
}

template <class T>
bool HigherOrderSystem<T>::is_nonsingular(const ScalarMode& mode) const {
    return m() == r() && rank(coefficients.back(), mode) == m();
}

namespace {

// m×r matrix with ones on the main diagonal.
template <class T>
Matrix<T> rectangular_identity(std::size_t rows, std::size_t cols) {
    Matrix<T> e(rows, cols);
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) e(i, i) = T(1);
    return e;
}

}  // namespace

template <class T>
Pencil<T> linearize(const HigherOrderSystem<T>& sys) {
    sys.validate();
    const std::size_t n = sys.order(), m = sys.m(), r = sys.r();
    const std::size_t rows = m * n, cols = m * (n - 1) + r;
    const auto& a = sys.coefficients;
    Matrix<T> f(rows, cols), g(rows, cols);

    for (std::size_t k = 0; k + 1 < n; ++k) {
        f.set_block(k * m, k * m, Matrix<T>::identity(m));
        const std::size_t width = (k + 2 == n) ? r : m;
        g.set_block(k * m, (k + 1) * m, rectangular_identity<T>(m, width));
    }
    f.set_block((n - 1) * m, (n - 1) * m, a[n]);

    const Matrix<T> embed = rectangular_identity<T>(r, m);
    for (std::size_t k = 0; k < n; ++k) {
        const Matrix<T> block = (k + 1 == n) ? -a[k] : -(a[k] * embed);
        g.set_block((n - 1) * m, k * m, block);
    }
    return Pencil<T>(std::move(f), std::move(g));
}

template <class T>
Vector<T> lift_initial_conditions(const HigherOrderSystem<T>& sys, const InitialData<T>& init) {
    sys.validate();
    const std::size_t n = sys.order(), m = sys.m(), r = sys.r();
    if (init.derivatives.size() != n)
        throw DimensionMismatch("expected " + std::to_string(n) + " initial derivative vectors, got " +
                                std::to_string(init.derivatives.size()));
    Vector<T> y;
    y.reserve(m * (n - 1) + r);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t len = (k + 1 == n) ? r : m;
        if (init.derivatives[k].size() != len)
            throw DimensionMismatch("initial derivative " + std::to_string(k) + " must have length " + std::to_string(len));
        y.insert(y.end(), init.derivatives[k].begin(), init.derivatives[k].end());
    }
    return y;
}

template <class T>
Vector<double> ProjectedSolution<T>::evaluate(double t) const {
    const double start = ScalarTraits<T>::to_double(t0);
    if (t == start) return to_double_vector(Q_p1 * Z_p0);
    return Q_p1.template cast<double>() * (jordan_exp<T>(J_p, t - start) * to_double_vector(Z_p0));
}

template <class T>
ProjectedSolution<T> project_solution(const Solution<T>& sol, const HigherOrderSystem<T>& sys) {
    if (sol.is_family()) throw NotUnique();
    sys.validate();
    const std::size_t rows = sys.order() == 1 ? sol.Q_p.rows() : sys.m();
    return {sol.t0, sol.Q_p.block(0, 0, rows, sol.Q_p.cols()), sol.J_p, sol.Z_p0};
}

#define KCF_LMDE_INSTANTIATE(T)                                                                          \
    template struct HigherOrderSystem<T>;                                                               \
    template struct ProjectedSolution<T>;                                                               \
    template Pencil<T> linearize(const HigherOrderSystem<T>&);                                          \
    template Vector<T> lift_initial_conditions(const HigherOrderSystem<T>&, const InitialData<T>&);     \
    template ProjectedSolution<T> project_solution(const Solution<T>&, const HigherOrderSystem<T>&);
KCF_LMDE_INSTANTIATE(Rational)
KCF_LMDE_INSTANTIATE(double)

}  // namespace kcf
