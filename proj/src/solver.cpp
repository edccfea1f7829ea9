#include "kcf/solver.hpp"

#include "kcf/linalg.hpp"

#include <stdexcept>

namespace kcf {

std::string_view to_string(SolutionKind k) {
    switch (k) {
        case SolutionKind::Unique: return "unique";
        case SolutionKind::Family: return "family";
        case SolutionKind::InconsistentFamily: return "inconsistent_family";
    }
    return "unknown";
}

template <class T>
SubsystemSet<T> decompose_subsystems(const KroneckerDecomposition<T>& dec) {
    const auto& s = dec.structure;
    SubsystemSet<T> out;
    out.J_p = jordan_matrix<T>(s.fed);
    out.H_q = nilpotent_matrix<T>(std::span<const std::size_t>(s.ied));
    for (auto e : s.cmi)
        if (e > 0) out.epsilon.push_back(e);
    for (auto z : s.rmi)
        if (z > 0) out.zeta.push_back(z);
    out.h = s.h();
    out.g = s.g();
    out.partition = dec.partition;
    return out;
}

template <class T>
ConsistencyResult<T> check_consistency(const Vector<T>& y0, const KroneckerDecomposition<T>& dec,
                                       const ScalarMode& mode) {
    if (y0.size() != dec.Q.rows()) throw DimensionMismatch("initial vector length does not match the pencil columns");
    const Matrix<T> qp = dec.Q_p();
    if (rank(qp, mode) != qp.cols()) throw std::logic_error("Q_p is not of full column rank");
    ConsistencyResult<T> out;
    if (qp.cols() == 0) {
        out.consistent = std::all_of(y0.begin(), y0.end(), [&](const T& x) {
            return ScalarTraits<T>::magnitude(x) <= (mode.is_exact() ? 0.0 : mode.tolerance() * (1.0 + norm_inf(y0)));
        });
        return out;
    }
    if (auto z = solve_linear(qp, y0, mode)) {
        out.consistent = true;
        out.Z_p0 = std::move(*z);
    }
    return out;
}

template <class T>
Solution<T> solve_ivp(const KroneckerDecomposition<T>& dec, const Vector<T>& y0, const T& t0, const ScalarMode& mode) {
    const auto& s = dec.structure;
    Solution<T> sol;
    sol.t0 = t0;
    sol.Y0 = y0;
    sol.Q_p = dec.Q_p();
    sol.J_p = s.fed;

    if (s.d() == 0) {
        auto consistency = check_consistency(y0, dec, mode);
        if (consistency.consistent) {
            sol.kind = SolutionKind::Unique;
            sol.Z_p0 = std::move(consistency.Z_p0);
        } else {
            sol.kind = SolutionKind::InconsistentFamily;
            sol.free_basis = Matrix<T>(dec.Q.rows(), 0);
            sol.free_dim = s.p();
        }
        return sol;
    }

    sol.kind = SolutionKind::Family;
    const Matrix<T> q_eps = dec.Q_epsilon(), q_g = dec.Q_g();
    std::vector<std::size_t> leads;
    std::size_t offset = 0;
    for (auto e : s.cmi)
        if (e > 0) {
            leads.push_back(offset);
            offset += e + 1;
        }
    sol.free_basis = hstack(q_eps.select_columns(leads), q_g);
    sol.free_dim = s.p() + sol.free_basis.cols();
    return sol;
}

template <class T>
Solution<T> solve_ivp(const Pencil<T>& pencil, const Vector<T>& y0, const T& t0, const ScalarMode& mode) {
    if (y0.size() != pencil.cols()) throw DimensionMismatch("initial vector length does not match the pencil columns");
    return solve_ivp(reduce(pencil, mode), y0, t0, mode);
}

namespace {

template <class T>
std::pair<Vector<double>, Vector<double>> split_constants(const Solution<T>& sol,
                                                          const std::optional<Vector<double>>& constants) {
    if (!sol.is_family()) {
        if (constants && !constants->empty()) throw WrongConstantCount(0, constants->size());
        return {to_double_vector(sol.Z_p0), {}};
    }
    if (!constants) throw MissingConstants();
    if (constants->size() != sol.free_dim) throw WrongConstantCount(sol.free_dim, constants->size());
    const std::size_t p = sol.Q_p.cols();
    return {Vector<double>(constants->begin(), constants->begin() + static_cast<std::ptrdiff_t>(p)),
            Vector<double>(constants->begin() + static_cast<std::ptrdiff_t>(p), constants->end())};
}

Vector<double> add(Vector<double> a, const Vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

}  // namespace

template <class T>
Vector<double> evaluate(const Solution<T>& sol, double t, const std::optional<Vector<double>>& constants) {
    const auto [z, c] = split_constants(sol, constants);
    const double t0 = ScalarTraits<T>::to_double(sol.t0);
    if (!sol.is_family() && t == t0) return to_double_vector(sol.Q_p * sol.Z_p0);
    const Matrix<double> qp = sol.Q_p.template cast<double>();
    Vector<double> y = qp * (jordan_exp<T>(sol.J_p, t - t0) * z);
    if (!c.empty()) y = add(std::move(y), sol.free_basis.template cast<double>() * c);
    return y;
}

template <class T>
Vector<double> evaluate_derivative(const Solution<T>& sol, double t, const std::optional<Vector<double>>& constants) {
    const auto [z, c] = split_constants(sol, constants);
    const double t0 = ScalarTraits<T>::to_double(sol.t0);
    const Matrix<double> qp = sol.Q_p.template cast<double>();
    const Matrix<double> j = jordan_matrix<T>(sol.J_p).template cast<double>();
    return qp * (j * (jordan_exp<T>(sol.J_p, t - t0) * z));
}

#define KCF_SOLVER_INSTANTIATE(T)                                                                           \
    template SubsystemSet<T> decompose_subsystems(const KroneckerDecomposition<T>&);                       \
    template ConsistencyResult<T> check_consistency(const Vector<T>&, const KroneckerDecomposition<T>&,    \
                                                    const ScalarMode&);                                    \
    template Solution<T> solve_ivp(const KroneckerDecomposition<T>&, const Vector<T>&, const T&,           \
                                   const ScalarMode&);                                                     \
    template Solution<T> solve_ivp(const Pencil<T>&, const Vector<T>&, const T&, const ScalarMode&);       \
    template Vector<double> evaluate(const Solution<T>&, double, const std::optional<Vector<double>>&);    \
    template Vector<double> evaluate_derivative(const Solution<T>&, double, const std::optional<Vector<double>>&);
KCF_SOLVER_INSTANTIATE(Rational)
KCF_SOLVER_INSTANTIATE(double)

}  // namespace kcf
