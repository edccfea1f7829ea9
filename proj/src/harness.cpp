#include "kcf/harness.hpp"

#include <random>
#include <stdexcept>

namespace kcf {

std::vector<double> default_grid(double t0, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {t0};
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = t0 + static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
}

template <class T>
ResidualReport residual_norm(const Pencil<T>& p, const Solution<T>& sol, std::span<const double> times,
                             const std::optional<Vector<double>>& constants) {
    if (times.empty()) throw std::invalid_argument("residual_norm needs at least one sample time");
    const Matrix<double> f = p.F().template cast<double>(), g = p.G().template cast<double>();
    ResidualReport report;
    for (double t : times) {
        const Vector<double> y = evaluate(sol, t, constants);
        const Vector<double> dy = evaluate_derivative(sol, t, constants);
        const Vector<double> fy = f * dy, gy = g * y;
        double r = 0.0;
        for (std::size_t i = 0; i < fy.size(); ++i) r = std::max(r, std::abs(fy[i] - gy[i]));
        report.sample_times.push_back(t);
        report.per_sample.push_back(r);
        report.scaled.push_back(r / (1.0 + norm_inf(y)));
        report.max_residual = std::max(report.max_residual, r);
        report.max_scaled = std::max(report.max_scaled, report.scaled.back());
    }
    if (!sol.is_family() && !sol.Y0.empty()) {
        const Vector<double> start = evaluate(sol, ScalarTraits<T>::to_double(sol.t0));
        const Vector<double> y0 = to_double_vector(sol.Y0);
        double d = 0.0;
        for (std::size_t i = 0; i < y0.size(); ++i) d = std::max(d, std::abs(start[i] - y0[i]));
        report.initial_defect = d / (1.0 + norm_inf(y0));
    }
    return report;
}

template <class T>
Trajectory rk4_reference(const std::vector<FiniteDivisor<T>>& J_p, const Vector<double>& z0, double t0, double t1,
                         std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("rk4_reference needs at least one step");
    const Matrix<double> j = jordan_matrix<T>(J_p).template cast<double>();
    if (j.rows() != z0.size()) throw DimensionMismatch("initial state does not match the Jordan matrix");
    const double h = (t1 - t0) / static_cast<double>(steps);
    auto axpy = [](const Vector<double>& x, double a, const Vector<double>& y) {
        Vector<double> out(x);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * y[i];
        return out;
    };

    Trajectory traj;
    traj.times.push_back(t0);
    traj.states.push_back(z0);
    Vector<double> z = z0;
    for (std::size_t k = 1; k <= steps; ++k) {
        const Vector<double> k1 = j * z;
        const Vector<double> k2 = j * axpy(z, h / 2, k1);
        const Vector<double> k3 = j * axpy(z, h / 2, k2);
        const Vector<double> k4 = j * axpy(z, h, k3);
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        traj.times.push_back(t0 + static_cast<double>(k) * h);
        traj.states.push_back(z);
    }
    return traj;
}

namespace {

// Product of elementary operations x_i += c x_j with c in {-2..2} \ {0},
// returned with its exact inverse.
std::pair<Matrix<Rational>, Matrix<Rational>> random_unimodular(std::size_t n, std::mt19937_64& rng) {
    Matrix<Rational> u = Matrix<Rational>::identity(n), inv = Matrix<Rational>::identity(n);
    if (n < 2) return {u, inv};
    std::uniform_int_distribution<std::size_t> index(0, n - 1);
    std::uniform_int_distribution<int> coeff(1, 4);
    const std::size_t ops = 2 * n;
    for (std::size_t k = 0; k < ops; ++k) {
        const std::size_t i = index(rng);
        std::size_t j = index(rng);
        if (j == i) j = (j + 1) % n;
        int c = coeff(rng);
        c = c <= 2 ? c - 3 : c - 2;  // -2, -1, 1, 2
        // u <- E u with E = I + c e_i e_j^T; inv <- inv E^{-1}.
        for (std::size_t col = 0; col < n; ++col) u(i, col) += c * u(j, col);
        for (std::size_t row = 0; row < n; ++row) inv(row, j) -= c * inv(row, i);
    }
    return {u, inv};
}

}  // namespace

StructuredPencilCase random_structured_pencil(const KroneckerStructure<Rational>& truth, std::uint64_t seed) {
    truth.validate();
    StructuredPencilCase out;
    out.truth = truth.canonical();
    out.seed = seed;
    const Pencil<Rational> canon = assemble_canonical(out.truth);
    std::mt19937_64 rng(seed);
    std::tie(out.row_transform, out.row_inverse) = random_unimodular(canon.rows(), rng);
    std::tie(out.col_transform, out.col_inverse) = random_unimodular(canon.cols(), rng);
    out.pencil = Pencil<Rational>(out.row_transform * canon.F() * out.col_transform,
                                  out.row_transform * canon.G() * out.col_transform);
    return out;
}

std::string_view to_string(StructureTemplate t) {
    switch (t) {
        case StructureTemplate::RegularOnly: return "regular";
        case StructureTemplate::NilpotentOnly: return "nilpotent";
        case StructureTemplate::MixedColumnIndices: return "mixed-cmi";
        case StructureTemplate::MixedRowIndices: return "mixed-rmi";
        case StructureTemplate::FullMix: return "full";
    }
    return "unknown";
}

StructureTemplate parse_template(std::string_view name) {
    for (auto t : all_templates)
        if (to_string(t) == name) return t;
    throw std::invalid_argument("unknown structure template '" + std::string(name) + "'");
}

KroneckerStructure<Rational> random_structure(StructureTemplate kind, std::uint64_t seed, std::size_t max_dim) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    const bool fed = kind != StructureTemplate::NilpotentOnly;
    const bool ied = kind != StructureTemplate::RegularOnly;
    const bool cmi = kind == StructureTemplate::MixedColumnIndices || kind == StructureTemplate::FullMix;
    const bool rmi = kind == StructureTemplate::MixedRowIndices || kind == StructureTemplate::FullMix;

    for (;;) {
        KroneckerStructure<Rational> s;
        if (fed)
            for (int k = pick(1, 3); k > 0; --k) s.fed.push_back({Rational(pick(-3, 3)), static_cast<std::size_t>(pick(1, 3))});
        if (ied)
            for (int k = pick(1, 2); k > 0; --k) s.ied.push_back(static_cast<std::size_t>(pick(1, 3)));
        if (cmi)
            for (int k = pick(1, 2); k > 0; --k) s.cmi.push_back(static_cast<std::size_t>(pick(1, 3)));
        if (rmi)
            for (int k = pick(1, 2); k > 0; --k) s.rmi.push_back(static_cast<std::size_t>(pick(1, 3)));
        if (kind == StructureTemplate::FullMix) {
            s.cmi.push_back(0);
            s.rmi.push_back(0);
        }
        s.canonicalize();
        if (s.rows() >= 1 && s.cols() >= 1 && s.rows() <= max_dim && s.cols() <= max_dim) return s;
    }
}

template ResidualReport residual_norm(const Pencil<Rational>&, const Solution<Rational>&, std::span<const double>,
                                      const std::optional<Vector<double>>&);
template ResidualReport residual_norm(const Pencil<double>&, const Solution<double>&, std::span<const double>,
                                      const std::optional<Vector<double>>&);
template Trajectory rk4_reference(const std::vector<FiniteDivisor<Rational>>&, const Vector<double>&, double, double,
                                  std::size_t);
template Trajectory rk4_reference(const std::vector<FiniteDivisor<double>>&, const Vector<double>&, double, double,
                                  std::size_t);

}  // namespace kcf
