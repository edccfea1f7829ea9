#pragma once

#include "kcf/solver.hpp"

#include <cstdint>
#include <string_view>

namespace kcf {

struct ResidualReport {
    std::vector<double> sample_times;
    std::vector<double> per_sample;  ///< ‖F Y'(t) - G Y(t)‖∞
    std::vector<double> scaled;      ///< per_sample / (1 + ‖Y(t)‖∞)
    double max_residual = 0.0;
    double max_scaled = 0.0;
    /// ‖Y(t0) - Y0‖∞ / (1 + ‖Y0‖∞) for unique solutions, 0 for families. A
    /// wrong Z_p0 still solves the ODE, so only this term exposes it.
    double initial_defect = 0.0;

    bool passes(double tol) const { return max_scaled <= tol && initial_defect <= tol; }
};

/// `count` equally spaced points covering [t0, t0 + 1].
std::vector<double> default_grid(double t0, std::size_t count = 20);

template <class T>
ResidualReport residual_norm(const Pencil<T>& p, const Solution<T>& sol, std::span<const double> times,
                             const std::optional<Vector<double>>& constants = std::nullopt);

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector<double>> states;

    const Vector<double>& final_state() const { return states.back(); }
};

/// Classical fixed-step RK4 for Z' = J_p Z. Throws std::invalid_argument if steps == 0.
template <class T>
Trajectory rk4_reference(const std::vector<FiniteDivisor<T>>& J_p, const Vector<double>& z0, double t0, double t1,
                         std::size_t steps);

/// Pencil = row_transform (s F_K - G_K) col_transform with unimodular integer
/// transforms; Q̂ = col_inverse maps canonical coordinates to pencil coordinates.
struct StructuredPencilCase {
    Pencil<Rational> pencil;
    KroneckerStructure<Rational> truth;
    std::uint64_t seed = 0;
    Matrix<Rational> row_transform, col_transform;
    Matrix<Rational> row_inverse, col_inverse;
};

/// Deterministic per seed; throws InvalidStructure for invalid truth.
StructuredPencilCase random_structured_pencil(const KroneckerStructure<Rational>& truth, std::uint64_t seed);

enum class StructureTemplate { RegularOnly, NilpotentOnly, MixedColumnIndices, MixedRowIndices, FullMix };

inline constexpr StructureTemplate all_templates[] = {StructureTemplate::RegularOnly, StructureTemplate::NilpotentOnly,
                                                      StructureTemplate::MixedColumnIndices,
                                                      StructureTemplate::MixedRowIndices, StructureTemplate::FullMix};

std::string_view to_string(StructureTemplate t);
StructureTemplate parse_template(std::string_view name);

/// A random canonical structure of the given family with rows, cols <= max_dim.
/// Eigenvalues are integers in [-3, 3].
KroneckerStructure<Rational> random_structure(StructureTemplate kind, std::uint64_t seed, std::size_t max_dim = 12);

extern template ResidualReport residual_norm(const Pencil<Rational>&, const Solution<Rational>&,
                                             std::span<const double>, const std::optional<Vector<double>>&);
extern template ResidualReport residual_norm(const Pencil<double>&, const Solution<double>&, std::span<const double>,
                                             const std::optional<Vector<double>>&);
extern template Trajectory rk4_reference(const std::vector<FiniteDivisor<Rational>>&, const Vector<double>&, double,
                                         double, std::size_t);
extern template Trajectory rk4_reference(const std::vector<FiniteDivisor<double>>&, const Vector<double>&, double,
                                         double, std::size_t);

}  // namespace kcf
