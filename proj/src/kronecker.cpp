#include "kcf/kronecker.hpp"

#include "kcf/jordan.hpp"
#include "kcf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kcf {

namespace {

struct Range {
    std::size_t begin = 0, size = 0;
};

// Limits of V_{i+1} = G^{-1}(F V_i) from V_0 = K^n and W_{i+1} = F^{-1}(G W_i)
// from W_0 = 0.
template <class T>
std::pair<Matrix<T>, Matrix<T>> wong_limits(const Matrix<T>& f, const Matrix<T>& g, const ScalarMode& mode, double ref) {
    const std::size_t n = f.cols();
    Matrix<T> v = Matrix<T>::identity(n);
    for (;;) {
        Matrix<T> next = preimage(g, image(f, v, mode, ref), mode, ref);
        if (next.cols() >= v.cols()) break;
        v = std::move(next);
    }
    Matrix<T> w(n, 0);
    for (;;) {
        Matrix<T> next = preimage(f, image(g, w, mode, ref), mode, ref);
        if (next.cols() <= w.cols()) break;
        w = std::move(next);
    }
    return {std::move(v), std::move(w)};
}

// Kills the (r1, c2) blocks of e and a, given zero (r2, c1) blocks, by solving
//   E1 Y + Z E2 = -X_E,  A1 Y + Z A2 = -X_A
// and applying rows r1 += Z rows r2, columns c2 += columns c1 Y.
template <class T>
void decouple(Matrix<T>& e, Matrix<T>& a, Matrix<T>& left, Matrix<T>& right, Range r1, Range r2, Range c1,
              Range c2, const ScalarMode& mode) {
    const Matrix<T> xe = e.block(r1.begin, c2.begin, r1.size, c2.size);
    const Matrix<T> xa = a.block(r1.begin, c2.begin, r1.size, c2.size);
    if (xe.is_zero() && xa.is_zero()) return;

    const Matrix<T> e1 = e.block(r1.begin, c1.begin, r1.size, c1.size);
    const Matrix<T> a1 = a.block(r1.begin, c1.begin, r1.size, c1.size);
    const Matrix<T> e2 = e.block(r2.begin, c2.begin, r2.size, c2.size);
    const Matrix<T> a2 = a.block(r2.begin, c2.begin, r2.size, c2.size);

    // Column-major vec: vec(M1 Y) = (I ⊗ M1) vec Y, vec(Z M2) = (M2^T ⊗ I) vec Z.
    const std::size_t ny = c1.size * c2.size, nz = r1.size * r2.size, eqs = r1.size * c2.size;
    const Matrix<T> ic2 = Matrix<T>::identity(c2.size), ir1 = Matrix<T>::identity(r1.size);
    Matrix<T> system(2 * eqs, ny + nz);
    system.set_block(0, 0, kron(ic2, e1));
    system.set_block(0, ny, kron(e2.transpose(), ir1));
    system.set_block(eqs, 0, kron(ic2, a1));
    system.set_block(eqs, ny, kron(a2.transpose(), ir1));
    Vector<T> rhs(2 * eqs);
    for (std::size_t j = 0; j < c2.size; ++j)
        for (std::size_t i = 0; i < r1.size; ++i) {
            rhs[j * r1.size + i] = -xe(i, j);
            rhs[eqs + j * r1.size + i] = -xa(i, j);
        }
    const auto sol = solve_least_squares(system, rhs, mode);
    if (!sol) throw std::logic_error("coupling equations have no solution");

    Matrix<T> row_op = Matrix<T>::identity(e.rows()), col_op = Matrix<T>::identity(e.cols());
    for (std::size_t j = 0; j < c2.size; ++j)
        for (std::size_t i = 0; i < c1.size; ++i) col_op(c1.begin + i, c2.begin + j) = (*sol)[j * c1.size + i];
    for (std::size_t j = 0; j < r2.size; ++j)
        for (std::size_t i = 0; i < r1.size; ++i) row_op(r1.begin + i, r2.begin + j) = (*sol)[ny + j * r1.size + i];
    e = row_op * e * col_op;
    a = row_op * a * col_op;
    left = row_op * left;
    right = right * col_op;
}

// Chains of a pencil whose only blocks are L_ε (ε ≥ 0). Columns of `domain`
// hold, for each ε > 0 in ascending order, coefficient vectors q_1..q_{ε+1}
// of a minimal polynomial solution, followed by the ε = 0 kernel vectors.
// Columns of `codomain` hold F q_1..F q_ε for each ε > 0 block.
template <class T>
struct ChainSet {
    std::vector<std::size_t> indices;
    Matrix<T> domain, codomain;
};

template <class T>
ChainSet<T> right_chains(const Matrix<T>& f, const Matrix<T>& g, const ScalarMode& mode, double ref) {
    const std::size_t m = f.rows(), n = f.cols();
    if (n < m) throw std::logic_error("column-index part has more rows than columns");
    const std::size_t count = n - m;

    struct Found {
        std::size_t degree;
        Vector<T> coeffs;
    };
    std::vector<Found> found;
    for (std::size_t k = 0; found.size() < count; ++k) {
        if (k > m) throw std::logic_error("minimal indices exceed the block height");
        // Block rows: -G x_0; F x_{j-1} - G x_j; F x_k.
        Matrix<T> toeplitz((k + 2) * m, (k + 1) * n);
        for (std::size_t j = 0; j <= k; ++j) {
            toeplitz.set_block(j * m, j * n, -g);
            toeplitz.set_block((j + 1) * m, j * n, f);
        }
        const Matrix<T> solutions = kernel(toeplitz, mode, ref);

        std::vector<Vector<T>> shifts;
        for (const auto& x : found)
            for (std::size_t l = 0; l + x.degree <= k; ++l) {
                Vector<T> s((k + 1) * n, T(0));
                std::copy(x.coeffs.begin(), x.coeffs.end(), s.begin() + static_cast<std::ptrdiff_t>(l * n));
                shifts.push_back(std::move(s));
            }
        Matrix<T> known((k + 1) * n, shifts.size());
        for (std::size_t j = 0; j < shifts.size(); ++j) known.set_column(j, shifts[j]);

        const Matrix<T> fresh = extend_basis(known, solutions, mode);
        for (std::size_t j = 0; j < fresh.cols() && found.size() < count; ++j) found.push_back({k, fresh.column(j)});
    }

    ChainSet<T> out;
    std::vector<Vector<T>> dom, cod;
    for (const auto& x : found) {
        if (x.degree == 0) continue;
        out.indices.push_back(x.degree);
        for (std::size_t j = 0; j <= x.degree; ++j) {
            Vector<T> q(x.coeffs.begin() + static_cast<std::ptrdiff_t>(j * n),
                        x.coeffs.begin() + static_cast<std::ptrdiff_t>((j + 1) * n));
            if (j < x.degree) cod.push_back(f * q);
            dom.push_back(std::move(q));
        }
    }
    for (const auto& x : found)
        if (x.degree == 0) {
            out.indices.push_back(0);
            dom.push_back(x.coeffs);
        }
    out.domain = Matrix<T>(n, dom.size());
    for (std::size_t j = 0; j < dom.size(); ++j) out.domain.set_column(j, dom[j]);
    out.codomain = Matrix<T>(m, cod.size());
    for (std::size_t j = 0; j < cod.size(); ++j) out.codomain.set_column(j, cod[j]);
    if (out.domain.cols() != n || out.codomain.cols() != m)
        throw std::logic_error("minimal basis has the wrong size");
    return out;
}

// Weierstrass form of a regular pencil: row/column transforms bringing it to
// diag(I, N) and diag(J, I) with J, N in Jordan form.
template <class T>
struct RegularPart {
    Matrix<T> left, right;
    std::vector<FiniteDivisor<T>> fed;
    std::vector<std::size_t> ied;
};

template <class T>
RegularPart<T> weierstrass(const Matrix<T>& e, const Matrix<T>& a, const ScalarMode& mode, double scale, double ref) {
    RegularPart<T> out;
    const std::size_t k = e.rows();
    if (k == 0) {
        out.left = out.right = Matrix<T>(0, 0);
        return out;
    }
    auto [v, w] = wong_limits(e, a, mode, ref);
    const std::size_t p = v.cols(), q = w.cols();
    if (p + q != k) throw std::logic_error("regular part does not split into finite and infinite subspaces");
    const Matrix<T> dom = hstack(v, w);
    const Matrix<T> cod = hstack(e * v, a * w);
    const Matrix<T> cod_inv = invert(cod, mode);
    const Matrix<T> a2 = cod_inv * a * dom;
    const Matrix<T> e2 = cod_inv * e * dom;
    const auto jb = jordan_basis(a2.block(0, 0, p, p), mode, scale);
    const auto nb = nilpotent_basis(e2.block(p, p, q, q), mode);
    const Matrix<T> chains = block_diag({jb.basis, nb.basis});
    out.right = dom * chains;
    out.left = invert(cod * chains, mode);
    out.fed = jb.blocks;
    for (const auto& b : nb.blocks) out.ied.push_back(b.degree);
    return out;
}

template <class T>
bool nonzero_entry(const T& x, double reference) {
    if constexpr (std::is_same_v<T, Rational>)
        return sgn(x) != 0;
    else
        return std::abs(x) > 1e-8 * reference;
}

// Scale each block so that the first nonzero entry of its first Q column (or,
// for zero rows, of its P row) equals one.
template <class T>
void normalize(KroneckerDecomposition<T>& dec) {
    auto& P = dec.P;
    auto& Q = dec.Q;
    const auto& s = dec.structure;

    auto scale_block = [&](std::size_t col, std::size_t ncols, std::size_t row, std::size_t nrows) {
        const Vector<T> lead = Q.column(col);
        const double ref = norm_inf(lead);
        for (const auto& x : lead) {
            if (!nonzero_entry(x, ref)) continue;
            const T c = x;
            for (std::size_t j = col; j < col + ncols; ++j)
                for (std::size_t i = 0; i < Q.rows(); ++i) Q(i, j) /= c;
            for (std::size_t i = row; i < row + nrows; ++i)
                for (std::size_t j = 0; j < P.cols(); ++j) P(i, j) *= c;
            return;
        }
    };

    std::size_t row = 0, col = 0;
    for (const auto& b : s.fed) {
        scale_block(col, b.degree, row, b.degree);
        row += b.degree, col += b.degree;
    }
    for (auto d : s.ied) {
        scale_block(col, d, row, d);
        row += d, col += d;
    }
    for (auto e : s.cmi)
        if (e > 0) {
            scale_block(col, e + 1, row, e);
            row += e, col += e + 1;
        }
    for (auto z : s.rmi)
        if (z > 0) {
            scale_block(col, z, row, z + 1);
            row += z + 1, col += z;
        }
    for (; col < Q.cols(); ++col) scale_block(col, 1, 0, 0);
    for (; row < P.rows(); ++row) {
        const auto r = P.row_span(row);
        double ref = 0.0;
        for (const auto& x : r) ref = std::max(ref, ScalarTraits<T>::magnitude(x));
        for (const auto& x : r) {
            if (!nonzero_entry(x, ref)) continue;
            const T c = x;
            for (auto& y : r) y /= c;
            break;
        }
    }
}

}  // namespace

template <class T>
KroneckerDecomposition<T> reduce(const Pencil<T>& pencil, const ScalarMode& mode) {
    require_mode<T>(mode);
    const Matrix<T>& f = pencil.F();
    const Matrix<T>& g = pencil.G();
    const std::size_t m = pencil.rows(), n = pencil.cols();
    const double scale = std::max({norm_inf(f), norm_inf(g), 1.0});
    const double ref = mode.is_exact() ? 0.0 : scale;

    // Quasi-triangular split into column-index, regular and row-index parts.
    const auto [v, w] = wong_limits(f, g, mode, ref);
    const Matrix<T> dom_p = subspace_intersection(v, w, mode, ref);
    const Matrix<T> dom_r = extend_basis(dom_p, subspace_sum(v, w, mode, ref), mode, ref);
    const Matrix<T> dom = complete_basis(hstack(dom_p, dom_r), mode, ref);
    const Matrix<T> fv = image(f, v, mode, ref), gw = image(g, w, mode, ref);
    const Matrix<T> cod_p = subspace_intersection(fv, gw, mode, ref);
    const Matrix<T> cod_r = extend_basis(cod_p, subspace_sum(fv, gw, mode, ref), mode, ref);
    const Matrix<T> cod = complete_basis(hstack(cod_p, cod_r), mode, ref);

    const std::size_t np = dom_p.cols(), nr = dom_r.cols(), nq = n - np - nr;
    const std::size_t mp = cod_p.cols(), mr = cod_r.cols(), mq = m - mp - mr;
    if (nr != mr) throw std::logic_error("regular part is not square");

    Matrix<T> left = invert(cod, mode), right = dom;
    Matrix<T> e = left * f * right, a = left * g * right;

    const Range rp{0, mp}, rr{mp, mr}, rq{mp + mr, mq}, cp{0, np}, cr{np, nr}, cq{np + nr, nq};
    decouple(e, a, left, right, rr, rq, cr, cq, mode);
    decouple(e, a, left, right, rp, Range{mp, mr + mq}, cp, Range{np, nr + nq}, mode);

    // Column-index part.
    const auto eps = right_chains(e.block(0, 0, mp, np), a.block(0, 0, mp, np), mode, ref);
    // Regular part.
    const auto reg = weierstrass(e.block(mp, np, mr, nr), a.block(mp, np, mr, nr), mode, scale, ref);
    // Row-index part via the transposed pencil.
    const auto zeta = right_chains(e.block(mp + mr, np + nr, mq, nq).transpose(),
                                   a.block(mp + mr, np + nr, mq, nq).transpose(), mode, ref);

    const Matrix<T> local_left =
        block_diag({invert(eps.codomain, mode), reg.left, zeta.domain.transpose()});
    const Matrix<T> local_right =
        block_diag({eps.domain, reg.right, invert(zeta.codomain, mode).transpose()});
    left = local_left * left;
    right = right * local_right;

    KroneckerDecomposition<T> dec;
    auto& s = dec.structure;
    s.fed = reg.fed;
    s.ied = reg.ied;
    s.cmi = eps.indices;
    s.rmi = zeta.indices;
    std::sort(s.cmi.begin(), s.cmi.end());
    std::sort(s.rmi.begin(), s.rmi.end());

    // Current rows: [ε | J | N | ζ | h]; columns: [ε | g | J | N | ζ].
    const std::size_t p = s.p(), q = s.q(), ew = s.epsilon_width(), eh = s.epsilon_height();
    const std::size_t zw = s.zeta_width(), zh = s.zeta_height(), gz = s.g(), hz = s.h();
    std::vector<std::size_t> rows, cols;
    auto append = [](std::vector<std::size_t>& to, std::size_t begin, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) to.push_back(begin + i);
    };
    append(rows, eh, p + q);
    append(rows, 0, eh);
    append(rows, eh + p + q, zh + hz);
    append(cols, ew + gz, p + q);
    append(cols, 0, ew);
    append(cols, ew + gz + p + q, zw);
    append(cols, ew, gz);

    dec.P = left.select_rows(rows);
    dec.Q = right.select_columns(cols);
    dec.canonical = assemble_canonical(s, m, n);
    dec.partition = partition_of(s);
    normalize(dec);

    if constexpr (std::is_same_v<T, Rational>) {
        if (!(dec.P * f * dec.Q == dec.F_K()) || !(dec.P * g * dec.Q == dec.G_K()))
            throw std::logic_error("internal error: reduction does not reproduce the canonical pencil");
    }
    return dec;
}

template <class T>
KroneckerStructure<T> kronecker_structure(const Pencil<T>& pencil, const ScalarMode& mode) {
    return reduce(pencil, mode).structure;
}

template KroneckerDecomposition<Rational> reduce(const Pencil<Rational>&, const ScalarMode&);
template KroneckerDecomposition<double> reduce(const Pencil<double>&, const ScalarMode&);
template KroneckerStructure<Rational> kronecker_structure(const Pencil<Rational>&, const ScalarMode&);
template KroneckerStructure<double> kronecker_structure(const Pencil<double>&, const ScalarMode&);

}  // namespace kcf
