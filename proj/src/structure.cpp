#include "kcf/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kcf {

template <class T>
std::size_t KroneckerStructure<T>::p() const {
    return std::accumulate(fed.begin(), fed.end(), std::size_t{0},
                           [](std::size_t acc, const FiniteDivisor<T>& f) { return acc + f.degree; });
}

template <class T>
std::size_t KroneckerStructure<T>::q() const {
    return std::accumulate(ied.begin(), ied.end(), std::size_t{0});
}

template <class T>
std::size_t KroneckerStructure<T>::g() const {
    return static_cast<std::size_t>(std::count(cmi.begin(), cmi.end(), std::size_t{0}));
}

template <class T>
std::size_t KroneckerStructure<T>::h() const {
    return static_cast<std::size_t>(std::count(rmi.begin(), rmi.end(), std::size_t{0}));
}

template <class T>
std::size_t KroneckerStructure<T>::epsilon_width() const {
    std::size_t w = 0;
    for (auto e : cmi)
        if (e > 0) w += e + 1;
    return w;
}

template <class T>
std::size_t KroneckerStructure<T>::epsilon_height() const {
    return std::accumulate(cmi.begin(), cmi.end(), std::size_t{0});
}

template <class T>
std::size_t KroneckerStructure<T>::zeta_width() const {
    return std::accumulate(rmi.begin(), rmi.end(), std::size_t{0});
}

template <class T>
std::size_t KroneckerStructure<T>::zeta_height() const {
    std::size_t w = 0;
    for (auto z : rmi)
        if (z > 0) w += z + 1;
    return w;
}

template <class T>
void KroneckerStructure<T>::canonicalize() {
    std::stable_sort(fed.begin(), fed.end(), [](const FiniteDivisor<T>& a, const FiniteDivisor<T>& b) {
        if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
        return a.degree < b.degree;
    });
    std::sort(ied.begin(), ied.end());
    std::sort(cmi.begin(), cmi.end());
    std::sort(rmi.begin(), rmi.end());
}

template <class T>
void KroneckerStructure<T>::validate() const {
    for (const auto& f : fed)
        if (f.degree == 0) throw InvalidStructure("finite elementary divisor of degree 0");
    for (auto q : ied)
        if (q == 0) throw InvalidStructure("infinite elementary divisor of degree 0");
}

template <class T>
Matrix<T> jordan_matrix(std::span<const FiniteDivisor<T>> blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.degree;
    Matrix<T> j(n, n);
    std::size_t o = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.degree; ++i) {
            j(o + i, o + i) = b.eigenvalue;
            if (i + 1 < b.degree) j(o + i, o + i + 1) = T(1);
        }
        o += b.degree;
    }
    return j;
}

template <class T>
Matrix<T> nilpotent_matrix(std::span<const std::size_t> degrees) {
    const std::size_t n = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
    Matrix<T> h(n, n);
    std::size_t o = 0;
    for (auto q : degrees) {
        for (std::size_t i = 0; i + 1 < q; ++i) h(o + i, o + i + 1) = T(1);
        o += q;
    }
    return h;
}

template <class T>
Pencil<T> assemble_canonical(const KroneckerStructure<T>& input) {
    input.validate();
    const KroneckerStructure<T> s = input.canonical();
    const std::size_t rows = s.rows(), cols = s.cols();
    Matrix<T> f(rows, cols), g(rows, cols);

    const std::size_t p = s.p(), q = s.q();
    f.set_block(0, 0, Matrix<T>::identity(p));
    g.set_block(0, 0, jordan_matrix<T>(s.fed));
    f.set_block(p, p, nilpotent_matrix<T>(s.ied));
    g.set_block(p, p, Matrix<T>::identity(q));

    std::size_t r = p + q, c = p + q;
    for (auto e : s.cmi) {
        if (e == 0) continue;
        // L_ε = [I_ε | 0], L̄_ε = [0 | I_ε]
        for (std::size_t i = 0; i < e; ++i) {
            f(r + i, c + i) = T(1);
            g(r + i, c + i + 1) = T(1);
        }
        r += e;
        c += e + 1;
    }
    for (auto z : s.rmi) {
        if (z == 0) continue;
        // L_ζ = [I_ζ ; 0], L̄_ζ = [0 ; I_ζ]
        for (std::size_t i = 0; i < z; ++i) {
            f(r + i, c + i) = T(1);
            g(r + i + 1, c + i) = T(1);
        }
        r += z + 1;
        c += z;
    }
    return Pencil<T>(std::move(f), std::move(g));
}

template <class T>
Pencil<T> assemble_canonical(const KroneckerStructure<T>& s, std::size_t rows, std::size_t cols) {
    if (s.rows() != rows || s.cols() != cols)
        throw InvalidStructure("structure describes a " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                               " pencil, expected " + std::to_string(rows) + "x" + std::to_string(cols));
    return assemble_canonical(s);
}

template <class T>
Matrix<double> jordan_exp(const FiniteDivisor<T>& block, double t) {
    const double a = ScalarTraits<T>::to_double(block.eigenvalue);
    const std::size_t k = block.degree;
    Matrix<double> e(k, k);
    const double scale = std::exp(a * t);
    double term = scale;  // e^{at} t^j / j!
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i + j < k; ++i) e(i, i + j) = term;
        term *= t / static_cast<double>(j + 1);
    }
    return e;
}

template <class T>
Matrix<double> jordan_exp(std::span<const FiniteDivisor<T>> blocks, double t) {
    std::vector<Matrix<double>> parts;
    parts.reserve(blocks.size());
    for (const auto& b : blocks) parts.push_back(jordan_exp(b, t));
    return block_diag(std::span<const Matrix<double>>(parts));
}

template <class T>
std::string to_string(const FiniteDivisor<T>& f) {
    std::string base = "s";
    if (!ScalarTraits<T>::is_zero(f.eigenvalue)) {
        const std::string a = ScalarTraits<T>::format(f.eigenvalue);
        base += a.front() == '-' ? "+" + a.substr(1) : "-" + a;
    }
    if (f.degree == 1) return base;
    return "(" + base + ")^" + std::to_string(f.degree);
}

template <class T>
std::string to_string(const KroneckerStructure<T>& s) {
    auto list = [](const std::vector<std::size_t>& v) {
        std::string out = "{";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
        return out + "}";
    };
    std::string out = "fed={";
    for (std::size_t i = 0; i < s.fed.size(); ++i)
        out += (i ? "," : "") + to_string(s.fed[i]);
    return out + "} ied=" + list(s.ied) + " cmi=" + list(s.cmi) + " rmi=" + list(s.rmi);
}

#define KCF_STRUCTURE_INSTANTIATE(T)                                                          \
    template struct KroneckerStructure<T>;                                                    \
    template Matrix<T> jordan_matrix(std::span<const FiniteDivisor<T>>);                      \
    template Matrix<T> nilpotent_matrix(std::span<const std::size_t>);                        \
    template Pencil<T> assemble_canonical(const KroneckerStructure<T>&);                      \
    template Pencil<T> assemble_canonical(const KroneckerStructure<T>&, std::size_t, std::size_t); \
    template Matrix<double> jordan_exp(const FiniteDivisor<T>&, double);                      \
    template Matrix<double> jordan_exp(std::span<const FiniteDivisor<T>>, double);            \
    template std::string to_string(const FiniteDivisor<T>&);                                  \
    template std::string to_string(const KroneckerStructure<T>&);
KCF_STRUCTURE_INSTANTIATE(Rational)
KCF_STRUCTURE_INSTANTIATE(double)

}  // namespace kcf
