#pragma once

#include "kcf/errors.hpp"
#include "kcf/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace kcf {

template <class T>
using Vector = std::vector<T>;

/// Dense row-major matrix. Zero-sized dimensions are allowed so that empty
/// canonical blocks compose without special cases.
template <class T>
class Matrix {
   public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) throw DimensionMismatch("matrix data size does not match shape");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> init) : rows_(init.size()) {
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatch("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix column_vector(const Vector<T>& v) { return Matrix(v.size(), 1, v); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<T> row_span(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

    Vector<T> column(std::size_t j) const {
        Vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_column(std::size_t j, const Vector<T>& v) {
        if (v.size() != rows_) throw DimensionMismatch("column length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionMismatch("block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix select_columns(std::span<const std::size_t> idx) const {
        Matrix out(rows_, idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (std::size_t i = 0; i < rows_; ++i) out(i, k) = (*this)(i, idx[k]);
        return out;
    }

    Matrix select_rows(std::span<const std::size_t> idx) const {
        Matrix out(idx.size(), cols_);
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(idx[k], j);
        return out;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return ScalarTraits<T>::is_zero(x); });
    }

    template <class U>
    Matrix<U> cast() const {
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = convert<U>((*this)(i, j));
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        a += b;
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        a -= b;
        return a;
    }
    Matrix& operator+=(const Matrix& b) {
        check_same_shape(b);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += b.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& b) {
        check_same_shape(b);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= b.data_[k];
        return *this;
    }
    Matrix operator-() const {
        Matrix out(*this);
        for (auto& x : out.data_) x = -x;
        return out;
    }
    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (ScalarTraits<T>::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vector<T> operator*(const Matrix& a, const Vector<T>& v) {
        if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
        Vector<T> out(a.rows_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
        return out;
    }

   private:
    template <class U>
    static U convert(const T& x) {
        if constexpr (std::is_same_v<U, T>)
            return x;
        else if constexpr (std::is_same_v<U, double>)
            return ScalarTraits<T>::to_double(x);
        else
            return U(x);
    }

    void check_same_shape(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack row mismatch");
    Matrix<T> out(a.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    return out;
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack column mismatch");
    Matrix<T> out(a.rows() + b.rows(), a.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), 0, b);
    return out;
}

/// Direct sum of possibly rectangular blocks.
template <class T>
Matrix<T> block_diag(std::span<const Matrix<T>> blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) r += b.rows(), c += b.cols();
    Matrix<T> out(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        out.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return out;
}

template <class T>
Matrix<T> block_diag(std::initializer_list<Matrix<T>> blocks) {
    return block_diag(std::span<const Matrix<T>>(blocks.begin(), blocks.size()));
}

/// Kronecker product a ⊗ b.
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (ScalarTraits<T>::is_zero(a(i, j))) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return out;
}

template <class T>
double norm_inf(const Matrix<T>& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += ScalarTraits<T>::magnitude(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

template <class T>
double norm_inf(const Vector<T>& v) {
    double best = 0.0;
    for (const auto& x : v) best = std::max(best, ScalarTraits<T>::magnitude(x));
    return best;
}

template <class T>
Vector<double> to_double_vector(const Vector<T>& v) {
    Vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(ScalarTraits<T>::to_double(x));
    return out;
}

template <class T>
std::string to_string(const Matrix<T>& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + ScalarTraits<T>::format(m(i, j));
    }
    return s + "]";
}

}  // namespace kcf
