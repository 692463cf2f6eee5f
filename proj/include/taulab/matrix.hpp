#pragma once

// Small dense square matrices over any ScalarTraits scalar. Sizes here are a
// handful of rows, so a flat row-major vector is all that is needed.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "taulab/rational.hpp"

namespace taulab {

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<T>::zero()) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<T>::one();
        return m;
    }

    static Matrix diagonal(const std::vector<T>& diag) {
        Matrix m(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == ScalarTraits<T>::zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator*(const T& s, Matrix m) {
        for (auto& x : m.data_) x = s * x;
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    [[nodiscard]] T trace() const {
        if (!square()) throw std::invalid_argument("trace of a non-square matrix");
        T t = ScalarTraits<T>::zero();
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    [[nodiscard]] Matrix adjoint() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = ScalarTraits<T>::conjugate((*this)(i, j));
        return m;
    }

    /// Entrywise conversion to another scalar type.
    template <typename U, typename F>
    [[nodiscard]] Matrix<U> map(F&& f) const {
        Matrix<U> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

}  // namespace taulab
