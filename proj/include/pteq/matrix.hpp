#pragma once

#include <pteq/errors.hpp>
#include <pteq/rational.hpp>

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace pteq {

/// A rational point, stored coordinate-wise.
using Point = std::vector<Rational>;

/// Dense matrix of exact rationals, row-major. Equality is entrywise exact.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}

    Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw ShapeError("Matrix: negative dimension");
        data_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), Rational(0));
    }

    Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
        data_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != cols_)
                throw ShapeError("Matrix: ragged initializer");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
        return m;
    }

    /// The all-ones column vector.
    static Matrix all_ones(int n) {
        Matrix m(n, 1);
        for (int i = 0; i < n; ++i) m(i, 0) = Rational(1);
        return m;
    }

    static Matrix diagonal(const std::vector<Rational>& d) {
        Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }

    static Matrix column(const std::vector<Rational>& v) {
        Matrix m(static_cast<int>(v.size()), 1);
        for (size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Rational& operator()(int i, int j) const { return data_[index(i, j)]; }
    Rational& operator()(int i, int j) { return data_[index(i, j)]; }

    const Rational& at(int i, int j) const {
        check_bounds(i, j);
        return data_[index(i, j)];
    }
    Rational& at(int i, int j) {
        check_bounds(i, j);
        return data_[index(i, j)];
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b, "+");
        Matrix c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] + b.data_[i];
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b, "-");
        Matrix c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i];
        return c;
    }

    Matrix operator-() const {
        Matrix c(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) c.data_[i] = -data_[i];
        return c;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw ShapeError("matmul: " + a.shape_str() + " * " + b.shape_str());
        Matrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator*(const Rational& s, const Matrix& a) {
        Matrix c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = s * a.data_[i];
        return c;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(),
                           [](const Rational& x) { return x.is_zero(); });
    }

    /// Horizontal concatenation [a b].
    static Matrix hcat(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_)
            throw ShapeError("hcat: row counts differ (" + a.shape_str() + " vs " + b.shape_str() + ")");
        Matrix c(a.rows_, a.cols_ + b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
            for (int j = 0; j < b.cols_; ++j) c(i, a.cols_ + j) = b(i, j);
        }
        return c;
    }

    Matrix block(int row0, int col0, int nrows, int ncols) const {
        if (row0 < 0 || col0 < 0 || nrows < 0 || ncols < 0 ||
            row0 + nrows > rows_ || col0 + ncols > cols_)
            throw ShapeError("block: out of range");
        Matrix b(nrows, ncols);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j)
                b(i, j) = (*this)(row0 + i, col0 + j);
        return b;
    }

    Matrix col(int j) const { return block(0, j, rows_, 1); }

    std::vector<Rational> col_vector(int j) const {
        std::vector<Rational> v(static_cast<size_t>(rows_));
        for (int i = 0; i < rows_; ++i) v[static_cast<size_t>(i)] = (*this)(i, j);
        return v;
    }

    void set_col(int j, const std::vector<Rational>& v) {
        if (static_cast<int>(v.size()) != rows_) throw ShapeError("set_col: length mismatch");
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[static_cast<size_t>(i)];
    }

    void swap_rows(int a, int b) {
        for (int j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    /// Columns sorted lexicographically; the canonical representative used
    /// for multiset-of-points equality.
    Matrix sorted_columns() const {
        std::vector<std::vector<Rational>> cols;
        cols.reserve(static_cast<size_t>(cols_));
        for (int j = 0; j < cols_; ++j) cols.push_back(col_vector(j));
        std::sort(cols.begin(), cols.end());
        Matrix m(rows_, cols_);
        for (int j = 0; j < cols_; ++j) m.set_col(j, cols[static_cast<size_t>(j)]);
        return m;
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    std::string str() const {
        std::string s;
        for (int i = 0; i < rows_; ++i) {
            s += i == 0 ? "[" : " ";
            for (int j = 0; j < cols_; ++j) {
                s += (*this)(i, j).str();
                if (j + 1 < cols_) s += " ";
            }
            s += i + 1 < rows_ ? "\n" : "]";
        }
        return s;
    }

private:
    size_t index(int i, int j) const {
        return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
    }

    void check_bounds(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw ShapeError("Matrix: index (" + std::to_string(i) + "," + std::to_string(j) +
                             ") out of " + shape_str());
    }

    void require_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ShapeError(std::string("Matrix ") + op + ": " + shape_str() + " vs " + o.shape_str());
    }

    int rows_, cols_;
    std::vector<Rational> data_;
};

/// Multiset equality of point sets stored as matrix columns.
inline bool same_column_multiset(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return a.sorted_columns() == b.sorted_columns();
}

} // namespace pteq
