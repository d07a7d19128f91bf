#pragma once

#include <stdexcept>
#include <vector>

#include "rrmul/field.hpp"

namespace rrmul {

/// Dense matrix over a field F (PrimeField or QuadExt). Row-major.
template <class F>
class Matrix {
public:
    using Elem = typename F::Elem;

    Matrix(const F& field, size_t rows, size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    static Matrix identity(const F& field, size_t n) {
        Matrix m(field, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
        return m;
    }

    /// Assemble from column vectors (all of length `rows`).
    static Matrix from_columns(const F& field, size_t rows, const std::vector<std::vector<Elem>>& cols) {
        Matrix m(field, rows, cols.size());
        for (size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw std::invalid_argument("Matrix::from_columns: column length mismatch");
            for (size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    const F& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Elem& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Elem& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    Matrix transposed() const {
        Matrix t(field_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    std::vector<Elem> mul_vec(const std::vector<Elem>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix::mul_vec: size mismatch");
        std::vector<Elem> r(rows_, field_.zero());
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                r[i] = field_.add(r[i], field_.mul(at(i, j), v[j]));
        return r;
    }

    Matrix mul(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Matrix::mul: shape mismatch");
        Matrix r(field_, rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                if (field_.is_zero(at(i, k))) continue;
                for (size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = field_.add(r.at(i, j), field_.mul(at(i, k), o.at(k, j)));
            }
        return r;
    }

    struct RankKernel {
        size_t rank = 0;
        std::vector<std::vector<Elem>> kernel; // column vectors, each normalized
    };

    /// Rank and a kernel basis via reduced row echelon form. Pivoting is
    /// fixed (columns left to right, first nonzero row from the top), and
    /// each kernel vector is scaled so its first nonzero entry is 1, so
    /// the output is reproducible for a given input.
    RankKernel rank_and_kernel() const {
        Matrix r = *this;
        std::vector<size_t> pivot_cols;
        std::vector<bool> is_pivot(cols_, false);
        size_t row = 0;
        for (size_t col = 0; col < cols_ && row < rows_; ++col) {
            size_t sel = rows_;
            for (size_t i = row; i < rows_; ++i) {
                if (!field_.is_zero(r.at(i, col))) {
                    sel = i;
                    break;
                }
            }
            if (sel == rows_) continue;
            if (sel != row)
                for (size_t j = 0; j < cols_; ++j) std::swap(r.at(sel, j), r.at(row, j));
            Elem inv = field_.inv(r.at(row, col));
            for (size_t j = col; j < cols_; ++j) r.at(row, j) = field_.mul(r.at(row, j), inv);
            for (size_t i = 0; i < rows_; ++i) {
                if (i == row || field_.is_zero(r.at(i, col))) continue;
                Elem factor = r.at(i, col);
                for (size_t j = col; j < cols_; ++j)
                    r.at(i, j) = field_.sub(r.at(i, j), field_.mul(factor, r.at(row, j)));
            }
            pivot_cols.push_back(col);
            is_pivot[col] = true;
            ++row;
        }

        RankKernel out;
        out.rank = pivot_cols.size();
        for (size_t j = 0; j < cols_; ++j) {
            if (is_pivot[j]) continue;
            std::vector<Elem> v(cols_, field_.zero());
            v[j] = field_.one();
            for (size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = field_.neg(r.at(i, j));
            for (size_t k = 0; k < cols_; ++k) {
                if (!field_.is_zero(v[k])) {
                    Elem s = field_.inv(v[k]);
                    for (size_t l = 0; l < cols_; ++l) v[l] = field_.mul(v[l], s);
                    break;
                }
            }
            out.kernel.push_back(std::move(v));
        }
        return out;
    }

    size_t rank() const { return rank_and_kernel().rank; }

private:
    F field_;
    size_t rows_, cols_;
    std::vector<Elem> data_;
};

using FpMatrix = Matrix<PrimeField>;

} // namespace rrmul
