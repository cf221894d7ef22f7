#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "scatter/numeric.hpp"

namespace scat {

// Small dense rational matrix; all seed-data algebra runs through it.
class MatQ {
  public:
    MatQ() : rows_(0), cols_(0) {}
    MatQ(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
    MatQ(std::initializer_list<std::initializer_list<Rat>> init) {
        rows_ = static_cast<int>(init.size());
        cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != cols_)
                throw dimension_error("MatQ: ragged initializer");
            for (const auto& v : row) a_.push_back(v);
        }
    }
    static MatQ identity(int n) {
        MatQ m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static MatQ diagonal(const QVec& d) {
        MatQ m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (int i = 0; i < m.rows_; ++i) m(i, i) = d[i];
        return m;
    }
    static MatQ from_int(const std::vector<std::vector<long>>& v) {
        MatQ m(static_cast<int>(v.size()), v.empty() ? 0 : static_cast<int>(v[0].size()));
        for (int i = 0; i < m.rows_; ++i) {
            if (static_cast<int>(v[i].size()) != m.cols_)
                throw dimension_error("MatQ: ragged rows");
            for (int j = 0; j < m.cols_; ++j) m(i, j) = Rat(v[i][j]);
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& operator()(int i, int j) { return a_[i * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[i * cols_ + j]; }

    QVec col(int j) const {
        QVec v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    QVec row(int i) const {
        QVec v(cols_);
        for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
        return v;
    }

    bool operator==(const MatQ& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const MatQ& o) const { return !(*this == o); }

    MatQ transpose() const {
        MatQ t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    MatQ operator*(const MatQ& o) const {
        if (cols_ != o.rows_) throw dimension_error("MatQ: product shape mismatch");
        MatQ r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if ((*this)(i, k) == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += (*this)(i, k) * o(k, j);
            }
        return r;
    }
    QVec operator*(const QVec& v) const {
        if (cols_ != static_cast<int>(v.size())) throw dimension_error("MatQ: vector shape");
        QVec r(rows_, Rat(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }
    MatQ operator-() const {
        MatQ r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    MatQ operator-(const MatQ& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_error("MatQ: shape mismatch");
        MatQ r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }
    MatQ operator*(const Rat& s) const {
        MatQ r = *this;
        for (auto& x : r.a_) x *= s;
        return r;
    }

    bool is_integral() const {
        for (const auto& x : a_)
            if (denominator(x) != 1) return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    // Reduced row echelon form; returns pivot columns.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int piv = -1;
            for (int i = row; i < rows_; ++i)
                if ((*this)(i, col) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            for (int j = 0; j < cols_; ++j) std::swap((*this)(piv, j), (*this)(row, j));
            Rat lead = (*this)(row, col);
            for (int j = 0; j < cols_; ++j) (*this)(row, j) /= lead;
            for (int i = 0; i < rows_; ++i) {
                if (i == row || (*this)(i, col) == 0) continue;
                Rat f = (*this)(i, col);
                for (int j = 0; j < cols_; ++j) (*this)(i, j) -= f * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        MatQ c = *this;
        return static_cast<int>(c.rref().size());
    }

    // Basis of the right kernel.
    std::vector<QVec> kernel() const {
        MatQ c = *this;
        std::vector<int> pivots = c.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (int p : pivots) is_pivot[p] = true;
        std::vector<QVec> basis;
        for (int j = 0; j < cols_; ++j) {
            if (is_pivot[j]) continue;
            QVec v(cols_, Rat(0));
            v[j] = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -c(static_cast<int>(r), j);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    Rat det() const {
        if (rows_ != cols_) throw dimension_error("MatQ: det of non-square matrix");
        MatQ c = *this;
        Rat d(1);
        for (int col = 0; col < cols_; ++col) {
            int piv = -1;
            for (int i = col; i < rows_; ++i)
                if (c(i, col) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            if (piv != col) {
                for (int j = 0; j < cols_; ++j) std::swap(c(piv, j), c(col, j));
                d = -d;
            }
            d *= c(col, col);
            for (int i = col + 1; i < rows_; ++i) {
                if (c(i, col) == 0) continue;
                Rat f = c(i, col) / c(col, col);
                for (int j = col; j < cols_; ++j) c(i, j) -= f * c(col, j);
            }
        }
        return d;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            for (int j = 0; j < cols_; ++j) s += (j ? "," : "") + to_string((*this)(i, j));
        }
        return s + "]";
    }

  private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

// Solves A x = b exactly; empty optional when inconsistent.  Free variables
// are set to zero.
inline std::optional<QVec> solve_linear(const MatQ& A, const QVec& b) {
    if (A.rows() != static_cast<int>(b.size())) throw dimension_error("solve_linear: shape");
    MatQ aug(A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
        aug(i, A.cols()) = b[i];
    }
    std::vector<int> pivots = aug.rref();
    for (int p : pivots)
        if (p == A.cols()) return std::nullopt;
    QVec x(A.cols(), Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), A.cols());
    return x;
}

} // namespace scat
