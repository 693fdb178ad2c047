#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "p2bundle/errors.hpp"
#include "p2bundle/field.hpp"

namespace p2b {

// Dense row-major matrix over a field context. All arithmetic is exact.
template <field_context F>
class DenseMatrix {
public:
    using Elem = typename F::Elem;

    DenseMatrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)),
          rows_(rows),
          cols_(cols),
          e_(rows * cols, field_.zero()) {}

    static DenseMatrix from_rows(
        F field, std::initializer_list<std::initializer_list<long long>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        DenseMatrix m(std::move(field), r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw Error("ragged initializer for matrix");
            std::size_t j = 0;
            for (long long v : row) m(i, j++) = m.field().from_int(v);
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const F& field() const { return field_; }

    Elem& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Elem& operator()(std::size_t i, std::size_t j) const {
        return e_[i * cols_ + j];
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols_; ++k)
            std::swap((*this)(i, k), (*this)(j, k));
    }

    DenseMatrix transposed() const {
        DenseMatrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool equals(const DenseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t k = 0; k < e_.size(); ++k)
            if (!field_.eq(e_[k], o.e_[k])) return false;
        return true;
    }

private:
    F field_;
    std::size_t rows_, cols_;
    std::vector<Elem> e_;
};

template <field_context F>
struct RrefResult {
    DenseMatrix<F> matrix;
    std::vector<std::size_t> pivots;  // pivot column per pivot row, increasing
};

// Reduced row echelon form. The forward pass is fraction-free
// (Bareiss-style two-by-two determinant updates with exact division by the
// previous pivot), which bounds intermediate growth over the rationals; the
// backward pass normalizes pivots to one and clears above. Pivots are the
// first nonzero entry scanning top-to-bottom, left-to-right, so the output
// is deterministic.
template <field_context F>
RrefResult<F> rref(const DenseMatrix<F>& m) {
    const F& f = m.field();
    DenseMatrix<F> a = m;
    const std::size_t nr = a.rows(), nc = a.cols();
    std::vector<std::size_t> pivots;

    typename F::Elem prev = f.one();
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t sel = row;
        while (sel < nr && f.is_zero(a(sel, col))) ++sel;
        if (sel == nr) continue;
        a.swap_rows(row, sel);
        const typename F::Elem pivot = a(row, col);
        for (std::size_t i = row + 1; i < nr; ++i) {
            const typename F::Elem head = a(i, col);
            for (std::size_t j = col + 1; j < nc; ++j)
                a(i, j) = f.div(
                    f.sub(f.mul(a(i, j), pivot), f.mul(head, a(row, j))), prev);
            a(i, col) = f.zero();
        }
        prev = pivot;
        pivots.push_back(col);
        ++row;
    }

    for (std::size_t k = pivots.size(); k-- > 0;) {
        const std::size_t r = k, c = pivots[k];
        const typename F::Elem pivot = a(r, c);
        a(r, c) = f.one();
        for (std::size_t j = c + 1; j < nc; ++j) a(r, j) = f.div(a(r, j), pivot);
        for (std::size_t i = 0; i < r; ++i) {
            const typename F::Elem factor = a(i, c);
            if (f.is_zero(factor)) continue;
            a(i, c) = f.zero();
            for (std::size_t j = c + 1; j < nc; ++j)
                a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
        }
    }

    return {std::move(a), std::move(pivots)};
}

template <field_context F>
std::size_t rank(const DenseMatrix<F>& m) {
    return rref(m).pivots.size();
}

// Basis of the right kernel, read off the reduced echelon form: one vector
// per free column, with free columns in increasing order.
template <field_context F>
std::vector<std::vector<typename F::Elem>> kernel_basis(const DenseMatrix<F>& m) {
    const F& f = m.field();
    const auto red = rref(m);
    const std::size_t nc = m.cols();

    std::vector<bool> is_pivot(nc, false);
    for (std::size_t c : red.pivots) is_pivot[c] = true;

    std::vector<std::vector<typename F::Elem>> basis;
    basis.reserve(nc - red.pivots.size());
    for (std::size_t free = 0; free < nc; ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename F::Elem> v(nc, f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < red.pivots.size(); ++r)
            v[red.pivots[r]] = f.neg(red.matrix(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace p2b
