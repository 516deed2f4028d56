#include "lagrangia/matrix.hpp"

namespace lagrangia {

Matrix Matrix::identity(Field f, size_t n) {
    Matrix m(std::move(f), n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(f_, cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require(f_->same(*o.f_), Err::IncompatibleFields, "matrix product across fields");
    require(cols_ == o.rows_, Err::DimensionMismatch, "matrix product shape mismatch");
    Matrix r(f_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            uint64_t aik = (*this)(i, k);
            if (!aik) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                uint64_t b = o(k, j);
                if (b) r(i, j) = f_->add(r(i, j), f_->mul(aik, b));
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, Err::DimensionMismatch, "matrix sum shape");
    Matrix r(f_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::hstack(const Matrix& o) const {
    require(rows_ == o.rows_, Err::DimensionMismatch, "hstack row mismatch");
    Matrix r(f_, rows_, cols_ + o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
}

Matrix Matrix::submatrix_cols(const std::vector<size_t>& cols) const {
    Matrix r(f_, rows_, cols.size());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols.size(); ++j) r(i, j) = (*this)(i, cols[j]);
    return r;
}

bool Matrix::is_zero() const {
    for (uint64_t v : a_)
        if (v) return false;
    return true;
}

Matrix Matrix::rref(std::vector<size_t>* pivots) const {
    Matrix m = *this;
    size_t rank = 0;
    for (size_t c = 0; c < cols_ && rank < rows_; ++c) {
        size_t piv = rank;
        while (piv < rows_ && m(piv, c) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != rank)
            for (size_t j = 0; j < cols_; ++j) std::swap(m(piv, j), m(rank, j));
        uint64_t ip = f_->inv(m(rank, c));
        for (size_t j = c; j < cols_; ++j) m(rank, j) = f_->mul(m(rank, j), ip);
        for (size_t r = 0; r < rows_; ++r) {
            if (r == rank) continue;
            uint64_t v = m(r, c);
            if (!v) continue;
            for (size_t j = c; j < cols_; ++j)
                m(r, j) = f_->sub(m(r, j), f_->mul(v, m(rank, j)));
        }
        if (pivots) pivots->push_back(c);
        ++rank;
    }
    return m;
}

RankKernel Matrix::rank_kernel_generic() const {
    std::vector<size_t> piv;
    Matrix r = rref(&piv);
    size_t rank = piv.size();
    std::vector<size_t> free_cols;
    {
        size_t pi = 0;
        for (size_t c = 0; c < cols_; ++c) {
            if (pi < piv.size() && piv[pi] == c) {
                ++pi;
            } else {
                free_cols.push_back(c);
            }
        }
    }
    Matrix ker(f_, cols_, free_cols.size());
    for (size_t j = 0; j < free_cols.size(); ++j) {
        size_t fc = free_cols[j];
        ker(fc, j) = 1;
        for (size_t i = 0; i < rank; ++i) ker(piv[i], j) = f_->neg(r(i, fc));
    }
    return {rank, std::move(ker)};
}

RankKernel Matrix::rank_kernel_gf2() const {
    const size_t words = (cols_ + 63) / 64;
    std::vector<uint64_t> row(rows_ * words, 0);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c)) row[r * words + c / 64] |= 1ULL << (c % 64);

    auto bit = [&](size_t r, size_t c) { return (row[r * words + c / 64] >> (c % 64)) & 1; };
    std::vector<size_t> piv;
    size_t rank = 0;
    for (size_t c = 0; c < cols_ && rank < rows_; ++c) {
        size_t p = rank;
        while (p < rows_ && !bit(p, c)) ++p;
        if (p == rows_) continue;
        if (p != rank)
            for (size_t w = 0; w < words; ++w) std::swap(row[p * words + w], row[rank * words + w]);
        for (size_t r = 0; r < rows_; ++r) {
            if (r != rank && bit(r, c))
                for (size_t w = 0; w < words; ++w) row[r * words + w] ^= row[rank * words + w];
        }
        piv.push_back(c);
        ++rank;
    }
    std::vector<size_t> free_cols;
    {
        size_t pi = 0;
        for (size_t c = 0; c < cols_; ++c) {
            if (pi < piv.size() && piv[pi] == c) {
                ++pi;
            } else {
                free_cols.push_back(c);
            }
        }
    }
    Matrix ker(f_, cols_, free_cols.size());
    for (size_t j = 0; j < free_cols.size(); ++j) {
        size_t fc = free_cols[j];
        ker(fc, j) = 1;
        for (size_t i = 0; i < rank; ++i) ker(piv[i], j) = bit(i, fc);
    }
    return {rank, std::move(ker)};
}

RankKernel Matrix::rank_kernel() const {
    if (f_ && f_->q() == 2) return rank_kernel_gf2();
    return rank_kernel_generic();
}

size_t Matrix::rank() const { return rank_kernel().rank; }

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
    require(rows_ == b.rows_, Err::DimensionMismatch, "solve: row counts differ");
    std::vector<size_t> piv;
    Matrix aug = hstack(b).rref(&piv);
    // any pivot inside the b-block means inconsistency
    for (size_t c : piv)
        if (c >= cols_) return std::nullopt;
    Matrix x(f_, cols_, b.cols_);
    for (size_t i = 0; i < piv.size(); ++i)
        for (size_t j = 0; j < b.cols_; ++j) x(piv[i], j) = aug(i, cols_ + j);
    return x;
}

Matrix Matrix::column_space_echelon() const {
    std::vector<size_t> piv;
    Matrix r = transpose().rref(&piv).transpose();
    return r.submatrix_cols([&] {
        std::vector<size_t> keep(piv.size());
        for (size_t i = 0; i < piv.size(); ++i) keep[i] = i;
        return keep;
    }());
}

} // namespace lagrangia
