#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cmlab/geometry.hpp"

namespace cmlab {

enum class Exec { serial, parallel };

// dense row-major complex matrix
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cplx* row(std::size_t i) { return data_.data() + i * cols_; }
    const cplx* row(std::size_t i) const { return data_.data() + i * cols_; }

    const std::vector<cplx>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// y = M x; rows are computed independently, so serial and parallel results
// are bit identical
void matvec(const Matrix& m, const std::vector<cplx>& x, std::vector<cplx>& y,
            Exec exec = Exec::parallel);

// in-place LU factorization with partial pivoting
class LuFactorization {
public:
    explicit LuFactorization(Matrix m, Exec exec = Exec::parallel);

    std::vector<cplx> solve(const std::vector<cplx>& rhs) const;

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

struct GmresResult {
    std::vector<cplx> x;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

using MatvecFn = std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>;

// unrestarted GMRES with modified Gram-Schmidt; inner products are summed
// serially so the result does not depend on the thread count
GmresResult gmres(const MatvecFn& apply, std::size_t n, const std::vector<cplx>& rhs,
                  double rel_tol = 1e-13, int max_iter = 300);
GmresResult gmres(const Matrix& m, const std::vector<cplx>& rhs, double rel_tol = 1e-13,
                  int max_iter = 300, Exec exec = Exec::parallel);

} // namespace cmlab
