#include "cmlab/linalg.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmlab {

void matvec(const Matrix& m, const std::vector<cplx>& x, std::vector<cplx>& y, Exec exec) {
    const std::size_t n = m.rows();
    const std::size_t cols = m.cols();
    if (x.size() != cols)
        throw error("matvec: dimension mismatch");
    y.assign(n, cplx(0.0));
    const auto run_row = [&](std::size_t i) {
        const cplx* r = m.row(i);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < cols; ++j)
            acc += r[j] * x[j];
        y[i] = acc;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            run_row(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i)
            run_row(i);
    }
}

LuFactorization::LuFactorization(Matrix m, Exec exec) : lu_(std::move(m)) {
    const std::size_t n = lu_.rows();
    if (n != lu_.cols())
        throw error("LU requires a square matrix");
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        perm_[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        // pivot
        std::size_t piv = k;
        double best = std::norm(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::norm(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0)
            throw error("LU: singular matrix");
        if (piv != k) {
            std::swap(perm_[piv], perm_[k]);
            cplx* a = lu_.row(k);
            cplx* b = lu_.row(piv);
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a[j], b[j]);
        }
        const cplx inv_piv = 1.0 / lu_(k, k);
        const cplx* rk = lu_.row(k);
        const auto update_row = [&](std::size_t i) {
            cplx* ri = lu_.row(i);
            const cplx l = ri[k] * inv_piv;
            ri[k] = l;
            for (std::size_t j = k + 1; j < n; ++j)
                ri[j] -= l * rk[j];
        };
        if (exec == Exec::parallel && n - k > 64) {
#pragma omp parallel for schedule(static)
            for (long long i = k + 1; i < static_cast<long long>(n); ++i)
                update_row(static_cast<std::size_t>(i));
        } else {
            for (std::size_t i = k + 1; i < n; ++i)
                update_row(i);
        }
    }
}

std::vector<cplx> LuFactorization::solve(const std::vector<cplx>& rhs) const {
    const std::size_t n = lu_.rows();
    if (rhs.size() != n)
        throw error("LU solve: dimension mismatch");
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = rhs[perm_[i]];
    // forward
    for (std::size_t i = 1; i < n; ++i) {
        const cplx* ri = lu_.row(i);
        cplx acc = x[i];
        for (std::size_t j = 0; j < i; ++j)
            acc -= ri[j] * x[j];
        x[i] = acc;
    }
    // backward
    for (std::size_t ii = n; ii-- > 0;) {
        const cplx* ri = lu_.row(ii);
        cplx acc = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j)
            acc -= ri[j] * x[j];
        x[ii] = acc / ri[ii];
    }
    return x;
}

namespace {

cplx dot_conj(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm2(const std::vector<cplx>& a) {
    double acc = 0.0;
    for (const cplx& v : a)
        acc += std::norm(v);
    return std::sqrt(acc);
}

} // namespace

GmresResult gmres(const Matrix& m, const std::vector<cplx>& rhs, double rel_tol, int max_iter,
                  Exec exec) {
    return gmres([&m, exec](const std::vector<cplx>& x,
                            std::vector<cplx>& y) { matvec(m, x, y, exec); },
                 m.rows(), rhs, rel_tol, max_iter);
}

GmresResult gmres(const MatvecFn& apply, std::size_t n, const std::vector<cplx>& rhs,
                  double rel_tol, int max_iter) {
    GmresResult res;
    const double beta0 = norm2(rhs);
    if (beta0 == 0.0) {
        res.x.assign(n, cplx(0.0));
        res.converged = true;
        return res;
    }

    std::vector<std::vector<cplx>> basis;
    basis.emplace_back(rhs);
    for (cplx& v : basis.back())
        v /= beta0;

    // Hessenberg entries and the Givens-rotated least-squares system
    std::vector<std::vector<cplx>> h; // h[j] holds column j (j+2 entries)
    std::vector<cplx> cs, sn, g;
    g.push_back(beta0);

    int iters = 0;
    double resid = beta0;
    std::vector<cplx> w(n);
    for (int j = 0; j < max_iter; ++j) {
        apply(basis[j], w);
        std::vector<cplx> hcol(j + 2);
        for (int i = 0; i <= j; ++i) {
            const cplx hij = dot_conj(basis[i], w);
            hcol[i] = hij;
            for (std::size_t k = 0; k < n; ++k)
                w[k] -= hij * basis[i][k];
        }
        const double hnext = norm2(w);
        hcol[j + 1] = hnext;

        // apply the accumulated rotations
        for (int i = 0; i < j; ++i) {
            const cplx t = std::conj(cs[i]) * hcol[i] + std::conj(sn[i]) * hcol[i + 1];
            hcol[i + 1] = -sn[i] * hcol[i] + cs[i] * hcol[i + 1];
            hcol[i] = t;
        }
        const double denom = std::sqrt(std::norm(hcol[j]) + std::norm(hcol[j + 1]));
        cplx c = 1.0, s = 0.0;
        if (denom > 0.0) {
            c = hcol[j] / denom;
            s = hcol[j + 1] / denom;
        }
        cs.push_back(c);
        sn.push_back(s);
        hcol[j] = std::conj(c) * hcol[j] + std::conj(s) * hcol[j + 1];
        hcol[j + 1] = 0.0;
        h.push_back(hcol);

        g.push_back(-s * g[j]);
        g[j] = std::conj(c) * g[j];
        resid = std::abs(g[j + 1]);
        iters = j + 1;

        if (resid <= rel_tol * beta0 || hnext == 0.0)
            break;
        basis.emplace_back(w);
        for (cplx& v : basis.back())
            v /= hnext;
    }

    // back substitution for the projected system
    std::vector<cplx> y(iters);
    for (int i = iters - 1; i >= 0; --i) {
        cplx acc = g[i];
        for (int k = i + 1; k < iters; ++k)
            acc -= h[k][i] * y[k];
        y[i] = acc / h[i][i];
    }
    res.x.assign(n, cplx(0.0));
    for (int i = 0; i < iters; ++i)
        for (std::size_t k = 0; k < n; ++k)
            res.x[k] += y[i] * basis[i][k];

    res.residual = resid / beta0;
    res.iterations = iters;
    res.converged = resid <= rel_tol * beta0;
    return res;
}

} // namespace cmlab
