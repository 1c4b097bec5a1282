#include "teinv/banded.hpp"

#include <algorithm>
#include <cmath>

namespace teinv {

BandedMatrix::BandedMatrix(int n, int lower, int upper) : n_(n), kl_(lower), ku_(upper) {
    if (n <= 0 || lower < 0 || upper < 0)
        throw std::invalid_argument("BandedMatrix: invalid dimensions");
    data_.assign(static_cast<size_t>(n) * (kl_ + ku_ + 1), 0.0);
}

double& BandedMatrix::at(int i, int j) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i - j > kl_ || j - i > ku_)
        throw std::out_of_range("BandedMatrix::at: index outside band");
    return data_[static_cast<size_t>(j) * (kl_ + ku_ + 1) + ku_ + i - j];
}

double BandedMatrix::get(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i - j > kl_ || j - i > ku_) return 0.0;
    return data_[static_cast<size_t>(j) * (kl_ + ku_ + 1) + ku_ + i - j];
}

std::vector<double> BandedMatrix::apply(std::span<const double> x) const {
    std::vector<double> y(static_cast<size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
        const int j0 = std::max(0, i - kl_);
        const int j1 = std::min(n_ - 1, i + ku_);
        double acc = 0.0;
        for (int j = j0; j <= j1; ++j) acc += get(i, j) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = acc;
    }
    return y;
}

BandedLU::BandedLU(const BandedMatrix& a)
    : n_(a.size()), kl_(a.lower()), kw_(a.lower() + a.upper()), pivots_(static_cast<size_t>(n_)) {
    ab_.assign(static_cast<size_t>(n_) * (kl_ + kw_ + 1), 0.0);
    for (int j = 0; j < n_; ++j) {
        const int i0 = std::max(0, j - a.upper());
        const int i1 = std::min(n_ - 1, j + kl_);
        for (int i = i0; i <= i1; ++i) ab(i, j) = a.get(i, j);
    }

    for (int k = 0; k < n_; ++k) {
        const int last_row = std::min(n_ - 1, k + kl_);
        int p = k;
        double best = std::abs(ab(k, k));
        for (int i = k + 1; i <= last_row; ++i) {
            if (std::abs(ab(i, k)) > best) {
                best = std::abs(ab(i, k));
                p = i;
            }
        }
        pivots_[static_cast<size_t>(k)] = p;
        if (best == 0.0) throw std::runtime_error("BandedLU: matrix is singular");

        const int last_col = std::min(n_ - 1, k + kw_);
        if (p != k)
            for (int j = k; j <= last_col; ++j) std::swap(ab(k, j), ab(p, j));

        const double pivot = ab(k, k);
        for (int i = k + 1; i <= last_row; ++i) {
            const double l = ab(i, k) / pivot;
            ab(i, k) = l;
            for (int j = k + 1; j <= last_col; ++j) ab(i, j) -= l * ab(k, j);
        }
    }
}

std::vector<double> BandedLU::solve(std::span<const double> b) const {
    if (static_cast<int>(b.size()) != n_)
        throw std::invalid_argument("BandedLU::solve: size mismatch");
    std::vector<double> x(b.begin(), b.end());

    for (int k = 0; k < n_; ++k) {
        const int p = pivots_[static_cast<size_t>(k)];
        if (p != k) std::swap(x[static_cast<size_t>(k)], x[static_cast<size_t>(p)]);
        const int last_row = std::min(n_ - 1, k + kl_);
        for (int i = k + 1; i <= last_row; ++i) x[static_cast<size_t>(i)] -= ab(i, k) * x[static_cast<size_t>(k)];
    }
    for (int k = n_ - 1; k >= 0; --k) {
        const int last_col = std::min(n_ - 1, k + kw_);
        double acc = x[static_cast<size_t>(k)];
        for (int j = k + 1; j <= last_col; ++j) acc -= ab(k, j) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(k)] = acc / ab(k, k);
    }
    return x;
}

}  // namespace teinv
