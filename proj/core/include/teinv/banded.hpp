#pragma once
// Banded matrices and a banded LU direct solver with partial pivoting.
// Band storage follows the LAPACK convention; pivoting widens the upper
// band by the lower bandwidth.

#include <span>
#include <stdexcept>
#include <vector>

namespace teinv {

class BandedMatrix {
  public:
    BandedMatrix(int n, int lower, int upper);

    int size() const { return n_; }
    int lower() const { return kl_; }
    int upper() const { return ku_; }

    /// Mutable access within the band; throws outside it.
    double& at(int i, int j);
    /// Read access; returns 0 outside the band.
    double get(int i, int j) const;

    /// y = A x
    std::vector<double> apply(std::span<const double> x) const;

  private:
    int n_, kl_, ku_;
    std::vector<double> data_;  // column-major bands, entry (i,j) at data_[j*(kl+ku+1) + ku + i - j]
};

/// LU factorization of a banded matrix with row partial pivoting.
class BandedLU {
  public:
    explicit BandedLU(const BandedMatrix& a);

    /// Solves A x = b; returns x.
    std::vector<double> solve(std::span<const double> b) const;

  private:
    int n_, kl_, kw_;            // kw = kl + ku: widened upper bandwidth
    std::vector<double> ab_;     // factored band storage, ld = kl + kw + 1
    std::vector<int> pivots_;

    double& ab(int i, int j) { return ab_[static_cast<size_t>(j) * (kl_ + kw_ + 1) + kw_ + i - j]; }
    double ab(int i, int j) const {
        return ab_[static_cast<size_t>(j) * (kl_ + kw_ + 1) + kw_ + i - j];
    }
};

}  // namespace teinv
