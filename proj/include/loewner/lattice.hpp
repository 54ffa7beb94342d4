#pragma once

#include <complex>

#include "vec2.hpp"

namespace loewner {

//! Absolute tolerance for geometric predicates on unit-covolume data.
inline constexpr double kGeomTol = 1e-9;

/*!
 * Rank-2 lattice in the Euclidean plane.
 *
 * Construction rejects degenerate bases: covolume below
 * 1e-12 * max(|b1|^2, |b2|^2) raises "degenerate lattice". Bases are never
 * repaired.
 */
class Lattice
{
  public:
    Lattice(Vec2 b1, Vec2 b2);

    //! Unit-covolume lattice spanned by {1/sigma, tau/sigma}, sigma^2 = Im tau.
    static Lattice from_tau(std::complex<double> tau);
    static Lattice unit_square() { return {{1, 0}, {0, 1}}; }
    //! Eisenstein lattice scaled to unit covolume.
    static Lattice eisenstein();

    Vec2 b1() const { return b1_; }
    Vec2 b2() const { return b2_; }
    double covolume() const;

    //! Point m*b1 + n*b2.
    Vec2 point(double m, double n) const { return m * b1_ + n * b2_; }

    //! Same lattice scaled to covolume one.
    Lattice normalized() const;

    //! Dual basis vectors: dot(b_i, dual_j) = delta_ij.
    Vec2 dual1() const;
    Vec2 dual2() const;

    //! True if the basis is (1,0),(0,1) up to kGeomTol.
    bool is_standard_square() const;

  private:
    Vec2 b1_;
    Vec2 b2_;
};

//! Reduced modulus: input lattice = scale * e^{i rotation} * span{1, tau}.
struct ReducedModulus
{
    std::complex<double> tau;
    double sigma_sq = 0;
    double scale = 0;
    double rotation = 0;
};

struct SuccessiveMinima
{
    double lambda1 = 0;
    double lambda2 = 0;
    Vec2 v1;
    Vec2 v2;
};

//! Lagrange-Gauss reduced basis: |b1| <= |b2| <= |b2 +- b1|.
Lattice gauss_reduce(Lattice const& lattice);

ReducedModulus reduce(Lattice const& lattice);
SuccessiveMinima successive_minima(Lattice const& lattice);
//! lambda1^2 / covolume; at most 2/sqrt(3).
double hermite_ratio(Lattice const& lattice);

//! Apply the canonical boundary tie-break to a tau already in the closed
//! fundamental domain.
std::complex<double> canonical_tau(std::complex<double> tau);

}  // namespace loewner
