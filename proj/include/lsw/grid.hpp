#pragma once

#include <array>
#include <cmath>

#include "lsw/types.hpp"

namespace lsw {

// Square grids over the unit box Omega = (0,1)^2.
//
// The physical domain of interest I is the n x n lattice of interior points
// p_i = i*h, i in {1..n}^2, with h = 1/(n+1).  Around it live two collars:
//   - one extra layer of discretization points (indices 0 and n+1), and
//   - an absorbing region of b layers per side used by the sparse
//     approximation (indices -b..-1 and n+2..n+1+b).
// The outermost ring (indices -b-1 and n+2+b) carries homogeneous Dirichlet
// conditions and is never stored.

enum class IndexSetKind {
  kInterior,       // {1..n}^2
  kInteriorPlus,   // {0..n+1}^2
  kExtended,       // {-b..n+1+b}^2
  kBoundaryRing,   // extended-square ring at -b-1 / n+2+b
};

struct GridSpec {
  double omega = 0.0;   // time-harmonic frequency (omega = 2*pi*f)
  int n = 0;            // interior points per dimension
  int b = 8;            // absorbing layers per side
  double c_pml = 10.0;  // absorption strength; stretch amplitude is c_pml/omega

  double h() const { return 1.0 / (n + 1); }
  double eta() const { return b * h(); }
  // Side length of the extended lattice {-b..n+1+b}.
  int side() const { return n + 2 + 2 * b; }

  // Physical coordinate of lattice index i (one axis).
  double point(int i) const { return i * h(); }
};

struct IndexSet {
  IndexSetKind kind;
  int n;
  int b;

  int lo() const {
    switch (kind) {
      case IndexSetKind::kInterior: return 1;
      case IndexSetKind::kInteriorPlus: return 0;
      case IndexSetKind::kExtended: return -b;
      case IndexSetKind::kBoundaryRing: return -b - 1;
    }
    return 0;
  }
  int hi() const {  // inclusive
    switch (kind) {
      case IndexSetKind::kInterior: return n;
      case IndexSetKind::kInteriorPlus: return n + 1;
      case IndexSetKind::kExtended: return n + 1 + b;
      case IndexSetKind::kBoundaryRing: return n + 2 + b;
    }
    return 0;
  }
  int extent() const { return hi() - lo() + 1; }

  bool contains(int i1, int i2) const {
    if (kind == IndexSetKind::kBoundaryRing) {
      const int l = lo(), h2 = hi();
      const bool in_box = i1 >= l && i1 <= h2 && i2 >= l && i2 <= h2;
      const bool in_core = i1 > l && i1 < h2 && i2 > l && i2 < h2;
      return in_box && !in_core;
    }
    return i1 >= lo() && i1 <= hi() && i2 >= lo() && i2 <= hi();
  }

  std::size_t size() const {
    if (kind == IndexSetKind::kBoundaryRing) {
      const std::size_t s = extent();
      return s * s - (s - 2) * (s - 2);
    }
    const std::size_t s = extent();
    return s * s;
  }
};

inline IndexSet interior_set(const GridSpec& g) {
  return {IndexSetKind::kInterior, g.n, g.b};
}
inline IndexSet interior_plus_set(const GridSpec& g) {
  return {IndexSetKind::kInteriorPlus, g.n, g.b};
}
inline IndexSet extended_set(const GridSpec& g) {
  return {IndexSetKind::kExtended, g.n, g.b};
}
inline IndexSet boundary_ring_set(const GridSpec& g) {
  return {IndexSetKind::kBoundaryRing, g.n, g.b};
}

// A complex-valued lattice function stored row-major over a square index
// range [lo, lo+extent)^2; index (i1, i2) lives at (i1-lo)*extent + (i2-lo).
struct ComplexField {
  int lo = 0;
  int extent = 0;
  ComplexVector data;

  ComplexField() = default;
  ComplexField(int lo_, int extent_)
      : lo(lo_), extent(extent_),
        data(static_cast<std::size_t>(extent_) * extent_) {}

  std::size_t flat(int i1, int i2) const {
    return static_cast<std::size_t>(i1 - lo) * extent + (i2 - lo);
  }
  Complex& at(int i1, int i2) { return data[flat(i1, i2)]; }
  const Complex& at(int i1, int i2) const { return data[flat(i1, i2)]; }
  bool contains(int i1, int i2) const {
    return i1 >= lo && i1 < lo + extent && i2 >= lo && i2 < lo + extent;
  }
};

inline ComplexField make_field(const IndexSet& s) {
  return ComplexField(s.lo(), s.extent());
}

// Chooses the smallest grid that delivers at least `ppw` points per
// wavelength: n+1 = ceil(ppw * omega / (2*pi)), with a tiny relative slack so
// that exact integer targets are not bumped up by floating-point dust.
GridSpec make_grid(double omega, double ppw, int b, double c_pml = 10.0);

// Incident plane wave exp(i*omega*(dir . x)) sampled on the interior lattice
// {1..n}^2; `dir` should be a unit vector.
ComplexField plane_wave(const GridSpec& g, double dir1, double dir2);

}  // namespace lsw
