#pragma once

#include <map>

#include "lsw/stencil.hpp"
#include "lsw/velocity.hpp"

namespace lsw {

// Per-axis geometry class of an extended lattice coordinate t in
// [-b, n+1+b]: 0 for the unstretched range [0, n+1], 1..b for the lower
// ramp (t = -k), b+1..2b for the upper ramp (t = n+1+k).  Stencils are
// translation-invariant within a class because the stretch pattern over
// {t-1, t, t+1} depends only on the class, and lattice translation merely
// rescales each fitted wave column.
int axis_stretch_class(const GridSpec& g, int t);

// Fitted stencils for every absorbing-collar point of the extended lattice,
// stored per class pair (2b+1)^2.  Only the (b+1) x b corner block
// {unstretched, upper ramp} x {upper ramp} is fitted directly; the rest are
// obtained from it by the symmetries of the stretch (axis reflections map
// x^sigma to 1 - x^sigma exactly, transposition swaps the axes), which
// permute the offsets and change the overall phase only.
class BoundaryStencilTable {
 public:
  explicit BoundaryStencilTable(const GridSpec& g);

  // Stencil at extended point (t1, t2); at least one axis must be stretched.
  const PmlStencil& at(int t1, int t2) const;
  const PmlStencil& at_class(int c1, int c2) const;

  // Direct (un-mapped) fit at a point, for symmetry validation in tests.
  PmlStencil fit_direct(int t1, int t2) const;

  int classes() const { return 2 * g_.b + 1; }
  const GridSpec& grid() const { return g_; }

 private:
  GridSpec g_;
  std::vector<PmlStencil> table_;  // (2b+1)^2, class-pair major
};

// Fitted stencils for the sweep's moving absorbing ramps, tabulated over a
// uniform grid of local frequencies.
//
// The local squared frequency omega_loc^2 = omega^2 (1 - m) varies over
// [omega^2 (1 - m_max), omega^2 (1 - m_min)]; n samples cover it and lookups
// round to the nearest sample (ties toward the lower sample).  For each
// requested ramp depth W and each ramp position j in [0, W), a stencil is
// fitted per sample.  Points additionally stretched along the second axis
// (the global collar) always carry m = 0, hence always map to the sample
// nearest omega^2; combined stencils are therefore tabulated only there.
class MovingRampTable {
 public:
  MovingRampTable(const GridSpec& g, const PerturbationField& field,
                  const std::vector<int>& depths);

  int samples() const { return nsamples_; }
  int sample_of(double omega_loc_sq) const;
  double omega_loc_sq_of_sample(int s) const;
  int reference_sample() const { return ref_sample_; }  // m = 0 sample

  // pos in [0, depth); class2 = axis_stretch_class of the second coordinate.
  // For class2 != 0 the sample must equal reference_sample().
  const PmlStencil& at(int depth, int sample, int pos, int class2) const;

  // Direct fit bypassing the frequency sampling (test hook / exact mode).
  PmlStencil fit_exact(int depth, int pos, int t2,
                       double omega_loc_sq) const;

  // Iterate every stored stencil (residual audits).
  template <typename F>
  void for_each(F&& fn) const {
    for (const auto& [depth, v] : store_)
      for (const auto& s : v)
        if (s.populated) fn(s.stencil);
  }

 private:
  struct Entry {
    PmlStencil stencil;
    bool populated = false;
  };

  std::size_t slot(int depth, int sample, int pos, int class2) const;

  GridSpec g_;
  int nsamples_ = 1;
  int ref_sample_ = 0;
  double w2_lo_ = 0.0, w2_hi_ = 0.0;
  std::map<int, std::vector<Entry>> store_;  // depth -> dense entry block
};

}  // namespace lsw
