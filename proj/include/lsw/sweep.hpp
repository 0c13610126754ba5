#pragma once

#include "lsw/linalg.hpp"
#include "lsw/sparse_system.hpp"

namespace lsw {

// One x1-slab of the extended lattice, in shifted layer coordinates
// s = t1 + b in [0, side).
struct Slice {
  int s0 = 0;
  int width = 0;
};

// Standard partition: the first and last slabs take 2b layers (the global
// collar plus a matching strip of physical layers), the middle is cut into
// width-b slabs with any remainder merged into the last middle slab.
// Requires at least one middle slab (n + 2 - 2b >= b).
std::vector<Slice> partition_slices(const GridSpec& g);

// Degenerate single-slab partition: the factorization then solves the whole
// sparse system directly (test / validation mode).
std::vector<Slice> single_slice_partition(const GridSpec& g);

// Approximate inverse of the sparse system by slab-by-slab elimination.
//
// Slab i's half-space solve is replaced by a banded subproblem on [D_{i-1},
// D_i] in which the rows over D_{i-1} are swapped for absorbing-ramp rows
// (a left-facing stretch vanishing at D_{i-1}'s last layer, local frequency
// omega^2 (1 - m) looked up in a sampled table).  For the second slab the
// ramp sits on the physical half of the first slab, whose other half is the
// global collar.  Application performs the usual forward elimination and
// back-substitution over the slabs.
class SweepPreconditioner {
 public:
  struct Options {
    // Fit ramp stencils at the exact local frequency of each point instead
    // of the nearest tabulated sample (validation hook).
    bool exact_local_frequency = false;
    // Replace the ramped subproblems by exact cumulative factors of
    // H[0:i]; the sweep is then a direct solve (validation hook).
    bool exact_subblocks = false;
  };

  SweepPreconditioner(const GridSpec& g, const PerturbationField& field,
                      const StencilMatrix& H, std::vector<Slice> partition,
                      Options opt);
  SweepPreconditioner(const GridSpec& g, const PerturbationField& field,
                      const StencilMatrix& H, std::vector<Slice> partition)
      : SweepPreconditioner(g, field, H, std::move(partition), Options{}) {}

  // Approximate solution of H u = f on the full extended lattice.
  ComplexVector apply_extended(const ComplexVector& f) const;

  // The preconditioner action used by the Krylov solver: apply_extended
  // restricted to {1..n}^2.
  ComplexVector apply(const ComplexVector& f) const;

  const std::vector<Slice>& partition() const { return slices_; }
  std::size_t factored_entries() const;

 private:
  struct Subproblem {
    int lo = 0;        // first layer of the banded block
    int aux_end = 0;   // layers [lo, aux_end) carry ramp rows
    int hi = 0;        // one past the slab's last layer
    BandedLU lu{1, 0, 0};
  };

  // Solve subproblem i against a slab right-hand side on D_i, returning the
  // solution restricted to D_i.
  ComplexVector slab_solve(int i, const ComplexVector& rhs_slab) const;

  const GridSpec g_;
  const StencilMatrix& H_;
  std::vector<Slice> slices_;
  std::vector<Subproblem> subs_;
  std::unique_ptr<MovingRampTable> ramps_;
};

// Ramp depths the standard sweep needs for a given partition: b for the
// second slab plus the width of every interior predecessor slab.
std::vector<int> ramp_depths_for(const GridSpec& g,
                                 const std::vector<Slice>& partition);

}  // namespace lsw
