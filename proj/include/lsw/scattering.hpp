#pragma once

#include <memory>
#include <optional>

#include "lsw/gmres.hpp"
#include "lsw/sweep.hpp"

namespace lsw {

// End-to-end scattering solver: the integral-equation operator applied by
// FFT, preconditioned by the sweeping factorization of its compact sparse
// approximation.  Building one of these performs all setup (kernel table,
// fitted stencils, sparse assembly, slab factorizations); solve() can then
// be called for any number of right-hand sides.
class ScatteringSolver {
 public:
  struct Options {
    SolverConfig solver;
    SweepPreconditioner::Options sweep;
    std::optional<std::vector<Slice>> partition;  // default: standard slabs
  };

  ScatteringSolver(const GridSpec& g, const PerturbationField& field,
                   Options opt);
  ScatteringSolver(const GridSpec& g, const PerturbationField& field)
      : ScatteringSolver(g, field, Options{}) {}

  const GridSpec& grid() const { return g_; }
  const DenseOperator& op() const { return *op_; }
  const InteriorStencil& interior_stencil() const { return interior_; }
  const StencilMatrix& sparse_system() const { return H_; }
  const SweepPreconditioner& sweep() const { return *sweep_; }

  double setup_seconds() const { return t_setup_; }   // preconditioner only
  double operator_seconds() const { return t_op_; }   // kernel table + FFT

  // One preconditioner application g -> approximate solution on {1..n}^2.
  ComplexVector precondition(const ComplexVector& r) const;

  // Median preconditioner application time over `reps` runs.
  double time_apply(int reps = 3) const;

  struct Result {
    ComplexVector u;  // total scattered-field solution on {1..n}^2
    SolveReport report;
  };

  // Solve (I + omega^2 K M) u = g for a given right-hand side on {1..n}^2.
  Result solve(const ComplexVector& rhs) const;

  // Build the right-hand side from an incident field and solve.
  Result solve_incident(const ComplexVector& u_inc) const;

 private:
  GridSpec g_;
  Options opt_;
  std::unique_ptr<KernelTable> kernel_;
  std::unique_ptr<DenseOperator> op_;
  InteriorStencil interior_;
  std::unique_ptr<BoundaryStencilTable> collar_;
  StencilMatrix H_;
  std::unique_ptr<SweepPreconditioner> sweep_;
  double t_setup_ = 0.0;
  double t_op_ = 0.0;
};

// Convenience wrapper: set up, solve for one incident field, return the
// solution and a fully populated report (including the unpreconditioned
// residual audit and timings).
ScatteringSolver::Result solve_scattering(const GridSpec& g,
                                          const PerturbationField& field,
                                          const ComplexVector& u_inc,
                                          ScatteringSolver::Options opt = {});

}  // namespace lsw
