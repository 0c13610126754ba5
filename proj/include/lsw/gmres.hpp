#pragma once

#include <functional>

#include "lsw/types.hpp"

namespace lsw {

struct SolverConfig {
  double tol = 1e-6;   // relative preconditioned residual target
  int restart = 20;
  int max_outer = 50;  // restart cycles
};

struct SolveReport {
  int iterations = 0;  // total inner steps across restarts
  int restarts = 0;
  bool converged = false;
  double rel_residual = 0.0;       // preconditioned, at exit
  double true_rel_residual = 0.0;  // |b - A x| / |b|, filled by the caller
  std::vector<double> history;     // preconditioned residual per inner step
  double t_setup = 0.0;            // seconds, filled by the caller
  double t_apply = 0.0;
  double t_solve = 0.0;
};

using LinearOp = std::function<ComplexVector(const ComplexVector&)>;

// Left-preconditioned restarted GMRES for M^{-1} A x = M^{-1} b, starting
// from x = 0.  Arnoldi uses modified Gram-Schmidt with one full
// reorthogonalization pass; the least-squares problem is updated by Givens
// rotations.  Convergence is declared on the preconditioned relative
// residual; a zero right-hand side returns immediately with x = 0.
ComplexVector gmres(const LinearOp& apply_A, const LinearOp& apply_M,
                    const ComplexVector& b, const SolverConfig& cfg,
                    SolveReport& report);

}  // namespace lsw
