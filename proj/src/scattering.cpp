#include "lsw/scattering.hpp"

#include <algorithm>
#include <chrono>

#include "lsw/simd/kernels.hpp"

namespace lsw {

namespace {
double seconds_since(
    const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}
}  // namespace

ScatteringSolver::ScatteringSolver(const GridSpec& g,
                                   const PerturbationField& field,
                                   Options opt)
    : g_(g), opt_(std::move(opt)) {
  Require(field.n == g.n, "ScatteringSolver: field/grid mismatch");

  auto t0 = std::chrono::steady_clock::now();
  kernel_ = std::make_unique<KernelTable>(g, g.n + 1);
  op_ = std::make_unique<DenseOperator>(g, *kernel_, field.m);
  t_op_ = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  interior_ = compute_interior_stencil(g, *kernel_);
  collar_ = std::make_unique<BoundaryStencilTable>(g);
  H_ = assemble_sparse_system(g, field, interior_, *collar_);
  std::vector<Slice> part =
      opt_.partition ? *opt_.partition : partition_slices(g);
  sweep_ = std::make_unique<SweepPreconditioner>(g, field, H_,
                                                 std::move(part), opt_.sweep);
  t_setup_ = seconds_since(t0);
}

ComplexVector ScatteringSolver::precondition(const ComplexVector& r) const {
  return sweep_->apply(assemble_rhs(g_, interior_, r));
}

double ScatteringSolver::time_apply(int reps) const {
  Require(reps >= 1, "time_apply: reps must be >= 1");
  ComplexVector probe(static_cast<std::size_t>(g_.n) * g_.n);
  for (std::size_t i = 0; i < probe.size(); ++i)
    probe[i] = Complex(std::cos(0.37 * static_cast<double>(i)),
                       std::sin(0.11 * static_cast<double>(i)));
  volatile double sink = 0.0;
  RealVector times(reps);
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    ComplexVector y = precondition(probe);
    times[r] = seconds_since(t0);
    sink = sink + y[0].real();
  }
  std::sort(times.begin(), times.end());
  return times[reps / 2];
}

ScatteringSolver::Result ScatteringSolver::solve(
    const ComplexVector& rhs) const {
  Result res;
  const auto t0 = std::chrono::steady_clock::now();
  ComplexVector x = gmres(
      [this](const ComplexVector& v) { return op_->apply(v); },
      [this](const ComplexVector& v) { return precondition(v); }, rhs,
      opt_.solver, res.report);
  res.report.t_solve = seconds_since(t0);
  res.report.t_setup = t_setup_;

  // Unpreconditioned residual audit.
  const auto& kr = simd::active_kernels();
  const double bn = std::sqrt(kr.norm2sq(rhs.data(), rhs.size()));
  if (bn > 0.0) {
    ComplexVector Ax = op_->apply(x);
    for (std::size_t i = 0; i < Ax.size(); ++i) Ax[i] -= rhs[i];
    res.report.true_rel_residual =
        std::sqrt(kr.norm2sq(Ax.data(), Ax.size())) / bn;
  }
  res.u = std::move(x);
  return res;
}

ScatteringSolver::Result ScatteringSolver::solve_incident(
    const ComplexVector& u_inc) const {
  return solve(op_->build_rhs(u_inc));
}

ScatteringSolver::Result solve_scattering(const GridSpec& g,
                                          const PerturbationField& field,
                                          const ComplexVector& u_inc,
                                          ScatteringSolver::Options opt) {
  ScatteringSolver solver(g, field, std::move(opt));
  auto res = solver.solve_incident(u_inc);
  res.report.t_apply = solver.time_apply();
  return res;
}

}  // namespace lsw
