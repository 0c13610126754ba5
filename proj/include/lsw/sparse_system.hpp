#pragma once

#include "lsw/pml_table.hpp"
#include "lsw/stencil.hpp"
#include "lsw/velocity.hpp"

namespace lsw {

// Compact 9-point system on the extended lattice, stored as nine coefficient
// planes: plane[k][e] multiplies u[e + offset_k] in row e (structure-of-
// arrays, so application is nine shifted pointwise multiply-accumulates).
// Couplings that would leave the extended lattice (the Dirichlet ring) hold
// exact zeros.  Flattening: e = (t1 + b) * side + (t2 + b), second axis
// fastest, so one x1-layer is contiguous.
struct StencilMatrix {
  int n = 0;
  int b = 0;
  int side = 0;
  std::array<ComplexVector, 9> plane;

  std::size_t dof() const { return static_cast<std::size_t>(side) * side; }
  std::size_t flat(int t1, int t2) const {
    return static_cast<std::size_t>(t1 + b) * side + (t2 + b);
  }

  // y = H u over the full extended lattice.
  ComplexVector apply(const ComplexVector& u) const;

  // Rows restricted to x1-layers [r0, r1), reading only couplings into
  // x1-layers [c0, c1); `u` covers layers [c0, c1) contiguously and `out`
  // covers [r0, r1).  Layer indices are shifted (s = t1 + b in [0, side)).
  void apply_block(int r0, int r1, int c0, int c1, const Complex* u,
                   Complex* out) const;
};

// Rows of the sparse approximation:
//   - points of {0..n+1}^2: conj(u_w[d]) + omega^2 conj(mu_w[d]) m(i+d),
//   - absorbing-collar points: conj(w[d]) from the fitted table.
StencilMatrix assemble_sparse_system(const GridSpec& g,
                                     const PerturbationField& field,
                                     const InteriorStencil& interior,
                                     const BoundaryStencilTable& collar);

// Right-hand side on the extended lattice: f_i = sum_d conj(u_w[d]) g(i+d)
// for i in {0..n+1}^2 (g lives on {1..n}^2, zero elsewhere); collar rows get
// zero.  `g` is flattened row-major over {1..n}^2.
ComplexVector assemble_rhs(const GridSpec& g, const InteriorStencil& interior,
                           const ComplexVector& g_interior);

// Extract the {1..n}^2 restriction of an extended-lattice field.
ComplexVector restrict_to_interior(const GridSpec& g, const ComplexVector& u);

}  // namespace lsw
