#include "lsw/sparse_system.hpp"

#include "lsw/simd/kernels.hpp"

namespace lsw {

ComplexVector StencilMatrix::apply(const ComplexVector& u) const {
  Require(u.size() == dof(), "StencilMatrix::apply: size mismatch");
  ComplexVector y(dof(), Complex(0.0, 0.0));
  const auto& kr = simd::active_kernels();
  const int S = side;
  for (int k = 0; k < 9; ++k) {
    const int o1 = kNbr[k][0], o2 = kNbr[k][1];
    // Row range whose neighbor stays on the lattice; weights elsewhere are
    // exact zeros, so skipping them changes nothing.
    const int r_lo = std::max(0, -o1), r_hi = S - std::max(0, o1);
    const int c_lo = std::max(0, -o2), c_hi = S - std::max(0, o2);
    const std::size_t len = static_cast<std::size_t>(c_hi - c_lo);
    const Complex* w = plane[k].data();
    for (int r = r_lo; r < r_hi; ++r) {
      const std::size_t row = static_cast<std::size_t>(r) * S;
      const std::size_t urow = static_cast<std::size_t>(r + o1) * S;
      kr.cmul_acc(w + row + c_lo, u.data() + urow + c_lo + o2,
                  y.data() + row + c_lo, len);
    }
  }
  return y;
}

void StencilMatrix::apply_block(int r0, int r1, int c0, int c1,
                                const Complex* u, Complex* out) const {
  const int S = side;
  for (std::size_t i = 0; i < static_cast<std::size_t>(r1 - r0) * S; ++i)
    out[i] = Complex(0.0, 0.0);
  for (int r = r0; r < r1; ++r) {
    for (int k = 0; k < 9; ++k) {
      const int s = r + kNbr[k][0];
      if (s < c0 || s >= c1) continue;
      const int o2 = kNbr[k][1];
      const int lo = std::max(0, -o2), hi = S - std::max(0, o2);
      const Complex* w = plane[k].data() + static_cast<std::size_t>(r) * S;
      const Complex* us = u + static_cast<std::size_t>(s - c0) * S;
      Complex* o = out + static_cast<std::size_t>(r - r0) * S;
      for (int e2 = lo; e2 < hi; ++e2) o[e2] += w[e2] * us[e2 + o2];
    }
  }
}

StencilMatrix assemble_sparse_system(const GridSpec& g,
                                     const PerturbationField& field,
                                     const InteriorStencil& interior,
                                     const BoundaryStencilTable& collar) {
  Require(field.n == g.n, "assemble_sparse_system: field/grid mismatch");
  const int n = g.n, b = g.b;
  const int S = g.side();
  StencilMatrix H;
  H.n = n;
  H.b = b;
  H.side = S;
  for (auto& p : H.plane) p.assign(H.dof(), Complex(0.0, 0.0));

  const double w2 = g.omega * g.omega;
  auto m_at = [&](int i1, int i2) -> double {
    if (i1 < 1 || i1 > n || i2 < 1 || i2 > n) return 0.0;
    return field.m[static_cast<std::size_t>(i1 - 1) * n + (i2 - 1)];
  };

  for (int t1 = -b; t1 <= n + 1 + b; ++t1) {
    const bool in1 = (t1 >= 0 && t1 <= n + 1);
    for (int t2 = -b; t2 <= n + 1 + b; ++t2) {
      const bool interior_row = in1 && (t2 >= 0 && t2 <= n + 1);
      const std::size_t e = H.flat(t1, t2);
      const PmlStencil* ps =
          interior_row ? nullptr : &collar.at(t1, t2);
      for (int k = 0; k < 9; ++k) {
        const int u1 = t1 + kNbr[k][0], u2 = t2 + kNbr[k][1];
        // Couplings into the Dirichlet ring are dropped.
        if (u1 < -b || u1 > n + 1 + b || u2 < -b || u2 > n + 1 + b) continue;
        Complex w;
        if (interior_row) {
          w = std::conj(interior.u_w[k]) +
              w2 * std::conj(interior.mu_w[k]) * m_at(u1, u2);
        } else {
          w = std::conj(ps->w[k]);
        }
        H.plane[k][e] = w;
      }
    }
  }
  return H;
}

ComplexVector assemble_rhs(const GridSpec& g, const InteriorStencil& interior,
                           const ComplexVector& g_interior) {
  const int n = g.n, b = g.b;
  const int S = g.side();
  Require(g_interior.size() == static_cast<std::size_t>(n) * n,
          "assemble_rhs: interior field must have n^2 entries");
  ComplexVector f(static_cast<std::size_t>(S) * S, Complex(0.0, 0.0));
  auto g_at = [&](int i1, int i2) -> Complex {
    if (i1 < 1 || i1 > n || i2 < 1 || i2 > n) return Complex(0.0, 0.0);
    return g_interior[static_cast<std::size_t>(i1 - 1) * n + (i2 - 1)];
  };
  for (int t1 = 0; t1 <= n + 1; ++t1) {
    for (int t2 = 0; t2 <= n + 1; ++t2) {
      Complex acc(0.0, 0.0);
      for (int k = 0; k < 9; ++k)
        acc += std::conj(interior.u_w[k]) *
               g_at(t1 + kNbr[k][0], t2 + kNbr[k][1]);
      f[static_cast<std::size_t>(t1 + b) * S + (t2 + b)] = acc;
    }
  }
  return f;
}

ComplexVector restrict_to_interior(const GridSpec& g, const ComplexVector& u) {
  const int n = g.n, b = g.b, S = g.side();
  Require(u.size() == static_cast<std::size_t>(S) * S,
          "restrict_to_interior: size mismatch");
  ComplexVector out(static_cast<std::size_t>(n) * n);
  for (int i1 = 1; i1 <= n; ++i1)
    for (int i2 = 1; i2 <= n; ++i2)
      out[static_cast<std::size_t>(i1 - 1) * n + (i2 - 1)] =
          u[static_cast<std::size_t>(i1 + b) * S + (i2 + b)];
  return out;
}

}  // namespace lsw
