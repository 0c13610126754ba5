#include "lsw/sweep.hpp"

#include <cmath>

namespace lsw {

std::vector<Slice> partition_slices(const GridSpec& g) {
  const int S = g.side(), b = g.b;
  const int middle = S - 4 * b;  // = n + 2 - 2b
  Require(middle >= b,
          "partition_slices: no middle slab fits (need n + 2 - 2b >= b)");
  std::vector<Slice> out;
  out.push_back({0, 2 * b});
  const int k = middle / b;
  for (int j = 0; j < k; ++j) out.push_back({2 * b + j * b, b});
  out.back().width += middle - k * b;  // merge the remainder
  out.push_back({S - 2 * b, 2 * b});
  return out;
}

std::vector<Slice> single_slice_partition(const GridSpec& g) {
  return {Slice{0, g.side()}};
}

std::vector<int> ramp_depths_for(const GridSpec& g,
                                 const std::vector<Slice>& partition) {
  std::vector<int> depths;
  if (partition.size() >= 2) depths.push_back(g.b);
  for (std::size_t i = 2; i < partition.size(); ++i)
    depths.push_back(partition[i - 1].width);
  return depths;
}

SweepPreconditioner::SweepPreconditioner(const GridSpec& g,
                                         const PerturbationField& field,
                                         const StencilMatrix& H,
                                         std::vector<Slice> partition,
                                         Options opt)
    : g_(g), H_(H), slices_(std::move(partition)) {
  Require(!slices_.empty(), "SweepPreconditioner: empty partition");
  const int S = g.side(), b = g.b, n = g.n;
  Require(H.side == S, "SweepPreconditioner: system/grid mismatch");
  {
    int s = 0;
    for (const auto& sl : slices_) {
      Require(sl.s0 == s && sl.width >= 1,
              "SweepPreconditioner: partition must tile the layers");
      s += sl.width;
    }
    Require(s == S, "SweepPreconditioner: partition must tile the layers");
  }

  if (!opt.exact_subblocks && slices_.size() > 1)
    ramps_ = std::make_unique<MovingRampTable>(g, field,
                                               ramp_depths_for(g, slices_));

  auto m_at = [&](int t1, int t2) -> double {
    if (t1 < 1 || t1 > n || t2 < 1 || t2 > n) return 0.0;
    return field.m[static_cast<std::size_t>(t1 - 1) * n + (t2 - 1)];
  };
  const double w2 = g.omega * g.omega;

  subs_.reserve(slices_.size());
  for (std::size_t i = 0; i < slices_.size(); ++i) {
    Subproblem sp;
    sp.hi = slices_[i].s0 + slices_[i].width;
    if (opt.exact_subblocks || i == 0) {
      // Exact mode factors the whole leading block; the first slab has no
      // predecessor either way.
      sp.lo = opt.exact_subblocks ? 0 : slices_[i].s0;
      sp.aux_end = sp.lo;
    } else if (i == 1) {
      // Ramp over the physical half of the first slab only; its collar half
      // already absorbs.
      sp.aux_end = slices_[1].s0;
      sp.lo = sp.aux_end - b;
    } else {
      sp.lo = slices_[i - 1].s0;
      sp.aux_end = slices_[i].s0;
    }

    const int wtot = sp.hi - sp.lo;
    const int kd = wtot + 1;
    sp.lu = BandedLU(wtot * S, kd, kd);
    const int depth = sp.aux_end - sp.lo;
    auto idx = [&](int s, int e2) { return e2 * wtot + (s - sp.lo); };

    for (int s = sp.lo; s < sp.hi; ++s) {
      const bool aux = s < sp.aux_end;
      for (int e2 = 0; e2 < S; ++e2) {
        const std::array<Complex, 9>* wrow = nullptr;
        PmlStencil ramp_row;
        if (aux) {
          const int t1 = s - b, t2 = e2 - b;
          const int c2 = axis_stretch_class(g, t2);
          const double w2loc = w2 * (1.0 - m_at(t1, t2));
          if (opt.exact_local_frequency) {
            ramp_row = ramps_->fit_exact(depth, s - sp.lo, t2, w2loc);
          } else {
            ramp_row = ramps_->at(depth, ramps_->sample_of(w2loc), s - sp.lo,
                                  c2);
          }
          wrow = &ramp_row.w;
        }
        for (int k = 0; k < 9; ++k) {
          const int s2 = s + kNbr[k][0], f2 = e2 + kNbr[k][1];
          if (s2 < sp.lo || s2 >= sp.hi || f2 < 0 || f2 >= S) continue;
          const Complex v =
              aux ? std::conj((*wrow)[k])
                  : H.plane[k][static_cast<std::size_t>(s) * S + e2];
          sp.lu.set(idx(s, e2), idx(s2, f2), v);
        }
      }
    }
    sp.lu.factor("slab " + std::to_string(i));
    subs_.push_back(std::move(sp));
  }
}

ComplexVector SweepPreconditioner::slab_solve(int i,
                                              const ComplexVector& rhs_slab)
    const {
  const int S = g_.side();
  const Subproblem& sp = subs_[i];
  const int wtot = sp.hi - sp.lo;
  const int d0 = slices_[i].s0, w = slices_[i].width;
  ComplexVector rhs(static_cast<std::size_t>(wtot) * S, Complex(0.0, 0.0));
  for (int s = d0; s < sp.hi; ++s)
    for (int e2 = 0; e2 < S; ++e2)
      rhs[static_cast<std::size_t>(e2) * wtot + (s - sp.lo)] =
          rhs_slab[static_cast<std::size_t>(s - d0) * S + e2];
  sp.lu.solve(rhs);
  ComplexVector out(static_cast<std::size_t>(w) * S);
  for (int s = d0; s < sp.hi; ++s)
    for (int e2 = 0; e2 < S; ++e2)
      out[static_cast<std::size_t>(s - d0) * S + e2] =
          rhs[static_cast<std::size_t>(e2) * wtot + (s - sp.lo)];
  return out;
}

ComplexVector SweepPreconditioner::apply_extended(
    const ComplexVector& f) const {
  const int S = g_.side();
  Require(f.size() == static_cast<std::size_t>(S) * S,
          "SweepPreconditioner::apply: size mismatch");
  const std::size_t ell = slices_.size();
  std::vector<ComplexVector> u(ell);

  // Forward elimination along increasing x1.
  for (std::size_t i = 0; i < ell; ++i) {
    const int d0 = slices_[i].s0, w = slices_[i].width;
    ComplexVector r(f.begin() + static_cast<std::size_t>(d0) * S,
                    f.begin() + static_cast<std::size_t>(d0 + w) * S);
    if (i > 0) {
      const int p0 = slices_[i - 1].s0, pw = slices_[i - 1].width;
      ComplexVector c(static_cast<std::size_t>(w) * S);
      H_.apply_block(d0, d0 + w, p0, p0 + pw, u[i - 1].data(), c.data());
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= c[j];
    }
    u[i] = slab_solve(static_cast<int>(i), r);
  }

  // Back substitution.
  for (std::size_t ii = ell; ii-- > 1;) {
    const std::size_t i = ii - 1;
    const int d0 = slices_[i].s0, w = slices_[i].width;
    const int q0 = slices_[i + 1].s0, qw = slices_[i + 1].width;
    ComplexVector c(static_cast<std::size_t>(w) * S);
    H_.apply_block(d0, d0 + w, q0, q0 + qw, u[i + 1].data(), c.data());
    ComplexVector corr = slab_solve(static_cast<int>(i), c);
    for (std::size_t j = 0; j < u[i].size(); ++j) u[i][j] -= corr[j];
  }

  ComplexVector out(static_cast<std::size_t>(S) * S);
  for (std::size_t i = 0; i < ell; ++i)
    std::copy(u[i].begin(), u[i].end(),
              out.begin() + static_cast<std::size_t>(slices_[i].s0) * S);
  return out;
}

ComplexVector SweepPreconditioner::apply(const ComplexVector& f) const {
  return restrict_to_interior(g_, apply_extended(f));
}

std::size_t SweepPreconditioner::factored_entries() const {
  std::size_t total = 0;
  for (const auto& sp : subs_) total += sp.lu.stored_entries();
  return total;
}

}  // namespace lsw
