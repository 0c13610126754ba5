#include "lsw/pml_table.hpp"

#include <cmath>

namespace lsw {

int axis_stretch_class(const GridSpec& g, int t) {
  Require(t >= -g.b && t <= g.n + 1 + g.b,
          "axis_stretch_class: coordinate outside extended lattice");
  if (t < 0) return -t;
  if (t > g.n + 1) return g.b + (t - (g.n + 1));
  return 0;
}

namespace {

// Representative extended coordinate of a stretch class (any member works:
// stencils are translation-invariant within a class).
int class_representative(const GridSpec& g, int c) {
  if (c == 0) return (g.n + 1) / 2;
  if (c <= g.b) return -c;
  return g.n + 1 + (c - g.b);
}

}  // namespace

BoundaryStencilTable::BoundaryStencilTable(const GridSpec& g) : g_(g) {
  const int b = g.b;
  const int C = 2 * b + 1;
  table_.resize(static_cast<std::size_t>(C) * C);

  // Directly fitted corner block: axis 1 unstretched or on the upper ramp,
  // axis 2 on the upper ramp.
  const StretchProfile gs = global_stretch(g);
  std::vector<std::vector<PmlStencil>> corner(
      b + 1, std::vector<PmlStencil>(b));
  auto corner_of = [&](int c1, int c2) -> const PmlStencil& {
    // c1 in {0, b+1..2b} encoded to 0..b; c2 in b+1..2b encoded to 0..b-1.
    return corner[c1 == 0 ? 0 : c1 - b][c2 - b - 1];
  };
  for (int c1 : [&] {
         std::vector<int> v{0};
         for (int k = b + 1; k <= 2 * b; ++k) v.push_back(k);
         return v;
       }()) {
    for (int c2 = b + 1; c2 <= 2 * b; ++c2) {
      const int t1 = class_representative(g, c1);
      const int t2 = class_representative(g, c2);
      corner[c1 == 0 ? 0 : c1 - b][c2 - b - 1] = compute_pml_stencil(
          stretched_neighborhood(g, t1, t2, gs, gs), g.omega,
          compass_directions());
    }
  }

  // Everything else by reflection (lower ramp <-> upper ramp, offsets
  // negated on that axis) and transposition (axes and offsets swapped).
  for (int c1 = 0; c1 < C; ++c1) {
    for (int c2 = 0; c2 < C; ++c2) {
      if (c1 == 0 && c2 == 0) continue;
      PmlStencil& dst = table_[static_cast<std::size_t>(c1) * C + c2];
      for (int d1 = -1; d1 <= 1; ++d1) {
        for (int d2 = -1; d2 <= 1; ++d2) {
          int e1 = d1, e2 = d2, s1 = c1, s2 = c2;
          if (s1 >= 1 && s1 <= b) {
            s1 = b + s1;
            e1 = -e1;
          }
          if (s2 >= 1 && s2 <= b) {
            s2 = b + s2;
            e2 = -e2;
          }
          if (s2 == 0) {
            std::swap(s1, s2);
            std::swap(e1, e2);
          }
          const PmlStencil& src = corner_of(s1, s2);
          dst.w[nbr_slot(d1, d2)] = src.w[nbr_slot(e1, e2)];
          dst.residual = src.residual;
        }
      }
      normalize_phase(dst.w);
    }
  }
}

const PmlStencil& BoundaryStencilTable::at_class(int c1, int c2) const {
  const int C = classes();
  Require(c1 >= 0 && c1 < C && c2 >= 0 && c2 < C && !(c1 == 0 && c2 == 0),
          "BoundaryStencilTable: not an absorbing-collar class pair");
  return table_[static_cast<std::size_t>(c1) * C + c2];
}

const PmlStencil& BoundaryStencilTable::at(int t1, int t2) const {
  return at_class(axis_stretch_class(g_, t1), axis_stretch_class(g_, t2));
}

PmlStencil BoundaryStencilTable::fit_direct(int t1, int t2) const {
  const StretchProfile gs = global_stretch(g_);
  return compute_pml_stencil(stretched_neighborhood(g_, t1, t2, gs, gs),
                             g_.omega, compass_directions());
}

MovingRampTable::MovingRampTable(const GridSpec& g,
                                 const PerturbationField& field,
                                 const std::vector<int>& depths)
    : g_(g) {
  const double w2 = g.omega * g.omega;
  w2_lo_ = w2 * (1.0 - field.m_max);
  w2_hi_ = w2 * (1.0 - field.m_min);
  Require(w2_lo_ > 0.0, "MovingRampTable: local frequency must stay positive");
  nsamples_ = (w2_hi_ - w2_lo_ <= 1e-14 * w2_hi_) ? 1 : g.n;
  ref_sample_ = sample_of(w2);

  const int C = 2 * g.b + 1;
  for (int depth : depths) {
    Require(depth >= 1, "MovingRampTable: ramp depth must be >= 1");
    auto [it, fresh] = store_.try_emplace(
        depth,
        std::vector<Entry>(static_cast<std::size_t>(nsamples_) * depth * C));
    if (!fresh) continue;
    auto& block = it->second;
    for (int s = 0; s < nsamples_; ++s) {
      const double w2s = omega_loc_sq_of_sample(s);
      for (int pos = 0; pos < depth; ++pos) {
        for (int c2 = 0; c2 < C; ++c2) {
          if (c2 != 0 && s != ref_sample_) continue;  // m = 0 there
          Entry& e = block[slot(depth, s, pos, c2)];
          e.stencil = fit_exact(depth, pos, class_representative(g_, c2), w2s);
          e.populated = true;
        }
      }
    }
  }
}

std::size_t MovingRampTable::slot(int depth, int sample, int pos,
                                  int class2) const {
  const int C = 2 * g_.b + 1;
  return (static_cast<std::size_t>(sample) * depth + pos) * C + class2;
}

int MovingRampTable::sample_of(double omega_loc_sq) const {
  if (nsamples_ == 1) return 0;
  const double step = (w2_hi_ - w2_lo_) / (nsamples_ - 1);
  // Nearest sample; exact midpoints resolve toward the lower sample.
  const double x = (omega_loc_sq - w2_lo_) / step;
  int k = static_cast<int>(std::ceil(x - 0.5));
  if (k < 0) k = 0;
  if (k >= nsamples_) k = nsamples_ - 1;
  return k;
}

double MovingRampTable::omega_loc_sq_of_sample(int s) const {
  if (nsamples_ == 1) return w2_lo_;
  return w2_lo_ + s * (w2_hi_ - w2_lo_) / (nsamples_ - 1);
}

const PmlStencil& MovingRampTable::at(int depth, int sample, int pos,
                                      int class2) const {
  auto it = store_.find(depth);
  Require(it != store_.end(), "MovingRampTable: depth not tabulated");
  Require(pos >= 0 && pos < depth && sample >= 0 && sample < nsamples_ &&
              class2 >= 0 && class2 < 2 * g_.b + 1,
          "MovingRampTable: index out of range");
  const Entry& e = it->second[slot(depth, sample, pos, class2)];
  Require(e.populated,
          "MovingRampTable: stencil not tabulated (stretched second axis "
          "implies the reference sample)");
  return e.stencil;
}

PmlStencil MovingRampTable::fit_exact(int depth, int pos, int t2,
                                      double omega_loc_sq) const {
  Require(omega_loc_sq > 0.0, "MovingRampTable: nonpositive local frequency");
  const StretchProfile ramp = moving_stretch(g_, g_.b + depth - 1, depth);
  const StretchProfile gs = global_stretch(g_);
  return compute_pml_stencil(
      stretched_neighborhood(g_, g_.b + pos, t2, ramp, gs),
      std::sqrt(omega_loc_sq), compass_directions());
}

}  // namespace lsw
