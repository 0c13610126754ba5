#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lsw {

// Built-in oracle suite: every check re-derives a quantity along an
// independent route and compares.
//
//   operator-fft-vs-direct    padded-FFT operator vs direct summation with
//                             freshly evaluated kernel values
//   interior-fit-vs-svd       streamed-Gram annihilation residual vs an
//                             explicit SVD of the far-field block
//   sweep-exact-vs-dense      sweep in exact-subproblem mode vs a dense LU
//                             solve of the sparse system
//   ramp-stencil-residuals    fitted absorbing stencils annihilate their
//                             wave basis to near rounding
enum class FaultInjection { kNone, kKernelTable };

struct SelftestCheck {
  std::string name;
  bool passed = false;
  double observed = 0.0;   // the compared discrepancy
  double threshold = 0.0;  // pinned bound it must stay under
};

struct SelftestResult {
  std::vector<SelftestCheck> checks;
  bool ok = true;
};

SelftestResult run_selftest(FaultInjection fault = FaultInjection::kNone,
                            std::ostream* log = nullptr);

}  // namespace lsw
