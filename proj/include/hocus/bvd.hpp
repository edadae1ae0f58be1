#pragma once

#include <vector>

#include "hocus/reconstruction.hpp"

namespace hocus {

// Left/right interface values of one candidate along one line, interfaces
// 0..n (arrays of n+1). For systems there is one pair per component.
struct LinePair {
    std::vector<double> left, right;
};

// Total boundary variation of cell j, whose faces are interfaces j and j+1.
inline double tbv(const LinePair& p, int j) {
    return std::abs(p.left[j] - p.right[j]) +
           std::abs(p.left[j + 1] - p.right[j + 1]);
}

// BVD selection for the compact/shock-capturing hybrids. baseline (the C5
// pair, or the averaged central pair) is modified in place: cell j triggers
// when the TBV of the shock-capturing pair falls strictly below the TBV of
// the C5 pair, summed over components, and then both sides of interfaces
// j-1..j+2 take the shock-capturing values. On a periodic line the window
// wraps, and interfaces 0 and n are twins that always change together:
// anything else would let the two seam fluxes disagree and leak the
// conserved totals through the seam. On a non-periodic line the window is
// clipped to 0..n. Marks are collected before any overwrite, so the result
// is sweep-order independent. gate, when non-null, additionally requires
// cell averages that are non-monotone in some component. Returns the number
// of triggering cells.
int select_hocus(int n, bool periodic, std::vector<LinePair>& baseline,
                 const std::vector<LinePair>& shock,
                 const std::vector<LinePair>& c5,
                 const std::vector<LineView>* gate = nullptr);

// Two-stage THINC selection. baseline starts as the C5 pair. Stage 1:
// cells where TBV^THINC(beta1) < TBV^C5 overwrite interfaces j-1..j+2 with
// the beta1 pair. Stage 2: against the stage-1 state, cells where
// TBV^THINC(beta2) < TBV^S1 overwrite the cell's own faces j, j+1 with the
// beta2 pair. Windows wrap or clip as in select_hocus. Returns total marks
// over both stages.
int select_c5t2(int n, bool periodic, std::vector<LinePair>& baseline,
                const std::vector<LinePair>& thinc1,
                const std::vector<LinePair>& thinc2);

// Smoothness-indicator selection on the central pair. Per cell and
// component, the fourth-power TBV ratio of the WENO pair normalized by the
// neighbour jumps gives S = (1 - ratio)/max(ratio, 1e-20); S < s_threshold
// in any component replaces the cell's two faces with the WENO pair
// (wrapping or clipping as in select_hocus). Returns the number of replaced
// cells.
int select_hocus_wenoz(int n, bool periodic, std::vector<LinePair>& baseline,
                       const std::vector<LinePair>& wz,
                       const std::vector<LineView>& cells,
                       double s_threshold = 1e6);

} // namespace hocus
