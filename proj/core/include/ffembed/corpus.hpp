#pragma once

#include <cstdint>
#include <vector>

#include "ffembed/audit.hpp"

namespace ffembed {

// One canonical instance per theorem id (two for the ids with sub-branches)
// over the full plane F_q^2 with t = 1. Theorems whose size thresholds
// exceed q^d come out VACUOUS rather than being skipped.
std::vector<TheoremReport> run_regression_corpus(std::uint64_t q, const CountOptions& opts = {});

}  // namespace ffembed
