#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qnt/core.hpp"
#include "qnt/dists.hpp"

namespace qnt {

/// Measurement outcomes drawn from one distribution. Regenerating with the
/// same seed reproduces the identical sequence; the generator is pinned to
/// std::mt19937_64 (C++ standard, bit-reproducible across platforms).
struct Dataset {
    CircuitId circuit{Circuit::Multicast, 0};
    Basis basis = Basis::Eigen;
    int width = 0;
    std::vector<BitString> outcomes;
    std::uint64_t seed = 0;
};

/// m independent inverse-CDF draws from the dense table.
Dataset draw_samples(const OutcomeDistribution& dist, int m, std::uint64_t seed);

/// Deterministic per-(protocol, trial, step) seed derived from a master seed
/// via a splitmix64-style avalanche mix. Reference vector:
/// child_seed(0, 0, 0, 0) == 0x2130748aaac80268.
std::uint64_t child_seed(std::uint64_t master, std::uint64_t protocol_idx,
                         std::uint64_t trial_idx, std::uint64_t step_idx);

/// Empirical outcome frequencies of a dataset as a dense table.
OutcomeDistribution empirical_dist(const Dataset& data);

/// One outcome label per line, after a header `# circuit basis width m seed root`.
void write_dataset(std::ostream& os, const Dataset& data);
Dataset read_dataset(std::istream& is);

}  // namespace qnt
