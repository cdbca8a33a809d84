#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forge/dataset.hpp"
#include "forge/params.hpp"

namespace forge {

// Desk-scale benchmark generators. Majority rows are labelled "0" and come
// first, minority rows are labelled "1".
//
//   two-gaussians      n=550 ir=10 overlap=0.5 dims=2
//       majority N(0, I); minority N(mu, I) with mu = 4 * (1 - overlap) on axis 0
//   disjoint-clusters  n=550 ir=10 clusters=3 dims=2
//       majority N(0, 1.5^2 I); minority split over `clusters` tight
//       N(c_k, 0.3^2 I) blobs on a circle of radius 2.5
//   label-noise        base=two-gaussians rate=0.1 plus the base's parameters
//       flips every label with probability `rate` on a stream separate from
//       the base, so rate=0 reproduces the base exactly
//
// n_maj = round(n * ir / (ir + 1)).
Dataset generate_synthetic(const std::string& name, const ParamMap& params, std::uint64_t seed);

std::vector<std::string> synthetic_generators();

}  // namespace forge
