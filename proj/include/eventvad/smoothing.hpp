#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eventvad/core.hpp"

namespace eventvad {

// Truncated, renormalized 1-D Gaussian. weights.size() == 2 * radius + 1.
struct GaussianKernel {
  double sigma = 1.0;
  std::size_t radius = 1;
  std::vector<double> weights;
};

GaussianKernel build_kernel(double sigma, std::size_t radius);

// radius = ceil(3 * sigma)
std::size_t default_radius(double sigma);

// Maps an out-of-range index onto [0, n) by mirroring about the edge samples
// without repeating them (..., 2, 1 | 0, 1, ..., n-1 | n-2, ...).
std::size_t reflect_index(std::ptrdiff_t index, std::size_t n);

// One convolution pass with reflect padding; output length equals input.
std::vector<double> smooth_once(std::span<const double> scores,
                                const GaussianKernel& kernel);
ScoreSequence smooth_once(const ScoreSequence& scores,
                          const GaussianKernel& kernel);

// Successive passes with sigma = 1, 2, ..., sigma_max.
std::vector<double> hierarchical_smooth(std::span<const double> scores,
                                        int sigma_max);
ScoreSequence hierarchical_smooth(const ScoreSequence& scores, int sigma_max);

}  // namespace eventvad
