#include "eventvad/smoothing.hpp"

#include <cmath>

namespace eventvad {

GaussianKernel build_kernel(double sigma, std::size_t radius) {
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidSigma, "sigma must be a positive real");
  }
  if (radius < 1) {
    throw Error(ErrorCode::kInvalidSigma, "kernel radius must be >= 1");
  }
  GaussianKernel kernel;
  kernel.sigma = sigma;
  kernel.radius = radius;
  kernel.weights.resize(2 * radius + 1);
  // The 1/sqrt(2*pi*sigma^2) factor cancels in the renormalization.
  const double denom = 2.0 * sigma * sigma;
  double total = 0.0;
  for (std::size_t j = 0; j < kernel.weights.size(); ++j) {
    const double t = static_cast<double>(j) - static_cast<double>(radius);
    kernel.weights[j] = std::exp(-t * t / denom);
    total += kernel.weights[j];
  }
  for (double& w : kernel.weights) w /= total;
  return kernel;
}

std::size_t default_radius(double sigma) {
  return static_cast<std::size_t>(std::ceil(3.0 * sigma));
}

std::size_t reflect_index(std::ptrdiff_t index, std::size_t n) {
  if (n == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  std::ptrdiff_t k = index % period;
  if (k < 0) k += period;
  const auto last = static_cast<std::ptrdiff_t>(n - 1);
  return static_cast<std::size_t>(k <= last ? k : period - k);
}

std::vector<double> smooth_once(std::span<const double> scores,
                                const GaussianKernel& kernel) {
  const std::size_t n = scores.size();
  const std::size_t r = kernel.radius;
  if (n == 0) return {};

  // Materialize the padded signal once so the inner loop is a plain dot
  // product.
  std::vector<double> padded(n + 2 * r);
  for (std::size_t p = 0; p < padded.size(); ++p) {
    const auto src = static_cast<std::ptrdiff_t>(p) - static_cast<std::ptrdiff_t>(r);
    padded[p] = scores[reflect_index(src, n)];
  }

  std::vector<double> out(n);
  const double* w = kernel.weights.data();
  const std::size_t width = kernel.weights.size();
  // Accumulating deviations from the center sample makes constant signals an
  // exact fixed point regardless of how the weights round.
  for (std::size_t t = 0; t < n; ++t) {
    const double* x = padded.data() + t;
    const double center = x[r];
    double acc = 0.0;
    for (std::size_t j = 0; j < width; ++j) acc += w[j] * (x[j] - center);
    out[t] = center + acc;
  }
  return out;
}

ScoreSequence smooth_once(const ScoreSequence& scores,
                          const GaussianKernel& kernel) {
  return ScoreSequence(scores.video_id(), smooth_once(scores.scores(), kernel),
                       scores.fps());
}

std::vector<double> hierarchical_smooth(std::span<const double> scores,
                                        int sigma_max) {
  if (sigma_max < 1) {
    throw Error(ErrorCode::kInvalidSigma, "sigma_max must be >= 1");
  }
  std::vector<double> current(scores.begin(), scores.end());
  for (int s = 1; s <= sigma_max; ++s) {
    const double sigma = static_cast<double>(s);
    current = smooth_once(current, build_kernel(sigma, default_radius(sigma)));
  }
  return current;
}

ScoreSequence hierarchical_smooth(const ScoreSequence& scores, int sigma_max) {
  return ScoreSequence(scores.video_id(),
                       hierarchical_smooth(scores.scores(), sigma_max),
                       scores.fps());
}

}  // namespace eventvad
