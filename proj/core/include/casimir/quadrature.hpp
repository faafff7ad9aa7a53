#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace casimir {

/// Gauss-Legendre nodes and weights on (0, 1).
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, computed once per n and cached; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). If any call throws, the exception of the lowest index is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace casimir
