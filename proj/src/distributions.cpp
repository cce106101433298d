#include "adl/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "adl/errors.hpp"

namespace adl {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

void validate(const ContinuousDist& d) {
  std::visit(
      overloaded{
          [](const Normal& n) {
            if (!std::isfinite(n.mean) || !std::isfinite(n.std) ||
                !(n.std > 0.0)) {
              throw ModelError(ModelError::Kind::Schema,
                               "normal distribution needs finite mean and "
                               "std > 0");
            }
          },
          [](const Uniform& u) {
            if (!std::isfinite(u.lo) || !std::isfinite(u.hi) ||
                !(u.lo < u.hi)) {
              throw ModelError(ModelError::Kind::Schema,
                               "uniform distribution needs finite lo < hi");
            }
          },
      },
      d);
}

double prob_greater_than(const ContinuousDist& d, double cutoff) {
  return std::visit(
      overloaded{
          [&](const Normal& n) {
            const double z = (cutoff - n.mean) / n.std;
            return clamp01(0.5 * std::erfc(z / std::numbers::sqrt2));
          },
          [&](const Uniform& u) { return clamp01((u.hi - cutoff) / (u.hi - u.lo)); },
      },
      d);
}

double prob_at_most(const ContinuousDist& d, double cutoff) {
  return std::visit(
      overloaded{
          [&](const Normal& n) {
            const double z = (cutoff - n.mean) / n.std;
            return clamp01(0.5 * std::erfc(-z / std::numbers::sqrt2));
          },
          [&](const Uniform& u) { return clamp01((cutoff - u.lo) / (u.hi - u.lo)); },
      },
      d);
}

}  // namespace adl
