#ifndef ADL_DISTRIBUTIONS_HPP
#define ADL_DISTRIBUTIONS_HPP

#include <variant>

namespace adl {

struct Normal {
  double mean;
  double std;  // > 0
};

struct Uniform {
  double lo;
  double hi;  // lo < hi
};

using ContinuousDist = std::variant<Normal, Uniform>;

// Throws ModelError if the parameters are not finite or std <= 0 / lo >= hi.
void validate(const ContinuousDist& d);

// P(X > cutoff), clamped to [0, 1].
double prob_greater_than(const ContinuousDist& d, double cutoff);

// P(X <= cutoff), computed from the CDF directly.
double prob_at_most(const ContinuousDist& d, double cutoff);

}  // namespace adl

#endif  // ADL_DISTRIBUTIONS_HPP
