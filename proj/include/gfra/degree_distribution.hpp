#ifndef GFRA_DEGREE_DISTRIBUTION_HPP
#define GFRA_DEGREE_DISTRIBUTION_HPP

#include <map>

#include "gfra/rng.hpp"

namespace gfra {

// Probability mass over per-packet replica counts d in [1, d_max].
// The default instance is Lambda_8(x) = 0.5 x^2 + 0.28 x^3 + 0.22 x^8.
class DegreeDistribution {
public:
  DegreeDistribution(std::map<int, double> mass, int d_max)
      : mass_(std::move(mass)), d_max_(d_max) {}

  static DegreeDistribution lambda8() {
    return DegreeDistribution({{2, 0.5}, {3, 0.28}, {8, 0.22}}, 8);
  }

  const std::map<int, double>& mass() const { return mass_; }
  int d_max() const { return d_max_; }

  // Lambda(x) and Lambda'(x); the derivative at 1 is the mean degree.
  double eval(double x) const;
  double eval_derivative(double x) const;
  double mean_degree() const { return eval_derivative(1.0); }

  // Draws a degree in [1, min(d_max, cap)]. Degrees above the cap are cut
  // off and the remaining mass renormalized; if nothing survives the cut the
  // draw falls back to a single transmission. Consumes exactly one uniform.
  int sample(int cap, Rng& rng) const;

private:
  std::map<int, double> mass_;
  int d_max_;
};

// Throws Error{not_normalized | negative_mass | degree_out_of_range}.
void validate_distribution(const DegreeDistribution& dist);

} // namespace gfra

#endif
