#include "gfra/degree_distribution.hpp"

#include <cmath>
#include <sstream>

#include "gfra/error.hpp"

namespace gfra {

double DegreeDistribution::eval(double x) const {
  double acc = 0.0;
  for (const auto& [d, p] : mass_) acc += p * std::pow(x, d);
  return acc;
}

double DegreeDistribution::eval_derivative(double x) const {
  double acc = 0.0;
  for (const auto& [d, p] : mass_) acc += p * d * std::pow(x, d - 1);
  return acc;
}

int DegreeDistribution::sample(int cap, Rng& rng) const {
  const double u = rng.uniform();
  double z = 0.0;
  for (const auto& [d, p] : mass_) {
    if (d <= cap) z += p;
  }
  if (z <= 0.0) return 1; // empty truncated support: one copy is always possible
  double acc = 0.0;
  int last = 1;
  for (const auto& [d, p] : mass_) {
    if (d > cap) continue;
    acc += p;
    last = d;
    if (u * z < acc) return d;
  }
  return last;
}

void validate_distribution(const DegreeDistribution& dist) {
  if (dist.d_max() < 1)
    throw Error(ErrorCode::degree_out_of_range, "d_max must be >= 1");
  double sum = 0.0;
  for (const auto& [d, p] : dist.mass()) {
    if (p < 0.0) {
      std::ostringstream os;
      os << "negative mass at degree " << d;
      throw Error(ErrorCode::negative_mass, os.str());
    }
    if (d < 1 || d > dist.d_max()) {
      std::ostringstream os;
      os << "degree " << d << " outside [1, " << dist.d_max() << "]";
      throw Error(ErrorCode::degree_out_of_range, os.str());
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "mass sums to " << sum << ", expected 1";
    throw Error(ErrorCode::not_normalized, os.str());
  }
}

} // namespace gfra
