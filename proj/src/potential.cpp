#include "fujita/potential.hpp"

#include "fujita/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace fujita {

TimeProfile TimeProfile::constant(double c) {
  if (!(c > 0.0)) throw PreconditionError("time profile must be positive");
  TimeProfile f;
  f.kind_ = Kind::constant;
  f.param_ = c;
  return f;
}

TimeProfile TimeProfile::power(double beta) {
  if (!std::isfinite(beta)) throw PreconditionError("power exponent must be finite");
  TimeProfile f;
  f.kind_ = Kind::power;
  f.param_ = beta;
  return f;
}

TimeProfile TimeProfile::exponential(double rate) {
  if (!std::isfinite(rate)) throw PreconditionError("exponential rate must be finite");
  TimeProfile f;
  f.kind_ = Kind::exponential;
  f.param_ = rate;
  return f;
}

TimeProfile TimeProfile::table(std::vector<double> times, std::vector<double> values) {
  if (times.empty()) throw PreconditionError("table potential needs a time grid");
  if (times.size() != values.size())
    throw PreconditionError("table potential needs one value per grid time");
  if (times.front() != 0.0) throw PreconditionError("table potential grid must start at t = 0");
  if (!std::is_sorted(times.begin(), times.end()) ||
      std::adjacent_find(times.begin(), times.end()) != times.end())
    throw PreconditionError("table potential grid must be strictly increasing");
  for (double v : values)
    if (!(v > 0.0)) throw PreconditionError("time profile must be positive");
  TimeProfile f;
  f.kind_ = Kind::table;
  f.times_ = std::move(times);
  f.values_ = std::move(values);
  return f;
}

double TimeProfile::operator()(double t) const {
  switch (kind_) {
    case Kind::constant: return param_;
    case Kind::power: return std::pow(1.0 + t, param_);
    case Kind::exponential: return std::exp(param_ * t);
    case Kind::table: {
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - times_.begin() - 1));
      return values_[k];
    }
  }
  return 0.0;
}

double TimeProfile::inverse_power_integral(double a, double b, double q) const {
  if (b <= a) return 0.0;
  switch (kind_) {
    case Kind::constant: return std::pow(param_, -q) * (b - a);
    case Kind::table: {
      double total = 0.0;
      for (std::size_t k = 0; k < times_.size(); ++k) {
        const double lo = std::max(a, times_[k]);
        const double hi = (k + 1 < times_.size()) ? std::min(b, times_[k + 1]) : b;
        if (hi > lo) total += std::pow(values_[k], -q) * (hi - lo);
      }
      return total;
    }
    case Kind::power:
    case Kind::exponential:
      return adaptive_simpson([&](double t) { return std::pow((*this)(t), -q); }, a, b, 1e-9);
  }
  return 0.0;
}

VertexProfile VertexProfile::constant(double c) {
  if (!(c > 0.0)) throw PreconditionError("vertex profile must be positive");
  VertexProfile g;
  g.kind_ = Kind::constant;
  g.param_ = c;
  return g;
}

VertexProfile VertexProfile::distance_power(double gamma) {
  if (!std::isfinite(gamma)) throw PreconditionError("power exponent must be finite");
  VertexProfile g;
  g.kind_ = Kind::distance_power;
  g.param_ = gamma;
  return g;
}

VertexProfile VertexProfile::table(Field values) {
  if (values.size() == 0 || !(values.array() > 0.0).all())
    throw PreconditionError("vertex profile must be positive");
  VertexProfile g;
  g.kind_ = Kind::table;
  g.values_ = std::move(values);
  return g;
}

Field VertexProfile::evaluate(const Field& distance_from_x0) const {
  const Index n = distance_from_x0.size();
  switch (kind_) {
    case Kind::constant: return Field::Constant(n, param_);
    case Kind::distance_power: return (distance_from_x0.array() + 1.0).pow(param_).matrix();
    case Kind::table:
      if (values_.size() != n) throw PreconditionError("vertex table length differs from graph");
      return values_;
  }
  return {};
}

bool VertexProfile::operator==(const VertexProfile& other) const {
  if (kind_ != other.kind_ || param_ != other.param_) return false;
  if (values_.size() != other.values_.size()) return false;
  return values_.size() == 0 || values_ == other.values_;
}

BoundPotential BoundPotential::bind(const Potential& v, const PseudoMetric& d, Index x0) {
  Field distances = v.space.kind() == VertexProfile::Kind::distance_power
                        ? d.from(x0)
                        : Field::Zero(d.size());
  return {v.time, v.space.evaluate(distances)};
}

BoundPotential BoundPotential::uniform(Index n, double c) {
  return {TimeProfile::constant(c), Field::Ones(n)};
}

}  // namespace fujita
