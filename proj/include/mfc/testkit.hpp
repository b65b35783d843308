#pragma once

// Seeded generators and independent oracles for the property suites.

#include <cstdint>
#include <random>
#include <string>

#include "mfc/morphisms.hpp"
#include "mfc/superalg.hpp"

namespace mfc {

struct GeneratorConfig {
  int max_even = 2;
  int max_odd = 2;
  int max_degree = 3;    // total degree of generated monomials
  int max_momentum = 3;  // momentum degree in generating functions
  int max_terms = 6;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed, GeneratorConfig config = {});

  const GeneratorConfig& config() const { return config_; }
  int uniform(int lo, int hi);
  bool coin();
  /// Nonzero rational with small numerator and denominator.
  Rational coefficient();

  /// Chart with coordinates `<even>1..` even and `<odd>1..` odd; bidimension at least (1|0).
  ChartPtr chart(const std::string& name, const std::string& even, const std::string& odd);
  ChartPtr chart(const std::string& name, const std::string& even, const std::string& odd,
                 int n_even, int n_odd);

  /// Random series of parity `p` on `c` with monomials of total degree <= max_degree.
  SuperSeries series(const ChartPtr& c, int order, Parity p);
  SuperSeries series(const ChartPtr& c, int order, Parity p, int max_degree, int max_terms);

  ClassicalMap classical_map(const ChartPtr& source, const ChartPtr& target);
  /// Random normalized generating function of momentum degree 1..max_momentum
  /// (plus a constant for the even kind).
  ThickMorphism morphism(const ChartPtr& source, const ChartPtr& target, Kind kind, int order);
  /// Invertible polynomial change of the coordinates of `c` of degree <= 2.
  Substitution coordinate_change(const ChartPtr& c);

 private:
  std::mt19937_64 rng_;
  GeneratorConfig config_;
};

/// g after phi by direct expansion of the monomials of g.
SuperSeries oracle_pullback_classical(const ClassicalMap& phi, const SuperSeries& g);

/// The pullback fixed point by simultaneous substitution sweeps at doubled order,
/// truncated at `eps_order`.
SuperSeries oracle_pullback_naive(const ThickMorphism& phi, const SuperSeries& g, int eps_order);

}  // namespace mfc
