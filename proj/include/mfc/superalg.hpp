#pragma once

// Supercommutative algebra kernel: charts of graded variables and truncated
// power series with exact rational coefficients.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mfc {

using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}
constexpr Parity flip(Parity p) { return p + Parity::odd; }
constexpr bool is_odd(Parity p) { return p == Parity::odd; }
constexpr int bit(Parity p) { return static_cast<int>(p); }
/// (-1)^(a*b) for parities a, b.
constexpr int koszul(Parity a, Parity b) { return (is_odd(a) && is_odd(b)) ? -1 : 1; }
std::string_view to_string(Parity p);

enum class Role : std::uint8_t {
  base,
  velocity,
  odd_velocity,
  momentum,
  antimomentum,
  formal_parameter,
  parameter,  // unweighted auxiliary parameter (directional/nilpotent probes)
};
std::string_view to_string(Role r);

struct Variable {
  std::string name;
  Parity parity = Parity::even;
  Role role = Role::base;
  int weight = 0;
  // Variable this one was derived from by a bundle extension (empty if primary).
  std::string origin;
  // Momentum-class variables: the coordinate they are conjugate to.
  std::string conjugate;
  // The canonical (anti)momentum is `sign * variable`.
  int sign = 1;
  // Largest exponent allowed; 0 means unbounded. Odd variables are capped at 1.
  int max_exponent = 0;
  // de Rham differential of `origin` (the d-level of a form chart).
  bool form = false;
  // Extension layer: 0 for primary coordinates, k for the k-th bundle extension.
  int layer = 0;

  bool momentum_class() const { return role == Role::momentum || role == Role::antimomentum; }
  int cap() const { return is_odd(parity) ? 1 : max_exponent; }

  static Variable base(std::string name, Parity p) {
    Variable v;
    v.name = std::move(name);
    v.parity = p;
    return v;
  }
  friend bool operator==(const Variable&, const Variable&) = default;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// Ordered registry of variables. The order fixes the canonical monomial form.
class Chart {
 public:
  Chart(std::string name, std::vector<Variable> vars);

  static ChartPtr make(std::string name, std::vector<Variable> vars) {
    return std::make_shared<const Chart>(std::move(name), std::move(vars));
  }
  /// Convenience: a chart of primary (base) coordinates.
  static ChartPtr coordinates(std::string name,
                              std::initializer_list<std::pair<std::string, Parity>> vars);

  const std::string& name() const { return name_; }
  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  std::span<const Variable> variables() const { return vars_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }
  int depth() const { return depth_; }

  /// Number of even and odd variables.
  std::pair<int, int> bidimension() const;

  /// Same variables with the same metadata, in the same order (names of charts ignored).
  bool same_layout(const Chart& other) const { return vars_ == other.vars_; }

  const std::vector<bool>& odd_mask() const { return odd_; }
  const std::vector<int>& weights() const { return weights_; }

 private:
  std::string name_;
  std::vector<Variable> vars_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<bool> odd_;
  std::vector<int> weights_;
  int depth_ = 0;
};

bool same_chart(const ChartPtr& a, const ChartPtr& b);

/// Exponent vector in chart order.
struct Monomial {
  std::vector<std::uint8_t> e;

  Monomial() = default;
  explicit Monomial(std::size_t n) : e(n, 0) {}
  std::size_t degree() const;
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

using Terms = std::map<Monomial, Rational>;

/// Truncated supercommutative power series on a chart.
///
/// Terms whose weight (sum of exponent times variable weight) exceeds the
/// filtration order are never stored, nor are zero coefficients.
class SuperSeries {
 public:
  SuperSeries(ChartPtr chart, int order);

  static SuperSeries constant(ChartPtr chart, int order, const Rational& c);
  static SuperSeries variable(ChartPtr chart, int order, std::string_view name);

  const ChartPtr& chart() const { return chart_; }
  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Parity if all terms share one; nullopt for a zero or inhomogeneous series.
  std::optional<Parity> parity() const;
  bool has_parity(Parity p) const;
  /// Component of the given parity.
  SuperSeries part(Parity p) const;

  Rational coefficient(const Monomial& m) const;
  /// Coefficient of the empty monomial.
  Rational constant_term() const;
  /// Accumulate `c * m` (monomial in canonical form), respecting caps and order.
  void add_term(const Monomial& m, const Rational& c);

  int weight(const Monomial& m) const;

  SuperSeries& operator+=(const SuperSeries& o);
  SuperSeries& operator-=(const SuperSeries& o);
  SuperSeries& operator*=(const Rational& c);
  SuperSeries operator-() const;

  friend SuperSeries operator+(SuperSeries a, const SuperSeries& b) { return a += b; }
  friend SuperSeries operator-(SuperSeries a, const SuperSeries& b) { return a -= b; }
  friend SuperSeries operator*(SuperSeries a, const Rational& c) { return a *= c; }
  friend SuperSeries operator*(const Rational& c, SuperSeries a) { return a *= c; }
  friend bool operator==(const SuperSeries& a, const SuperSeries& b);

 private:
  void require_compatible(const SuperSeries& o, const char* op) const;

  ChartPtr chart_;
  int order_;
  Terms terms_;
};

SuperSeries mul(const SuperSeries& a, const SuperSeries& b);
inline SuperSeries operator*(const SuperSeries& a, const SuperSeries& b) { return mul(a, b); }
SuperSeries power(const SuperSeries& a, int k);

/// Left partial derivative.
SuperSeries partial(const SuperSeries& a, std::size_t var);
SuperSeries partial(const SuperSeries& a, std::string_view var);

/// Drop every monomial of weight above `n` (n must not exceed the order).
SuperSeries truncate(const SuperSeries& a, int n);
/// Change the declared filtration order (lowering truncates).
SuperSeries with_order(const SuperSeries& a, int n);

/// Images of chart variables, keyed by variable name.
using Substitution = std::map<std::string, SuperSeries, std::less<>>;

/// Algebra-morphism extension of `sigma` onto the chart `out` at order `order`.
/// Variables absent from `sigma` map to the same-named variable of `out`.
SuperSeries substitute(const SuperSeries& a, const Substitution& sigma, ChartPtr out, int order);
/// Re-express `a` on a chart that contains all its variables (by name).
SuperSeries embed(const SuperSeries& a, ChartPtr out, int order);
SuperSeries embed(const SuperSeries& a, ChartPtr out);

/// Apply the derivation `sum_v images[v] * d/dv` (images placed to the left).
SuperSeries apply_derivation(const SuperSeries& a, const Substitution& images);

/// Set the listed variables to zero and drop them from the chart `out`.
SuperSeries set_zero(const SuperSeries& a, std::span<const std::string> vars, ChartPtr out);

/// Total degree in unweighted position-type variables (not forms, momenta, or parameters).
std::size_t base_degree(const Chart& c, const Monomial& m);
/// Drop monomials whose base degree exceeds `n`.
SuperSeries truncate_base_degree(const SuperSeries& a, std::size_t n);

/// Multiply by var^shift. A negative shift divides, dropping terms of too low degree in var.
SuperSeries shift_degree(const SuperSeries& a, std::string_view var, int shift);

}  // namespace mfc
