#pragma once

#include <Eigen/Core>

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "obslab/rational.hpp"

namespace obslab {

using Exponent = std::vector<int>;

enum class MonomialOrder { DegRevLex, Lex };

MonomialOrder parse_order(const std::string& tag);
const char* to_string(MonomialOrder order);

/// Three-way comparison of exponent vectors under the given order.
int compare_monomials(const Exponent& a, const Exponent& b, MonomialOrder order);
int total_degree(const Exponent& e);
bool divides(const Exponent& a, const Exponent& b);
Exponent exponent_lcm(const Exponent& a, const Exponent& b);

/// Multivariate polynomial with rational coefficients over a fixed number of
/// variables. A polynomial with zero variables is a bare constant and adapts
/// to the variable count of whatever it is combined with.
class Poly {
 public:
  using TermMap = std::map<Exponent, Rat>;

  Poly() = default;
  Poly(int c) : Poly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Rat& c);            // NOLINT(google-explicit-constructor)
  static Poly constant(int nvars, const Rat& c);
  static Poly variable(int nvars, int index);
  static Poly monomial(const Exponent& e, const Rat& c = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_term() const;
  const TermMap& terms() const& { return terms_; }
  TermMap terms() && { return std::move(terms_); }
  size_t size() const { return terms_.size(); }
  Rat coefficient(const Exponent& e) const;
  int degree() const;  // total degree, -1 for zero
  int degree_in(int var) const;

  /// Leading exponent and coefficient; precondition: nonzero.
  std::pair<Exponent, Rat> leading_term(MonomialOrder order) const;

  void add_term(const Exponent& e, const Rat& c);
  Poly with_nvars(int n) const;  // pads or truncates (truncation requires unused vars)
  bool uses_var(int var) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const Rat& c) const;
  Poly times_monomial(const Exponent& e, const Rat& c) const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  bool operator<(const Poly& o) const;

  Poly pow(unsigned k) const;
  Poly derivative(int var) const;
  /// Substitutes images[i] for variable i; all images share a variable count.
  Poly substitute(const std::vector<Poly>& images) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  void adapt(const Poly& o);

  int nvars_ = 0;
  TermMap terms_;
};

/// Moves variable i to variable i + offset in a ring of `nvars` variables.
Poly shift_vars(const Poly& p, int offset, int nvars);

/// Parses an ASCII polynomial: integers, rationals a/b, identifiers, + - * ^
/// and parentheses. Unknown identifiers are a ParseError.
Poly parse_poly(const std::string& text, const std::vector<std::string>& names);

}  // namespace obslab

namespace Eigen {

template <>
struct NumTraits<obslab::Poly> : GenericNumTraits<obslab::Poly> {
  using Real = obslab::Poly;
  using NonInteger = obslab::Poly;
  using Literal = obslab::Poly;
  using Nested = obslab::Poly;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 16,
    MulCost = 64
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
