#ifndef RETFRONT_POLY_HPP
#define RETFRONT_POLY_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "retfront/varspace.hpp"

namespace retfront {

// Sparse multivariate polynomial with exact rational coefficients over a
// VarSpace. Immutable by convention: all operations return new values.
// No stored coefficient is ever zero.
class Poly {
 public:
  using TermMap = std::map<Monomial, mpq_class, MonoLess>;

  Poly() = default;
  explicit Poly(VarSpace space) : space_(space) {}

  static Poly zero(const VarSpace& s) { return Poly(s); }
  static Poly constant(const VarSpace& s, const mpq_class& c);
  static Poly variable(const VarSpace& s, int v);
  static Poly monomial(const VarSpace& s, const Monomial& mo, const mpq_class& c);

  const VarSpace& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  // Total degree; -1 for the zero polynomial.
  int degree() const;
  // Minimal term degree; large sentinel (INT_MAX) for the zero polynomial.
  int valuation() const;

  mpq_class coefficient(const Monomial& mo) const;
  mpq_class constant_term() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const mpq_class& c) const;
  bool operator==(const Poly& o) const { return space_ == o.space_ && terms_ == o.terms_; }

  // Formal partial derivative with respect to global variable v.
  Poly derive(int v) const;

  // Simultaneous substitution v -> bindings[v]; unmapped variables are kept.
  Poly substitute(const std::map<int, Poly>& bindings) const;

  // Floating-point evaluation; point has one entry per variable.
  double eval(const std::vector<double>& point) const;

  // Drops every term of total degree > order.
  Poly truncate(int order) const;

  // If *this == coefficient * v + remainder with both parts free of v,
  // returns {coefficient, remainder}; otherwise nullopt (v occurs nonlinearly).
  std::optional<std::pair<Poly, Poly>> linear_occurrence(int v) const;

  // Canonical text form: terms in canonical order, exact rational coefficients.
  // Round-trips bit-exactly through parse().
  std::string str() const;
  static Poly parse(const VarSpace& s, const std::string& text);

  // Internal: inserts c*mo, dropping the term if the sum cancels.
  void add_term(const Monomial& mo, const mpq_class& c);

 private:
  VarSpace space_;
  TermMap terms_;
};

Poly operator*(const mpq_class& c, const Poly& p);

}  // namespace retfront

#endif
