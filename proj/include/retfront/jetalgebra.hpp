#ifndef RETFRONT_JETALGEBRA_HPP
#define RETFRONT_JETALGEBRA_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "retfront/poly.hpp"

namespace retfront {

// Monomial basis of the truncated local algebra: all monomials of degree <= order,
// in canonical term order.
struct JetBasis {
  VarSpace space;
  int order = 0;
  std::vector<Monomial> monos;
  std::unordered_map<Monomial, int, MonoHash> index;
};

JetBasis monomial_basis(const VarSpace& space, int order);

// Number of monomials of degree <= order in nvars variables (stars and bars).
long long monomial_count(int nvars, int order);

// One module generator together with its coefficient ring, given as the set of
// variables its multipliers may use, and a lower bound on multiplier degree
// (used for ideals of the form M*<g>).
struct ModuleGen {
  Poly g;
  VarMask ring = 0;
  int min_mult_deg = 0;
};

// A tangent-space description: generators with mixed coefficient rings.
struct ModuleSpec {
  VarSpace space;
  std::vector<ModuleGen> gens;
};

// Result of a determinacy / stability / versality check.
struct CheckReport {
  bool verdict = false;
  int order_used = 0;
  long long corank = 0;
  std::vector<Monomial> witness;  // unspanned basis monomials, canonical order

  std::string to_json(const VarSpace& space) const;
};

// Explicit span matrix over a jet basis: one row per generator x multiplier.
// Only intended for desk-scale bases; the checks below use a sparse engine
// that never materializes covered rows.
struct SpanMatrix {
  JetBasis basis;
  std::vector<std::vector<mpq_class>> rows;
};

SpanMatrix span(const ModuleSpec& spec, const JetBasis& basis);

// Exact rank by fraction-free (Bareiss) elimination over the integers after
// clearing denominators rowwise.
long long rank_fraction_free(const SpanMatrix& mat);

// Floating-point corroboration rank (SVD, tolerance 1e-9 on normalized
// singular values). Never decides a verdict alone.
long long rank_float(const SpanMatrix& mat);

struct SpanCheckOptions {
  bool early_exit = true;        // probe small orders first; a failure there is final
  bool float_crosscheck = false; // compare exact corank against the float path on small bases
  long long residual_cap = 4000000;  // abort if the uncovered basis exceeds this
};

// Core engine: decides whether the module spans the whole jet space of the
// given order (optionally only monomials of degree >= min_degree), exactly.
CheckReport span_check(const ModuleSpec& spec, int order, int min_degree = 0,
                       const SpanCheckOptions& opts = {});

// Membership of specific monomials in the truncated span.
std::vector<bool> span_contains(const ModuleSpec& spec, int order,
                                const std::vector<Monomial>& targets);

// ---- Paper-level checks -------------------------------------------------

// Sufficient finite-determinacy criterion for a corner germ f0(x,y):
// M^{l+1} inside M(<f0, x df0/dx> + M<df0/dy>) + M^{l+2}.
CheckReport is_K_determined(const Poly& f0, int l);

// Smallest l <= cap passing the sufficient criterion; nullopt if none.
std::optional<int> find_determinacy_order(const Poly& f0, int cap = 7);

// Jet order bound for the stability check.
int stability_order(int l, int m);

// Tangent space of the two-tier parametrized stability check:
// <F, x dF/dx, dF/dy> over all variables + <dF/du> over (u,t) + <dF/dt> over t.
ModuleSpec tpk_tangent_spec(const Poly& F);

CheckReport is_tPK_infinitesimally_stable(const Poly& F, int order,
                                          const SpanCheckOptions& opts = {});

// R-versality of an unfolding a(u,t): <da/du> over (u,t) + <da/dt> over t
// + constants span the full (u,t) jet space.
CheckReport is_PR_versal(const Poly& a, int order, const SpanCheckOptions& opts = {});

// Dimension of (jets of M) modulo the truncated corner tangent space
// <f0, x df0/dx> over all + M<df0/dy>. Returns nullopt when the value still
// changes between orders N-1 and N (unbounded at this order).
std::optional<long long> K_codimension(const Poly& f0, int order);

}  // namespace retfront

#endif
