#include "retfront/jetalgebra.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace retfront {

long long monomial_count(int nvars, int order) {
  // C(order + nvars, nvars)
  long long c = 1;
  for (int i = 1; i <= nvars; ++i) c = c * (order + i) / i;
  return c;
}

namespace {

void enumerate_monomials(const VarSpace& space, int order,
                         const std::function<void(const Monomial&)>& emit) {
  int v = space.total();
  Monomial mo(v);
  std::function<void(int, int, int)> rec2 = [&](int i, int left, int deg) {
    if (i == v) {
      mo.deg = deg;
      emit(mo);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      mo.e[static_cast<size_t>(i)] = static_cast<uint16_t>(e);
      rec2(i + 1, left - e, deg + e);
    }
    mo.e[static_cast<size_t>(i)] = 0;
  };
  rec2(0, order, 0);
}

}  // namespace

JetBasis monomial_basis(const VarSpace& space, int order) {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  JetBasis b;
  b.space = space;
  b.order = order;
  enumerate_monomials(space, order, [&](const Monomial& mo) { b.monos.push_back(mo); });
  std::sort(b.monos.begin(), b.monos.end(), MonoLess{});
  b.index.reserve(b.monos.size());
  for (size_t i = 0; i < b.monos.size(); ++i) b.index.emplace(b.monos[i], static_cast<int>(i));
  return b;
}

// ---------------------------------------------------------------------------
// Explicit span matrix (desk-scale path)

SpanMatrix span(const ModuleSpec& spec, const JetBasis& basis) {
  SpanMatrix out;
  out.basis = basis;
  for (const auto& gen : spec.gens) {
    if (!(gen.g.space() == basis.space))
      throw std::invalid_argument("generator space does not match basis space");
    if (gen.g.is_zero()) continue;
    int val = gen.g.valuation();
    int max_mult = basis.order - val;
    for (const Monomial& mult : basis.monos) {
      if (mult.degree() > max_mult) continue;
      if (mult.degree() < gen.min_mult_deg) continue;
      if (!supported_by(mult, gen.ring)) continue;
      std::vector<mpq_class> row(basis.monos.size(), mpq_class(0));
      bool nonzero = false;
      for (const auto& [mo, c] : gen.g.terms()) {
        Monomial prod = mo * mult;
        if (prod.degree() > basis.order) continue;
        row[static_cast<size_t>(basis.index.at(prod))] += c;
        nonzero = true;
      }
      if (nonzero) out.rows.push_back(std::move(row));
    }
  }
  return out;
}

long long rank_fraction_free(const SpanMatrix& mat) {
  size_t nr = mat.rows.size();
  if (nr == 0) return 0;
  size_t nc = mat.rows[0].size();
  // Clear denominators rowwise into integer rows.
  std::vector<std::vector<mpz_class>> a(nr, std::vector<mpz_class>(nc));
  for (size_t i = 0; i < nr; ++i) {
    mpz_class lcm = 1;
    for (size_t j = 0; j < nc; ++j) {
      mpz_class den = mat.rows[i][j].get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      lcm = lcm / g * den;
    }
    for (size_t j = 0; j < nc; ++j) {
      mpq_class v = mat.rows[i][j] * mpq_class(lcm);
      v.canonicalize();
      a[i][j] = v.get_num();
    }
  }
  // Bareiss fraction-free elimination; divisions are exact.
  mpz_class prev = 1;
  size_t rank = 0;
  for (size_t col = 0; col < nc && rank < nr; ++col) {
    size_t piv = rank;
    while (piv < nr && a[piv][col] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(a[piv], a[rank]);
    for (size_t i = rank + 1; i < nr; ++i) {
      if (a[i][col] == 0 && prev == 1) {
        // still rescale lazily below when needed
      }
      for (size_t j = col + 1; j < nc; ++j) {
        mpz_class num = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return static_cast<long long>(rank);
}

long long rank_float(const SpanMatrix& mat) {
  size_t nr = mat.rows.size();
  if (nr == 0) return 0;
  size_t nc = mat.rows[0].size();
  Eigen::MatrixXd a(nr, nc);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mat.rows[i][j].get_d();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double cutoff = 1e-9 * std::max(1.0, sv(0));
  long long rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

// ---------------------------------------------------------------------------
// Sparse exact span engine.
//
// The engine never materializes the full jet basis. It first grows a set of
// "cylinders": pairs (base monomial, ring mask) certifying that base*nu lies
// in the span for every monomial nu over the ring. Cylinders are found by a
// cascade that probes generator multiples and drops terms already absorbed,
// and by echelon elimination among the leftover short rows. Whatever part of
// the basis remains uncovered is enumerated explicitly and finished off by a
// complete sparse rational echelon, so verdicts are exact in both directions.

namespace {

struct Cylinder {
  Monomial base;
  VarMask ring;
};

using SRow = std::vector<std::pair<Monomial, mpq_class>>;  // sorted by mono_less

void srow_sort(SRow& r) {
  std::sort(r.begin(), r.end(),
            [](const auto& a, const auto& b) { return mono_less(a.first, b.first); });
}

// r -= c * s, both sorted; result stays sorted.
SRow srow_axpy(const SRow& r, const mpq_class& c, const SRow& s) {
  SRow out;
  out.reserve(r.size() + s.size());
  size_t i = 0, j = 0;
  while (i < r.size() || j < s.size()) {
    if (j == s.size() || (i < r.size() && mono_less(r[i].first, s[j].first))) {
      out.push_back(r[i++]);
    } else if (i == r.size() || mono_less(s[j].first, r[i].first)) {
      mpq_class v = -c * s[j].second;
      if (v != 0) out.emplace_back(s[j].first, v);
      ++j;
    } else {
      mpq_class v = r[i].second - c * s[j].second;
      if (v != 0) out.emplace_back(r[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

class Engine {
 public:
  Engine(const ModuleSpec& spec, int order, int min_degree, const SpanCheckOptions& opts)
      : sp_(spec.space), order_(order), min_degree_(min_degree), opts_(opts) {
    for (const auto& g : spec.gens) {
      if (!(g.g.space() == sp_)) throw std::invalid_argument("generator space mismatch");
      if (!g.g.is_zero()) gens_.push_back(g);
    }
  }

  // Runs cascade + residual echelon. Returns uncovered monomials (witness).
  std::vector<Monomial> run() {
    cascade();
    enumerate_residual();
    residual_echelon();
    std::vector<Monomial> witness;
    for (size_t i = 0; i < residual_.size(); ++i)
      if (!ipivots_.count(static_cast<int>(i))) witness.push_back(residual_[i]);
    return witness;
  }

  // Membership test for explicit targets; call after run().
  bool contains(const Monomial& mo) {
    if (covered(mo)) return true;
    auto it = residual_index_.find(mo);
    if (it == residual_index_.end()) return false;  // outside ambient range
    SRow row{{mo, mpq_class(1)}};
    return reduce_to_zero(row);
  }

  long long residual_size() const { return static_cast<long long>(residual_.size()); }

 private:
  VarSpace sp_;
  int order_;
  int min_degree_;
  SpanCheckOptions opts_;
  std::vector<ModuleGen> gens_;
  std::vector<Cylinder> cyls_;
  std::vector<Monomial> residual_;
  std::unordered_map<Monomial, int, MonoHash> residual_index_;
  // residual index -> normalized pivot row over residual indices
  std::unordered_map<int, std::vector<std::pair<int, mpq_class>>> ipivots_;

  bool absorbs(const Monomial& mo, VarMask level) const {
    for (const auto& cyl : cyls_) {
      if ((cyl.ring & level) != level) continue;
      if (!cyl.base.divides(mo)) continue;
      if (supported_by(cyl.base.quotient_of(mo), cyl.ring)) return true;
    }
    return false;
  }

  bool covered(const Monomial& mo) const { return absorbs(mo, mask_none()); }

  void add_cylinder(const Monomial& base, VarMask ring) {
    if (absorbs(base, ring)) return;  // subsumed
    cyls_.push_back({base, ring});
  }

  std::vector<Monomial> make_probes() const {
    // Probe multipliers: (x,y)-monomials of any admissible degree, times small
    // powers of the (u,t) variables that occur nonlinearly in some generator.
    std::vector<int> xy_vars, ut_vars;
    for (int v = 0; v < sp_.total(); ++v) {
      Block b = sp_.block(v);
      if (b == Block::X || b == Block::Y) xy_vars.push_back(v);
    }
    for (const auto& g : gens_)
      for (const auto& [mo, c] : g.g.terms())
        for (int v = sp_.r + sp_.k; v < sp_.total(); ++v)
          if (mo.e[static_cast<size_t>(v)] >= 2 &&
              std::find(ut_vars.begin(), ut_vars.end(), v) == ut_vars.end())
            ut_vars.push_back(v);
    std::sort(ut_vars.begin(), ut_vars.end());

    std::vector<Monomial> xs{Monomial(sp_.total())};
    std::function<void(std::vector<Monomial>&, const std::vector<int>&, int)> grow =
        [&](std::vector<Monomial>& acc, const std::vector<int>& vars, int cap) {
          std::vector<Monomial> out;
          std::function<void(Monomial, size_t)> rec = [&](Monomial cur, size_t i) {
            if (i == vars.size()) {
              out.push_back(cur);
              return;
            }
            for (int e = 0; cur.deg + e <= cap; ++e) {
              Monomial next = cur;
              next.e[static_cast<size_t>(vars[i])] = static_cast<uint16_t>(e);
              next.deg = cur.deg + e;
              rec(next, i + 1);
            }
          };
          for (const auto& base : acc) rec(base, 0);
          acc = std::move(out);
        };
    grow(xs, xy_vars, order_);
    const int kUtProbeDeg = 4;
    std::vector<Monomial> probes;
    for (const auto& p : xs) {
      std::vector<Monomial> withut{p};
      grow(withut, ut_vars, std::min(order_, p.degree() + kUtProbeDeg));
      for (auto& q : withut)
        if (q.degree() <= order_) probes.push_back(q);
    }
    std::sort(probes.begin(), probes.end(), MonoLess{});
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    return probes;
  }

  void cascade() {
    // Ring levels, largest first. Only levels shared by at least one generator
    // are useful; the empty level is handled by the residual echelon.
    std::vector<VarMask> levels;
    for (const auto& g : gens_)
      if (g.ring != 0 && std::find(levels.begin(), levels.end(), g.ring) == levels.end())
        levels.push_back(g.ring);
    for (size_t i = 0; i < levels.size(); ++i)
      for (size_t j = i + 1; j < levels.size(); ++j) {
        VarMask inter = levels[i] & levels[j];
        if (inter != 0 && std::find(levels.begin(), levels.end(), inter) == levels.end())
          levels.push_back(inter);
      }
    std::sort(levels.begin(), levels.end(), [](VarMask a, VarMask b) {
      int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
      return pa != pb ? pa > pb : a > b;
    });

    std::vector<Monomial> probes = make_probes();

    const int kMaxSweeps = 4 * order_ + 16;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      bool changed = false;
      for (VarMask level : levels) {
        // Echelon of short rows valid as level-families, keyed by lead monomial.
        std::map<Monomial, SRow, MonoLess> ech;
        for (const auto& gen : gens_) {
          if ((gen.ring & level) != level) continue;
          int val = gen.g.valuation();
          for (const auto& probe : probes) {
            if (!supported_by(probe, gen.ring)) continue;
            if (probe.degree() < gen.min_mult_deg) continue;
            if (probe.degree() + val > order_) continue;
            SRow row;
            for (const auto& [mo, c] : gen.g.terms()) {
              Monomial prod = mo * probe;
              if (prod.degree() > order_) continue;
              if (absorbs(prod, level)) continue;
              row.emplace_back(prod, c);
            }
            if (row.empty()) continue;
            srow_sort(row);
            changed |= insert_level_row(ech, std::move(row), level);
            if (row_budget_exceeded()) return;
          }
        }
        changed |= back_substitute(ech, level);
      }
      if (!changed) break;
    }
  }

  bool row_budget_exceeded() const { return cyls_.size() > 500000; }

  // Gauss-Jordan pass over a level echelon: reduces pivot tails by the other
  // pivots and drops tail terms the cylinder set absorbs. Forward elimination
  // alone misses cylinders whose certificate is an invertible coupling between
  // several slices; rows that collapse to singletons here recover them.
  bool back_substitute(std::map<Monomial, SRow, MonoLess>& ech, VarMask level) {
    bool any = false;
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (auto it = ech.begin(); it != ech.end();) {
        SRow& row = it->second;
        size_t i = 1;
        bool reduced = false;
        while (i < row.size()) {
          const Monomial& mo = row[i].first;
          if (absorbs(mo, level)) {
            row.erase(row.begin() + static_cast<long>(i));
            reduced = true;
            continue;
          }
          auto pit = ech.find(mo);
          if (pit != ech.end() && pit != it) {
            row = srow_axpy(row, row[i].second, pit->second);  // pivot lead is 1
            reduced = true;
            continue;
          }
          ++i;
        }
        if (reduced && row.size() == 1) {
          add_cylinder(row[0].first, level);
          it = ech.erase(it);
          any = true;
          dirty = true;
        } else {
          ++it;
        }
      }
    }
    return any;
  }

  bool insert_level_row(std::map<Monomial, SRow, MonoLess>& ech, SRow row, VarMask level) {
    bool found = false;
    while (!row.empty()) {
      if (row.size() == 1) {
        add_cylinder(row[0].first, level);
        return true;
      }
      auto it = ech.find(row[0].first);
      if (it == ech.end()) {
        mpq_class lead = row[0].second;
        for (auto& [mo, c] : row) c /= lead;
        ech.emplace(row[0].first, std::move(row));
        return found;
      }
      row = srow_axpy(row, row[0].second, it->second);
    }
    return found;
  }

  void enumerate_residual() {
    // Depth-first enumeration of uncovered monomials of degree <= order,
    // pruning whole subtrees that some cylinder covers. Variables are visited
    // in block order, so (x,y)-based cylinders with (u,t) rings prune early.
    int v = sp_.total();
    Monomial mo(v);
    std::function<void(int, int)> rec = [&](int i, int deg) {
      // Prune: some cylinder covers every completion of the current prefix.
      for (const auto& cyl : cyls_) {
        bool ok = true;
        for (int j = 0; j < i && ok; ++j) {
          uint16_t b = cyl.base.e[static_cast<size_t>(j)];
          uint16_t e = mo.e[static_cast<size_t>(j)];
          if (b > e || (e > b && !mask_contains(cyl.ring, j))) ok = false;
        }
        for (int j = i; j < v && ok; ++j)
          if (cyl.base.e[static_cast<size_t>(j)] != 0 || !mask_contains(cyl.ring, j)) ok = false;
        if (ok) return;
      }
      if (i == v) {
        if (deg >= min_degree_) {
          mo.deg = deg;
          residual_.push_back(mo);
          if (static_cast<long long>(residual_.size()) > opts_.residual_cap)
            throw std::runtime_error(
                "span check infeasible: uncovered basis exceeds residual cap at order " +
                std::to_string(order_));
        }
        return;
      }
      for (int e = 0; deg + e <= order_; ++e) {
        mo.e[static_cast<size_t>(i)] = static_cast<uint16_t>(e);
        rec(i + 1, deg + e);
      }
      mo.e[static_cast<size_t>(i)] = 0;
    };
    rec(0, 0);
    std::sort(residual_.begin(), residual_.end(), MonoLess{});
    residual_index_.reserve(residual_.size());
    for (size_t i = 0; i < residual_.size(); ++i)
      residual_index_.emplace(residual_[i], static_cast<int>(i));
  }

  // Complete sparse echelon over the uncovered basis: every generator row with
  // at least one uncovered term is generated exactly once.
  void residual_echelon() {
    if (residual_.empty()) return;
    struct MultKey {
      int gen;
      Monomial mult;
      bool operator==(const MultKey& o) const { return gen == o.gen && mult == o.mult; }
    };
    struct MultKeyHash {
      size_t operator()(const MultKey& k) const {
        return MonoHash{}(k.mult) * 31 + static_cast<size_t>(k.gen);
      }
    };
    std::unordered_set<MultKey, MultKeyHash> seen;
    std::vector<std::pair<int, Monomial>> work;  // (gen, multiplier), deterministic order
    for (size_t gi = 0; gi < gens_.size(); ++gi) {
      const auto& gen = gens_[gi];
      int val = gen.g.valuation();
      for (const auto& [mo, c] : gen.g.terms()) {
        for (const auto& target : residual_) {
          if (!mo.divides(target)) continue;
          Monomial mult = mo.quotient_of(target);
          if (!supported_by(mult, gen.ring)) continue;
          if (mult.degree() < gen.min_mult_deg) continue;
          if (mult.degree() + val > order_) continue;
          MultKey key{static_cast<int>(gi), mult};
          if (seen.insert(key).second) work.emplace_back(static_cast<int>(gi), mult);
        }
      }
    }
    for (const auto& [gi, mult] : work) {
      const auto& gen = gens_[static_cast<size_t>(gi)];
      std::vector<std::pair<int, mpq_class>> row;
      for (const auto& [mo, c] : gen.g.terms()) {
        Monomial prod = mo * mult;
        if (prod.degree() > order_) continue;
        auto it = residual_index_.find(prod);
        if (it == residual_index_.end()) continue;  // covered: already in the span
        row.emplace_back(it->second, c);
      }
      if (row.empty()) continue;
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      insert_residual_row(std::move(row));
    }
  }

  void insert_residual_row(std::vector<std::pair<int, mpq_class>> row) {
    while (!row.empty()) {
      auto it = ipivots_.find(row[0].first);
      if (it == ipivots_.end()) {
        mpq_class lead = row[0].second;
        for (auto& [i, c] : row) c /= lead;
        ipivots_.emplace(row[0].first, row);
        return;
      }
      row = iaxpy(row, row[0].second, it->second);
    }
  }

  static std::vector<std::pair<int, mpq_class>> iaxpy(
      const std::vector<std::pair<int, mpq_class>>& r, const mpq_class& c,
      const std::vector<std::pair<int, mpq_class>>& s) {
    std::vector<std::pair<int, mpq_class>> out;
    out.reserve(r.size() + s.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
      if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
        out.push_back(r[i++]);
      } else if (i == r.size() || s[j].first < r[i].first) {
        mpq_class v = -c * s[j].second;
        if (v != 0) out.emplace_back(s[j].first, v);
        ++j;
      } else {
        mpq_class v = r[i].second - c * s[j].second;
        if (v != 0) out.emplace_back(r[i].first, v);
        ++i;
        ++j;
      }
    }
    return out;
  }

  bool reduce_to_zero(const SRow& mrow) {
    std::vector<std::pair<int, mpq_class>> row;
    for (const auto& [mo, c] : mrow) {
      if (covered(mo)) continue;
      auto it = residual_index_.find(mo);
      if (it == residual_index_.end()) return false;
      row.emplace_back(it->second, c);
    }
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    while (!row.empty()) {
      auto it = ipivots_.find(row[0].first);
      if (it == ipivots_.end()) return false;
      row = iaxpy(row, row[0].second, it->second);
    }
    return true;
  }
};

CheckReport run_exact(const ModuleSpec& spec, int order, int min_degree,
                      const SpanCheckOptions& opts) {
  Engine eng(spec, order, min_degree, opts);
  CheckReport rep;
  rep.witness = eng.run();
  rep.order_used = order;
  rep.corank = static_cast<long long>(rep.witness.size());
  rep.verdict = rep.witness.empty();
  return rep;
}

}  // namespace

CheckReport span_check(const ModuleSpec& spec, int order, int min_degree,
                       const SpanCheckOptions& opts) {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  if (opts.early_exit) {
    // A failure at a lower order is final: truncation projects any spanning
    // set at a higher order onto a spanning set at the lower one.
    for (int probe : {2, 4, 6}) {
      if (probe >= order) break;
      CheckReport small = run_exact(spec, probe, min_degree, opts);
      if (!small.verdict) return small;
    }
  }
  CheckReport rep = run_exact(spec, order, min_degree, opts);
  if (opts.float_crosscheck &&
      monomial_count(spec.space.total(), order) <= 3000) {
    JetBasis basis = monomial_basis(spec.space, order);
    SpanMatrix mat = span(spec, basis);
    long long fr = rank_float(mat);
    long long ambient = static_cast<long long>(basis.monos.size());
    if (min_degree > 0)
      for (const auto& mo : basis.monos)
        if (mo.degree() < min_degree) --ambient;
    long long exact_rank = ambient - rep.corank;
    if (fr != exact_rank && min_degree == 0)
      throw std::logic_error("float rank path disagrees with exact elimination");
  }
  return rep;
}

std::vector<bool> span_contains(const ModuleSpec& spec, int order,
                                const std::vector<Monomial>& targets) {
  SpanCheckOptions opts;
  Engine eng(spec, order, 0, opts);
  eng.run();
  std::vector<bool> out;
  out.reserve(targets.size());
  for (const auto& t : targets) out.push_back(eng.contains(t));
  return out;
}

// ---------------------------------------------------------------------------
// Paper-level checks

int stability_order(int l, int m) {
  if (l < 0 || m < 0) throw std::invalid_argument("orders must be >= 0");
  return l * m + l + m + 1;
}

CheckReport is_K_determined(const Poly& f0, int l) {
  const VarSpace& sp = f0.space();
  if (sp.n != 0 || sp.m != 0)
    throw std::invalid_argument("f0 must live in corner variables (x,y) only");
  if (f0.constant_term() != 0) throw std::invalid_argument("f0 must vanish at 0");
  if (l < 0) throw std::invalid_argument("l must be >= 0");

  ModuleSpec spec;
  spec.space = sp;
  VarMask all = mask_all(sp);
  spec.gens.push_back({f0, all, 1});
  for (int i = 1; i <= sp.r; ++i) {
    int v = sp.var(Block::X, i);
    spec.gens.push_back({Poly::variable(sp, v) * f0.derive(v), all, 1});
  }
  for (int j = 1; j <= sp.k; ++j)
    spec.gens.push_back({f0.derive(sp.var(Block::Y, j)), all, 2});

  std::vector<Monomial> targets;
  enumerate_monomials(sp, l + 1, [&](const Monomial& mo) {
    if (mo.degree() == l + 1) targets.push_back(mo);
  });
  std::sort(targets.begin(), targets.end(), MonoLess{});

  std::vector<bool> in = span_contains(spec, l + 1, targets);
  CheckReport rep;
  rep.order_used = l;
  for (size_t i = 0; i < targets.size(); ++i)
    if (!in[i]) rep.witness.push_back(targets[i]);
  rep.corank = static_cast<long long>(rep.witness.size());
  rep.verdict = rep.witness.empty();
  return rep;
}

std::optional<int> find_determinacy_order(const Poly& f0, int cap) {
  for (int l = 1; l <= cap; ++l)
    if (is_K_determined(f0, l).verdict) return l;
  return std::nullopt;
}

ModuleSpec tpk_tangent_spec(const Poly& F) {
  const VarSpace& sp = F.space();
  ModuleSpec spec;
  spec.space = sp;
  VarMask all = mask_all(sp), ut = mask_ut(sp), t = mask_t(sp);
  spec.gens.push_back({F, all, 0});
  for (int i = 1; i <= sp.r; ++i) {
    int v = sp.var(Block::X, i);
    spec.gens.push_back({Poly::variable(sp, v) * F.derive(v), all, 0});
  }
  for (int j = 1; j <= sp.k; ++j) spec.gens.push_back({F.derive(sp.var(Block::Y, j)), all, 0});
  for (int a = 1; a <= sp.n; ++a) spec.gens.push_back({F.derive(sp.var(Block::U, a)), ut, 0});
  for (int b = 1; b <= sp.m; ++b) spec.gens.push_back({F.derive(sp.var(Block::T, b)), t, 0});
  return spec;
}

CheckReport is_tPK_infinitesimally_stable(const Poly& F, int order,
                                          const SpanCheckOptions& opts) {
  if (F.constant_term() != 0) throw std::invalid_argument("F must vanish at 0");
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  return span_check(tpk_tangent_spec(F), order, 0, opts);
}

CheckReport is_PR_versal(const Poly& a, int order, const SpanCheckOptions& opts) {
  const VarSpace& sp = a.space();
  if (sp.r != 0 || sp.k != 0)
    throw std::invalid_argument("a must live in (u,t) variables only");
  if (a.constant_term() != 0) throw std::invalid_argument("a must vanish at 0");
  ModuleSpec spec;
  spec.space = sp;
  VarMask ut = mask_ut(sp), t = mask_t(sp);
  for (int i = 1; i <= sp.n; ++i) spec.gens.push_back({a.derive(sp.var(Block::U, i)), ut, 0});
  for (int b = 1; b <= sp.m; ++b) spec.gens.push_back({a.derive(sp.var(Block::T, b)), t, 0});
  spec.gens.push_back({Poly::constant(sp, 1), mask_none(), 0});
  return span_check(spec, order, 0, opts);
}

std::optional<long long> K_codimension(const Poly& f0, int order) {
  const VarSpace& sp = f0.space();
  if (sp.n != 0 || sp.m != 0)
    throw std::invalid_argument("f0 must live in corner variables (x,y) only");
  if (f0.constant_term() != 0) throw std::invalid_argument("f0 must vanish at 0");
  if (order < 1) throw std::invalid_argument("order must be >= 1");

  ModuleSpec spec;
  spec.space = sp;
  VarMask all = mask_all(sp);
  spec.gens.push_back({f0, all, 0});
  for (int i = 1; i <= sp.r; ++i) {
    int v = sp.var(Block::X, i);
    spec.gens.push_back({Poly::variable(sp, v) * f0.derive(v), all, 0});
  }
  for (int j = 1; j <= sp.k; ++j)
    spec.gens.push_back({f0.derive(sp.var(Block::Y, j)), all, 1});

  SpanCheckOptions opts;
  opts.early_exit = false;
  long long at = span_check(spec, order, 1, opts).corank;
  if (order >= 2) {
    long long below = span_check(spec, order - 1, 1, opts).corank;
    if (below != at) return std::nullopt;
  }
  return at;
}

std::string CheckReport::to_json(const VarSpace& space) const {
  std::ostringstream os;
  os << "{\"verdict\":" << (verdict ? "true" : "false") << ",\"order\":" << order_used
     << ",\"corank\":" << corank << ",\"witness\":[";
  for (size_t i = 0; i < witness.size(); ++i) {
    if (i) os << ",";
    os << "\"" << Poly::monomial(space, witness[i], 1).str() << "\"";
  }
  os << "]}";
  return os.str();
}

}  // namespace retfront
