#include "retfront/poly.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace retfront {

Poly Poly::constant(const VarSpace& s, const mpq_class& c) {
  Poly p(s);
  if (c != 0) p.terms_.emplace(Monomial(s.total()), c);
  return p;
}

Poly Poly::variable(const VarSpace& s, int v) {
  if (v < 0 || v >= s.total()) throw std::invalid_argument("variable not in space");
  Monomial mo(s.total());
  mo.e[static_cast<size_t>(v)] = 1;
  mo.deg = 1;
  return monomial(s, mo, 1);
}

Poly Poly::monomial(const VarSpace& s, const Monomial& mo, const mpq_class& c) {
  if (static_cast<int>(mo.e.size()) != s.total())
    throw std::invalid_argument("monomial does not match space");
  Poly p(s);
  if (c != 0) p.terms_.emplace(mo, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [mo, c] : terms_) d = std::max(d, mo.degree());
  return d;
}

int Poly::valuation() const {
  if (terms_.empty()) return INT_MAX;
  // Canonical order is graded, so the first term has minimal degree.
  return terms_.begin()->first.degree();
}

mpq_class Poly::coefficient(const Monomial& mo) const {
  auto it = terms_.find(mo);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

mpq_class Poly::constant_term() const { return coefficient(Monomial(space_.total())); }

void Poly::add_term(const Monomial& mo, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(mo, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  if (!(space_ == o.space_)) throw std::invalid_argument("space mismatch");
  Poly out(*this);
  for (const auto& [mo, c] : o.terms_) out.add_term(mo, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  if (!(space_ == o.space_)) throw std::invalid_argument("space mismatch");
  Poly out(*this);
  for (const auto& [mo, c] : o.terms_) out.add_term(mo, -c);
  return out;
}

Poly Poly::operator-() const {
  Poly out(space_);
  for (const auto& [mo, c] : terms_) out.terms_.emplace(mo, -c);
  return out;
}

Poly Poly::scaled(const mpq_class& c) const {
  Poly out(space_);
  if (c == 0) return out;
  for (const auto& [mo, k] : terms_) out.terms_.emplace(mo, c * k);
  return out;
}

Poly operator*(const mpq_class& c, const Poly& p) { return p.scaled(c); }

Poly Poly::operator*(const Poly& o) const {
  if (!(space_ == o.space_)) throw std::invalid_argument("space mismatch");
  Poly out(space_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Poly Poly::derive(int v) const {
  if (v < 0 || v >= space_.total()) throw std::invalid_argument("unknown variable");
  Poly out(space_);
  for (const auto& [mo, c] : terms_) {
    uint16_t e = mo.e[static_cast<size_t>(v)];
    if (e == 0) continue;
    Monomial d(mo);
    d.e[static_cast<size_t>(v)] = static_cast<uint16_t>(e - 1);
    d.deg = mo.deg - 1;
    out.add_term(d, c * e);
  }
  return out;
}

Poly Poly::substitute(const std::map<int, Poly>& bindings) const {
  for (const auto& [v, p] : bindings) {
    if (v < 0 || v >= space_.total()) throw std::invalid_argument("unknown variable");
    if (!(p.space() == space_)) throw std::invalid_argument("space mismatch in binding");
  }
  Poly out(space_);
  for (const auto& [mo, c] : terms_) {
    Monomial rest(space_.total());
    Poly factor = Poly::constant(space_, c);
    for (size_t i = 0; i < mo.e.size(); ++i) {
      uint16_t e = mo.e[i];
      if (e == 0) continue;
      auto it = bindings.find(static_cast<int>(i));
      if (it == bindings.end()) {
        rest.e[i] = e;
        rest.deg += e;
      } else {
        for (uint16_t j = 0; j < e; ++j) factor = factor * it->second;
      }
    }
    for (const auto& [fm, fc] : factor.terms()) out.add_term(fm * rest, fc);
  }
  return out;
}

double Poly::eval(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != space_.total())
    throw std::invalid_argument("point length does not match variable count");
  // Cache powers per variable up to the maximal exponent used.
  std::vector<std::vector<double>> pows(point.size());
  for (size_t i = 0; i < point.size(); ++i) pows[i].push_back(1.0);
  double acc = 0.0;
  for (const auto& [mo, c] : terms_) {
    double term = c.get_d();
    for (size_t i = 0; i < mo.e.size(); ++i) {
      uint16_t e = mo.e[i];
      if (e == 0) continue;
      auto& pv = pows[i];
      while (pv.size() <= e) pv.push_back(pv.back() * point[i]);
      term *= pv[e];
    }
    acc += term;
  }
  return acc;
}

Poly Poly::truncate(int order) const {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  Poly out(space_);
  for (const auto& [mo, c] : terms_) {
    if (mo.degree() > order) break;  // graded order: all later terms are larger
    out.terms_.emplace(mo, c);
  }
  return out;
}

std::optional<std::pair<Poly, Poly>> Poly::linear_occurrence(int v) const {
  if (v < 0 || v >= space_.total()) throw std::invalid_argument("unknown variable");
  Poly coef(space_), rem(space_);
  for (const auto& [mo, c] : terms_) {
    uint16_t e = mo.e[static_cast<size_t>(v)];
    if (e == 0) {
      rem.terms_.emplace(mo, c);
    } else if (e == 1) {
      Monomial q(mo);
      q.e[static_cast<size_t>(v)] = 0;
      q.deg = mo.deg - 1;
      coef.terms_.emplace(q, c);
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(coef, rem);
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mo, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (size_t i = 0; i < mo.e.size(); ++i) {
      if (mo.e[i] == 0) continue;
      os << "*" << space_.name(static_cast<int>(i));
      if (mo.e[i] > 1) os << "^" << mo.e[i];
    }
  }
  return os.str();
}

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
};

}  // namespace

Poly Poly::parse(const VarSpace& space, const std::string& text) {
  Lexer lx{text};
  Poly out(space);
  bool expect_term = true;
  mpq_class sign = 1;
  while (true) {
    char c = lx.peek();
    if (c == '\0') break;
    if (!expect_term) {
      if (lx.eat('+')) {
        sign = 1;
      } else if (lx.eat('-')) {
        sign = -1;
      } else {
        throw std::invalid_argument("expected '+' or '-' in polynomial text");
      }
      expect_term = true;
      continue;
    }
    while (lx.eat('+')) {
    }
    while (lx.eat('-')) sign = -sign;
    // term: [rational] ('*' var['^'int])* , with an optional leading bare var
    mpq_class coef = 1;
    Monomial mo(space.total());
    bool any = false;
    c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = lx.pos;
      while (lx.pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[lx.pos])) || text[lx.pos] == '/'))
        ++lx.pos;
      coef = mpq_class(text.substr(start, lx.pos - start));
      coef.canonicalize();
      any = true;
    }
    while (true) {
      size_t save = lx.pos;
      bool star = lx.eat('*');
      lx.skip_ws();
      char v = lx.peek();
      if (v == 'x' || v == 'y' || v == 'u' || v == 't') {
        size_t start = lx.pos;
        ++lx.pos;
        while (lx.pos < text.size() && std::isdigit(static_cast<unsigned char>(text[lx.pos])))
          ++lx.pos;
        int var = space.find(text.substr(start, lx.pos - start));
        if (var < 0) throw std::invalid_argument("unknown variable in polynomial text");
        int exp = 1;
        if (lx.eat('^')) {
          lx.skip_ws();
          size_t es = lx.pos;
          while (lx.pos < text.size() && std::isdigit(static_cast<unsigned char>(text[lx.pos])))
            ++lx.pos;
          if (es == lx.pos) throw std::invalid_argument("missing exponent");
          exp = std::stoi(text.substr(es, lx.pos - es));
        }
        mo.e[static_cast<size_t>(var)] = static_cast<uint16_t>(mo.e[static_cast<size_t>(var)] + exp);
        mo.deg += exp;
        any = true;
      } else {
        lx.pos = save;
        (void)star;
        break;
      }
    }
    if (!any) throw std::invalid_argument("empty term in polynomial text");
    if (!(coef == 0)) out.add_term(mo, sign * coef);
    sign = 1;
    expect_term = false;
  }
  if (expect_term && out.is_zero() && text.find('0') == std::string::npos)
    throw std::invalid_argument("empty polynomial text");
  return out;
}

}  // namespace retfront
