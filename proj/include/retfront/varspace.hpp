#ifndef RETFRONT_VARSPACE_HPP
#define RETFRONT_VARSPACE_HPP

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace retfront {

// Variable blocks: x = corner variables (x >= 0), y = internal,
// u = base (the q-coordinates of the front), t = times.
enum class Block : int { X = 0, Y = 1, U = 2, T = 3 };

// A variable space partitioned into the four blocks.
// Global variable indices are 0-based and ordered x1..xr, y1..yk, u1..un, t1..tm.
struct VarSpace {
  int r = 0;  // corner variables
  int k = 0;  // internal variables
  int n = 0;  // base variables
  int m = 0;  // time variables

  int total() const { return r + k + n + m; }

  Block block(int v) const {
    if (v < 0 || v >= total()) throw std::out_of_range("variable index out of range");
    if (v < r) return Block::X;
    if (v < r + k) return Block::Y;
    if (v < r + k + n) return Block::U;
    return Block::T;
  }

  // 0-based offset -> global index, i is 1-based within the block.
  int var(Block b, int i) const {
    int base = 0, count = 0;
    switch (b) {
      case Block::X: base = 0; count = r; break;
      case Block::Y: base = r; count = k; break;
      case Block::U: base = r + k; count = n; break;
      case Block::T: base = r + k + n; count = m; break;
    }
    if (i < 1 || i > count) throw std::out_of_range("variable index out of block range");
    return base + (i - 1);
  }

  std::string name(int v) const {
    Block b = block(v);
    int i = v + 1;
    switch (b) {
      case Block::X: return "x" + std::to_string(i);
      case Block::Y: return "y" + std::to_string(i - r);
      case Block::U: return "u" + std::to_string(i - r - k);
      case Block::T: return "t" + std::to_string(i - r - k - n);
    }
    throw std::logic_error("unreachable");
  }

  // Parses a name of the form x<i>, y<i>, u<i>, t<i>; returns -1 if unknown.
  int find(const std::string& s) const {
    if (s.size() < 2) return -1;
    int i = 0;
    try {
      i = std::stoi(s.substr(1));
    } catch (...) {
      return -1;
    }
    Block b;
    switch (s[0]) {
      case 'x': b = Block::X; break;
      case 'y': b = Block::Y; break;
      case 'u': b = Block::U; break;
      case 't': b = Block::T; break;
      default: return -1;
    }
    try {
      return var(b, i);
    } catch (...) {
      return -1;
    }
  }

  bool operator==(const VarSpace&) const = default;
};

// Exponent vector with cached total degree.
struct Monomial {
  std::vector<uint16_t> e;
  int deg = 0;

  Monomial() = default;
  explicit Monomial(int nvars) : e(static_cast<size_t>(nvars), 0), deg(0) {}
  Monomial(std::vector<uint16_t> exps) : e(std::move(exps)) {
    deg = std::accumulate(e.begin(), e.end(), 0);
  }

  int degree() const { return deg; }
  bool is_one() const { return deg == 0; }

  uint16_t operator[](size_t i) const { return e[i]; }

  Monomial operator*(const Monomial& o) const {
    Monomial out(*this);
    for (size_t i = 0; i < e.size(); ++i) out.e[i] = static_cast<uint16_t>(e[i] + o.e[i]);
    out.deg = deg + o.deg;
    return out;
  }

  // Componentwise divisibility.
  bool divides(const Monomial& o) const {
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }

  // Requires divides(o) in the other direction: returns o / this as this->quotient_of(o).
  Monomial quotient_of(const Monomial& o) const {
    Monomial out(static_cast<int>(e.size()));
    for (size_t i = 0; i < e.size(); ++i) out.e[i] = static_cast<uint16_t>(o.e[i] - e[i]);
    out.deg = o.deg - deg;
    return out;
  }

  bool operator==(const Monomial& o) const { return e == o.e; }
};

// Canonical term order: graded, then lexicographic on the exponent vector
// in block order x < y < u < t. Total and deterministic.
inline bool mono_less(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  return a.e < b.e;
}

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return mono_less(a, b); }
};

struct MonoHash {
  size_t operator()(const Monomial& mo) const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (uint16_t v : mo.e) h = h * 1099511628211ull + v + 1;
    return h;
  }
};

// Bitmask over variables; used for multiplier rings of module generators.
using VarMask = uint64_t;

inline VarMask mask_none() { return 0; }

inline VarMask mask_block(const VarSpace& s, Block b) {
  VarMask m = 0;
  for (int v = 0; v < s.total(); ++v)
    if (s.block(v) == b) m |= (VarMask{1} << v);
  return m;
}

inline VarMask mask_all(const VarSpace& s) {
  return s.total() >= 64 ? ~VarMask{0} : ((VarMask{1} << s.total()) - 1);
}

inline VarMask mask_ut(const VarSpace& s) {
  return mask_block(s, Block::U) | mask_block(s, Block::T);
}

inline VarMask mask_t(const VarSpace& s) { return mask_block(s, Block::T); }

inline bool mask_contains(VarMask m, int v) { return (m >> v) & 1; }

// True when every variable occurring in mo lies in the mask.
inline bool supported_by(const Monomial& mo, VarMask m) {
  for (size_t i = 0; i < mo.e.size(); ++i)
    if (mo.e[i] != 0 && !mask_contains(m, static_cast<int>(i))) return false;
  return true;
}

}  // namespace retfront

#endif
