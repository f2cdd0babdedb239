#ifndef RETFRONT_CATALOG_HPP
#define RETFRONT_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "retfront/jetalgebra.hpp"
#include "retfront/poly.hpp"

namespace retfront {

// Classification label, e.g. 2A3, 2D4+, 2C3-. sign is 0 for entries without
// a sign slot in the label.
struct NormalFormLabel {
  char series = 'A';
  int index = 0;
  int sign = 0;
  int r = 0;
  int m = 2;

  std::string str() const;
  static std::optional<NormalFormLabel> parse(const std::string& text);
};

// One classification entry. Printed formula lines are kept verbatim; the
// structured fields drive instantiation. Where the printed formula deviates
// from the derivable slot pattern (2D6, 2B3, 2B4) the pattern-consistent
// phi0 is kept alongside, selectable behind a flag.
struct CatalogEntry {
  char series;
  int index;
  bool has_sign;
  int r;
  int k;
  int min_l;
  int max_l;
  int a_power;                       // exponent of the cubic (or square) a-term
  std::string f0_text;               // 'S' marks the label sign slot
  std::string phi0_text;             // slot coupled with a(u,t), as printed
  std::string phi0_pattern_text;     // pattern-consistent alternative, or empty
  std::vector<std::string> phi_texts;  // phi_1 .. phi_{min_l-1}
  std::vector<std::string> printed;  // verbatim formula lines from the paper

  std::string name() const;  // "2A1", "2D4", ... (sign slot not resolved)
  bool admits(int l) const { return l >= min_l && l <= max_l; }
  // label sign (if any) followed by the Morse tail signs for the given l
  int sign_count(int l) const { return (has_sign ? 1 : 0) + (l - min_l); }
};

struct GeneratingFamily {
  Poly poly;
  VarSpace space;
  NormalFormLabel label;
  int l = 0;
  std::vector<int> signs;
  bool pattern_variant = false;

  Poly f0;       // germ in VarSpace{r,k,0,0}
  Poly a;        // unfolding function, embedded in `space`
  Poly a_small;  // a over its own variables u_c..u_l re-indexed to u_1.., VarSpace{0,0,l-c+1,m}
  Poly phi0;     // slot multiplied by a, in `space`
};

// The classified entries: 10 for r=0, 6 for r=1 (m=2 only).
std::vector<CatalogEntry> list_entries(int r, int m);

const CatalogEntry& find_entry(char series, int index);
const CatalogEntry& find_entry(const NormalFormLabel& label);

GeneratingFamily instantiate(const CatalogEntry& entry, int l,
                             const std::vector<int>& signs,
                             bool pattern_variant = false);
GeneratingFamily instantiate(const std::string& label, int l,
                             const std::vector<int>& signs,
                             bool pattern_variant = false);

// Tampered copies used to demonstrate that the stability verdict is sharp.
Poly drop_u1_slot(const GeneratingFamily& fam);
Poly drop_t2_coupling(const GeneratingFamily& fam);

struct EntryValidation {
  int determinacy_order = 0;   // 0 when the search failed up to the cap
  int check_order = 0;
  CheckReport stability;
  CheckReport versality;
  bool ok = false;
};

EntryValidation validate_entry(const CatalogEntry& entry, int l,
                               const std::vector<int>& signs,
                               bool pattern_variant = false);

// Machine-readable catalog export (entries, templates, ranges, variants).
std::string catalog_json();

}  // namespace retfront

#endif
