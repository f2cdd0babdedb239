#include "retfront/catalog.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace retfront {

std::string NormalFormLabel::str() const {
  std::string s = "2";
  s += series;
  s += std::to_string(index);
  if (sign > 0) s += '+';
  if (sign < 0) s += '-';
  return s;
}

std::optional<NormalFormLabel> NormalFormLabel::parse(const std::string& text) {
  size_t i = 0;
  if (i < text.size() && text[i] == '2') ++i;
  if (i >= text.size() || !std::isalpha(static_cast<unsigned char>(text[i]))) return std::nullopt;
  NormalFormLabel lab;
  lab.series = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i++])));
  size_t ds = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (ds == i) return std::nullopt;
  lab.index = std::stoi(text.substr(ds, i - ds));
  if (i < text.size()) {
    if (text[i] == '+')
      lab.sign = 1;
    else if (text[i] == '-')
      lab.sign = -1;
    else
      return std::nullopt;
    ++i;
  }
  if (i != text.size()) return std::nullopt;
  lab.r = (lab.series == 'B' || lab.series == 'C' || lab.series == 'F') ? 1 : 0;
  return lab;
}

std::string CatalogEntry::name() const {
  std::string s = "2";
  s += series;
  s += std::to_string(index);
  return s;
}

namespace {

std::vector<CatalogEntry> build_table() {
  std::vector<CatalogEntry> t;
  auto add = [&](char series, int index, bool has_sign, int r, int k, int min_l, int max_l,
                 int a_power, std::string f0, std::string phi0, std::string phi0_pattern,
                 std::vector<std::string> phis, std::vector<std::string> printed) {
    t.push_back({series, index, has_sign, r, k, min_l, max_l, a_power, std::move(f0),
                 std::move(phi0), std::move(phi0_pattern), std::move(phis), std::move(printed)});
  };

  // r = 0
  add('A', 1, false, 0, 1, 1, 6, 3, "y1^2", "1", "", {},
      {R"(y^2+(t_1+t_2u_1+u_1^3\pm u_2^2\pm \ldots \pm u_l^2))"});
  add('A', 2, false, 0, 1, 2, 6, 3, "y1^3", "y1", "", {"1"},
      {R"(y^3+(t_1+t_2u_2+u_2^3\pm u_3^2\pm \ldots \pm u_l^2)y+u_1)"});
  add('A', 3, false, 0, 1, 3, 6, 3, "y1^4", "y1^2", "", {"y1", "1"},
      {R"(y^4+(t_1+t_2u_3+u_3^3\pm u_4^2\pm \ldots \pm u_l^2)y^2+u_1y+u_2)"});
  add('A', 4, false, 0, 1, 4, 6, 3, "y1^5", "y1^3", "", {"y1^2", "y1", "1"},
      {R"(y^5+(t_1+t_2u_4+u_4^3\pm u_5^2\pm \ldots \pm u_l^2)y^3+u_1y^2+u_2y+u_3)"});
  add('A', 5, false, 0, 1, 5, 6, 3, "y1^6", "y1^4", "", {"y1^3", "y1^2", "y1", "1"},
      {R"(y^6+(t_1+t_2u_5+u_5^3)y^4+u_1y^3+u_2y^2+u_3y+u_4)",
       R"(y^6+(t_1+t_2u_5+u_5^3\pm u_6^2)y^4+u_1y^3+u_2y^2+u_3y+u_4)"});
  add('A', 6, false, 0, 1, 6, 6, 3, "y1^7", "y1^5", "",
      {"y1^4", "y1^3", "y1^2", "y1", "1"},
      {R"(y^7+(t_1+t_2u_6+u_6^3)y^5+u_1y^4+u_2y^3+u_3y^2+u_4y+u_5)"});
  add('D', 4, true, 0, 2, 4, 6, 3, "y1^2*y2 S y2^3", "y2^2", "", {"y2", "y1", "1"},
      {R"(y_1^2y_2\pm y_2^3+(t_1+t_2u_4+u_4^3\pm u_5^2\pm \ldots \pm u_l^2)y_2^2+u_1y_2+u_2y_1+u_3)"});
  add('D', 5, false, 0, 2, 5, 6, 3, "y1^2*y2 + y2^4", "y2^3", "", {"y2^2", "y2", "y1", "1"},
      {R"(y_1^2y_2+ y_2^4+(t_1+t_2u_5+u_5^3)y_2^3+u_1y_2^2+u_2y_2+u_3y_1+u_4)",
       R"(y_1^2y_2+ y_2^4+(t_1+t_2u_5+u_5^3\pm u_6^2)y_2^3+u_1y_2^2+u_2y_2+u_3y_1+u_4)"});
  add('D', 6, true, 0, 2, 6, 6, 3, "y1^2*y2 S y2^5", "y2^6", "y2^4",
      {"y2^3", "y2^2", "y2", "y1", "1"},
      {R"(y_1^2y_2\pm  y_2^5+(t_1+t_2u_6+u_6^3)y_2^6+u_1y_2^3+u_2y_2^2+u_3y_2+u_4y_1+u_5)"});
  add('E', 6, false, 0, 2, 6, 6, 3, "y1^3 + y2^4", "y1*y2^2", "",
      {"y1*y2", "y2^2", "y1", "y2", "1"},
      {R"(y_1^3+ y_2^4+(t_1+t_2u_6+u_6^3)y_1y_2^2+u_1y_1y_2+u_2y_2^2+u_3y_1+u_4y_2+u_5)"});

  // r = 1
  add('B', 2, false, 1, 0, 2, 4, 3, "x1^2", "x1", "", {"1"},
      {R"(x^2+(t_1+t_2u_2+u_2^3\pm u_2^2\pm \ldots \pm u_l^2)x+u_1)"});
  add('B', 3, false, 1, 0, 3, 4, 3, "x1^3", "x1", "x1^2", {"x1", "1"},
      {R"(x^3+(t_1+t_2u_3+u_3^3)x+u_1x+u_2)",
       R"(x^3+(t_1+t_2u_3+u_3^3\pm u_4^2)x+u_1x+u_2)"});
  add('B', 4, false, 1, 0, 4, 4, 3, "x1^4", "x1^2", "x1^3", {"x1^2", "x1", "1"},
      {R"(x^4+(t_1+t_2u_4+u_4^3)x^2+u_1x^2+u_2x+u_3)"});
  add('C', 3, true, 1, 1, 3, 4, 2, "S x1*y1 + y1^3", "x1", "", {"y1", "1"},
      {R"(\pm xy+y^3+(t_1+t_2u_3+u_3^2)x+u_1y+u_2)",
       R"(\pm xy+y^3+(t_1+t_2u_3+u_3^2\pm u_4^2)x+u_1y+u_2)"});
  add('C', 4, false, 1, 1, 4, 4, 3, "x1*y1 + y1^4", "y1^3", "", {"y1^2", "y1", "1"},
      {R"(xy+y^4+(t_1+t_2u_4+u_4^3)y^3+u_1y^2+u_2y+u_3)"});
  add('F', 4, false, 1, 1, 4, 4, 3, "x1^2 + y1^3", "x1*y1", "", {"x1", "y1", "1"},
      {R"(x^2+y^3+(t_1+t_2u_4+u_4^3)xy+u_1x+u_2y+u_3)"});
  return t;
}

const std::vector<CatalogEntry>& table() {
  static const std::vector<CatalogEntry> t = build_table();
  return t;
}

// Replaces the sign placeholder 'S' of f0_text for the chosen label sign.
std::string resolve_sign(const std::string& text, int sign) {
  std::string out;
  for (char c : text) {
    if (c == 'S')
      out += (sign < 0) ? '-' : '+';
    else
      out += c;
  }
  // A leading "+ x1*y1" is fine for the parser, a leading "-" as well.
  return out;
}

}  // namespace

std::vector<CatalogEntry> list_entries(int r, int m) {
  if (m != 2 || (r != 0 && r != 1))
    throw std::invalid_argument("classification covers r in {0,1} with m = 2 only");
  std::vector<CatalogEntry> out;
  for (const auto& e : table())
    if (e.r == r) out.push_back(e);
  return out;
}

const CatalogEntry& find_entry(char series, int index) {
  for (const auto& e : table())
    if (e.series == series && e.index == index) return e;
  throw std::invalid_argument("no catalog entry " + std::string(1, series) +
                              std::to_string(index));
}

const CatalogEntry& find_entry(const NormalFormLabel& label) {
  return find_entry(label.series, label.index);
}

GeneratingFamily instantiate(const CatalogEntry& entry, int l, const std::vector<int>& signs,
                             bool pattern_variant) {
  if (!entry.admits(l))
    throw std::invalid_argument(entry.name() + " admits l in [" + std::to_string(entry.min_l) +
                                "," + std::to_string(entry.max_l) + "], got " +
                                std::to_string(l));
  if (static_cast<int>(signs.size()) != entry.sign_count(l))
    throw std::invalid_argument(entry.name() + " at l=" + std::to_string(l) + " needs " +
                                std::to_string(entry.sign_count(l)) + " sign(s), got " +
                                std::to_string(signs.size()));
  for (int s : signs)
    if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
  if (pattern_variant && entry.phi0_pattern_text.empty())
    throw std::invalid_argument(entry.name() + " has no pattern-consistent variant");

  GeneratingFamily fam;
  fam.label = {entry.series, entry.index, entry.has_sign ? signs[0] : 0, entry.r, 2};
  fam.l = l;
  fam.signs = signs;
  fam.pattern_variant = pattern_variant;
  fam.space = VarSpace{entry.r, entry.k, l, 2};

  int label_sign = entry.has_sign ? signs[0] : 0;
  std::string f0_text = resolve_sign(entry.f0_text, label_sign);
  fam.f0 = Poly::parse(VarSpace{entry.r, entry.k, 0, 0}, f0_text);
  Poly f0_full = Poly::parse(fam.space, f0_text);

  // a(u_c..u_l, t) = t1 + t2 u_c + u_c^p [± u_{c+1}^2 ± ... ± u_l^2], c = min_l.
  // The printed 2B2 tail starts at u_2, overlapping the a-variable; the
  // instantiation follows the slot pattern (tail starts after u_c).
  std::ostringstream a_os;
  int c = entry.min_l;
  a_os << "t1 + t2*u" << c << " + u" << c << "^" << entry.a_power;
  size_t si = entry.has_sign ? 1 : 0;
  for (int j = c + 1; j <= l; ++j, ++si)
    a_os << (signs[si] > 0 ? " + " : " - ") << "u" << j << "^2";
  std::string a_text = a_os.str();
  fam.a = Poly::parse(fam.space, a_text);
  // a depends on u_c..u_l only; re-index to u_1..u_{l-c+1} for the versality
  // space of the right dimension.
  std::ostringstream as;
  as << "t1 + t2*u1 + u1^" << entry.a_power;
  for (int j = c + 1, si2 = entry.has_sign ? 1 : 0; j <= l; ++j, ++si2)
    as << (signs[static_cast<size_t>(si2)] > 0 ? " + " : " - ") << "u" << (j - c + 1) << "^2";
  fam.a_small = Poly::parse(VarSpace{0, 0, l - c + 1, 2}, as.str());

  const std::string& phi0_text =
      pattern_variant ? entry.phi0_pattern_text : entry.phi0_text;
  fam.phi0 = Poly::parse(fam.space, phi0_text);

  Poly F = f0_full + fam.a * fam.phi0;
  for (size_t i = 0; i < entry.phi_texts.size(); ++i) {
    Poly ui = Poly::variable(fam.space, fam.space.var(Block::U, static_cast<int>(i) + 1));
    F = F + ui * Poly::parse(fam.space, entry.phi_texts[i]);
  }
  fam.poly = F;
  return fam;
}

GeneratingFamily instantiate(const std::string& label, int l, const std::vector<int>& signs,
                             bool pattern_variant) {
  auto lab = NormalFormLabel::parse(label);
  if (!lab) throw std::invalid_argument("unrecognized label: " + label);
  const CatalogEntry& entry = find_entry(*lab);
  std::vector<int> all_signs;
  if (entry.has_sign) {
    if (lab->sign == 0)
      throw std::invalid_argument(entry.name() + " needs a sign suffix (+/-)");
    all_signs.push_back(lab->sign);
  } else if (lab->sign != 0) {
    throw std::invalid_argument(entry.name() + " has no sign slot");
  }
  for (int s : signs) all_signs.push_back(s);
  return instantiate(entry, l, all_signs, pattern_variant);
}

Poly drop_u1_slot(const GeneratingFamily& fam) {
  const CatalogEntry& entry = find_entry(fam.label);
  if (!entry.phi_texts.empty()) {
    Poly u1 = Poly::variable(fam.space, fam.space.var(Block::U, 1));
    return fam.poly - u1 * Poly::parse(fam.space, entry.phi_texts[0]);
  }
  // 2A1 has no u-slots; the analogous tamper removes the u_c^p term of a.
  std::ostringstream os;
  os << "u" << entry.min_l << "^" << entry.a_power;
  return fam.poly - Poly::parse(fam.space, os.str()) * fam.phi0;
}

Poly drop_t2_coupling(const GeneratingFamily& fam) {
  const CatalogEntry& entry = find_entry(fam.label);
  std::ostringstream os;
  os << "t2*u" << entry.min_l;
  return fam.poly - Poly::parse(fam.space, os.str()) * fam.phi0;
}

EntryValidation validate_entry(const CatalogEntry& entry, int l, const std::vector<int>& signs,
                               bool pattern_variant) {
  GeneratingFamily fam = instantiate(entry, l, signs, pattern_variant);
  EntryValidation v;
  auto det = find_determinacy_order(fam.f0);
  v.determinacy_order = det.value_or(0);
  int det_l = det.value_or(7);
  v.check_order = stability_order(det_l, fam.space.m);
  v.stability = is_tPK_infinitesimally_stable(fam.poly, v.check_order);
  v.versality = is_PR_versal(fam.a_small, v.check_order);
  v.ok = det.has_value() && v.stability.verdict && v.versality.verdict;
  return v;
}

std::string catalog_json() {
  nlohmann::ordered_json root;
  root["m"] = 2;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : table()) {
    nlohmann::ordered_json je;
    je["name"] = e.name();
    je["series"] = std::string(1, e.series);
    je["index"] = e.index;
    je["has_sign"] = e.has_sign;
    je["r"] = e.r;
    je["k"] = e.k;
    je["min_l"] = e.min_l;
    je["max_l"] = e.max_l;
    je["printed"] = e.printed;
    je["germ"] = e.f0_text;
    je["phi0"] = e.phi0_text;
    if (!e.phi0_pattern_text.empty()) je["phi0_pattern"] = e.phi0_pattern_text;
    je["slots"] = e.phi_texts;
    entries.push_back(je);
  }
  root["entries"] = entries;
  return root.dump(2);
}

}  // namespace retfront
