#include "abcover/gallery.hpp"

#include <algorithm>
#include <map>

#include "abcover/error.hpp"

namespace abcover {

namespace {

// ---------------------------------------------------------------------------
// Parameter access

Int int_param(const Json& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end() || !it->is_number_integer()) {
    throw ParameterError(std::string("parameter '") + key + "' must be an integer");
  }
  return it->get<Int>();
}

std::vector<Int> int_list_param(const Json& params, const char* key, std::size_t length) {
  auto it = params.find(key);
  if (it == params.end() || !it->is_array()) {
    throw ParameterError(std::string("parameter '") + key + "' must be a list of integers");
  }
  std::vector<Int> out;
  for (const auto& v : *it) {
    if (!v.is_number_integer()) throw ParameterError(std::string("parameter '") + key + "' must hold integers");
    out.push_back(v.get<Int>());
  }
  if (length != 0 && out.size() != length) {
    throw ParameterError(std::string("parameter '") + key + "' must have length " + std::to_string(length));
  }
  return out;
}

void require_genera(const std::vector<Int>& g) {
  for (Int x : g) {
    if (x < 2) throw ParameterError("genera must be >= 2");
    if (x > 1000) throw ParameterError("genera above 1000 are not supported");
  }
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Int prime_param(const Json& params) {
  const Int p = int_param(params, "p");
  if (!is_prime(p)) throw ParameterError("p must be prime");
  if (p > 7) throw ParameterError("p must be at most 7 (group order bound)");
  return p;
}

std::vector<Int> genera_for_prime(const Json& params, Int p) {
  if (!params.contains("g")) return std::vector<Int>(static_cast<std::size_t>(p) + 1, 2);
  auto g = int_list_param(params, "g", static_cast<std::size_t>(p) + 1);
  require_genera(g);
  return g;
}

// ---------------------------------------------------------------------------
// Building blocks

BaseFactor elliptic(FiniteAbelianGroup torsion) { return BaseFactor{1, 1, std::move(torsion)}; }

Element zeros(std::size_t n) { return Element(n, 0); }

BundleClass ample(Int d, std::size_t torsion_rank) { return BundleClass{d, zeros(torsion_rank)}; }

// Z/p-cover of an elliptic curve with every nontrivial character of degree d.
FactorDatum cyclic_ample(Int p, Int d, const FiniteAbelianGroup& torsion) {
  auto f = FactorDatum::blank(elliptic(torsion), FiniteAbelianGroup::cyclic(p));
  for (std::size_t k = 1; k < f.classes.size(); ++k) f.classes[k] = ample(d, torsion.rank());
  return f;
}

Subgroup from_generators(const ProductGroup& g, const std::vector<Element>& gens) {
  return subgroup_from_generators(g, gens);
}

// H = annihilator of the kernel of the character map G^v -> (Z/p)^k sending
// the coordinate generators to `images`.
Subgroup subgroup_from_character_map(const ProductGroup& g, const ProductGroup& target,
                                     const std::vector<Element>& images) {
  return annihilator(hom_kernel(g, target, images));
}

// ---------------------------------------------------------------------------
// Builders

CoverConfiguration build_ein_lazarsfeld(const Json& params) {
  const auto g = int_list_param(params, "g", 3);
  require_genera(g);
  const auto t = FiniteAbelianGroup::elementary(2, 2);
  ProductQuotient pq;
  for (Int gj : g) pq.factors.push_back(cyclic_ample(2, gj - 1, t));
  pq.subgroup = from_generators(pq.ambient(), {{1, 1, 1}});
  return pq;
}

// G_j = <tau', sigma> in coordinates (tau', sigma). Characters trivial on
// sigma come from C_j -> E_j, those trivial on tau' from the etale E'_j -> E_j.
FactorDatum chen_hacon_factor(Int g) {
  const auto t = FiniteAbelianGroup::elementary(2, 2);
  auto f = FactorDatum::blank(elliptic(t), FiniteAbelianGroup::elementary(2, 2));
  const Element xi{1, 0};
  f.at({1, 0}) = BundleClass{g - 1, zeros(2)};
  f.at({0, 1}) = BundleClass{0, xi};
  f.at({1, 1}) = BundleClass{g - 1, xi};
  return f;
}

CoverConfiguration build_chen_hacon(const Json& params) {
  const auto g = int_list_param(params, "g", 3);
  require_genera(g);
  ProductQuotient pq;
  for (Int gj : g) pq.factors.push_back(chen_hacon_factor(gj));
  pq.subgroup = from_generators(pq.ambient(), {
                                                  {0, 0, 1, 0, 0, 1},  // id x tau' x sigma
                                                  {0, 1, 0, 0, 1, 0},  // sigma x id x tau'
                                                  {1, 0, 0, 1, 0, 0},  // tau' x sigma x id
                                                  {1, 0, 1, 0, 1, 0},  // tau' x tau' x tau'
                                              });
  return pq;
}

CoverConfiguration build_iitaka_surface(const Json& params) {
  const Int g = int_param(params, "g");
  require_genera({g});
  const auto t = FiniteAbelianGroup::cyclic(2);
  ProductQuotient pq;
  pq.factors.push_back(cyclic_ample(2, g - 1, t));
  auto etale = FactorDatum::blank(elliptic(t), FiniteAbelianGroup::cyclic(2));
  etale.classes[1] = BundleClass{0, {1}};
  pq.factors.push_back(std::move(etale));
  pq.subgroup = from_generators(pq.ambient(), {{1, 1}});
  return pq;
}

ProductQuotient chi0_p2_quotient(Int p, const std::vector<Int>& g) {
  const auto t = FiniteAbelianGroup::elementary(p, 2);
  ProductQuotient pq;
  for (Int gj : g) pq.factors.push_back(cyclic_ample(p, gj - 1, t));
  const auto ambient = pq.ambient();
  const std::size_t k = static_cast<std::size_t>(p) - 1;
  const ProductGroup target(std::vector<FiniteAbelianGroup>(k, FiniteAbelianGroup::cyclic(p)));
  std::vector<Element> images;
  for (std::size_t j = 0; j < k; ++j) {
    Element e(k, 0);
    e[j] = 1;
    images.push_back(e);
  }
  images.push_back(Element(k, 1));
  Element weighted(k);
  for (std::size_t j = 0; j < k; ++j) weighted[j] = static_cast<Int>(j + 1) % p;
  images.push_back(weighted);
  pq.subgroup = subgroup_from_character_map(ambient, target, images);
  return pq;
}

CoverConfiguration build_chi0_p2(const Json& params) {
  const Int p = prime_param(params);
  return chi0_p2_quotient(p, genera_for_prime(params, p));
}

CoverConfiguration build_rt_p2(const Json& params) {
  const Int p = prime_param(params);
  const auto box = to_box_cover(chi0_p2_quotient(p, genera_for_prime(params, p)));
  // Generator i of G^v twists every slot by the i-th generator of E_j[p].
  std::vector<std::vector<Element>> images(box.group.rank());
  for (std::size_t i = 0; i < images.size(); ++i) {
    Element e{0, 0};
    e[i] = 1;
    images[i].assign(box.factors.size(), e);
  }
  return twist(box, images);
}

CoverConfiguration build_dim_example(const Json& params) {
  const auto dims = int_list_param(params, "dims", 3);
  const auto degrees = int_list_param(params, "degrees", 3);
  std::vector<Int> simple(3, 1);
  if (params.contains("simple_factors")) simple = int_list_param(params, "simple_factors", 3);
  for (std::size_t j = 0; j < 3; ++j) {
    if (dims[j] < 1 || dims[j] > 8) throw ParameterError("base dimensions must lie in [1, 8]");
    if (degrees[j] < 1) throw ParameterError("ample classes need positive Euler characteristic");
    if (dims[j] > 1 && !params.contains("simple_factors")) {
      throw ParameterError("simple_factors is required when a base dimension exceeds 1");
    }
    if (simple[j] < 1 || simple[j] > dims[j]) throw ParameterError("simple_factors must lie in [1, dim]");
  }
  std::vector<BaseFactor> bases_;
  for (std::size_t j = 0; j < 3; ++j) bases_.push_back(BaseFactor{dims[j], simple[j], FiniteAbelianGroup::cyclic(2)});
  auto box = DirectBoxCover::blank(bases_, FiniteAbelianGroup::elementary(2, 2));
  const Element p{1}, o{0};
  auto set = [&](const Element& chi, std::vector<BundleClass> row) {
    box.classes[static_cast<std::size_t>(coords::index_of(box.group.moduli(), chi))] = std::move(row);
  };
  // L_chi1 = P1 x L2 x (L3 + P3), L_chi2 = (L1 + P1) x P2 x L3, L_chi3 = L1 x (L2 + P2) x P3.
  set({1, 0}, {{0, p}, {degrees[1], o}, {degrees[2], p}});
  set({0, 1}, {{degrees[0], p}, {0, p}, {degrees[2], o}});
  set({1, 1}, {{degrees[0], o}, {degrees[1], p}, {0, p}});
  return box;
}

// Character map (G_1 x ... x G_4)^v -> target with the coordinates
// (sigma, tau, iota_1, iota_2, iota_3).
CoverConfiguration build_non_p2(const Json& params) {
  const auto g = int_list_param(params, "g", 4);
  require_genera(g);
  const std::string variant = params.value("variant", std::string("X"));
  if (variant != "X" && variant != "Y") throw ParameterError("variant must be X or Y");
  const auto t = FiniteAbelianGroup::elementary(2, 2);
  ProductQuotient pq;
  auto first = FactorDatum::blank(elliptic(t), FiniteAbelianGroup::elementary(2, 2));
  for (std::size_t k = 1; k < first.classes.size(); ++k) first.classes[k] = ample(g[0] - 1, 2);
  pq.factors.push_back(std::move(first));
  for (std::size_t j = 1; j < 4; ++j) pq.factors.push_back(cyclic_ample(2, g[j] - 1, t));
  std::vector<Element> images;
  if (variant == "X") {
    images = {{1, 0}, {0, 1}, {1, 0}, {0, 1}, {1, 1}};
  } else {
    images = {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  }
  const ProductGroup target(std::vector<FiniteAbelianGroup>(images.front().size(), FiniteAbelianGroup::cyclic(2)));
  pq.subgroup = subgroup_from_character_map(pq.ambient(), target, images);
  return pq;
}

// ---------------------------------------------------------------------------
// Goldens

Json torus_h_omega(Int n) {
  Json out = Json::array();
  for (Int q = 0; q <= n; ++q) out.push_back(binomial(n, q));
  return out;
}

std::string point_text(const Element& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + std::to_string(x[i]);
  return out + ")";
}

// Components Full everywhere except a single Point(0) slot, one per factor.
Json coordinate_components(std::size_t n, std::size_t torsion_rank) {
  Json out = Json::array();
  for (std::size_t j = n; j-- > 0;) {
    std::string s;
    for (std::size_t k = 0; k < n; ++k) {
      if (k) s += " x ";
      s += k == j ? point_text(zeros(torsion_rank)) : "*";
    }
    out.push_back(s);
  }
  return out;
}

std::string pattern(const std::vector<Int>& degrees) {
  std::string s;
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    if (j) s += " ";
    s += degrees[j] > 0 ? "A" + std::to_string(degrees[j]) : "O";
  }
  return s;
}

Json sorted(Json arr) {
  std::vector<std::string> items = arr.get<std::vector<std::string>>();
  std::sort(items.begin(), items.end());
  return Json(items);
}

Json golden_ein_lazarsfeld(const Json& params) {
  const auto g = int_list_param(params, "g", 3);
  Int s = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) s += (g[i] - 1) * (g[j] - 1);
  }
  return Json{{"deg", 4},
              {"h_omega", Json::array({1 + s, 3 + s, 3, 1})},
              {"chi_omega", 0},
              {"rct", false},
              {"smooth", "false"},
              {"summand_count", 4},
              {"v0_count", 3},
              {"galois_group", Json::array({2, 2})},
              {"alerts", 0}};
}

Json golden_chen_hacon(const Json&) {
  return Json{{"deg", 4},         {"h0_omega", 1},         {"rct", true},
              {"rct_level", "full-diamond"}, {"diamond_is_torus", true}, {"chi_omega", 0},
              {"chi_top", 0},     {"smooth", "false"},     {"theorem_d_m", 3},
              {"theorem_d_holds", true}, {"alerts", 0}};
}

Json golden_iitaka_surface(const Json&) {
  return Json{{"deg", 2},     {"rct", true}, {"rct_level", "full-diamond"}, {"smooth", "true"},
              {"general_type_proxy", false}, {"theorem_c_applicable", false}, {"alerts", 0}};
}

Json golden_chi0_p2(const Json& params) {
  const Int p = int_param(params, "p");
  return Json{{"deg", p * p},
              {"chi_omega", 0},
              {"v0_count", p + 1},
              {"v0", coordinate_components(static_cast<std::size_t>(p) + 1, 2)},
              {"general_type_proxy", true},
              {"theorem_c_applicable", true},
              {"theorem_c_holds", true},
              {"theorem_c_witness", p},
              {"theorem_d_m", p + 1},
              {"theorem_d_p", p},
              {"theorem_d_holds", true},
              {"extremal_holds", true},
              {"galois_group", Json::array({p, p})},
              {"alerts", 0}};
}

Json golden_rt_p2(const Json& params) {
  const Int p = int_param(params, "p");
  return Json{{"deg", p * p},
              {"h_omega", torus_h_omega(p + 1)},
              {"chi_omega", 0},
              {"rct", true},
              {"rct_level", "omega-level"},
              {"general_type_proxy", true},
              {"extremal_applicable", true},
              {"extremal_holds", true},
              {"galois_group", Json::array({p, p})},
              {"v0_witness_consistent", true},
              {"alerts", 0}};
}

Json golden_dim_example(const Json& params) {
  const auto dims = int_list_param(params, "dims", 3);
  return Json{{"deg", 4},
              {"chi_omega", 0},
              {"h_omega", torus_h_omega(dims[0] + dims[1] + dims[2])},
              {"rct", true},
              {"rct_level", "omega-level"},
              {"general_type_proxy", true},
              {"galois_group", Json::array({2, 2})},
              {"v0_witness_consistent", true},
              {"alerts", 0}};
}

Json golden_non_p2(const Json& params) {
  const auto g = int_list_param(params, "g", 4);
  const Int a = g[0] - 1, b1 = g[1] - 1, b2 = g[2] - 1, b3 = g[3] - 1;
  const bool x = params.value("variant", std::string("X")) == "X";
  Json patterns = Json::array();
  patterns.push_back(pattern({0, 0, 0, 0}));
  if (x) {
    patterns.push_back(pattern({0, b1, b2, b3}));
    patterns.push_back(pattern({a, b1, 0, 0}));
    patterns.push_back(pattern({a, 0, b2, b3}));
    patterns.push_back(pattern({a, 0, b2, 0}));
    patterns.push_back(pattern({a, b1, 0, b3}));
    patterns.push_back(pattern({a, 0, 0, b3}));
    patterns.push_back(pattern({a, b1, b2, 0}));
  } else {
    patterns.push_back(pattern({a, 0, b2, b3}));
    patterns.push_back(pattern({a, b1, 0, b3}));
    patterns.push_back(pattern({a, b1, b2, 0}));
  }
  // Y has no summand trivial on the first curve, so its V^0 loses the
  // component through the first factor.
  Json v0 = coordinate_components(4, 2);
  if (!x) v0.erase(v0.end() - 1);
  Json out{{"deg", x ? 8 : 4},
              {"summand_count", x ? 8 : 4},
              {"summand_patterns", sorted(patterns)},
              {"chi_omega", 0},
              {"v0_count", x ? 4 : 3},
              {"v0", v0},
              {"general_type_proxy", true},
              {"theorem_c_holds", true},
              {"theorem_c_witness", 2},
              {"theorem_d_m", 4},
              {"theorem_d_holds", true},
              {"extremal_applicable", !x},
              {"alerts", 0}};
  if (!x) {
    out["extremal_holds"] = true;
    out["galois_group"] = Json::array({2, 2});
  }
  return out;
}

std::vector<GalleryEntry> make_gallery() {
  std::vector<GalleryEntry> g;
  g.push_back({"ein_lazarsfeld", "three bielliptic double covers modulo the diagonal involution",
               Json{{"g", {2, 2, 2}}}, build_ein_lazarsfeld, golden_ein_lazarsfeld});
  g.push_back({"chen_hacon", "etale-twisted Ein-Lazarsfeld tower with p_g = 1", Json{{"g", {2, 2, 2}}},
               build_chen_hacon, golden_chen_hacon});
  g.push_back({"iitaka_surface", "genus-g double cover times an etale double cover, diagonal quotient",
               Json{{"g", 2}}, build_iitaka_surface, golden_iitaka_surface});
  g.push_back({"chi0_p2", "(Z/p)^2-cover of p+1 elliptic curves with chi = 0", Json{{"p", 3}},
               build_chi0_p2, golden_chi0_p2});
  g.push_back({"rt_p2", "torsion twist of chi0_p2 giving a rational cohomology torus", Json{{"p", 2}},
               build_rt_p2, golden_rt_p2});
  g.push_back({"dim_example", "(Z/2)^2-cover of a product of three abelian varieties",
               Json{{"dims", {1, 1, 1}}, {"degrees", {1, 1, 1}}}, build_dim_example, golden_dim_example});
  g.push_back({"non_p2", "degree-8 cover of four elliptic curves (variant Y: degree 4)",
               Json{{"g", {2, 2, 2, 2}}, {"variant", "X"}}, build_non_p2, golden_non_p2});
  return g;
}

Json merged(const GalleryEntry& e, const Json& params) {
  if (!params.is_object()) throw ParameterError("parameters must be a JSON object");
  Json out = e.default_params;
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (!out.contains(it.key()) && !(it.key() == "g" || it.key() == "simple_factors")) {
      throw ParameterError("unknown parameter '" + it.key() + "' for " + e.name);
    }
    out[it.key()] = it.value();
  }
  return out;
}

std::string component_text(const Json& c) {
  std::string out;
  const auto& entries = c.at("entries");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k) out += " x ";
    out += entries[k].is_string() ? std::string("*") : point_text(entries[k].at("point").get<Element>());
  }
  return out;
}

}  // namespace

const std::vector<GalleryEntry>& gallery() {
  static const std::vector<GalleryEntry> entries = make_gallery();
  return entries;
}

const GalleryEntry& gallery_entry(std::string_view name) {
  for (const auto& e : gallery()) {
    if (e.name == name) return e;
  }
  throw ParameterError("unknown gallery entry '" + std::string(name) + "'");
}

CoverConfiguration build(std::string_view name, const Json& params) {
  const auto& e = gallery_entry(name);
  auto config = e.build(merged(e, params));
  require_valid(config);
  return config;
}

Json observed(const Json& r) {
  Json o;
  o["valid"] = r.at("validation").at("ok");
  if (!o["valid"].get<bool>()) return o;
  o["deg"] = r.at("deg_albanese");
  o["h_omega"] = r.at("h_omega");
  o["h0_omega"] = r.at("h_omega").at(0);
  o["chi_omega"] = r.at("chi_omega");
  o["rct"] = r.at("rct").at("certified");
  o["rct_level"] = r.at("rct").at("level");
  if (r.at("hodge").is_null()) {
    o["diamond_is_torus"] = nullptr;
  } else {
    const auto& d = r.at("hodge").at("diamond");
    const Int n = r.at("hodge").at("n").get<Int>();
    bool torus = true;
    for (Int p = 0; p <= n; ++p) {
      for (Int q = 0; q <= n; ++q) torus = torus && d[p][q].get<Int>() == binomial(n, p) * binomial(n, q);
    }
    o["diamond_is_torus"] = torus;
  }
  o["chi_top"] = r.at("betti").is_null() ? Json(nullptr) : r.at("betti").at("chi_top");
  o["smooth"] = r.at("verdicts").at("smooth");
  o["general_type_proxy"] = r.at("loci").at("general_type_proxy");

  const auto& v0 = r.at("loci").at("V").at(0);
  o["v0_count"] = v0.size();
  Json v0_text = Json::array();
  for (const auto& c : v0) v0_text.push_back(component_text(c));
  o["v0"] = v0_text;

  // Each component's point must cancel the torsion of the summand it was
  // read from (a zero-degree slot with tag t sits at -t).
  const auto& summands = r.at("omega_summands");
  const auto& factors = r.at("config").at("factors");
  bool consistent = true;
  for (const auto& c : v0) {
    const auto witness = c.at("witness");
    const Json* s = nullptr;
    for (const auto& cand : summands) {
      if (cand.at("character") == witness) s = &cand;
    }
    if (!s) {
      consistent = false;
      continue;
    }
    const auto& entries = c.at("entries");
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (entries[j].is_string()) continue;
      const auto moduli = factors[j].at("torsion_group").get<std::vector<Int>>();
      const Element point = entries[j].at("point").get<Element>();
      const Element tag = s->at("classes")[j].at("torsion").get<Element>();
      if (!coords::is_zero(coords::add(moduli, point, tag))) consistent = false;
    }
  }
  o["v0_witness_consistent"] = consistent;

  o["summand_count"] = summands.size();
  std::vector<std::string> patterns;
  for (const auto& s : summands) {
    std::vector<Int> degrees;
    for (const auto& c : s.at("classes")) degrees.push_back(c.at("degree").get<Int>());
    patterns.push_back(pattern(degrees));
  }
  std::sort(patterns.begin(), patterns.end());
  o["summand_patterns"] = patterns;

  const auto& ver = r.at("verdicts");
  o["theorem_c_applicable"] = ver.at("theorem_c").at("applicable");
  o["theorem_c_holds"] = ver.at("theorem_c").at("holds");
  o["theorem_c_witness"] = ver.at("theorem_c").at("witness_prime");
  o["theorem_d_m"] = ver.at("theorem_d").at("m");
  o["theorem_d_p"] = ver.at("theorem_d").at("p");
  o["theorem_d_holds"] = ver.at("theorem_d").at("holds");
  o["extremal_applicable"] = ver.at("extremal").at("applicable");
  o["extremal_holds"] = ver.at("extremal").at("holds");
  o["galois_group"] = ver.at("extremal").at("quotient_group");
  o["alerts"] = r.at("alerts").size();
  return o;
}

GoldenResult golden_check(std::string_view name, const Json& params, const AnalyzeOptions& options) {
  const auto& e = gallery_entry(name);
  const Json full = merged(e, params);
  GoldenResult result{e.name, full, false, {}};
  const auto report = to_json(analyze(build(name, params), options));
  const Json got = observed(report);
  const Json expected = e.golden(full);
  for (auto it = expected.begin(); it != expected.end(); ++it) {
    const Json actual = got.contains(it.key()) ? got.at(it.key()) : Json(nullptr);
    if (actual != it.value()) result.mismatches.push_back({it.key(), it.value(), actual});
  }
  result.pass = result.mismatches.empty();
  return result;
}

std::vector<std::pair<std::string, Json>> golden_cases() {
  std::vector<std::pair<std::string, Json>> out;
  for (const auto& e : gallery()) out.emplace_back(e.name, Json::object());
  out.emplace_back("ein_lazarsfeld", Json{{"g", {2, 3, 4}}});
  out.emplace_back("chen_hacon", Json{{"g", {3, 2, 5}}});
  out.emplace_back("chi0_p2", Json{{"p", 2}});
  out.emplace_back("chi0_p2", Json{{"p", 5}});
  out.emplace_back("rt_p2", Json{{"p", 3}});
  out.emplace_back("dim_example", Json{{"dims", {2, 1, 3}}, {"degrees", {1, 2, 1}}, {"simple_factors", {2, 1, 1}}});
  out.emplace_back("non_p2", Json{{"variant", "Y"}});
  out.emplace_back("iitaka_surface", Json{{"g", 4}});
  return out;
}

}  // namespace abcover
