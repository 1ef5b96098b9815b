#include "abcover/serialize.hpp"

#include <sstream>

#include "abcover/error.hpp"

namespace abcover {

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw MalformedInput(what + " at " + (pointer.empty() ? "/" : pointer), pointer);
}

const Json& member(const Json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) fail(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(ptr + "/" + key, "missing field");
  return *it;
}

Int integer(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer()) fail(ptr, "expected an integer");
  return j.get<Int>();
}

Int integer_or(const Json& j, const std::string& key, Int fallback, const std::string& ptr) {
  if (!j.is_object()) fail(ptr, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? fallback : integer(*it, ptr + "/" + key);
}

Element int_list(const Json& j, const std::string& ptr) {
  if (!j.is_array()) fail(ptr, "expected an array of integers");
  Element out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], ptr + "/" + std::to_string(i)));
  return out;
}

FiniteAbelianGroup group_from_json(const Json& j, const std::string& ptr) {
  const auto factors = int_list(j, ptr);
  try {
    return FiniteAbelianGroup(factors);
  } catch (const MalformedInput& e) {
    fail(ptr, e.what());
  }
}

Element element_from_json(const Json& j, std::span<const Int> moduli, const std::string& ptr) {
  Element x = int_list(j, ptr);
  if (!coords::is_valid(moduli, x)) fail(ptr, "element outside the group");
  return x;
}

Element parse_key(const std::string& key, std::span<const Int> moduli, const std::string& ptr) {
  Element x;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      x.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      fail(ptr, "character key must be comma-joined integers");
    }
  }
  if (key.empty()) x.clear();
  if (!coords::is_valid(moduli, x)) fail(ptr, "character key outside the group");
  return x;
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

BundleClass class_from_json(const Json& j, const FiniteAbelianGroup& torsion, const std::string& ptr) {
  BundleClass c;
  c.degree = integer(member(j, "degree", ptr), ptr + "/degree");
  auto it = j.find("torsion");
  c.torsion = it == j.end() ? coords::zero(torsion.moduli())
                            : element_from_json(*it, torsion.moduli(), ptr + "/torsion");
  return c;
}

BaseFactor base_from_json(const Json& j, const std::string& ptr) {
  BaseFactor b;
  b.base_dim = integer_or(j, "base_dim", 1, ptr);
  if (b.base_dim < 1) fail(ptr + "/base_dim", "base dimension must be >= 1");
  auto it = j.find("simple_factors");
  if (it == j.end()) {
    if (b.base_dim > 1) fail(ptr + "/simple_factors", "required when base_dim > 1");
    b.simple_factors = 1;
  } else {
    b.simple_factors = integer(*it, ptr + "/simple_factors");
  }
  b.torsion_group = group_from_json(member(j, "torsion_group", ptr), ptr + "/torsion_group");
  return b;
}

Json base_to_json(const BaseFactor& b) {
  Json j;
  j["base_dim"] = b.base_dim;
  j["simple_factors"] = b.simple_factors;
  j["torsion_group"] = group_to_json(b.torsion_group);
  return j;
}

Json element_json(const Element& x) { return Json(x); }

Json component_to_json(const LocusComponent& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries) {
    if (e.full()) entries.push_back("full");
    else entries.push_back(Json{{"point", element_json(*e.point)}});
  }
  return Json{{"codim", c.codim}, {"entries", entries}, {"witness", element_json(c.witness)}};
}

LocusComponent component_from_json(const Json& j) {
  LocusComponent c;
  c.codim = j.at("codim").get<Int>();
  for (const auto& e : j.at("entries")) {
    if (e.is_string()) c.entries.push_back(LocusEntry{});
    else c.entries.push_back(LocusEntry{e.at("point").get<Element>()});
  }
  c.witness = j.at("witness").get<Element>();
  return c;
}

BundleClass plain_class(const Json& j) {
  return BundleClass{j.at("degree").get<Int>(), j.at("torsion").get<Element>()};
}

Json optional_int(const std::optional<Int>& v) { return v ? Json(*v) : Json(nullptr); }
std::optional<Int> optional_int(const Json& j) {
  return j.is_null() ? std::nullopt : std::optional<Int>(j.get<Int>());
}

Json bool_matrix(const std::vector<std::vector<bool>>& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(Json(row));
  return out;
}

const char* level_name(RctLevel l) { return l == RctLevel::FullDiamond ? "full-diamond" : "omega-level"; }

RctLevel parse_level(const std::string& s) {
  if (s == "full-diamond") return RctLevel::FullDiamond;
  if (s == "omega-level") return RctLevel::OmegaLevel;
  throw MalformedInput("unknown rct level " + s);
}

Smoothness parse_smoothness(const std::string& s) {
  if (s == "true") return Smoothness::Smooth;
  if (s == "false") return Smoothness::Singular;
  if (s == "unknown") return Smoothness::Unknown;
  throw MalformedInput("unknown smoothness " + s);
}

}  // namespace

std::string character_key(const Element& chi) {
  std::string out;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(chi[i]);
  }
  return out;
}

Json group_to_json(const FiniteAbelianGroup& g) { return Json(g.invariant_factors()); }

Json to_json(const BundleClass& c) { return Json{{"degree", c.degree}, {"torsion", element_json(c.torsion)}}; }

const char* gate_name(Gate gate) { return gate == Gate::Rct ? "rct" : "chi0"; }

Gate parse_gate(std::string_view name) {
  if (name == "rct") return Gate::Rct;
  if (name == "chi0") return Gate::Chi0;
  throw MalformedInput("mode must be rct or chi0");
}

const char* smoothness_name(Smoothness s) {
  switch (s) {
    case Smoothness::Smooth: return "true";
    case Smoothness::Singular: return "false";
    default: return "unknown";
  }
}

Json to_json(const CoverConfiguration& config) {
  Json j;
  j["schema"] = kConfigSchema;
  if (const auto* pq = std::get_if<ProductQuotient>(&config)) {
    j["kind"] = "product_quotient";
    Json factors = Json::array();
    for (const auto& f : pq->factors) {
      Json fj = base_to_json(f.base);
      fj["group"] = group_to_json(f.group);
      Json classes = Json::object();
      const auto m = f.group.moduli();
      for (Int k = 1; k < f.group.order(); ++k) {
        classes[character_key(coords::element_at(m, k))] = to_json(f.classes[static_cast<std::size_t>(k)]);
      }
      fj["classes"] = classes;
      factors.push_back(fj);
    }
    j["factors"] = factors;
    Json gens = Json::array();
    for (const auto& b : pq->subgroup.basis()) gens.push_back(element_json(b));
    j["subgroup"] = gens;
    return j;
  }
  const auto& box = std::get<DirectBoxCover>(config);
  j["kind"] = "box_cover";
  Json factors = Json::array();
  for (const auto& b : box.factors) factors.push_back(base_to_json(b));
  j["factors"] = factors;
  j["group"] = group_to_json(box.group);
  Json classes = Json::object();
  const auto m = box.group.moduli();
  for (Int k = 1; k < box.group.order(); ++k) {
    Json row = Json::array();
    for (const auto& c : box.classes[static_cast<std::size_t>(k)]) row.push_back(to_json(c));
    classes[character_key(coords::element_at(m, k))] = row;
  }
  j["classes"] = classes;
  return j;
}

CoverConfiguration config_from_json(const Json& j) {
  if (!j.is_object()) fail("", "configuration must be a JSON object");
  if (auto it = j.find("schema"); it != j.end() && (!it->is_string() || it->get<std::string>() != kConfigSchema)) {
    fail("/schema", "unsupported schema");
  }
  const Json& kind_node = member(j, "kind", "");
  if (!kind_node.is_string()) fail("/kind", "expected a string");
  const std::string kind = kind_node.get<std::string>();
  const Json& factors = member(j, "factors", "");
  if (!factors.is_array() || factors.empty()) fail("/factors", "expected a nonempty array");

  auto read_class_map = [](const Json& classes, const FiniteAbelianGroup& group, const std::string& ptr,
                           const std::function<void(Int, const Json&, const std::string&)>& store) {
    if (!classes.is_object()) fail(ptr, "expected an object keyed by characters");
    const auto m = group.moduli();
    std::vector<bool> seen(static_cast<std::size_t>(group.order()), false);
    for (auto it = classes.begin(); it != classes.end(); ++it) {
      const std::string kp = ptr + "/" + escape_pointer(it.key());
      const Element chi = parse_key(it.key(), m, kp);
      const Int k = coords::index_of(m, chi);
      if (k == 0) fail(kp, "the trivial character carries no class");
      seen[static_cast<std::size_t>(k)] = true;
      store(k, it.value(), kp);
    }
    for (Int k = 1; k < group.order(); ++k) {
      if (!seen[static_cast<std::size_t>(k)]) {
        fail(ptr + "/" + character_key(coords::element_at(m, k)), "missing class for nontrivial character");
      }
    }
  };

  if (kind == "product_quotient") {
    ProductQuotient pq;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const std::string fp = "/factors/" + std::to_string(i);
      const Json& fj = factors[i];
      BaseFactor base = base_from_json(fj, fp);
      FiniteAbelianGroup group = group_from_json(member(fj, "group", fp), fp + "/group");
      auto f = FactorDatum::blank(base, group);
      read_class_map(member(fj, "classes", fp), group, fp + "/classes",
                     [&](Int k, const Json& cj, const std::string& cp) {
                       f.classes[static_cast<std::size_t>(k)] = class_from_json(cj, base.torsion_group, cp);
                     });
      pq.factors.push_back(std::move(f));
    }
    ProductGroup ambient;
    try {
      ambient = pq.ambient();
    } catch (const MalformedInput& e) {
      fail("/factors", e.what());
    }
    const Json& sub = member(j, "subgroup", "");
    if (!sub.is_array()) fail("/subgroup", "expected an array of generators");
    std::vector<Element> gens;
    for (std::size_t i = 0; i < sub.size(); ++i) {
      gens.push_back(element_from_json(sub[i], ambient.moduli(), "/subgroup/" + std::to_string(i)));
    }
    pq.subgroup = subgroup_from_generators(ambient, gens);
    return pq;
  }
  if (kind == "box_cover") {
    std::vector<BaseFactor> bases_;
    for (std::size_t i = 0; i < factors.size(); ++i) bases_.push_back(base_from_json(factors[i], "/factors/" + std::to_string(i)));
    FiniteAbelianGroup group = group_from_json(member(j, "group", ""), "/group");
    auto box = DirectBoxCover::blank(bases_, group);
    read_class_map(member(j, "classes", ""), group, "/classes", [&](Int k, const Json& row, const std::string& rp) {
      if (!row.is_array() || row.size() != bases_.size()) fail(rp, "expected one class per factor");
      for (std::size_t s = 0; s < row.size(); ++s) {
        box.classes[static_cast<std::size_t>(k)][s] =
            class_from_json(row[s], bases_[s].torsion_group, rp + "/" + std::to_string(s));
      }
    });
    return box;
  }
  fail("/kind", "kind must be product_quotient or box_cover");
}

Json to_json(const AnalysisReport& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["config"] = to_json(r.config);
  Json violations = Json::array();
  for (const auto& v : r.validation.violations) {
    violations.push_back(Json{{"constraint", v.constraint}, {"location", v.location}, {"detail", v.detail}});
  }
  j["validation"] = Json{{"ok", r.valid()}, {"violations", violations}};
  j["mode"] = gate_name(r.gate);
  if (!r.valid()) return j;

  j["dim"] = r.dim;
  j["deg_albanese"] = r.deg_albanese;
  Json summands = Json::array();
  for (const auto& s : r.omega_summands) {
    Json classes = Json::array();
    for (const auto& c : s.classes) classes.push_back(to_json(c));
    summands.push_back(Json{{"character", element_json(s.character)}, {"classes", classes}});
  }
  j["omega_summands"] = summands;
  j["h_omega"] = r.h_omega;
  j["chi_omega"] = r.chi_omega;
  j["rct"] = Json{{"certified", r.rct.certified}, {"level", level_name(r.rct.level)}};
  if (r.diamond) {
    j["hodge"] = Json{{"n", r.diamond->n}, {"diamond", r.diamond->h}};
  } else {
    j["hodge"] = nullptr;
  }
  if (r.betti) {
    j["betti"] = Json{{"b", r.betti->betti}, {"chi_top", r.betti->chi_top}};
  } else {
    j["betti"] = nullptr;
  }
  Json v = Json::array();
  for (const auto& level : r.loci) {
    Json comps = Json::array();
    for (const auto& c : level) comps.push_back(component_to_json(c));
    v.push_back(comps);
  }
  Json sf = Json::array();
  for (const auto& e : r.s_f) sf.push_back(Json{{"i", e.i}, {"component", component_to_json(e.component)}});
  j["loci"] = Json{{"V", v}, {"S_f", sf}, {"general_type_proxy", r.general_type_proxy}};

  const auto& s = r.verdicts;
  Json ver;
  ver["deg_albanese"] = s.deg_albanese;
  ver["factor_degrees"] = s.factor_degrees;
  ver["smallest_prime"] = optional_int(s.smallest_prime);
  ver["theorem_c"] = Json{{"applicable", s.theorem_c.applicable},
                          {"witness_prime", optional_int(s.theorem_c.witness_prime)},
                          {"holds", s.theorem_c.holds}};
  ver["theorem_d"] = Json{{"applicable", s.theorem_d.applicable}, {"vacuous", s.theorem_d.vacuous},
                          {"m", s.theorem_d.m},                   {"p", optional_int(s.theorem_d.p)},
                          {"holds", s.theorem_d.holds}};
  ver["extremal"] = Json{{"applicable", s.extremal.applicable},
                         {"quotient_group", group_to_json(s.extremal.quotient_group)},
                         {"holds", s.extremal.holds}};
  ver["dega"] = Json{{"applicable", s.dega.applicable}, {"lhs", s.dega.lhs},
                     {"rhs", s.dega.rhs},               {"holds", s.dega.holds},
                     {"routes_agree", s.dega.routes_agree}, {"injectivity_gap", s.dega.injectivity_gap}};
  if (s.structure) {
    ver["structure"] = Json{{"surjective", Json(s.structure->surjective)},
                            {"pairwise_injective", bool_matrix(s.structure->pairwise_injective)}};
  } else {
    ver["structure"] = nullptr;
  }
  ver["smooth"] = smoothness_name(s.smooth);
  j["verdicts"] = ver;
  j["alerts"] = s.alerts;
  return j;
}

AnalysisReport report_from_json(const Json& j) {
  if (j.value("schema", std::string{}) != kReportSchema) fail("/schema", "unsupported report schema");
  AnalysisReport r;
  r.config = config_from_json(j.at("config"));
  for (const auto& v : j.at("validation").at("violations")) {
    r.validation.violations.push_back(
        Violation{v.at("constraint").get<std::string>(), v.at("location").get<std::string>(), v.at("detail").get<std::string>()});
  }
  r.gate = parse_gate(j.at("mode").get<std::string>());
  if (!r.valid()) return r;

  r.dim = j.at("dim").get<Int>();
  r.deg_albanese = j.at("deg_albanese").get<Int>();
  std::vector<std::size_t> all;
  for (std::size_t k = 0; k < bases(r.config).size(); ++k) all.push_back(k);
  for (const auto& s : j.at("omega_summands")) {
    Summand sm;
    sm.character = s.at("character").get<Element>();
    for (const auto& c : s.at("classes")) sm.classes.push_back(plain_class(c));
    sm.subset = all;
    r.omega_summands.push_back(std::move(sm));
  }
  r.h_omega = j.at("h_omega").get<std::vector<Int>>();
  r.chi_omega = j.at("chi_omega").get<Int>();
  r.rct = RctVerdict{j.at("rct").at("certified").get<bool>(), parse_level(j.at("rct").at("level").get<std::string>())};
  if (!j.at("hodge").is_null()) {
    r.diamond = HodgeDiamond{j.at("hodge").at("n").get<int>(),
                             j.at("hodge").at("diamond").get<std::vector<std::vector<Int>>>()};
  }
  if (!j.at("betti").is_null()) {
    r.betti = BettiEuler{j.at("betti").at("b").get<std::vector<Int>>(), j.at("betti").at("chi_top").get<Int>()};
  }
  for (const auto& level : j.at("loci").at("V")) {
    std::vector<LocusComponent> comps;
    for (const auto& c : level) comps.push_back(component_from_json(c));
    r.loci.push_back(std::move(comps));
  }
  for (const auto& e : j.at("loci").at("S_f")) {
    r.s_f.push_back(SfEntry{component_from_json(e.at("component")), e.at("i").get<int>()});
  }
  r.general_type_proxy = j.at("loci").at("general_type_proxy").get<bool>();

  const Json& ver = j.at("verdicts");
  auto& s = r.verdicts;
  s.deg_albanese = ver.at("deg_albanese").get<Int>();
  s.factor_degrees = ver.at("factor_degrees").get<std::vector<Int>>();
  s.smallest_prime = optional_int(ver.at("smallest_prime"));
  const Json& c = ver.at("theorem_c");
  s.theorem_c = TheoremC{c.at("applicable").get<bool>(), optional_int(c.at("witness_prime")), c.at("holds").get<bool>()};
  const Json& d = ver.at("theorem_d");
  s.theorem_d = TheoremD{d.at("applicable").get<bool>(), d.at("vacuous").get<bool>(), d.at("m").get<Int>(),
                         optional_int(d.at("p")), d.at("holds").get<bool>()};
  const Json& e = ver.at("extremal");
  s.extremal = Extremal{e.at("applicable").get<bool>(),
                        FiniteAbelianGroup(e.at("quotient_group").get<std::vector<Int>>()), e.at("holds").get<bool>()};
  const Json& g = ver.at("dega");
  s.dega = DegaCheck{g.at("applicable").get<bool>(), g.at("lhs").get<Int>(), g.at("rhs").get<Int>(),
                     g.at("holds").get<bool>(), g.at("routes_agree").get<bool>(), g.at("injectivity_gap").get<bool>()};
  if (!ver.at("structure").is_null()) {
    s.structure = StructureChecks{ver.at("structure").at("surjective").get<std::vector<bool>>(),
                                  ver.at("structure").at("pairwise_injective").get<std::vector<std::vector<bool>>>()};
  }
  s.smooth = parse_smoothness(ver.at("smooth").get<std::string>());
  s.alerts = j.at("alerts").get<std::vector<std::string>>();
  return r;
}

namespace {

std::string list_text(const Json& arr) {
  std::string out = "(";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += ", ";
    out += arr[i].dump();
  }
  return out + ")";
}

std::string group_text(const Json& g) {
  if (g.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += " x ";
    out += "Z/" + g[i].dump();
  }
  return out;
}

std::string component_text(const Json& c) {
  std::string out;
  const auto& entries = c.at("entries");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k) out += " x ";
    out += entries[k].is_string() ? std::string("*") : "{" + list_text(entries[k].at("point")) + "}";
  }
  return out + "  [codim " + c.at("codim").dump() + "]";
}

std::string yes_no(const Json& b) { return b.get<bool>() ? "yes" : "no"; }

}  // namespace

std::string render_text(const Json& j) {
  std::ostringstream out;
  const auto& cfg = j.at("config");
  out << "configuration: " << cfg.at("kind").get<std::string>() << ", " << cfg.at("factors").size()
      << " factor(s)\n";
  const auto& val = j.at("validation");
  if (!val.at("ok").get<bool>()) {
    out << "validation: FAILED\n";
    for (const auto& v : val.at("violations")) {
      out << "  - " << v.at("constraint").get<std::string>() << " at " << v.at("location").get<std::string>()
          << ": " << v.at("detail").get<std::string>() << "\n";
    }
    return out.str();
  }
  out << "validation: ok\n";
  out << "mode: " << j.at("mode").get<std::string>() << "\n";
  out << "dimension: " << j.at("dim") << "\n";
  out << "deg(a_X): " << j.at("deg_albanese") << "\n";
  out << "omega summands: " << j.at("omega_summands").size() << "\n";
  for (const auto& s : j.at("omega_summands")) {
    out << "  " << list_text(s.at("character")) << ":";
    for (const auto& c : s.at("classes")) {
      out << " [" << c.at("degree") << " " << list_text(c.at("torsion")) << "]";
    }
    out << "\n";
  }
  out << "h^q(omega): " << list_text(j.at("h_omega")) << "\n";
  out << "chi(omega): " << j.at("chi_omega") << "\n";
  out << "rational cohomology torus: " << yes_no(j.at("rct").at("certified")) << " ("
      << j.at("rct").at("level").get<std::string>() << ")\n";
  if (!j.at("hodge").is_null()) {
    out << "hodge diamond h^{p,q}:\n";
    const auto& d = j.at("hodge").at("diamond");
    for (std::size_t p = 0; p < d.size(); ++p) out << "  p=" << p << ": " << list_text(d[p]) << "\n";
  }
  if (!j.at("betti").is_null()) {
    out << "betti: " << list_text(j.at("betti").at("b")) << "\n";
    out << "chi_top: " << j.at("betti").at("chi_top") << "\n";
  }
  const auto& loci = j.at("loci");
  const auto& v = loci.at("V");
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << "V^" << i << ": " << v[i].size() << " component(s)\n";
    for (const auto& c : v[i]) out << "  " << component_text(c) << "\n";
  }
  out << "S_f: " << loci.at("S_f").size() << " element(s)\n";
  for (const auto& e : loci.at("S_f")) out << "  i=" << e.at("i") << ": " << component_text(e.at("component")) << "\n";
  out << "general type proxy: " << yes_no(loci.at("general_type_proxy")) << "\n";

  const auto& ver = j.at("verdicts");
  out << "factor degrees: " << list_text(ver.at("factor_degrees")) << "\n";
  const auto& c = ver.at("theorem_c");
  out << "theorem C: applicable " << yes_no(c.at("applicable")) << ", holds " << yes_no(c.at("holds"));
  if (!c.at("witness_prime").is_null()) out << " (p = " << c.at("witness_prime") << ")";
  out << "\n";
  const auto& d = ver.at("theorem_d");
  out << "theorem D: ";
  if (d.at("vacuous").get<bool>()) {
    out << "vacuous (degree 1)\n";
  } else {
    out << "applicable " << yes_no(d.at("applicable")) << ", m = " << d.at("m") << ", p = " << d.at("p")
        << ", holds " << yes_no(d.at("holds")) << "\n";
  }
  const auto& e = ver.at("extremal");
  out << "extremal: applicable " << yes_no(e.at("applicable")) << ", Galois group "
      << group_text(e.at("quotient_group")) << ", holds " << yes_no(e.at("holds")) << "\n";
  const auto& g = ver.at("dega");
  if (g.at("applicable").get<bool>()) {
    out << "degree inequality: " << g.at("lhs") << " <= " << g.at("rhs") << " " << yes_no(g.at("holds"))
        << ", routes agree " << yes_no(g.at("routes_agree")) << ", injectivity gap "
        << yes_no(g.at("injectivity_gap")) << "\n";
  } else {
    out << "degree inequality: not applicable\n";
  }
  if (!ver.at("structure").is_null()) {
    out << "surjective projections: " << list_text(ver.at("structure").at("surjective")) << "\n";
  }
  out << "smooth: " << ver.at("smooth").get<std::string>() << "\n";
  const auto& alerts = j.at("alerts");
  out << "alerts: " << alerts.size() << "\n";
  for (const auto& a : alerts) out << "  ! " << a.get<std::string>() << "\n";
  return out.str();
}

}  // namespace abcover
