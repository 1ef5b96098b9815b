#include "abcover/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

#include "abcover/digest.hpp"
#include "abcover/error.hpp"

namespace abcover {

namespace {

using Wide = __int128;

// ---------------------------------------------------------------------------
// Group actions on characters, tags and subgroups

// perm[idx(chi)] = idx(chi o alpha) for alpha given by generator images.
std::vector<Int> pullback_permutation(const FiniteAbelianGroup& g, const Automorphism& alpha) {
  const auto m = g.moduli();
  std::vector<Int> perm(static_cast<std::size_t>(g.order()));
  Int idx = 0;
  coords::for_each_element(m, [&](const Element& chi) {
    Element image(m.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
      const Rational r = pairing(m, chi, alpha[k]);
      image[k] = r.num * m[k] / r.den;
    }
    perm[static_cast<std::size_t>(idx++)] = coords::index_of(m, image);
  });
  return perm;
}

std::vector<BundleClass> map_tags(const std::vector<BundleClass>& classes, const FiniteAbelianGroup& t,
                                  const Automorphism& beta) {
  std::vector<BundleClass> out = classes;
  for (auto& c : out) {
    if (!c.torsion.empty()) c.torsion = hom_apply(t.moduli(), beta, c.torsion);
  }
  return out;
}

std::vector<BundleClass> permute_classes(const std::vector<BundleClass>& classes,
                                         const std::vector<Int>& perm) {
  std::vector<BundleClass> out(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) out[c] = classes[static_cast<std::size_t>(perm[c])];
  return out;
}

// Smallest image of a class column under the torsion automorphisms.
std::vector<BundleClass> torsion_normal(const std::vector<BundleClass>& classes, const FiniteAbelianGroup& t,
                                        const std::vector<Automorphism>& autos) {
  std::vector<BundleClass> best = classes;
  for (const auto& beta : autos) {
    auto cand = map_tags(classes, t, beta);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

struct FactorSymmetry {
  std::vector<Automorphism> group_autos;
  std::vector<std::vector<Int>> character_perms;  // per group automorphism
  std::vector<Automorphism> torsion_autos;
};

FactorSymmetry factor_symmetry(const FiniteAbelianGroup& g, const FiniteAbelianGroup& t) {
  FactorSymmetry s;
  s.group_autos = automorphisms(g);
  for (const auto& a : s.group_autos) s.character_perms.push_back(pullback_permutation(g, a));
  s.torsion_autos = automorphisms(t);
  return s;
}

// Element of prod Aut(G_j) x S_n acting by (g.x)_{perm[j]} = alpha_j(x_j).
struct Transform {
  std::vector<std::size_t> perm;
  std::vector<std::size_t> autos;  // index into FactorSymmetry::group_autos per source factor
};

Subgroup apply_transform(const Subgroup& h, const std::vector<const FactorSymmetry*>& sym,
                         const Transform& t) {
  const auto& amb = h.ambient();
  std::vector<Element> gens;
  for (const auto& x : h.basis()) {
    std::vector<Element> parts(amb.factor_count());
    for (std::size_t j = 0; j < amb.factor_count(); ++j) {
      const auto& alpha = sym[j]->group_autos[t.autos[j]];
      parts[t.perm[j]] = hom_apply(amb.factor(j).moduli(), alpha, amb.component(x, j));
    }
    gens.push_back(amb.join(parts));
  }
  return subgroup_from_generators(amb, gens);
}

// Every transform whose permutation only swaps factors of equal `kind`.
std::vector<Transform> all_transforms(const std::vector<int>& kind,
                                      const std::vector<const FactorSymmetry*>& sym, bool permutations,
                                      Int bound = 2'000'000) {
  const std::size_t n = kind.size();
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t j = 0; j < n; ++j) ok = ok && kind[j] == kind[p[j]];
    if (ok) perms.push_back(p);
  } while (permutations && std::next_permutation(p.begin(), p.end()));
  Wide total = static_cast<Wide>(perms.size());
  for (const auto* s : sym) total *= static_cast<Wide>(s->group_autos.size());
  if (total > bound) throw ResourceExceeded("symmetry group too large for canonical forms");

  std::vector<Transform> out;
  for (const auto& perm : perms) {
    Transform t{perm, std::vector<std::size_t>(n, 0)};
    while (true) {
      out.push_back(t);
      std::size_t j = n;
      while (j > 0 && ++t.autos[j - 1] == sym[j - 1]->group_autos.size()) {
        t.autos[j - 1] = 0;
        --j;
      }
      if (j == 0) break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical forms

ProductQuotient canonical_pq(const ProductQuotient& pq, bool permutations) {
  const std::size_t n = pq.factors.size();
  std::vector<FactorSymmetry> syms;
  std::vector<int> kind(n);
  for (std::size_t j = 0; j < n; ++j) {
    syms.push_back(factor_symmetry(pq.factors[j].group, pq.factors[j].base.torsion_group));
    kind[j] = static_cast<int>(j);
    for (std::size_t i = 0; i < j; ++i) {
      if (pq.factors[i].base == pq.factors[j].base && pq.factors[i].group == pq.factors[j].group) {
        kind[j] = kind[i];
        break;
      }
    }
  }
  std::vector<const FactorSymmetry*> sym;
  for (const auto& s : syms) sym.push_back(&s);

  std::optional<ProductQuotient> best;
  for (const auto& t : all_transforms(kind, sym, permutations)) {
    ProductQuotient cand;
    cand.factors.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      auto f = pq.factors[j];
      f.classes = torsion_normal(permute_classes(f.classes, sym[j]->character_perms[t.autos[j]]),
                                 f.base.torsion_group, sym[j]->torsion_autos);
      cand.factors[t.perm[j]] = std::move(f);
    }
    cand.subgroup = apply_transform(pq.subgroup, sym, t);
    if (!best) {
      best = std::move(cand);
      continue;
    }
    if (auto c = cand.subgroup <=> best->subgroup; c != 0) {
      if (c < 0) best = std::move(cand);
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (cand.factors[j].classes != best->factors[j].classes) {
        if (cand.factors[j].classes < best->factors[j].classes) best = std::move(cand);
        break;
      }
    }
  }
  return *best;
}

// Columns are compared factor by factor, so each column is normalized by its
// own torsion automorphisms.
DirectBoxCover canonical_box(const DirectBoxCover& box, bool permutations) {
  const std::size_t n = box.factors.size();
  const auto q_autos = automorphisms(box.group);
  std::vector<std::vector<Int>> q_perms;
  for (const auto& a : q_autos) q_perms.push_back(pullback_permutation(box.group, a));
  std::vector<std::vector<Automorphism>> t_autos;
  for (const auto& b : box.factors) t_autos.push_back(automorphisms(b.torsion_group));

  auto column = [&](std::size_t j) {
    std::vector<BundleClass> col;
    for (const auto& row : box.classes) col.push_back(row[j]);
    return col;
  };
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t j = 0; j < n; ++j) ok = ok && box.factors[j] == box.factors[p[j]];
    if (ok) perms.push_back(p);
  } while (permutations && std::next_permutation(p.begin(), p.end()));
  if (static_cast<Wide>(perms.size()) * static_cast<Wide>(q_autos.size()) > 2'000'000) {
    throw ResourceExceeded("symmetry group too large for canonical forms");
  }

  std::vector<std::vector<BundleClass>> best_cols;
  std::vector<std::vector<BundleClass>> base_cols;
  for (std::size_t j = 0; j < n; ++j) base_cols.push_back(column(j));
  for (const auto& qp : q_perms) {
    std::vector<std::vector<BundleClass>> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
      cols[j] = torsion_normal(permute_classes(base_cols[j], qp), box.factors[j].torsion_group, t_autos[j]);
    }
    for (const auto& perm : perms) {
      std::vector<std::vector<BundleClass>> placed(n);
      for (std::size_t j = 0; j < n; ++j) placed[perm[j]] = cols[j];
      if (best_cols.empty() || placed < best_cols) best_cols = std::move(placed);
    }
  }
  DirectBoxCover out = box;
  for (std::size_t k = 0; k < out.classes.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) out.classes[k][j] = best_cols[j][k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factor data enumeration

struct DataList {
  std::vector<std::vector<BundleClass>> raw;
  std::vector<std::vector<BundleClass>> normal;  // sorted torsion-normal representatives
};

DataList enumerate_data(const FactorTemplate& t, const FactorSymmetry& sym) {
  if (t.min_degree < 0 || t.max_degree < t.min_degree) {
    throw MalformedInput("degree range must satisfy 0 <= min_degree <= max_degree");
  }
  const BaseFactor base{t.base_dim, 1, t.torsion_group};
  const auto gm = t.group.moduli();
  const auto tm = t.torsion_group.moduli();
  const std::size_t count = static_cast<std::size_t>(t.group.order());
  const Int span = t.max_degree - t.min_degree + 1;
  const Int nonzero_tags = t.torsion_group.order() - 1;

  Wide raw_bound = 1;
  for (std::size_t c = 1; c < count; ++c) {
    raw_bound *= span + (t.min_degree == 0 ? nonzero_tags - 1 : 0);
    if (raw_bound > 10'000'000) throw ResourceExceeded("factor data enumeration exceeds bound");
  }

  DataList out;
  auto blank = FactorDatum::blank(base, t.group);
  std::vector<BundleClass> current = blank.classes;
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == count) {
      FactorDatum f = blank;
      f.classes = current;
      if (validate_factor(f).ok()) out.raw.push_back(current);
      return;
    }
    for (Int d = t.min_degree; d <= t.max_degree; ++d) {
      if (d > 0) {
        current[c] = BundleClass{d, coords::zero(tm)};
        rec(c + 1);
        continue;
      }
      for (Int k = 1; k <= nonzero_tags; ++k) {
        current[c] = BundleClass{0, coords::element_at(tm, k)};
        rec(c + 1);
      }
    }
  };
  (void)gm;
  rec(1);
  for (const auto& d : out.raw) {
    if (torsion_normal(d, t.torsion_group, sym.torsion_autos) == d) out.normal.push_back(d);
  }
  std::sort(out.normal.begin(), out.normal.end());
  return out;
}

ProductGroup template_ambient(const SearchSpec& spec) {
  std::vector<FiniteAbelianGroup> gs;
  for (const auto& f : spec.factors) gs.push_back(f.group);
  return ProductGroup(gs);
}

std::vector<Subgroup> search_subgroups(const SearchSpec& spec) {
  const auto g = template_ambient(spec);
  return enumerate_subgroups(g, [&](const Subgroup& h) {
    if (!spec.require_surjective && !spec.require_pairwise_injective) return true;
    const auto checks = projection_checks(h);
    if (spec.require_surjective && !checks.all_surjective()) return false;
    if (spec.require_pairwise_injective && !checks.all_pairwise_injective()) return false;
    return true;
  });
}

// ---------------------------------------------------------------------------
// Predicates

bool torsion_factor_from(const std::vector<Summand>& summands) {
  for (const auto& s : summands) {
    const bool trivial = std::all_of(s.classes.begin(), s.classes.end(),
                                     [](const BundleClass& c) { return c.is_trivial(); });
    if (trivial) continue;
    if (std::none_of(s.classes.begin(), s.classes.end(),
                     [](const BundleClass& c) { return c.is_torsion(); })) {
      return false;
    }
  }
  return true;
}

bool maximal_v0_in_sf(const AnalysisReport& r) {
  for (const auto& c : r.loci.at(0)) {
    if (c.codim == 0) continue;
    const bool found = std::any_of(r.s_f.begin(), r.s_f.end(), [&](const SfEntry& e) {
      return e.i == c.codim && e.component == c;
    });
    if (!found) return false;
  }
  return true;
}

std::string spec_hash(const SearchSpec& spec) { return sha256_hex(to_json(spec).dump()); }

struct Matcher {
  std::vector<std::pair<std::string, bool>> terms;  // name, expected value

  explicit Matcher(const std::vector<std::string>& preds) {
    const auto& names = predicate_names();
    for (std::size_t i = 0; i < preds.size(); ++i) {
      std::string name = preds[i];
      bool want = true;
      if (!name.empty() && name[0] == '!') {
        want = false;
        name.erase(0, 1);
      }
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw MalformedInput("unknown predicate '" + name + "'", "/predicates/" + std::to_string(i));
      }
      terms.emplace_back(name, want);
    }
  }

  bool operator()(const std::map<std::string, bool>& flags) const {
    return std::all_of(terms.begin(), terms.end(),
                       [&](const auto& t) { return flags.at(t.first) == t.second; });
  }
};

const Json& need(const Json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput("missing field '" + key + "'", ptr);
  return j.at(key);
}

Int need_int(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw MalformedInput("expected an integer", ptr);
  return j.get<Int>();
}

FiniteAbelianGroup group_from(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw MalformedInput("expected a list of invariant factors", ptr);
  std::vector<Int> f;
  for (std::size_t i = 0; i < j.size(); ++i) f.push_back(need_int(j[i], ptr + "/" + std::to_string(i)));
  try {
    return FiniteAbelianGroup(f);
  } catch (const MalformedInput& e) {
    throw MalformedInput(e.what(), ptr);
  }
}

SearchSymmetry parse_symmetry(const std::string& s, const std::string& ptr) {
  if (s == "off") return SearchSymmetry::Off;
  if (s == "torsion") return SearchSymmetry::Torsion;
  if (s == "full") return SearchSymmetry::Full;
  throw MalformedInput("symmetry must be off, torsion or full", ptr);
}

// ---------------------------------------------------------------------------
// Execution

struct Unit {
  Subgroup h;
  std::vector<Transform> stabilizer;  // full symmetry only
};

struct UnitResult {
  Int examined = 0;
  std::vector<Certificate> certs;
  std::map<std::string, Int> flag_counts;
};

}  // namespace

const char* symmetry_name(SearchSymmetry s) {
  switch (s) {
    case SearchSymmetry::Off: return "off";
    case SearchSymmetry::Torsion: return "torsion";
    case SearchSymmetry::Full: return "full";
  }
  return "off";
}

SearchSpec search_spec_from_json(const Json& j) {
  if (!j.is_object()) throw MalformedInput("search spec must be an object", "");
  SearchSpec s;
  const auto& factors = need(j, "factors", "");
  if (!factors.is_array() || factors.empty()) throw MalformedInput("factors must be a nonempty list", "/factors");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string p = "/factors/" + std::to_string(i);
    const auto& f = factors[i];
    FactorTemplate t;
    t.group = group_from(need(f, "group", p), p + "/group");
    t.torsion_group = group_from(need(f, "torsion_group", p), p + "/torsion_group");
    if (f.contains("min_degree")) t.min_degree = need_int(f["min_degree"], p + "/min_degree");
    t.max_degree = need_int(need(f, "max_degree", p), p + "/max_degree");
    if (f.contains("base_dim")) t.base_dim = need_int(f["base_dim"], p + "/base_dim");
    if (t.min_degree < 0 || t.max_degree < t.min_degree) {
      throw MalformedInput("need 0 <= min_degree <= max_degree", p);
    }
    if (t.base_dim != 1) throw MalformedInput("search covers curve factors only", p + "/base_dim");
    s.factors.push_back(t);
  }
  if (j.contains("subgroups")) {
    const auto& sg = j["subgroups"];
    if (!sg.is_object()) throw MalformedInput("subgroups must be an object", "/subgroups");
    s.require_surjective = sg.value("surjective", false);
    s.require_pairwise_injective = sg.value("pairwise_injective", false);
  }
  if (j.contains("predicates")) {
    const auto& ps = j["predicates"];
    if (!ps.is_array()) throw MalformedInput("predicates must be a list", "/predicates");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (!ps[i].is_string()) throw MalformedInput("predicate must be a string", "/predicates/" + std::to_string(i));
      s.predicates.push_back(ps[i].get<std::string>());
    }
    Matcher check(s.predicates);
  }
  if (j.contains("limit") && !j["limit"].is_null()) s.limit = need_int(j["limit"], "/limit");
  if (j.contains("max_space")) s.max_space = need_int(j["max_space"], "/max_space");
  if (j.contains("symmetry")) {
    if (!j["symmetry"].is_string()) throw MalformedInput("symmetry must be a string", "/symmetry");
    s.symmetry = parse_symmetry(j["symmetry"].get<std::string>(), "/symmetry");
  }
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw MalformedInput("mode must be a string", "/mode");
    try {
      s.gate = parse_gate(j["mode"].get<std::string>());
    } catch (const std::exception&) {
      throw MalformedInput("mode must be rct or chi0", "/mode");
    }
  }
  return s;
}

Json to_json(const SearchSpec& spec) {
  Json factors = Json::array();
  for (const auto& f : spec.factors) {
    factors.push_back(Json{{"group", group_to_json(f.group)},
                           {"torsion_group", group_to_json(f.torsion_group)},
                           {"min_degree", f.min_degree},
                           {"max_degree", f.max_degree},
                           {"base_dim", f.base_dim}});
  }
  return Json{{"factors", factors},
              {"subgroups",
               {{"surjective", spec.require_surjective}, {"pairwise_injective", spec.require_pairwise_injective}}},
              {"predicates", spec.predicates},
              {"limit", spec.limit ? Json(*spec.limit) : Json(nullptr)},
              {"max_space", spec.max_space},
              {"symmetry", symmetry_name(spec.symmetry)},
              {"mode", gate_name(spec.gate)}};
}

Json to_json(const Certificate& c) {
  Json flags = Json::object();
  for (const auto& [k, v] : c.flags) flags[k] = v;
  return Json{{"index", c.index}, {"config", to_json(c.config)}, {"digest", c.digest}, {"flags", flags}};
}

Json SearchResult::header() const {
  Json counts = Json::object();
  for (const auto& [k, v] : flag_counts) counts[k] = v;
  return Json{{"schema", kCertificateSchema},
              {"spec_hash", spec_hash},
              {"symmetry", symmetry_name(symmetry)},
              {"space_size", space_size},
              {"examined", examined},
              {"matched", matched},
              {"flag_counts", counts}};
}

void write_jsonl(const SearchResult& result, std::ostream& out) {
  out << result.header().dump() << '\n';
  for (const auto& c : result.certificates) out << to_json(c).dump() << '\n';
}

const std::vector<std::string>& predicate_names() {
  static const std::vector<std::string> names = {
      "rct",          "chi0",          "h0_omega_1",    "torsion_factor",     "torus_diamond",
      "gt_proxy",     "v0_codim0",     "rct_equivalence", "chi0_lemma",       "theorem_c_applicable",
      "theorem_c_fails", "theorem_d_applicable", "theorem_d_fails", "extremal_applicable",
      "extremal_fails", "smooth",      "alert",         "exception"};
  return names;
}

std::map<std::string, bool> predicate_flags(const AnalysisReport& r) {
  std::map<std::string, bool> f;
  const auto& v = r.verdicts;
  f["rct"] = r.rct.certified;
  f["chi0"] = r.chi_omega == 0;
  f["h0_omega_1"] = !r.h_omega.empty() && r.h_omega[0] == 1;
  f["torsion_factor"] = torsion_factor_from(r.omega_summands);
  f["torus_diamond"] = r.diamond && *r.diamond == torus_diamond(r.diamond->n);
  f["gt_proxy"] = r.general_type_proxy;
  f["v0_codim0"] = std::any_of(r.loci.at(0).begin(), r.loci.at(0).end(),
                               [](const LocusComponent& c) { return c.codim == 0; });
  f["rct_equivalence"] = f["torsion_factor"] == f["h0_omega_1"] &&
                         (!r.diamond || f["torus_diamond"] == f["h0_omega_1"]);
  f["chi0_lemma"] = f["chi0"] == !f["v0_codim0"] && maximal_v0_in_sf(r);
  f["theorem_c_applicable"] = v.theorem_c.applicable;
  f["theorem_c_fails"] = v.theorem_c.applicable && !v.theorem_c.holds;
  f["theorem_d_applicable"] = v.theorem_d.applicable;
  f["theorem_d_fails"] = v.theorem_d.applicable && !v.theorem_d.holds;
  f["extremal_applicable"] = v.extremal.applicable;
  f["extremal_fails"] = v.extremal.applicable && !v.extremal.holds;
  f["smooth"] = v.smooth == Smoothness::Smooth;
  f["alert"] = !v.alerts.empty();
  f["exception"] = !f["rct_equivalence"] || !f["chi0_lemma"] || f["theorem_c_fails"] ||
                   f["theorem_d_fails"] || f["extremal_fails"] || f["alert"];
  return f;
}

std::string report_digest(const CoverConfiguration& config, Gate gate) {
  AnalyzeOptions o;
  o.gate = gate;
  return sha256_hex(to_json(analyze(config, o)).dump());
}

CoverConfiguration canonical_form(const CoverConfiguration& config, bool permutations) {
  if (const auto* pq = std::get_if<ProductQuotient>(&config)) return canonical_pq(*pq, permutations);
  return canonical_box(std::get<DirectBoxCover>(config), permutations);
}

std::string canonical_encoding(const CoverConfiguration& config, bool permutations) {
  return to_json(canonical_form(config, permutations)).dump();
}

Int estimate_space(const SearchSpec& spec) {
  Wide total = static_cast<Wide>(search_subgroups(spec).size());
  for (const auto& t : spec.factors) {
    const auto sym = factor_symmetry(t.group, t.torsion_group);
    const auto data = enumerate_data(t, sym);
    total *= static_cast<Wide>(spec.symmetry == SearchSymmetry::Off ? data.raw.size() : data.normal.size());
    if (total > Wide{kMaxGroupOrder} * kMaxGroupOrder) break;
  }
  return static_cast<Int>(std::min<Wide>(total, Wide{kMaxGroupOrder} * kMaxGroupOrder));
}

SearchResult run_search(const SearchSpec& spec, unsigned jobs) {
  if (spec.factors.empty()) throw MalformedInput("search needs at least one factor", "/factors");
  const Matcher matcher(spec.predicates);
  const std::size_t n = spec.factors.size();

  std::vector<FactorSymmetry> syms;
  std::vector<DataList> data;
  for (const auto& t : spec.factors) {
    syms.push_back(factor_symmetry(t.group, t.torsion_group));
    data.push_back(enumerate_data(t, syms.back()));
  }
  std::vector<const FactorSymmetry*> sym;
  for (const auto& s : syms) sym.push_back(&s);
  const bool reduced = spec.symmetry != SearchSymmetry::Off;
  std::vector<const std::vector<std::vector<BundleClass>>*> choices;
  for (const auto& d : data) choices.push_back(reduced ? &d.normal : &d.raw);

  const auto subgroups = search_subgroups(spec);
  SearchResult result;
  result.spec_hash = spec_hash(spec);
  result.symmetry = spec.symmetry;
  Wide space = static_cast<Wide>(subgroups.size());
  for (const auto* c : choices) space *= static_cast<Wide>(c->size());
  if (space > spec.max_space) {
    throw ResourceExceeded("search space of " + std::to_string(static_cast<long long>(
                               std::min<Wide>(space, Wide{1} << 62))) +
                           " configurations exceeds max_space " + std::to_string(spec.max_space));
  }
  result.space_size = static_cast<Int>(space);

  // Units of work: every subgroup, or one representative per orbit.
  std::vector<Unit> units;
  std::vector<std::vector<std::vector<std::size_t>>> action;  // [j][alpha][rep] -> rep
  if (spec.symmetry == SearchSymmetry::Full) {
    std::vector<int> kind(n);
    for (std::size_t j = 0; j < n; ++j) {
      kind[j] = static_cast<int>(j);
      for (std::size_t i = 0; i < j; ++i) {
        if (spec.factors[i] == spec.factors[j]) {
          kind[j] = kind[i];
          break;
        }
      }
    }
    const auto transforms = all_transforms(kind, sym, true);
    std::map<std::vector<Int>, std::size_t> position;
    for (std::size_t i = 0; i < subgroups.size(); ++i) position[subgroups[i].hermite()] = i;
    std::vector<bool> seen(subgroups.size(), false);
    for (std::size_t i = 0; i < subgroups.size(); ++i) {
      if (seen[i]) continue;
      Unit u{subgroups[i], {}};
      for (const auto& t : transforms) {
        const auto image = apply_transform(subgroups[i], sym, t);
        const auto it = position.find(image.hermite());
        if (it == position.end()) throw std::logic_error("subgroup constraints not invariant");
        seen[it->second] = true;
        if (it->second == i) u.stabilizer.push_back(t);
      }
      units.push_back(std::move(u));
    }
    action.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& reps = data[j].normal;
      for (const auto& perm : sym[j]->character_perms) {
        std::vector<std::size_t> row;
        for (const auto& d : reps) {
          const auto image = torsion_normal(permute_classes(d, perm), spec.factors[j].torsion_group,
                                            sym[j]->torsion_autos);
          const auto it = std::lower_bound(reps.begin(), reps.end(), image);
          if (it == reps.end() || *it != image) throw std::logic_error("data set not invariant");
          row.push_back(static_cast<std::size_t>(it - reps.begin()));
        }
        action[j].push_back(std::move(row));
      }
    }
  } else {
    for (const auto& h : subgroups) units.push_back(Unit{h, {}});
  }

  AnalyzeOptions options;
  options.gate = spec.gate;
  auto run_unit = [&](const Unit& u) {
    UnitResult out;
    std::vector<std::size_t> idx(n, 0);
    std::vector<std::size_t> image(n);
    Int local = 0;
    bool done = false;
    for (const auto* c : choices) done = done || c->empty();
    while (!done) {
      bool minimal = true;
      for (const auto& t : u.stabilizer) {
        for (std::size_t j = 0; j < n; ++j) image[t.perm[j]] = action[j][t.autos[j]][idx[j]];
        if (image < idx) {
          minimal = false;
          break;
        }
      }
      if (minimal) {
        ProductQuotient pq;
        for (std::size_t j = 0; j < n; ++j) {
          const auto& t = spec.factors[j];
          FactorDatum f{BaseFactor{t.base_dim, 1, t.torsion_group}, t.group, (*choices[j])[idx[j]]};
          pq.factors.push_back(std::move(f));
        }
        pq.subgroup = u.h;
        const CoverConfiguration config = std::move(pq);
        const auto report = analyze(config, options);
        if (!report.valid()) throw std::logic_error("search produced an invalid configuration");
        auto flags = predicate_flags(report);
        for (const auto& [k, v] : flags) out.flag_counts[k] += v ? 1 : 0;
        if (matcher(flags)) {
          out.certs.push_back(Certificate{local, config, sha256_hex(to_json(report).dump()), std::move(flags)});
        }
        ++local;
      }
      std::size_t j = n;
      while (true) {
        if (j == 0) {
          done = true;
          break;
        }
        --j;
        if (++idx[j] < choices[j]->size()) break;
        idx[j] = 0;
      }
    }
    out.examined = local;
    return out;
  };

  std::vector<UnitResult> results(units.size());
  std::vector<std::exception_ptr> errors(units.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < units.size(); i = next++) {
      try {
        results[i] = run_unit(units[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(units.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Ordered merge: unit order is the canonical subgroup order.
  for (auto& r : results) {
    for (auto& c : r.certs) {
      c.index += result.examined;
      ++result.matched;
      if (!spec.limit || static_cast<Int>(result.certificates.size()) < *spec.limit) {
        result.certificates.push_back(std::move(c));
      }
    }
    for (const auto& [k, v] : r.flag_counts) result.flag_counts[k] += v;
    result.examined += r.examined;
  }
  for (const auto& name : predicate_names()) result.flag_counts.try_emplace(name, 0);
  return result;
}

}  // namespace abcover
