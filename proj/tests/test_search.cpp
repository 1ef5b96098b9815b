#include <doctest.h>

#include <set>
#include <sstream>

#include "abcover/error.hpp"
#include "abcover/gallery.hpp"
#include "abcover/search.hpp"

using namespace abcover;

namespace {

const FiniteAbelianGroup kZ2({2});
const FiniteAbelianGroup kZ3({3});
const FiniteAbelianGroup kV4({2, 2});
const FiniteAbelianGroup kZ3sq({3, 3});

SearchSpec z2_cube(Int min_degree, Int max_degree) {
  SearchSpec s;
  for (int j = 0; j < 3; ++j) s.factors.push_back(FactorTemplate{kZ2, kV4, min_degree, max_degree});
  s.require_surjective = true;
  return s;
}

std::string jsonl(const SearchResult& r) {
  std::ostringstream out;
  write_jsonl(r, out);
  return out.str();
}

// Every raw configuration of the spec, analyzed independently.
std::vector<CoverConfiguration> raw_space(SearchSpec spec) {
  spec.symmetry = SearchSymmetry::Off;
  spec.predicates.clear();
  spec.limit.reset();
  std::vector<CoverConfiguration> out;
  for (const auto& c : run_search(spec).certificates) out.push_back(c.config);
  return out;
}

}  // namespace

TEST_CASE("the Ein-Lazarsfeld cover is found among chi = 0 configurations") {
  auto spec = z2_cube(1, 1);
  spec.predicates = {"chi0"};
  const auto r = run_search(spec);
  REQUIRE(r.matched > 0);
  const auto el = build("ein_lazarsfeld");
  const auto target = canonical_encoding(el);
  bool found = false;
  for (const auto& c : r.certificates) {
    CHECK(c.flags.at("chi0"));
    found = found || canonical_encoding(c.config) == target;
  }
  CHECK(found);
}

TEST_CASE("rct configurations are found and re-certify") {
  SearchSpec spec;
  spec.factors = {FactorTemplate{kZ2, kV4, 0, 1}, FactorTemplate{kZ2, kV4, 0, 1}};
  spec.predicates = {"rct"};
  spec.symmetry = SearchSymmetry::Full;
  const auto r = run_search(spec);
  CHECK(r.matched > 0);
  for (const auto& c : r.certificates) {
    const auto report = analyze(c.config);
    CHECK(report.rct.certified);
    CHECK(report.chi_omega == 0);
  }
  // A torus has chi(omega) = 0.
  spec.predicates = {"rct", "!chi0"};
  CHECK(run_search(spec).matched == 0);
}

TEST_CASE("no predicates enumerates the whole space") {
  auto spec = z2_cube(0, 1);
  const auto r = run_search(spec);
  CHECK(r.examined == r.space_size);
  CHECK(r.matched == r.examined);
  CHECK(static_cast<Int>(r.certificates.size()) == r.matched);
  CHECK(estimate_space(spec) == r.space_size);
  for (std::size_t i = 0; i < r.certificates.size(); ++i) CHECK(r.certificates[i].index == static_cast<Int>(i));
  // Raw enumeration has no duplicates.
  std::set<std::string> seen;
  for (const auto& c : r.certificates) seen.insert(to_json(c.config).dump());
  CHECK(seen.size() == r.certificates.size());
}

TEST_CASE("flag counts are tallies of the certificate flags") {
  auto spec = z2_cube(0, 1);
  spec.symmetry = SearchSymmetry::Full;
  const auto r = run_search(spec);
  for (const auto& name : predicate_names()) {
    Int n = 0;
    for (const auto& c : r.certificates) n += c.flags.at(name) ? 1 : 0;
    CHECK(r.flag_counts.at(name) == n);
  }
}

TEST_CASE("output does not depend on the number of jobs") {
  SearchSpec spec;
  spec.factors = {FactorTemplate{kZ2, kV4, 0, 2}, FactorTemplate{kZ3, kZ3sq, 0, 1}};
  spec.predicates = {"chi0"};
  for (auto sym : {SearchSymmetry::Off, SearchSymmetry::Full}) {
    spec.symmetry = sym;
    CHECK(jsonl(run_search(spec, 1)) == jsonl(run_search(spec, 4)));
  }
}

TEST_CASE("certificates are sound") {
  auto spec = z2_cube(0, 2);
  spec.symmetry = SearchSymmetry::Full;
  spec.predicates = {"!rct"};
  spec.limit = 5;
  const auto r = run_search(spec);
  CHECK(r.certificates.size() == 5);
  CHECK(r.matched > 5);
  for (const auto& c : r.certificates) {
    CHECK(report_digest(c.config, spec.gate) == c.digest);
    CHECK(predicate_flags(analyze(c.config)) == c.flags);
    CHECK(canonical_form(c.config) == c.config);
  }
}

TEST_CASE("full symmetry keeps exactly one configuration per class") {
  const std::vector<SearchSpec> specs = [] {
    std::vector<SearchSpec> v;
    v.push_back(z2_cube(0, 1));
    SearchSpec mixed;
    mixed.factors = {FactorTemplate{kV4, kV4, 0, 1}, FactorTemplate{kZ2, kV4, 0, 1}};
    v.push_back(mixed);
    SearchSpec three;
    three.factors = {FactorTemplate{kZ3, kZ3sq, 0, 1}, FactorTemplate{kZ3, kZ3sq, 0, 1}};
    v.push_back(three);
    return v;
  }();
  for (auto spec : specs) {
    std::set<std::string> classes;
    for (const auto& c : raw_space(spec)) classes.insert(canonical_encoding(c));
    spec.symmetry = SearchSymmetry::Full;
    const auto r = run_search(spec);
    std::set<std::string> got;
    for (const auto& c : r.certificates) got.insert(canonical_encoding(c.config));
    CHECK(got.size() == r.certificates.size());
    CHECK(got == classes);

    spec.symmetry = SearchSymmetry::Torsion;
    const auto t = run_search(spec);
    CHECK(t.examined >= r.examined);
    CHECK(t.examined <= estimate_space(spec));
  }
}

TEST_CASE("canonical forms") {
  SUBCASE("reordering identical factors") {
    auto pq = std::get<ProductQuotient>(build("non_p2"));
    auto swapped = pq;
    // Factor 0 is (Z/2)^2 and takes coordinates 0 and 1.
    std::swap(swapped.factors[1], swapped.factors[2]);
    const auto amb = swapped.ambient();
    std::vector<Element> gens;
    for (auto x : pq.subgroup.basis()) {
      std::swap(x[2], x[3]);
      gens.push_back(x);
    }
    swapped.subgroup = subgroup_from_generators(amb, gens);
    CHECK(canonical_encoding(pq) == canonical_encoding(swapped));
    CHECK(report_digest(canonical_form(pq), Gate::Chi0) == report_digest(canonical_form(swapped), Gate::Chi0));
  }
  SUBCASE("negating a torsion tag") {
    auto f = FactorDatum::blank(BaseFactor{1, 1, kZ3sq}, kZ3);
    f.classes[1] = BundleClass{0, {1, 0}};
    f.classes[2] = BundleClass{0, {2, 0}};
    auto g = FactorDatum::blank(BaseFactor{1, 1, kZ3sq}, kZ3);
    g.classes[1] = BundleClass{0, {2, 0}};
    g.classes[2] = BundleClass{0, {1, 0}};
    auto a = FactorDatum::blank(BaseFactor{1, 1, kZ3sq}, kZ3);
    a.classes[1] = BundleClass{1, {0, 0}};
    a.classes[2] = BundleClass{1, {0, 0}};
    ProductQuotient p{{f, a}, {}};
    ProductQuotient q{{g, a}, {}};
    p.subgroup = subgroup_from_generators(p.ambient(), std::vector<Element>{{1, 1}});
    q.subgroup = subgroup_from_generators(q.ambient(), std::vector<Element>{{1, 1}});
    CHECK(canonical_encoding(p) == canonical_encoding(q));
    CHECK(canonical_encoding(p, false) == canonical_encoding(q, false));
  }
  SUBCASE("different covers stay apart") {
    CHECK(canonical_encoding(build("ein_lazarsfeld")) != canonical_encoding(build("chen_hacon")));
    CHECK(canonical_encoding(build("chi0_p2", Json{{"p", 2}})) != canonical_encoding(build("chi0_p2")));
  }
  SUBCASE("idempotent") {
    for (const auto& e : gallery()) {
      const auto c = canonical_form(build(e.name));
      CHECK(canonical_form(c) == c);
    }
  }
}

TEST_CASE("limits and refusals") {
  auto spec = z2_cube(0, 2);
  spec.max_space = 10;
  CHECK_THROWS_AS(run_search(spec), ResourceExceeded);
  spec.max_space = 50'000'000;
  spec.limit = 0;
  const auto r = run_search(spec);
  CHECK(r.certificates.empty());
  CHECK(r.matched == r.examined);
}

TEST_CASE("spec parsing") {
  const Json good = Json::parse(R"({
    "factors": [{"group": [2], "torsion_group": [2, 2], "max_degree": 1},
                {"group": [2], "torsion_group": [2, 2], "max_degree": 1}],
    "subgroups": {"surjective": true},
    "predicates": ["chi0", "!rct"],
    "symmetry": "full"
  })");
  const auto s = search_spec_from_json(good);
  CHECK(s.factors.size() == 2);
  CHECK(s.require_surjective);
  CHECK(s.symmetry == SearchSymmetry::Full);
  CHECK(search_spec_from_json(to_json(s)).predicates == s.predicates);
  CHECK(to_json(search_spec_from_json(to_json(s))) == to_json(s));

  auto pointer_of = [](const Json& j) {
    try {
      search_spec_from_json(j);
    } catch (const MalformedInput& e) {
      return e.pointer();
    }
    return std::string("<no error>");
  };
  Json j = good;
  j["predicates"][1] = "nonsense";
  CHECK(pointer_of(j) == "/predicates/1");
  j = good;
  j["factors"][1]["max_degree"] = -1;
  CHECK(pointer_of(j) == "/factors/1");
  j = good;
  j["symmetry"] = "some";
  CHECK(pointer_of(j) == "/symmetry");
  j = good;
  j["factors"][0]["group"] = "Z2";
  CHECK(pointer_of(j).rfind("/factors/0/group", 0) == 0);
}
