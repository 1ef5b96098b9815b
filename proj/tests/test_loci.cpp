#include <doctest.h>

#include "abcover/gallery.hpp"
#include "abcover/loci.hpp"
#include "abcover/sheaf.hpp"
#include "oracles.hpp"
#include "random_configs.hpp"

using namespace abcover;

namespace {

// A test point of the dual torus: per factor either a torsion point or a
// generic (non-torsion) point, written as nullopt.
using TestPoint = std::vector<std::optional<Element>>;

std::vector<TestPoint> test_points(const std::vector<BaseFactor>& bases) {
  std::vector<TestPoint> out{{}};
  for (const auto& b : bases) {
    std::vector<TestPoint> next;
    const auto t = b.torsion_group.invariant_factors();
    for (const auto& p : out) {
      auto q = p;
      q.push_back(std::nullopt);
      next.push_back(q);
      for (const auto& x : oracle::all_elements(t)) {
        auto r = p;
        r.push_back(x);
        next.push_back(r);
      }
    }
    out = std::move(next);
  }
  return out;
}

// h^i(L (x) P) != 0 for some summand L, straight from the Kunneth closed form.
bool in_v_oracle(const CoverConfiguration& c, int i, const TestPoint& p) {
  const auto b = bases(c);
  const auto dims = base_dims(c);
  for (const auto& s : omega_pushforward(c)) {
    // Only trivial versus nontrivial matters on degree-zero slots.
    auto classes = s.classes;
    for (std::size_t j = 0; j < classes.size(); ++j) {
      if (classes[j].degree != 0) continue;
      const auto t = b[j].torsion_group.invariant_factors();
      const bool trivial = p[j] && oracle::add(t, classes[j].torsion, *p[j]) == Element(t.size(), 0);
      classes[j] = BundleClass{0, {trivial ? 0 : 1}};
    }
    const auto h = oracle::summand_cohomology(classes, dims);
    if (h[static_cast<std::size_t>(i)] != 0) return true;
  }
  return false;
}

bool in_component(const LocusComponent& comp, const TestPoint& p) {
  for (std::size_t j = 0; j < comp.entries.size(); ++j) {
    const auto& e = comp.entries[j];
    if (e.full()) continue;
    if (!p[j] || *p[j] != *e.point) return false;
  }
  return true;
}

void check_loci(const CoverConfiguration& c) {
  const auto b = bases(c);
  const auto pts = test_points(b);
  const auto dims = base_dims(c);
  const int n = static_cast<int>(total_dim(c));
  for (int i = 0; i <= n; ++i) {
    const auto v = v_locus(c, i);
    CHECK(std::is_sorted(v.begin(), v.end()));
    for (const auto& comp : v) {
      Int codim = 0;
      for (std::size_t j = 0; j < comp.entries.size(); ++j) codim += comp.entries[j].full() ? 0 : dims[j];
      CHECK(comp.codim == codim);
      for (const auto& other : v) {
        if (&other != &comp) CHECK_FALSE(contained_in(comp, other));
      }
    }
    for (const auto& p : pts) {
      const bool got = std::any_of(v.begin(), v.end(), [&](const LocusComponent& comp) { return in_component(comp, p); });
      CHECK(got == in_v_oracle(c, i, p));
    }
  }
  // S_f is the codim-i part of V^i, i >= 1.
  std::vector<SfEntry> expected;
  for (int i = 1; i <= n; ++i) {
    for (const auto& comp : v_locus(c, i)) {
      if (comp.codim == i) expected.push_back(SfEntry{comp, i});
    }
  }
  CHECK(s_f(c) == expected);
  // Proxy: every factor is whole in some V^0 component.
  const auto v0 = v_locus(c, 0);
  bool proxy = true;
  for (std::size_t j = 0; j < b.size(); ++j) {
    proxy = proxy && std::any_of(v0.begin(), v0.end(), [&](const LocusComponent& comp) { return comp.entries[j].full(); });
  }
  CHECK(general_type_proxy(c) == proxy);
}

}  // namespace

TEST_CASE("loci of the gallery against pointwise cohomology") {
  for (const auto& e : gallery()) {
    CAPTURE(e.name);
    check_loci(build(e.name));
  }
  check_loci(build("chi0_p2", Json{{"p", 2}}));
}

TEST_CASE("loci of random product quotients against pointwise cohomology") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 40; ++trial) check_loci(testing_support::random_pq(rng, 2));
}

TEST_CASE("V^0 of the chi = 0 example has one component per curve") {
  const auto c = build("chi0_p2", Json{{"p", 3}});
  const auto v0 = v_locus(c, 0);
  REQUIRE(v0.size() == 4);
  for (const auto& comp : v0) {
    CHECK(comp.codim == 1);
    int points = 0;
    for (const auto& e : comp.entries) {
      if (!e.full()) {
        ++points;
        CHECK(coords::is_zero(*e.point));
      }
    }
    CHECK(points == 1);
  }
  CHECK(general_type_proxy(c));
}

TEST_CASE("Iitaka surface fails the general type proxy") {
  CHECK_FALSE(general_type_proxy(build("iitaka_surface")));
}

TEST_CASE("containment of components") {
  const LocusEntry full{};
  const LocusEntry zero{Element{0, 0}};
  const LocusEntry one{Element{1, 0}};
  const LocusComponent a{{zero, zero}, 2, {}};
  const LocusComponent b{{full, zero}, 1, {}};
  const LocusComponent c{{full, one}, 1, {}};
  CHECK(contained_in(a, b));
  CHECK_FALSE(contained_in(b, a));
  CHECK_FALSE(contained_in(a, c));
  CHECK(contained_in(a, a));
}

TEST_CASE("flipped sign convention is caught by the witness check") {
  AnalyzeOptions flipped;
  flipped.sign = SignConvention::Flipped;
  CHECK(golden_check("rt_p2", Json{{"p", 3}}).pass);
  const auto r = golden_check("rt_p2", Json{{"p", 3}}, flipped);
  CHECK_FALSE(r.pass);
  CHECK(std::any_of(r.mismatches.begin(), r.mismatches.end(),
                    [](const GoldenMismatch& m) { return m.field == "v0_witness_consistent"; }));
}
