#include <doctest.h>

#include "abcover/error.hpp"
#include "abcover/gallery.hpp"
#include "abcover/sheaf.hpp"
#include "oracles.hpp"

using namespace abcover;

namespace {

const FiniteAbelianGroup kV4({2, 2});

FactorDatum z2_factor(Int degree, Element tag = {0, 0}) {
  auto f = FactorDatum::blank(BaseFactor{1, 1, kV4}, FiniteAbelianGroup({2}));
  f.classes[1] = BundleClass{degree, std::move(tag)};
  return f;
}

ProductQuotient diagonal_z2(std::vector<FactorDatum> factors) {
  ProductQuotient pq{std::move(factors), {}};
  pq.subgroup = subgroup_from_generators(pq.ambient(), std::vector<Element>{Element(pq.factors.size(), 1)});
  return pq;
}

bool has_violation(const ValidationReport& r, const std::string& id) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.constraint == id; });
}

}  // namespace

TEST_CASE("validation accepts well-formed data") {
  CHECK(validate(diagonal_z2({z2_factor(1), z2_factor(1), z2_factor(1)})).ok());
  CHECK(validate(diagonal_z2({z2_factor(0, {1, 0}), z2_factor(2)})).ok());
}

TEST_CASE("validation identifiers") {
  SUBCASE("trivial class at a nontrivial character") {
    CHECK(has_violation(validate(diagonal_z2({z2_factor(0), z2_factor(1)})), "trivial-class"));
  }
  SUBCASE("negative degree") {
    CHECK(has_violation(validate_factor(z2_factor(-1)), "degree-sign"));
  }
  SUBCASE("tag outside the torsion group") {
    CHECK(has_violation(validate_factor(z2_factor(0, {2, 0})), "torsion-tag"));
  }
  SUBCASE("trivial character must carry the trivial class") {
    auto f = z2_factor(1);
    f.classes[0].degree = 1;
    CHECK(has_violation(validate_factor(f), "trivial-character"));
  }
  SUBCASE("subadditivity") {
    auto f = FactorDatum::blank(BaseFactor{1, 1, kV4}, FiniteAbelianGroup({3}));
    f.classes[1] = BundleClass{1, {0, 0}};
    f.classes[2] = BundleClass{3, {0, 0}};
    CHECK(has_violation(validate_factor(f), "subadditivity"));
  }
  SUBCASE("degree-zero characters form a subgroup") {
    auto f = FactorDatum::blank(BaseFactor{1, 1, FiniteAbelianGroup({3, 3})}, FiniteAbelianGroup({3}));
    f.classes[1] = BundleClass{0, {1, 0}};
    f.classes[2] = BundleClass{1, {0, 0}};
    CHECK(has_violation(validate_factor(f), "degree-zero-subgroup"));
  }
  SUBCASE("torsion tags additive and injective") {
    auto f = FactorDatum::blank(BaseFactor{1, 1, kV4}, kV4);
    f.classes[1] = BundleClass{0, {1, 0}};
    f.classes[2] = BundleClass{0, {0, 1}};
    f.classes[3] = BundleClass{0, {0, 1}};
    const auto r = validate_factor(f);
    CHECK(has_violation(r, "torsion-homomorphism"));
    CHECK(has_violation(r, "torsion-injective"));
  }
  SUBCASE("base dimension") {
    auto f = z2_factor(1);
    f.base.base_dim = 0;
    CHECK(has_violation(validate_factor(f), "base-dim"));
    f.base.base_dim = 2;
    f.base.simple_factors = 3;
    CHECK(has_violation(validate_factor(f), "simple-factors"));
  }
  SUBCASE("product quotients need curves") {
    auto f = z2_factor(1);
    f.base.base_dim = 2;
    CHECK(has_violation(validate(diagonal_z2({f, z2_factor(1)})), "curve-factor"));
  }
  SUBCASE("class count") {
    auto pq = diagonal_z2({z2_factor(1), z2_factor(1)});
    pq.factors[0].classes.pop_back();
    CHECK(has_violation(validate(pq), "class-count"));
  }
  SUBCASE("box covers must be connected") {
    auto box = DirectBoxCover::blank({BaseFactor{1, 1, kV4}}, FiniteAbelianGroup({2}));
    CHECK(has_violation(validate(box), "connectedness"));
    box.classes[1][0] = BundleClass{0, {1, 1}};
    CHECK(validate(box).ok());
  }
  SUBCASE("require_valid throws") {
    CHECK_THROWS_AS(require_valid(diagonal_z2({z2_factor(0), z2_factor(1)})), ValidationError);
  }
}

TEST_CASE("genus of a curve factor") {
  CHECK(factor_genus(z2_factor(1)) == 2);
  CHECK(factor_genus(z2_factor(3)) == 4);
  CHECK(factor_genus(z2_factor(0, {1, 0})) == 1);
}

TEST_CASE("box cover presentation lists the same summands") {
  for (const auto& name : {"ein_lazarsfeld", "chen_hacon", "chi0_p2", "non_p2"}) {
    const auto pq = std::get<ProductQuotient>(build(name));
    const auto box = to_box_cover(pq);
    CAPTURE(name);
    CHECK(validate(box).ok());
    CHECK(box.group.order() == pq.ambient().order() / pq.subgroup.order());
    std::multiset<std::vector<BundleClass>> from_pq, from_box;
    for (const auto& s : omega_pushforward(pq)) from_pq.insert(s.classes);
    for (const auto& row : box.classes) from_box.insert(row);
    CHECK(from_pq == from_box);
    // Every box character maps into H^perp.
    const auto perp = annihilator(pq.subgroup);
    coords::for_each_element(box.group.moduli(), [&](const Element& tau) {
      CHECK(perp.contains(box_character_to_product(pq, tau)));
    });
  }
}

TEST_CASE("twisting moves tags but not degrees") {
  const auto box = to_box_cover(std::get<ProductQuotient>(build("chi0_p2", Json{{"p", 2}})));
  const std::size_t n = box.factors.size();
  std::vector<std::vector<Element>> images(box.group.rank(), std::vector<Element>(n, Element{1, 0}));
  const auto t = twist(box, images);
  CHECK(euler_char_omega(t) == euler_char_omega(box));
  for (std::size_t k = 0; k < box.classes.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) CHECK(t.classes[k][j].degree == box.classes[k][j].degree);
  }
  images[0][0] = Element{2, 0};
  CHECK_THROWS_AS(twist(box, images), MalformedInput);
}

TEST_CASE("etale pullback scales degrees and maps tags") {
  auto box = DirectBoxCover::blank({BaseFactor{1, 1, kV4}, BaseFactor{1, 1, kV4}}, FiniteAbelianGroup({2}));
  box.classes[1] = {BundleClass{1, {0, 0}}, BundleClass{0, {1, 0}}};
  REQUIRE(validate(box).ok());
  // Multiplication by 2 kills 2-torsion: the twisted summand becomes trivial
  // on the second factor, but the first keeps it connected.
  const std::vector<PullbackFactor> maps = {
      PullbackFactor{2, kV4, {{1, 0}, {0, 1}}},
      PullbackFactor{2, kV4, {{0, 0}, {0, 0}}},
  };
  const auto r = etale_pullback(box, maps);
  CHECK_FALSE(r.disconnected);
  CHECK(r.cover.classes[1][0].degree == 2);
  CHECK(r.cover.classes[1][1].is_trivial());

  auto pure = DirectBoxCover::blank({BaseFactor{1, 1, kV4}}, FiniteAbelianGroup({2}));
  pure.classes[1] = {BundleClass{0, {1, 0}}};
  const auto killed = etale_pullback(pure, {PullbackFactor{4, kV4, {{0, 0}, {0, 0}}}});
  CHECK(killed.disconnected);
}
