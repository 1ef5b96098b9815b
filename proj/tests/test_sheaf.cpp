#include <doctest.h>

#include "abcover/error.hpp"
#include "abcover/gallery.hpp"
#include "abcover/sheaf.hpp"
#include "oracles.hpp"
#include "random_configs.hpp"

using namespace abcover;

namespace {

const FiniteAbelianGroup kV4({2, 2});

BundleClass ample(Int d) { return BundleClass{d, {0, 0}}; }
BundleClass trivial() { return BundleClass{0, {0, 0}}; }
BundleClass torsion() { return BundleClass{0, {1, 0}}; }

std::vector<Int> sum_oracle(const CoverConfiguration& c) {
  const auto dims = base_dims(c);
  Int n = 0;
  for (Int a : dims) n += a;
  std::vector<Int> h(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& s : omega_pushforward(c)) {
    const auto v = oracle::summand_cohomology(s.classes, dims);
    for (std::size_t q = 0; q < h.size(); ++q) h[q] += v[q];
  }
  return h;
}

}  // namespace

TEST_CASE("cohomology vectors of single summands") {
  CHECK(cohomology_vector({trivial(), trivial()}, {1, 1}) == std::vector<Int>{1, 2, 1});
  CHECK(cohomology_vector({ample(1), ample(1), trivial()}, {1, 1, 1}) == std::vector<Int>{1, 1, 0, 0});
  CHECK(cohomology_vector({ample(3), torsion()}, {2, 1}) == std::vector<Int>{0, 0, 0, 0});
  CHECK(cohomology_vector({BundleClass{-2, {0, 0}}, trivial()}, {1, 1}) == std::vector<Int>{0, 2, 2});
}

TEST_CASE("cohomology vectors agree with the closed form") {
  std::mt19937 rng(3);
  const std::vector<BundleClass> pool = {trivial(), torsion(), ample(1), ample(2), BundleClass{-1, {0, 0}},
                                         BundleClass{-3, {1, 1}}};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    std::vector<BundleClass> classes;
    std::vector<Int> dims;
    for (std::size_t j = 0; j < n; ++j) {
      classes.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
      dims.push_back(std::uniform_int_distribution<Int>(1, 3)(rng));
    }
    const auto v = cohomology_vector(classes, dims);
    CHECK(v == oracle::summand_cohomology(classes, dims));
    Int alt = 0;
    for (std::size_t q = 0; q < v.size(); ++q) alt += (q % 2 ? -1 : 1) * v[q];
    // Euler characteristic of a box product is the product of the factors'.
    Int signed_prod = 1;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& c = classes[j];
      signed_prod *= c.degree >= 0 ? c.degree : ((dims[j] % 2) ? c.degree : -c.degree);
    }
    CHECK(alt == signed_prod);
  }
}

TEST_CASE("Ein-Lazarsfeld pushforward by hand") {
  const auto c = build("ein_lazarsfeld");
  const auto s = omega_pushforward(c);
  CHECK(s.size() == 4);
  CHECK(h_omega(c) == std::vector<Int>{4, 6, 3, 1});
  CHECK(euler_char_omega(c) == 0);
  const auto& pq = std::get<ProductQuotient>(c);
  CHECK(omega_p_pushforward(pq, 1).size() == 12);
  CHECK_FALSE(is_rct(c).certified);
  CHECK(hodge_diamond(pq).h[3][0] == 4);
}

TEST_CASE("trivial cover has a single trivial summand") {
  ProductQuotient pq;
  auto f = FactorDatum::blank(BaseFactor{1, 1, kV4}, FiniteAbelianGroup({2}));
  f.classes[1] = ample(1);
  pq.factors = {f, f};
  pq.subgroup = whole_group(pq.ambient());
  const auto s = omega_pushforward(pq);
  REQUIRE(s.size() == 1);
  CHECK(std::all_of(s[0].classes.begin(), s[0].classes.end(), [](const BundleClass& c) { return c.is_trivial(); }));
  CHECK(hodge_diamond(pq) == torus_diamond(2));
}

TEST_CASE("diamonds agree with isotypic invariants of curve products") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 120; ++trial) {
    const auto pq = testing_support::random_pq(rng);
    REQUIRE(validate(pq).ok());
    const auto d = hodge_diamond(pq);
    CHECK(d.h == oracle::hodge_by_invariants(pq));
    const int n = d.n;
    for (int p = 0; p <= n; ++p) {
      for (int q = 0; q <= n; ++q) {
        CHECK(d.h[p][q] == d.h[q][p]);
        CHECK(d.h[p][q] == d.h[n - p][n - q]);
      }
    }
    const auto h = h_omega(pq);
    CHECK(h == sum_oracle(pq));
    for (int q = 0; q <= n; ++q) CHECK(d.h[n][q] == h[q]);
    Int alt = 0;
    for (std::size_t q = 0; q < h.size(); ++q) alt += (q % 2 ? -1 : 1) * h[q];
    CHECK(alt == euler_char_omega(pq));
    CHECK(static_cast<Int>(omega_pushforward(pq).size()) == pq.ambient().order() / pq.subgroup.order());

    // Top forms reproduce the omega pushforward.
    std::multiset<std::vector<BundleClass>> top, omega;
    for (const auto& s : omega_p_pushforward(pq, n)) top.insert(s.classes);
    for (const auto& s : omega_pushforward(pq)) omega.insert(s.classes);
    CHECK(top == omega);
  }
}

TEST_CASE("torsion criterion, h0 = 1 and the torus diamond coincide") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pq = testing_support::random_pq(rng);
    const bool crit = torsion_factor_criterion(pq);
    const bool h0 = h_omega(pq)[0] == 1;
    const auto d = hodge_diamond(pq);
    CHECK(crit == h0);
    CHECK(h0 == (d == torus_diamond(d.n)));
  }
}

TEST_CASE("Chen-Hacon has the torus diamond") {
  const auto c = build("chen_hacon");
  const auto d = hodge_diamond(std::get<ProductQuotient>(c));
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 3; ++q) CHECK(d.h[p][q] == oracle::binom(3, p) * oracle::binom(3, q));
  }
  const auto v = is_rct(c);
  CHECK(v.certified);
  CHECK(v.level == RctLevel::FullDiamond);
  CHECK(betti_and_euler(d).chi_top == 0);
}

TEST_CASE("box covers get omega-level verdicts") {
  const auto c = build("dim_example");
  const auto v = is_rct(c);
  CHECK(v.certified);
  CHECK(v.level == RctLevel::OmegaLevel);
  CHECK(euler_char_omega(c) == 0);
  CHECK(h_omega(c) == sum_oracle(c));
  CHECK_THROWS_AS(omega_p_pushforward(std::get<ProductQuotient>(build("iitaka_surface")), 5), MalformedInput);
}

TEST_CASE("Betti numbers of the torus") {
  const auto b = betti_and_euler(torus_diamond(3));
  CHECK(b.betti == std::vector<Int>{1, 6, 15, 20, 15, 6, 1});
  CHECK(b.chi_top == 0);
  CHECK(betti_and_euler(torus_diamond(1)).betti == std::vector<Int>{1, 2, 1});
}

TEST_CASE("twisting preserves chi") {
  const auto box = to_box_cover(std::get<ProductQuotient>(build("chi0_p2", Json{{"p", 3}})));
  std::vector<std::vector<Element>> images(box.group.rank(), std::vector<Element>(box.factors.size(), Element{1, 2}));
  CHECK(euler_char_omega(twist(box, images)) == euler_char_omega(box));
}
