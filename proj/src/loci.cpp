#include "abcover/loci.hpp"

#include <algorithm>

#include "abcover/error.hpp"
#include "abcover/sheaf.hpp"

namespace abcover {

namespace {

struct RawComponent {
  LocusComponent component;
  Int zero_codim = 0;  // the summand contributes to V^i for i <= zero_codim
};

std::vector<RawComponent> raw_components(const CoverConfiguration& config, SignConvention sign) {
  const auto bs = bases(config);
  std::vector<RawComponent> out;
  for (const auto& s : omega_pushforward(config)) {
    RawComponent r;
    r.component.witness = s.character;
    for (std::size_t j = 0; j < s.classes.size(); ++j) {
      const auto& c = s.classes[j];
      if (c.degree != 0) {
        r.component.entries.push_back(LocusEntry{});
        continue;
      }
      const auto t = bs[j].torsion_group.moduli();
      r.component.entries.push_back(
          LocusEntry{sign == SignConvention::Inverse ? coords::neg(t, c.torsion) : c.torsion});
      r.component.codim += bs[j].base_dim;
    }
    r.zero_codim = r.component.codim;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<LocusComponent> maximal(std::vector<LocusComponent> comps) {
  std::sort(comps.begin(), comps.end(), [](const LocusComponent& a, const LocusComponent& b) {
    if (a != b) return a < b;
    return a.witness < b.witness;
  });
  comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
  std::vector<LocusComponent> out;
  for (std::size_t a = 0; a < comps.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < comps.size() && !dominated; ++b) {
      dominated = b != a && contained_in(comps[a], comps[b]);
    }
    if (!dominated) out.push_back(comps[a]);
  }
  return out;
}

}  // namespace

bool contained_in(const LocusComponent& a, const LocusComponent& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t j = 0; j < a.entries.size(); ++j) {
    if (b.entries[j].full()) continue;
    if (a.entries[j].full() || *a.entries[j].point != *b.entries[j].point) return false;
  }
  return true;
}

std::vector<LocusComponent> v_locus(const CoverConfiguration& config, int i, SignConvention sign) {
  if (i < 0 || i > total_dim(config)) throw MalformedInput("locus index out of range");
  std::vector<LocusComponent> comps;
  for (auto& r : raw_components(config, sign)) {
    if (r.zero_codim >= i) comps.push_back(std::move(r.component));
  }
  return maximal(std::move(comps));
}

std::vector<SfEntry> s_f(const CoverConfiguration& config) {
  std::vector<SfEntry> out;
  const int n = static_cast<int>(total_dim(config));
  for (int i = 1; i <= n; ++i) {
    for (auto& c : v_locus(config, i)) {
      if (c.codim == i) out.push_back(SfEntry{std::move(c), i});
    }
  }
  return out;
}

bool general_type_proxy(const CoverConfiguration& config) {
  const auto v0 = v_locus(config, 0);
  const std::size_t n = bases(config).size();
  for (std::size_t j = 0; j < n; ++j) {
    const bool spanned = std::any_of(v0.begin(), v0.end(), [&](const LocusComponent& c) { return c.entries[j].full(); });
    if (!spanned) return false;
  }
  return true;
}

}  // namespace abcover
