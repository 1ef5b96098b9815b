#include "abcover/selftest.hpp"

#include <sstream>

#include "abcover/gallery.hpp"

namespace abcover {

namespace {

FactorTemplate curve_template(Int order_or_zero) {
  // 0 stands for (Z/2)^2.
  FactorTemplate t;
  if (order_or_zero == 0) {
    t.group = FiniteAbelianGroup::elementary(2, 2);
    t.torsion_group = FiniteAbelianGroup::elementary(2, 2);
  } else {
    t.group = FiniteAbelianGroup::cyclic(order_or_zero);
    t.torsion_group = FiniteAbelianGroup::elementary(order_or_zero, 2);
  }
  t.min_degree = 0;
  t.max_degree = 2;
  return t;
}

std::string describe(const SweepTotals& t) {
  std::ostringstream out;
  out << t.examined << " configurations in " << t.specs_run << " spaces";
  if (t.specs_skipped > 0) out << ", " << t.specs_skipped << " spaces skipped";
  return out.str();
}

}  // namespace

std::vector<SearchSpec> small_space_specs(bool four_z2, Gate gate) {
  const std::vector<Int> kinds = {2, 3, 0};
  std::vector<std::vector<Int>> shapes;
  for (std::size_t a = 0; a < kinds.size(); ++a) {
    shapes.push_back({kinds[a]});
    for (std::size_t b = a; b < kinds.size(); ++b) {
      shapes.push_back({kinds[a], kinds[b]});
      for (std::size_t c = b; c < kinds.size(); ++c) shapes.push_back({kinds[a], kinds[b], kinds[c]});
    }
  }
  if (four_z2) shapes.push_back({2, 2, 2, 2});
  std::vector<SearchSpec> specs;
  for (const auto& shape : shapes) {
    SearchSpec s;
    for (Int k : shape) s.factors.push_back(curve_template(k));
    s.symmetry = SearchSymmetry::Full;
    s.max_space = Int{1} << 40;
    s.gate = gate;
    specs.push_back(std::move(s));
  }
  return specs;
}

Int SweepTotals::count_false(const std::string& name) const {
  const auto it = flag_counts.find(name);
  return examined - (it == flag_counts.end() ? 0 : it->second);
}

SweepTotals sweep(const std::vector<SearchSpec>& specs, const std::vector<std::string>& predicates,
                  unsigned jobs, const Deadline& deadline) {
  SweepTotals totals;
  for (auto spec : specs) {
    if (deadline && std::chrono::steady_clock::now() >= *deadline) {
      ++totals.specs_skipped;
      continue;
    }
    spec.predicates = predicates;
    auto r = run_search(spec, jobs);
    ++totals.specs_run;
    totals.examined += r.examined;
    for (const auto& [k, v] : r.flag_counts) totals.flag_counts[k] += v;
    for (auto& c : r.certificates) totals.matches.push_back(std::move(c));
  }
  return totals;
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "skipped";
  }
  return "FAIL";
}

int SelftestSummary::count(CheckStatus s) const {
  int n = 0;
  for (const auto& c : checks) n += c.status == s ? 1 : 0;
  return n;
}

SelftestSummary run_selftest(const SelftestOptions& options, std::ostream* log) {
  SelftestSummary summary;
  const auto start = std::chrono::steady_clock::now();
  Deadline deadline;
  if (options.time_budget_seconds) {
    deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(*options.time_budget_seconds));
  }
  auto record = [&](CheckOutcome c) {
    if (log) *log << status_name(c.status) << "  " << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
    summary.checks.push_back(std::move(c));
  };

  AnalyzeOptions golden_options;
  if (options.flip_sign_convention) golden_options.sign = SignConvention::Flipped;
  for (const auto& [name, params] : golden_cases()) {
    CheckOutcome c{"golden " + name + " " + params.dump(), CheckStatus::Pass, {}};
    try {
      const auto r = golden_check(name, params, golden_options);
      if (!r.pass) {
        c.status = CheckStatus::Fail;
        for (const auto& m : r.mismatches) {
          if (!c.detail.empty()) c.detail += "; ";
          c.detail += m.field + ": expected " + m.expected.dump() + ", got " + m.got.dump();
        }
      }
    } catch (const std::exception& e) {
      c.status = CheckStatus::Fail;
      c.detail = e.what();
    }
    record(std::move(c));
  }

  const auto totals = sweep(small_space_specs(true), {"exception"}, options.jobs, deadline);
  auto sweep_check = [&](const std::string& name, Int exceptions) {
    CheckOutcome c{name, CheckStatus::Pass, describe(totals)};
    if (exceptions > 0) {
      c.status = CheckStatus::Fail;
      c.detail += ", " + std::to_string(exceptions) + " exceptions";
    } else if (!totals.complete()) {
      c.status = CheckStatus::Skipped;
      c.detail += ", time budget reached";
    }
    record(std::move(c));
  };
  sweep_check("sweep torsion criterion / h0 / torus diamond equivalence", totals.count_false("rct_equivalence"));
  sweep_check("sweep chi = 0 against V^0 and S_f", totals.count_false("chi0_lemma"));
  auto count_true = [&](const std::string& name) { return totals.examined - totals.count_false(name); };
  sweep_check("sweep degree theorems C, D and extremal",
              count_true("theorem_c_fails") + count_true("theorem_d_fails") + count_true("extremal_fails"));
  sweep_check("sweep consistency guard", count_true("alert"));
  return summary;
}

}  // namespace abcover
