#include "fgw/bounds.hpp"

#include <random>

#include "doctest.h"
#include "fgw/textio.hpp"
#include "helpers.hpp"

using namespace fgw;

TEST_CASE("bound formulas") {
  CHECK(muller_bound(1) == 1);
  CHECK(muller_bound(2) == 4);
  CHECK(muller_bound(3) == 9);
  CHECK(mixed_bound(2, 1) == 6);
  CHECK(mixed_bound(2, 0) == 4);
  CHECK(mixed_bound(3, 2) == 15);
  CHECK(conjecture_bound(2, 0, 0) == 4);
  CHECK(conjecture_bound(2, 1, 2) == 12);
  CHECK(component_count(2, 1) == 3);
  CHECK(component_count(2, 2) == 4);
  for (int n = 1; n <= 5; ++n) CHECK(component_count(n, 0) == n);
  CHECK_THROWS_AS(muller_bound(0), std::out_of_range);
  CHECK_THROWS_AS(mixed_bound(2, -1), std::out_of_range);
}

TEST_CASE("formula coherence") {
  for (int n = 1; n <= 10; ++n) {
    CHECK(mixed_bound(n, 0) == muller_bound(n));
    for (int k = 0; k <= 10; ++k) {
      CHECK(conjecture_bound(n, 0, k) == mixed_bound(n, k));
      CHECK(conjecture_bound(n, k, 0) == conjecture_bound(n, 0, k));
    }
  }
}

TEST_CASE("cap_multiplicities fixed examples") {
  MultiplicityMatrix m;
  m.row_chi = {2, 0};
  m.entries = {{2, 0}, {1, 3}};
  MultiplicityMatrix c = cap_multiplicities(m);
  CHECK(c.entries == std::vector<std::vector<int>>{{1, 0}, {1, 1}});
  CHECK(c.row_chi == m.row_chi);

  MultiplicityMatrix z;
  z.row_chi = {2};
  z.entries = {{0, 0, 0}};
  CHECK(cap_multiplicities(z).entries == z.entries);

  // Three components of one sphere meeting one standard sphere 2, 2, 1 times.
  MultiplicityMatrix s;
  s.row_chi = {1, 0, 1};
  s.entries = {{2}, {2}, {1}};
  MultiplicityMatrix cs = cap_multiplicities(s);
  CHECK(s.total() == 5);
  CHECK(cs.total() == 3);
  CHECK(cs.total() <= 3 * 1);
}

TEST_CASE("cap_multiplicities properties on random matrices") {
  std::mt19937 rng(55);
  for (int it = 0; it < 10000; ++it) {
    MultiplicityMatrix m;
    int rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    for (int r = 0; r < rows; ++r) {
      m.row_chi.push_back(2 - static_cast<int>(rng() % 3));
      m.entries.emplace_back();
      for (int c = 0; c < cols; ++c) m.entries.back().push_back(rng() % 7);
    }
    MultiplicityMatrix c = cap_multiplicities(m);
    CHECK(c.row_chi == m.row_chi);
    CHECK(cap_multiplicities(c).entries == c.entries);  // idempotent
    CHECK(c.total() <= static_cast<long>(rows) * cols);
    for (int r = 0; r < rows; ++r)
      for (int j = 0; j < cols; ++j) {
        CHECK(c.entries[r][j] <= m.entries[r][j]);
        CHECK(c.entries[r][j] <= 1);
        CHECK(c.entries[r][j] >= 0);
      }
  }
  // A fully dense degree-0-vs-degree-k capped matrix realizes the mixed
  // bound: n+k rows (components), n columns (spheres), all entries 1.
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= 4; ++k) {
      MultiplicityMatrix dense;
      for (long r = 0; r < component_count(n, k); ++r) {
        dense.row_chi.push_back(2);
        dense.entries.emplace_back(n, 9);
      }
      CHECK(cap_multiplicities(dense).total() == mixed_bound(n, k));
    }
}

TEST_CASE("verify_bounds verdicts are recomputable and deterministic") {
  BoundsReport r = verify_bounds(2, 2, BoundsMode::Muller);
  CHECK(r.pairs.size() > 0);
  int holds = 0, viol = 0, inc = 0;
  for (const PairResult& p : r.pairs) {
    if (p.deg_h.status == DegreeStatus::Certified) {
      Verdict want = p.deg_h.value <= p.bound ? Verdict::Holds : Verdict::Violated;
      CHECK(p.verdict == want);
    } else {
      CHECK(p.verdict == Verdict::Inconclusive);
    }
    holds += p.verdict == Verdict::Holds;
    viol += p.verdict == Verdict::Violated;
    inc += p.verdict == Verdict::Inconclusive;
    CHECK(p.bound == 4);
    CHECK(p.deg_f == 0);
    CHECK(p.deg_g == 0);
  }
  CHECK(holds == r.holds);
  CHECK(viol == r.violations);
  CHECK(inc == r.inconclusive);
  CHECK(r.violations == 0);
  CHECK(r.exit_code() == (r.inconclusive ? 3 : 0));

  BoundsReport again = verify_bounds(2, 2, BoundsMode::Muller);
  CHECK(render_report_machine(again) == render_report_machine(r));
  CHECK(render_report_text(again) == render_report_text(r));
  CHECK(render_report_text(r).find("model-relative") != std::string::npos);

  CHECK_THROWS_AS(verify_bounds(3, 2, BoundsMode::Muller), std::invalid_argument);
}

TEST_CASE("exit codes") {
  BoundsReport r;
  CHECK(r.exit_code() == 0);
  r.inconclusive = 2;
  CHECK(r.exit_code() == 3);
  r.violations = 1;  // violation outranks inconclusive
  CHECK(r.exit_code() == 2);
}
