#include "fgw/diagram.hpp"

#include <numeric>
#include <random>

#include "doctest.h"
#include "fgw/enumerate.hpp"
#include "fgw/textio.hpp"
#include "helpers.hpp"

using namespace fgw;
using fgwtest::E;

namespace {

// Rank-2, zero-token diagram: sphere 1 encloses both outer plus zones,
// sphere 2 sits inside sphere 1 and encloses the b plus zone.
Diagram figure_one_diagram() {
  Diagram d;
  d.rank = 2;
  d.orientation = {+1, +1};
  d.comps = {{1, +1}, {2, +1}};
  d.comp_parent = {-1, 0};
  d.outer_plus = {0, 1};
  d.outer_minus = {-1, -1};
  return d;
}

// The mirror arrangement: sphere 2 outermost, sphere 1 inside it.
Diagram mirror_diagram() {
  Diagram d;
  d.rank = 2;
  d.orientation = {+1, +1};
  d.comps = {{2, +1}, {1, +1}};
  d.comp_parent = {-1, 0};
  d.outer_plus = {1, 0};
  d.outer_minus = {-1, -1};
  return d;
}

Diagram relabel(const Diagram& d, const std::vector<int>& cperm, const std::vector<int>& tperm) {
  Diagram out = d;
  auto pc = [&](int c) { return c < 0 ? c : cperm[c]; };
  auto pt = [&](int t) { return t < 0 ? t : tperm[t]; };
  for (std::size_t c = 0; c < d.comps.size(); ++c) out.comps[cperm[c]] = d.comps[c];
  for (std::size_t c = 0; c < d.comps.size(); ++c)
    out.comp_parent[cperm[c]] = pc(d.comp_parent[c]);
  for (std::size_t t = 0; t < d.tokens.size(); ++t) {
    out.tokens[tperm[t]] = {d.tokens[t].portal, pc(d.tokens[t].plus_comp),
                            pc(d.tokens[t].minus_comp)};
    out.token_parent[tperm[t]] = pt(d.token_parent[t]);
    out.token_zone_plus[tperm[t]] = pc(d.token_zone_plus[t]);
    out.token_zone_minus[tperm[t]] = pc(d.token_zone_minus[t]);
  }
  for (int p = 0; p < d.rank; ++p) {
    out.outer_plus[p] = pc(d.outer_plus[p]);
    out.outer_minus[p] = pc(d.outer_minus[p]);
  }
  return out;
}

}  // namespace

TEST_CASE("standard-like diagrams validate and trace to the identity") {
  for (int n = 1; n <= 5; ++n) {
    Diagram d = standard_like_diagram(n);
    CHECK(validate(d).empty());
    CHECK(trace(d) == identity_endomorphism(n));
    CHECK(total_tokens(d) == 0);
    for (int s = 1; s <= n; ++s) CHECK(degree_of_sphere(d, s) == 0);
  }
}

TEST_CASE("figure-one anchor traces to a->a, b->ab") {
  Diagram d = figure_one_diagram();
  CHECK(validate(d).empty());
  CHECK(trace(d) == E("a->a; b->ab", 2));
}

TEST_CASE("mirror arrangement traces to a->ba, b->b") {
  Diagram d = mirror_diagram();
  CHECK(validate(d).empty());
  CHECK(trace(d) == E("a->ba; b->b", 2));
}

TEST_CASE("validate flags structural damage") {
  Diagram d = figure_one_diagram();
  d.comp_parent = {1, 0};  // containment cycle
  auto v = validate(d);
  REQUIRE_FALSE(v.empty());
  bool cyc = false;
  for (const auto& viol : v) cyc |= viol.code == ViolationCode::BadContainment;
  CHECK(cyc);

  Diagram e = figure_one_diagram();
  e.outer_plus[0] = 7;  // dangling zone
  v = validate(e);
  REQUIRE_FALSE(v.empty());

  // A trivial sphere enclosing nothing cannot induce an automorphism.
  Diagram t = standard_like_diagram(2);
  t.outer_plus[1] = -1;  // sphere 2's letter never appears in any trace
  v = validate(t);
  bool not_auto = false;
  for (const auto& viol : v) not_auto |= viol.code == ViolationCode::NotAutomorphism;
  CHECK(not_auto);
}

TEST_CASE("component facts on all small enumerated diagrams") {
  auto all = enumerate_diagrams(2, 2);
  REQUIRE_FALSE(all.empty());
  for (const Diagram& d : all) {
    CHECK(validate(d).empty());
    int tokens = 0;
    for (int s = 1; s <= d.rank; ++s) {
      int deg = degree_of_sphere(d, s);
      tokens += deg;
      auto comps = components_of(d, s);
      CHECK(static_cast<int>(comps.size()) == deg + 1);
      // chi = 2 - boundary circles; each token contributes one circle to
      // each of its two attached components.
      int chi = 0;
      for (auto [c, kind] : comps)
        chi += 2 - (kind == ComponentKind::Closed ? 0 : kind == ComponentKind::EndCap ? 1 : 2);
      CHECK(chi == 2);
      if (deg == 0) {
        CHECK(comps[0].second == ComponentKind::Closed);
      } else if (deg == 1) {
        CHECK(comps[0].second == ComponentKind::EndCap);
        CHECK(comps[1].second == ComponentKind::EndCap);
      } else if (deg == 2) {
        int caps = 0, tunnels = 0;
        for (auto [c, kind] : comps) {
          caps += kind == ComponentKind::EndCap;
          tunnels += kind == ComponentKind::Tunnel;
        }
        CHECK(caps == 2);
        CHECK(tunnels == 1);
      }
      int pairs = 0;
      for (int p = 1; p <= d.rank; ++p) pairs += pair_count(d, p, s);
      CHECK(pairs == deg);
    }
    CHECK(tokens == total_tokens(d));
  }
}

TEST_CASE("trace is independent of the zone used per portal") {
  auto all = enumerate_diagrams(2, 2);
  for (const Diagram& d : all) {
    Endomorphism tr = trace(d);
    for (int gen = 1; gen <= d.rank; ++gen)
      for (int t = 0; t < total_tokens(d); ++t)
        if (d.tokens[t].portal == gen)
          CHECK(trace_generator_via(d, gen, t) == tr.images[gen - 1]);
  }
}

TEST_CASE("trace transforms predictably under relabeling and flips") {
  auto all = enumerate_diagrams(2, 2);
  for (const Diagram& d : all) {
    Endomorphism tr = trace(d);

    // Swap the two sphere labels: every letter is swapped in every image.
    Diagram sw = d;
    for (auto& c : sw.comps) c.sphere = 3 - c.sphere;
    std::swap(sw.orientation[0], sw.orientation[1]);
    Endomorphism str = trace(sw);
    for (int j = 0; j < 2; ++j) {
      std::vector<Letter> want;
      for (Letter l : tr.images[j].letters()) want.emplace_back(3 - l.gen, l.sign);
      CHECK(str.images[j] == Word(want));
    }

    // Flip sphere 1's orientation: its letter inverts throughout.
    Diagram fl = d;
    fl.orientation[0] = -fl.orientation[0];
    Endomorphism ftr = trace(fl);
    for (int j = 0; j < 2; ++j) {
      std::vector<Letter> want;
      for (Letter l : tr.images[j].letters())
        want.emplace_back(l.gen, l.gen == 1 ? -l.sign : l.sign);
      CHECK(ftr.images[j] == Word(want));
    }
  }
}

TEST_CASE("canonicalize is idempotent and relabel-invariant") {
  std::mt19937 rng(41);
  auto all = enumerate_diagrams(2, 2);
  int checked = 0;
  for (const Diagram& d : all) {
    Diagram c = canonicalize(d);
    CHECK(canonicalize(c) == c);
    CHECK(trace(c) == trace(d));

    std::vector<int> cperm(d.comps.size()), tperm(d.tokens.size());
    std::iota(cperm.begin(), cperm.end(), 0);
    std::iota(tperm.begin(), tperm.end(), 0);
    std::shuffle(cperm.begin(), cperm.end(), rng);
    std::shuffle(tperm.begin(), tperm.end(), rng);
    Diagram r = relabel(d, cperm, tperm);
    CHECK(validate(r).empty());
    CHECK(canonical_string(r) == canonical_string(d));
    if (++checked == 200) break;  // plenty for the property
  }
  CHECK(checked > 0);
}
