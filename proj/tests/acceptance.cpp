// Acceptance gate: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fgw/bounds.hpp"
#include "fgw/enumerate.hpp"
#include "fgw/textio.hpp"
#include "helpers.hpp"

using namespace fgw;
using fgwtest::E;
using fgwtest::W;

namespace {

int failures = 0;

void report(int n, const char* what, bool ok, const std::string& note = "") {
  std::printf("criterion %d (%s): %s%s%s\n", n, what, ok ? "PASS" : "FAIL",
              note.empty() ? "" : " — ", note.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_cli(const std::string& args) {
  std::string cmd = std::string(FGW_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  pclose(p);
  return out;
}

}  // namespace

int main() {
  // 1: word kernel.
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = reduce(W("bAcCaB")).empty();
    ok = ok && is_basis({W("a"), W("Abc"), W("CA")}, 3);
    std::mt19937 rng(101);
    for (int i = 0; ok && i < 10000; ++i) {
      Word w = fgwtest::random_word(rng, 3, 18);
      Word r = reduce(w);
      ok = ok && r == fgwtest::naive_reduce(w, &rng) && r.is_reduced();
      Word u = reduce(fgwtest::random_word(rng, 3, 10));
      Word v = reduce(fgwtest::random_word(rng, 3, 10));
      ok = ok && equal(concat(concat(w, u), v), concat(w, concat(u, v)));
      ok = ok && concat(u, invert(u)).empty() && concat(u, Word{}) == u;
    }
    double dt = seconds_since(t0);
    report(1, "word kernel", ok && dt <= 10.0,
           ok ? "" : "algebraic check failed");
  }

  // 2: figure-one anchor and zone independence up to two tokens.
  {
    auto t0 = std::chrono::steady_clock::now();
    Diagram d1;
    d1.rank = 2;
    d1.orientation = {+1, +1};
    d1.comps = {{1, +1}, {2, +1}};
    d1.comp_parent = {-1, 0};
    d1.outer_plus = {0, 1};
    d1.outer_minus = {-1, -1};
    bool ok = validate(d1).empty() && trace(d1) == E("a->a; b->ab", 2);
    int diagrams = 0;
    for (const Diagram& d : enumerate_diagrams(2, 2)) {
      ++diagrams;
      Endomorphism tr = trace(d);
      for (int gen = 1; gen <= 2 && ok; ++gen)
        for (int t = 0; t < total_tokens(d) && ok; ++t)
          if (d.tokens[t].portal == gen)
            ok = trace_generator_via(d, gen, t) == tr.images[gen - 1];
      if (!ok) break;
    }
    report(2, "figure-one anchor + zone independence", ok && diagrams > 0 && seconds_since(t0) <= 60.0);
  }

  // 3: component classification facts.
  {
    bool ok = true;
    for (const Diagram& d : enumerate_diagrams(2, 2)) {
      for (int s = 1; s <= 2 && ok; ++s) {
        int deg = degree_of_sphere(d, s);
        auto comps = components_of(d, s);
        ok = static_cast<int>(comps.size()) == deg + 1;
        int chi = 0, caps = 0, tunnels = 0, closed = 0;
        for (auto [c, kind] : comps) {
          chi += 2 - (kind == ComponentKind::Closed ? 0 : kind == ComponentKind::EndCap ? 1 : 2);
          closed += kind == ComponentKind::Closed;
          caps += kind == ComponentKind::EndCap;
          tunnels += kind == ComponentKind::Tunnel;
        }
        ok = ok && chi == 2;
        if (deg == 0) ok = ok && closed == 1 && caps == 0 && tunnels == 0;
        if (deg == 1) ok = ok && caps == 2 && tunnels == 0;
        if (deg == 2) ok = ok && caps == 2 && tunnels == 1;
      }
      if (!ok) break;
    }
    report(3, "component classification", ok);
  }

  // 4: inversion anchor.
  {
    Endomorphism g = E("a->b; b->bAB", 2);
    Endomorphism gi = invert_automorphism(g);
    bool ok = gi == E("a->ABa; b->a", 2) &&
              compose(g, gi) == identity_endomorphism(2) &&
              compose(gi, g) == identity_endomorphism(2);
    report(4, "inversion anchor", ok);
  }

  // 5-7 share one catalogue so each level is scanned once.
  DegreeCatalogue cat(2);

  // 5: Muller reproduction at budget 4.
  {
    auto t0 = std::chrono::steady_clock::now();
    BoundsReport r = verify_bounds(cat, 2, 4, BoundsMode::Muller);
    bool ok = r.violations == 0 && r.inconclusive == 0 && r.at_exact_bound == 0 &&
              r.reproduction == "reproduced";
    char note[160];
    std::snprintf(note, sizeof note,
                  "pairs=%zu violations=%d inconclusive=%d exactly-4=%d (%.0fs, model-relative)",
                  r.pairs.size(), r.violations, r.inconclusive, r.at_exact_bound,
                  seconds_since(t0));
    report(5, "Muller reproduction", ok && seconds_since(t0) <= 3600.0, note);
  }

  // 6: mixed bound for k in {1,2}.
  {
    auto t0 = std::chrono::steady_clock::now();
    BoundsReport r = verify_bounds(cat, 2, 4, BoundsMode::Mixed);
    bool ok = r.violations == 0;
    char note[120];
    std::snprintf(note, sizeof note, "pairs=%zu violations=%d inconclusive=%d (%.0fs)",
                  r.pairs.size(), r.violations, r.inconclusive, seconds_since(t0));
    report(6, "mixed bound", ok && seconds_since(t0) <= 3600.0, note);
  }

  // 7: conjecture instances, degrees <= 2 both sides.
  {
    BoundsReport r = verify_bounds(cat, 2, 4, BoundsMode::Conjecture);
    bool ok = r.violations == 0;
    char note[120];
    std::snprintf(note, sizeof note, "pairs=%zu violations=%d inconclusive=%d", r.pairs.size(),
                  r.violations, r.inconclusive);
    report(7, "conjecture instances", ok, note);
  }

  // 8: capping move properties and formula coherence.
  {
    std::mt19937 rng(103);
    bool ok = true;
    for (int it = 0; ok && it < 10000; ++it) {
      MultiplicityMatrix m;
      int rows = 1 + rng() % 5, cols = 1 + rng() % 5;
      for (int r = 0; r < rows; ++r) {
        m.row_chi.push_back(2 - static_cast<int>(rng() % 3));
        m.entries.emplace_back();
        for (int c = 0; c < cols; ++c) m.entries.back().push_back(rng() % 6);
      }
      MultiplicityMatrix c = cap_multiplicities(m);
      ok = c.row_chi == m.row_chi && cap_multiplicities(c).entries == c.entries &&
           c.total() <= static_cast<long>(rows) * cols;
      for (int r = 0; ok && r < rows; ++r)
        for (int j = 0; j < cols; ++j) ok = ok && c.entries[r][j] <= m.entries[r][j];
    }
    for (int n = 1; ok && n <= 10; ++n) {
      ok = mixed_bound(n, 0) == muller_bound(n);
      for (int k = 0; ok && k <= 10; ++k) ok = conjecture_bound(n, 0, k) == mixed_bound(n, k);
    }
    report(8, "capping move + formula coherence", ok);
  }

  // 9: byte-determinism of CLI streams across job counts.
  {
    std::string a = run_cli("deg0-enum --rank 2 --jobs 1");
    std::string b = run_cli("deg0-enum --rank 2 --jobs 3");
    std::string c = run_cli("verify-bounds --rank 2 --mode muller --budget 2 --jobs 1 --format machine");
    std::string d = run_cli("verify-bounds --rank 2 --mode muller --budget 2 --jobs 4 --format machine");
    bool ok = !a.empty() && a == b && !c.empty() && c == d;
    report(9, "determinism across --jobs", ok);
  }

  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
  return failures == 0 ? 0 : 1;
}
