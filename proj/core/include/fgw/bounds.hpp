#pragma once

#include <string>
#include <vector>

#include "fgw/enumerate.hpp"

namespace fgw {

// Component-versus-sphere intersection multiplicities: one row per component
// of the degree-0 side (tagged with its Euler characteristic), one column per
// sphere of the other basis.
struct MultiplicityMatrix {
  std::vector<int> row_chi;
  std::vector<std::vector<int>> entries;

  long total() const;
};

// The intersection-removal move: each component meets each sphere at most
// once afterwards; Euler characteristics are untouched.
MultiplicityMatrix cap_multiplicities(const MultiplicityMatrix& m);

long muller_bound(int n);                          // n^2
long mixed_bound(int n, int k);                    // n (n + k)
long conjecture_bound(int n, int df, int dg);      // (n + df)(n + dg)
long component_count(int n, int k);                // n + k

enum class BoundsMode { Muller, Mixed, Conjecture };
const char* bounds_mode_name(BoundsMode m);

enum class Verdict { Holds, Violated, Inconclusive };

struct PairResult {
  std::string f;        // endomorphism grammar
  std::string g;
  std::string h;        // f o g
  int deg_f = 0;
  int deg_g = 0;
  CertifiedDegree deg_h;
  long bound = 0;
  Verdict verdict = Verdict::Inconclusive;
};

struct BoundsReport {
  BoundsMode mode = BoundsMode::Muller;
  int rank = 0;
  int budget = 0;
  std::vector<PairResult> pairs;
  int holds = 0;
  int violations = 0;
  int inconclusive = 0;
  // Muller mode: composites certified at exactly n^2 (the reproduction
  // target is zero of them).
  int at_exact_bound = 0;
  // reproduced / failed / inconclusive for the no-degree-four observation.
  std::string reproduction = "inconclusive";

  int exit_code() const;  // 0 bounds hold, 2 violation, 3 inconclusive
};

// Exhaustive instance checks over the catalogued automorphisms; n = 2 only.
BoundsReport verify_bounds(int rank, int budget, BoundsMode mode,
                           const EnumerateOptions& opts = {});

// Same sweep on a caller-owned catalogue, so several modes can share the
// scanned levels.
BoundsReport verify_bounds(DegreeCatalogue& cat, int rank, int budget, BoundsMode mode);

std::string render_report_text(const BoundsReport& r);
std::string render_report_machine(const BoundsReport& r);

}  // namespace fgw
