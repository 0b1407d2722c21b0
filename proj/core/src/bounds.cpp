#include "fgw/bounds.hpp"

#include <sstream>
#include <stdexcept>

#include "fgw/textio.hpp"
#include "json.hpp"

namespace fgw {

long MultiplicityMatrix::total() const {
  long s = 0;
  for (const auto& row : entries)
    for (int v : row) s += v;
  return s;
}

MultiplicityMatrix cap_multiplicities(const MultiplicityMatrix& m) {
  MultiplicityMatrix out = m;
  for (auto& row : out.entries)
    for (int& v : row) v = std::min(v, 1);
  return out;
}

long muller_bound(int n) {
  if (n < 1) throw std::out_of_range("rank must be positive");
  return static_cast<long>(n) * n;
}

long mixed_bound(int n, int k) {
  if (n < 1 || k < 0) throw std::out_of_range("bad rank or degree");
  return static_cast<long>(n) * (n + k);
}

long conjecture_bound(int n, int df, int dg) {
  if (n < 1 || df < 0 || dg < 0) throw std::out_of_range("bad rank or degree");
  return static_cast<long>(n + df) * (n + dg);
}

long component_count(int n, int k) {
  if (n < 1 || k < 0) throw std::out_of_range("bad rank or degree");
  return static_cast<long>(n) + k;
}

const char* bounds_mode_name(BoundsMode m) {
  switch (m) {
    case BoundsMode::Muller: return "muller";
    case BoundsMode::Mixed: return "mixed";
    case BoundsMode::Conjecture: return "conjecture";
  }
  return "?";
}

int BoundsReport::exit_code() const {
  if (violations > 0) return 2;
  if (inconclusive > 0) return 3;
  return 0;
}

namespace {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "VIOLATED";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

void add_pair(BoundsReport& rep, DegreeCatalogue& cat, const Endomorphism& f,
              const Endomorphism& g, int deg_f, int deg_g, long bound, int budget) {
  PairResult pr;
  Endomorphism h = compose(f, g);
  pr.f = format_endomorphism(f);
  pr.g = format_endomorphism(g);
  pr.h = format_endomorphism(h);
  pr.deg_f = deg_f;
  pr.deg_g = deg_g;
  pr.bound = bound;
  pr.deg_h = cat.degree(h, budget);
  if (pr.deg_h.status == DegreeStatus::Certified) {
    pr.verdict = pr.deg_h.value <= bound ? Verdict::Holds : Verdict::Violated;
  } else {
    pr.verdict = Verdict::Inconclusive;
  }
  switch (pr.verdict) {
    case Verdict::Holds: ++rep.holds; break;
    case Verdict::Violated: ++rep.violations; break;
    case Verdict::Inconclusive: ++rep.inconclusive; break;
  }
  if (rep.mode == BoundsMode::Muller && pr.deg_h.status == DegreeStatus::Certified &&
      pr.deg_h.value == muller_bound(rep.rank))
    ++rep.at_exact_bound;
  pr.deg_h.witness.reset();  // keep reports small
  rep.pairs.push_back(std::move(pr));
}

}  // namespace

BoundsReport verify_bounds(int rank, int budget, BoundsMode mode, const EnumerateOptions& opts) {
  DegreeCatalogue cat(rank, opts);
  return verify_bounds(cat, rank, budget, mode);
}

BoundsReport verify_bounds(DegreeCatalogue& cat, int rank, int budget, BoundsMode mode) {
  if (rank != 2) throw std::invalid_argument("exhaustive bound sweeps are guarded to rank 2");
  BoundsReport rep;
  rep.mode = mode;
  rep.rank = rank;
  rep.budget = budget;

  auto zero = cat.automorphisms_of_degree(0);

  switch (mode) {
    case BoundsMode::Muller: {
      for (const auto& [f, fw] : zero)
        for (const auto& [g, gw] : zero)
          add_pair(rep, cat, f, g, 0, 0, muller_bound(rank), budget);
      if (rep.inconclusive > 0)
        rep.reproduction = "inconclusive";
      else
        rep.reproduction = rep.at_exact_bound == 0 ? "reproduced" : "failed";
      break;
    }
    case BoundsMode::Mixed: {
      for (int k : {1, 2}) {
        auto gk = cat.automorphisms_of_degree(k);
        if (gk.empty())
          throw std::runtime_error("empty catalogue of automorphisms with certified degree " +
                                   std::to_string(k));
        for (const auto& [f, fw] : zero)
          for (const auto& [g, gw] : gk)
            add_pair(rep, cat, f, g, 0, k, mixed_bound(rank, k), budget);
      }
      break;
    }
    case BoundsMode::Conjecture: {
      std::vector<std::pair<Endomorphism, int>> all;
      for (int k = 0; k <= 2; ++k)
        for (const auto& [e, w] : cat.automorphisms_of_degree(k)) all.emplace_back(e, k);
      for (const auto& [f, df] : all)
        for (const auto& [g, dg] : all)
          add_pair(rep, cat, f, g, df, dg, conjecture_bound(rank, df, dg), budget);
      break;
    }
  }
  return rep;
}

std::string render_report_text(const BoundsReport& r) {
  std::ostringstream os;
  os << "# bound sweep: mode=" << bounds_mode_name(r.mode) << " rank=" << r.rank
     << " budget=" << r.budget << "\n";
  os << "# degrees are model-relative: certified minima range over the combinatorial\n"
        "# diagram model; absence of a smaller representative is relative to it.\n";
  os << "# f\tg\tdeg_f\tdeg_g\tdeg_h\tbound\tverdict\n";
  for (const PairResult& p : r.pairs) {
    os << p.f << "\t" << p.g << "\t" << p.deg_f << "\t" << p.deg_g << "\t";
    if (p.deg_h.status == DegreeStatus::Certified)
      os << p.deg_h.value;
    else
      os << ">" << p.deg_h.budget << "?";
    os << "\t" << p.bound << "\t" << verdict_name(p.verdict) << "\n";
  }
  os << "# summary: pairs=" << r.pairs.size() << " holds=" << r.holds
     << " violations=" << r.violations << " inconclusive=" << r.inconclusive;
  if (r.mode == BoundsMode::Muller)
    os << " at_exact_bound=" << r.at_exact_bound << " reproduction=" << r.reproduction;
  os << "\n";
  return os.str();
}

std::string render_report_machine(const BoundsReport& r) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const PairResult& p : r.pairs) {
    nlohmann::json dh;
    if (p.deg_h.status == DegreeStatus::Certified)
      dh = {{"status", "certified"}, {"value", p.deg_h.value}};
    else
      dh = {{"status", "unknown"}, {"budget", p.deg_h.budget}};
    pairs.push_back({{"f", p.f},
                     {"g", p.g},
                     {"h", p.h},
                     {"deg_f", p.deg_f},
                     {"deg_g", p.deg_g},
                     {"deg_h", dh},
                     {"bound", p.bound},
                     {"verdict", verdict_name(p.verdict)}});
  }
  nlohmann::json doc = {{"mode", bounds_mode_name(r.mode)},
                        {"rank", r.rank},
                        {"budget", r.budget},
                        {"model_relative", true},
                        {"pairs", pairs},
                        {"summary",
                         {{"pairs", r.pairs.size()},
                          {"holds", r.holds},
                          {"violations", r.violations},
                          {"inconclusive", r.inconclusive},
                          {"at_exact_bound", r.at_exact_bound},
                          {"reproduction", r.reproduction}}}};
  return doc.dump();
}

}  // namespace fgw
