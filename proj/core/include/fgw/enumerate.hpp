#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include "fgw/diagram.hpp"

namespace fgw {

struct SearchGuardExceeded : std::runtime_error {
  SearchGuardExceeded()
      : std::runtime_error("search guard exceeded (rank <= 3, budget <= 6); pass the "
                           "override flag to proceed") {}
};

struct EnumerateOptions {
  int jobs = 1;
  bool override_guard = false;
};

// Stable text key for a reduced endomorphism, used for catalogue maps.
std::string endo_key(const Endomorphism& e);

// Every valid diagram of the given rank with exactly `tokens` intersection
// circles, one per canonical form, ordered by canonical serialization.
std::vector<Diagram> enumerate_level(int rank, int tokens, const EnumerateOptions& opts = {});

// Union of levels 0..max_tokens in (token count, canonical form) order.
std::vector<Diagram> enumerate_diagrams(int rank, int max_tokens,
                                        const EnumerateOptions& opts = {});

enum class DegreeStatus { Certified, UpperBoundOnly, Unknown };

struct CertifiedDegree {
  DegreeStatus status = DegreeStatus::Unknown;
  int value = -1;  // token count when Certified / UpperBoundOnly
  std::optional<Diagram> witness;
  int budget = 0;
};

// Level-by-level trace catalogue. Levels are scanned exhaustively (without
// per-diagram canonical dedup) and the minimal-level witness per induced
// automorphism is kept; degrees become lookups. Scans are deterministic for
// any job count.
class DegreeCatalogue {
 public:
  DegreeCatalogue(int rank, EnumerateOptions opts = {});

  void ensure_level(int level);
  int scanned_levels() const { return scanned_levels_; }

  // Certified (model-relative) when a witness exists within budget.
  CertifiedDegree degree(const Endomorphism& f, int budget);

  // Automorphisms whose minimal in-model diagram has exactly `level` tokens.
  std::vector<std::pair<Endomorphism, Diagram>> automorphisms_of_degree(int level);

 private:
  int rank_;
  EnumerateOptions opts_;
  int scanned_levels_ = -1;  // levels 0..scanned_levels_ done
  struct Entry {
    int level;
    std::uint64_t order;  // (shape, solution) position for deterministic witness pick
    Diagram witness;
    Endomorphism trace;
  };
  std::unordered_map<std::string, Entry> by_trace_;
};

CertifiedDegree degree(const Endomorphism& f, int budget, const EnumerateOptions& opts = {});

// All automorphisms arising from 0-token diagrams, with witnesses, in
// deterministic key order.
std::vector<std::pair<Endomorphism, Diagram>> degree_zero_set(int rank,
                                                              const EnumerateOptions& opts = {});

namespace detail {
// Exhaustive scan of one level; visitor gets a deterministic position id,
// the diagram (structurally valid, trace an automorphism), its trace, and
// the trace's endo_key.
void scan_level(int rank, int tokens, const EnumerateOptions& opts,
                const std::function<void(std::uint64_t, const Diagram&, const Endomorphism&,
                                         const std::string&)>& visit);
}  // namespace detail

}  // namespace fgw
