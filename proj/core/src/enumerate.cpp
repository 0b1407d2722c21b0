#include "fgw/enumerate.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <cstdint>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace fgw {

std::string endo_key(const Endomorphism& e) {
  std::string s;
  s += static_cast<char>('0' + e.rank);
  for (const Word& w : e.images) {
    s += '/';
    if (w.empty()) s += '1';
    for (const Letter& l : w.letters())
      s += static_cast<char>((l.sign > 0 ? 'a' : 'A') + l.gen - 1);
  }
  return s;
}

namespace {

// One combinatorial "shape": which sphere owns each token, the component
// trees, plus/minus attachment, portals, and the portal nesting forests.
// Embeddings (containment tree and zone assignment) are searched per shape.
struct Shape {
  int rank = 0;
  int T = 0;
  std::vector<int> comp_sphere;                // global component -> label
  std::vector<std::array<int, 2>> endpoints;   // token -> {plus_comp, minus_comp}
  std::vector<int> portal;                     // token -> 1..rank
  std::vector<int> token_parent;               // nesting forest, -1 at roots
};

std::vector<std::array<int, 2>> prufer_decode(const std::vector<int>& seq, int m) {
  std::vector<int> deg(m, 1);
  for (int x : seq) ++deg[x];
  std::vector<std::array<int, 2>> edges;
  std::vector<int> dg = deg;
  std::vector<bool> used(m, false);
  for (int x : seq) {
    int leaf = -1;
    for (int i = 0; i < m; ++i)
      if (dg[i] == 1 && !used[i]) {
        leaf = i;
        break;
      }
    edges.push_back({std::min(leaf, x), std::max(leaf, x)});
    used[leaf] = true;
    --dg[x];
  }
  std::vector<int> last;
  for (int i = 0; i < m; ++i)
    if (!used[i] && dg[i] == 1) last.push_back(i);
  edges.push_back({last[0], last[1]});
  std::sort(edges.begin(), edges.end());
  return edges;
}

// All labeled trees on m nodes as sorted edge lists.
std::vector<std::vector<std::array<int, 2>>> all_trees(int m) {
  std::vector<std::vector<std::array<int, 2>>> out;
  if (m == 1) {
    out.push_back({});
    return out;
  }
  std::vector<int> seq(m - 2, 0);
  for (;;) {
    out.push_back(prufer_decode(seq, m));
    int i = static_cast<int>(seq.size()) - 1;
    while (i >= 0 && seq[i] == m - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

// All acyclic parent functions on `k` items (parents are item indices or -1).
std::vector<std::vector<int>> all_forests(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> par(k, -1);
  auto acyclic = [&]() {
    for (int s = 0; s < k; ++s) {
      int cur = s, steps = 0;
      while (cur != -1) {
        cur = par[cur];
        if (++steps > k) return false;
      }
    }
    return true;
  };
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      if (acyclic()) out.push_back(par);
      return;
    }
    for (int p = -1; p < k; ++p) {
      if (p == i) continue;
      par[i] = p;
      rec(i + 1);
    }
    par[i] = -1;
  };
  rec(0);
  return out;
}

// Enumerate shapes deterministically; emit(shape_idx, shape).
void generate_shapes(int rank, int T, const std::function<void(std::uint64_t, const Shape&)>& emit) {
  std::uint64_t shape_idx = 0;

  // Compositions of T into rank parts.
  std::vector<int> k(rank, 0);
  std::function<void(int, int)> comp_rec = [&](int pos, int left) {
    if (pos == rank - 1) {
      k[pos] = left;
    } else {
      for (int v = 0; v <= left; ++v) {
        k[pos] = v;
        comp_rec(pos + 1, left - v);
      }
      return;
    }

    // Component and token id blocks per sphere.
    std::vector<int> coff(rank + 1, 0), toff(rank + 1, 0);
    for (int s = 0; s < rank; ++s) {
      coff[s + 1] = coff[s] + k[s] + 1;
      toff[s + 1] = toff[s] + k[s];
    }
    Shape sh;
    sh.rank = rank;
    sh.T = T;
    sh.comp_sphere.resize(coff[rank]);
    for (int s = 0; s < rank; ++s)
      for (int c = coff[s]; c < coff[s + 1]; ++c) sh.comp_sphere[c] = s + 1;
    sh.endpoints.assign(T, {0, 0});
    sh.portal.assign(T, 1);
    sh.token_parent.assign(T, -1);

    // Per-sphere trees; token i of a sphere rides edge i of the sorted list.
    std::vector<std::vector<std::vector<std::array<int, 2>>>> trees(rank);
    for (int s = 0; s < rank; ++s) trees[s] = all_trees(k[s] + 1);
    std::vector<std::size_t> tsel(rank, 0);
    for (;;) {
      std::vector<std::array<int, 2>> base(T);  // token -> global endpoints (unswapped)
      for (int s = 0; s < rank; ++s) {
        const auto& edges = trees[s][tsel[s]];
        for (int i = 0; i < k[s]; ++i)
          base[toff[s] + i] = {coff[s] + edges[i][0], coff[s] + edges[i][1]};
      }
      for (std::uint32_t swapmask = 0; swapmask < (1u << T); ++swapmask) {
        for (int t = 0; t < T; ++t)
          sh.endpoints[t] = (swapmask >> t & 1) ? std::array<int, 2>{base[t][1], base[t][0]}
                                                : base[t];
        std::vector<int> pvec(T, 0);
        for (;;) {
          for (int t = 0; t < T; ++t) sh.portal[t] = pvec[t] + 1;
          // Forests per portal over that portal's tokens.
          std::vector<std::vector<int>> ptokens(rank);
          for (int t = 0; t < T; ++t) ptokens[pvec[t]].push_back(t);
          std::vector<std::vector<std::vector<int>>> forests(rank);
          for (int p = 0; p < rank; ++p)
            forests[p] = all_forests(static_cast<int>(ptokens[p].size()));
          std::vector<std::size_t> fsel(rank, 0);
          for (;;) {
            for (int p = 0; p < rank; ++p) {
              const auto& par = forests[p][fsel[p]];
              for (std::size_t i = 0; i < ptokens[p].size(); ++i)
                sh.token_parent[ptokens[p][i]] = par[i] == -1 ? -1 : ptokens[p][par[i]];
            }
            emit(shape_idx++, sh);
            int p = rank - 1;
            while (p >= 0 && ++fsel[p] == forests[p].size()) fsel[p--] = 0;
            if (p < 0) break;
          }
          int t = T - 1;
          while (t >= 0 && ++pvec[t] == rank) pvec[t--] = 0;
          if (t < 0) break;
        }
      }
      int s = rank - 1;
      while (s >= 0 && ++tsel[s] == trees[s].size()) tsel[s--] = 0;
      if (s < 0) break;
    }
  };
  comp_rec(0, T);
}

// Backtracking embedding search for one shape: containment parents and zone
// assignments, propagating the flanking condition through each portal's
// nesting forest.
struct EmbedSolver {
  const Shape& sh;
  int nc;
  std::vector<int> parent;              // comp -> region, -2 unassigned
  std::vector<int> sigma_p, sigma_m;    // per portal
  std::vector<int> tz_p, tz_m;          // per token
  std::vector<int> eps_p, eps_m;        // per token
  std::vector<std::vector<int>> preorder;  // per portal: tokens, parents first
  std::function<void()> on_complete;

  explicit EmbedSolver(const Shape& s)
      : sh(s),
        nc(static_cast<int>(s.comp_sphere.size())),
        parent(nc, -2),
        sigma_p(s.rank, -2),
        sigma_m(s.rank, -2),
        tz_p(s.T, -2),
        tz_m(s.T, -2),
        eps_p(s.T, 0),
        eps_m(s.T, 0),
        preorder(s.rank) {
    std::vector<std::vector<int>> kids(s.T);
    std::vector<std::vector<int>> roots(s.rank);
    for (int t = 0; t < s.T; ++t) {
      if (s.token_parent[t] == -1)
        roots[s.portal[t] - 1].push_back(t);
      else
        kids[s.token_parent[t]].push_back(t);
    }
    for (int p = 0; p < s.rank; ++p) {
      std::function<void(int)> dfs = [&](int t) {
        preorder[p].push_back(t);
        for (int c : kids[t]) dfs(c);
      };
      for (int r : roots[p]) dfs(r);
    }
  }

  bool creates_cycle(int child, int cand_parent) const {
    int cur = cand_parent;
    while (cur >= 0) {
      if (cur == child) return true;
      cur = parent[cur] >= 0 ? parent[cur] : -1;
    }
    return false;
  }

  void run() { do_side(0); }

  void do_side(int side) {
    if (side == 2 * sh.rank) {
      fill_remaining(0);
      return;
    }
    int p = side / 2;
    bool plus = (side % 2) == 0;
    auto& sigma = plus ? sigma_p : sigma_m;
    for (int region = -1; region < nc; ++region) {
      sigma[p] = region;
      do_tokens(side, 0);
    }
    sigma[p] = -2;
  }

  void do_tokens(int side, std::size_t idx) {
    int p = side / 2;
    bool plus = (side % 2) == 0;
    if (idx == preorder[p].size()) {
      do_side(side + 1);
      return;
    }
    int t = preorder[p][idx];
    int comp = plus ? sh.endpoints[t][0] : sh.endpoints[t][1];
    auto& tz = plus ? tz_p : tz_m;
    auto& eps = plus ? eps_p : eps_m;
    int rho = sh.token_parent[t] == -1 ? (plus ? sigma_p[p] : sigma_m[p]) : tz[sh.token_parent[t]];

    if (parent[comp] != -2) {
      if (rho == comp) {
        tz[t] = parent[comp];
        eps[t] = -1;
        do_tokens(side, idx + 1);
      } else if (rho == parent[comp]) {
        tz[t] = comp;
        eps[t] = +1;
        do_tokens(side, idx + 1);
      }
      tz[t] = -2;
    } else if (rho == comp) {
      // Already inside comp; its outside is still free.
      for (int r = -1; r < nc; ++r) {
        if (r == comp || creates_cycle(comp, r)) continue;
        parent[comp] = r;
        tz[t] = r;
        eps[t] = -1;
        do_tokens(side, idx + 1);
        parent[comp] = -2;
      }
      tz[t] = -2;
    } else {
      if (!creates_cycle(comp, rho)) {
        parent[comp] = rho;
        tz[t] = comp;
        eps[t] = +1;
        do_tokens(side, idx + 1);
        parent[comp] = -2;
        tz[t] = -2;
      }
    }
  }

  void fill_remaining(int c) {
    while (c < nc && parent[c] != -2) ++c;
    if (c == nc) {
      on_complete();
      return;
    }
    for (int r = -1; r < nc; ++r) {
      if (r == c || creates_cycle(c, r)) continue;
      parent[c] = r;
      fill_remaining(c + 1);
    }
    parent[c] = -2;
  }
};

void check_guard(int rank, int tokens, const EnumerateOptions& opts) {
  if (rank < 1) throw std::out_of_range("rank out of range");
  if (tokens < 0) throw std::out_of_range("negative token budget");
  if (!opts.override_guard && (rank > 3 || tokens > 6)) throw SearchGuardExceeded();
  if (rank > kMaxRank) throw std::out_of_range("rank out of range");
}

}  // namespace

namespace detail {

void scan_level(int rank, int tokens, const EnumerateOptions& opts,
                const std::function<void(std::uint64_t, const Diagram&, const Endomorphism&,
                                         const std::string&)>& visit) {
  check_guard(rank, tokens, opts);
  int jobs = std::max(1, opts.jobs);
  std::mutex vmu;

  auto worker = [&](int wid) {
    // Automorphism verdicts are cached per trace; the same few traces recur.
    std::unordered_map<std::string, bool> auto_cache;
    // Scratch reused across all solutions of this worker.
    std::vector<int> eff, stack;
    std::vector<std::vector<int>> chain_plus(rank), chain_minus(rank);
    std::vector<std::vector<Letter>> imgs(rank);
    std::string key;
    generate_shapes(rank, tokens, [&](std::uint64_t shape_idx, const Shape& sh) {
      if (static_cast<int>(shape_idx % jobs) != wid) return;
      EmbedSolver solver(sh);
      std::uint64_t sol_idx = 0;

      Diagram d;
      d.rank = rank;
      d.orientation.assign(rank, +1);
      d.comps.resize(solver.nc);
      for (int c = 0; c < solver.nc; ++c) d.comps[c].sphere = sh.comp_sphere[c];
      d.tokens.resize(sh.T);
      for (int t = 0; t < sh.T; ++t)
        d.tokens[t] = {sh.portal[t], sh.endpoints[t][0], sh.endpoints[t][1]};
      d.token_parent = sh.token_parent;

      solver.on_complete = [&]() {
        // Propagate effective crossing signs through each sphere's tree; a
        // tree never conflicts, so signs are fixed up to one flip per sphere.
        eff.assign(solver.nc, 0);
        for (int c = 0; c < solver.nc; ++c) {
          if (eff[c] != 0) continue;
          eff[c] = 1;
          stack.assign(1, c);
          while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int t = 0; t < sh.T; ++t) {
              int a = sh.endpoints[t][0], b = sh.endpoints[t][1];
              int other = a == cur ? b : (b == cur ? a : -1);
              if (other == -1 || eff[other] != 0) continue;
              // eps_p * eff[plus] == eps_m * eff[minus]; symmetric in the
              // two endpoints since all factors are signs.
              eff[other] = solver.eps_p[t] * solver.eps_m[t] * eff[cur];
              stack.push_back(other);
            }
          }
        }

        // The image of generator j at flip mask m equals the mask-0 crossing
        // sequence with the flipped spheres' letters negated, so compute the
        // descent chains once and re-reduce per mask instead of re-tracing.
        bool dead = false;
        for (int j = 0; j < rank && !dead; ++j) {
          if (solver.sigma_p[j] == solver.sigma_m[j]) {
            dead = true;  // image of j is empty for every mask
            break;
          }
          auto& cp = chain_plus[j];
          cp.clear();
          for (int c = solver.sigma_p[j]; c != -1; c = solver.parent[c]) cp.push_back(c);
          std::reverse(cp.begin(), cp.end());  // root -> region
          auto& cm = chain_minus[j];
          cm.clear();  // region -> root; letters inverted when pushed
          for (int c = solver.sigma_m[j]; c != -1; c = solver.parent[c]) cm.push_back(c);
        }
        if (dead) {
          sol_idx += 1u << rank;
          return;
        }

        for (std::uint32_t mask = 0; mask < (1u << rank); ++mask) {
          std::uint64_t order = (shape_idx << 32) | sol_idx;
          ++sol_idx;
          bool any_empty = false;
          long ab[3][3] = {};
          for (int j = 0; j < rank && !any_empty; ++j) {
            auto& img = imgs[j];
            img.clear();
            auto push = [&](int c, int inv) {
              int s = sh.comp_sphere[c];
              int sg = eff[c] * inv * ((mask >> (s - 1)) & 1 ? -1 : 1);
              Letter l(s, sg);
              if (!img.empty() && img.back().cancels(l))
                img.pop_back();
              else
                img.push_back(l);
            };
            for (int c : chain_plus[j]) push(c, +1);
            for (int c : chain_minus[j]) push(c, -1);
            if (img.empty()) any_empty = true;
            if (rank <= 3)
              for (const Letter& l : img) ab[j][l.gen - 1] += l.sign;
          }
          if (any_empty) continue;
          if (rank <= 3) {
            long det;
            if (rank == 1)
              det = ab[0][0];
            else if (rank == 2)
              det = ab[0][0] * ab[1][1] - ab[0][1] * ab[1][0];
            else
              det = ab[0][0] * (ab[1][1] * ab[2][2] - ab[1][2] * ab[2][1]) -
                    ab[0][1] * (ab[1][0] * ab[2][2] - ab[1][2] * ab[2][0]) +
                    ab[0][2] * (ab[1][0] * ab[2][1] - ab[1][1] * ab[2][0]);
            if (det != 1 && det != -1) continue;
          }
          key.clear();
          key += static_cast<char>('0' + rank);
          for (int j = 0; j < rank; ++j) {
            key += '/';
            for (const Letter& l : imgs[j])
              key += static_cast<char>((l.sign > 0 ? 'a' : 'A') + l.gen - 1);
          }
          Endomorphism tr;
          bool ok;
          auto it = auto_cache.find(key);
          if (it != auto_cache.end()) {
            ok = it->second;
          } else {
            tr.rank = rank;
            for (int j = 0; j < rank; ++j) tr.images.push_back(Word(imgs[j]));
            ok = is_basis(tr.images, rank);
            auto_cache.emplace(key, ok);
          }
          if (!ok) continue;
          if (tr.images.empty()) {
            tr.rank = rank;
            for (int j = 0; j < rank; ++j) tr.images.push_back(Word(imgs[j]));
          }
          d.comp_parent = solver.parent;
          d.token_zone_plus = solver.tz_p;
          d.token_zone_minus = solver.tz_m;
          d.outer_plus = solver.sigma_p;
          d.outer_minus = solver.sigma_m;
          for (int c = 0; c < solver.nc; ++c)
            d.comps[c].rel = (mask >> (sh.comp_sphere[c] - 1) & 1) ? -eff[c] : eff[c];
          std::lock_guard<std::mutex> lk(vmu);
          visit(order, d, tr, key);
        }
      };
      solver.run();
    });
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& th : threads) th.join();
  }
}

}  // namespace detail

std::vector<Diagram> enumerate_level(int rank, int tokens, const EnumerateOptions& opts) {
  std::map<std::string, Diagram> canon;
  detail::scan_level(rank, tokens, opts,
                     [&](std::uint64_t, const Diagram& d, const Endomorphism&, const std::string&) {
                       Diagram c = canonicalize(d);
                       std::string key = serialize_compact(c);
                       canon.emplace(std::move(key), std::move(c));
                     });
  std::vector<Diagram> out;
  out.reserve(canon.size());
  for (auto& [k, d] : canon) out.push_back(std::move(d));
  return out;
}

std::vector<Diagram> enumerate_diagrams(int rank, int max_tokens, const EnumerateOptions& opts) {
  std::vector<Diagram> out;
  for (int t = 0; t <= max_tokens; ++t) {
    auto level = enumerate_level(rank, t, opts);
    out.insert(out.end(), std::make_move_iterator(level.begin()),
               std::make_move_iterator(level.end()));
  }
  return out;
}

DegreeCatalogue::DegreeCatalogue(int rank, EnumerateOptions opts)
    : rank_(rank), opts_(std::move(opts)) {}

void DegreeCatalogue::ensure_level(int level) {
  while (scanned_levels_ < level) {
    int next = scanned_levels_ + 1;
    detail::scan_level(rank_, next, opts_,
                       [&](std::uint64_t order, const Diagram& d, const Endomorphism& tr,
                           const std::string& key) {
                         auto it = by_trace_.find(key);
                         if (it == by_trace_.end()) {
                           by_trace_.emplace(key, Entry{next, order, d, tr});
                         } else if (it->second.level == next && order < it->second.order) {
                           it->second.order = order;
                           it->second.witness = d;
                         }
                       });
    scanned_levels_ = next;
  }
}

CertifiedDegree DegreeCatalogue::degree(const Endomorphism& f, int budget) {
  if (!opts_.override_guard && (rank_ > 3 || budget > 6)) throw SearchGuardExceeded();
  if (!is_automorphism(f)) throw not_an_automorphism();
  Endomorphism red = f;
  for (Word& w : red.images) w = reduce(w);
  std::string key = endo_key(red);
  CertifiedDegree out;
  out.budget = budget;
  for (int level = 0; level <= budget; ++level) {
    ensure_level(level);
    auto it = by_trace_.find(key);
    if (it != by_trace_.end() && it->second.level <= level) {
      out.status = DegreeStatus::Certified;
      out.value = it->second.level;
      out.witness = canonicalize(it->second.witness);
      return out;
    }
  }
  out.status = DegreeStatus::Unknown;
  return out;
}

std::vector<std::pair<Endomorphism, Diagram>> DegreeCatalogue::automorphisms_of_degree(int level) {
  ensure_level(level);
  std::vector<std::pair<std::string, const Entry*>> hits;
  for (const auto& [key, entry] : by_trace_)
    if (entry.level == level) hits.emplace_back(key, &entry);
  std::sort(hits.begin(), hits.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Endomorphism, Diagram>> out;
  out.reserve(hits.size());
  for (const auto& [key, entry] : hits)
    out.emplace_back(entry->trace, canonicalize(entry->witness));
  return out;
}

CertifiedDegree degree(const Endomorphism& f, int budget, const EnumerateOptions& opts) {
  DegreeCatalogue cat(f.rank, opts);
  return cat.degree(f, budget);
}

std::vector<std::pair<Endomorphism, Diagram>> degree_zero_set(int rank,
                                                              const EnumerateOptions& opts) {
  DegreeCatalogue cat(rank, opts);
  return cat.automorphisms_of_degree(0);
}

}  // namespace fgw
