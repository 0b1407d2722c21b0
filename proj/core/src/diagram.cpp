#include "fgw/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fgw {

const char* violation_code_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::BadRank: return "bad_rank";
    case ViolationCode::BadShape: return "bad_shape";
    case ViolationCode::BadLabel: return "bad_label";
    case ViolationCode::SphereNotTree: return "sphere_not_tree";
    case ViolationCode::BadForest: return "bad_forest";
    case ViolationCode::BadContainment: return "bad_containment";
    case ViolationCode::BadZone: return "bad_zone";
    case ViolationCode::BadFlanking: return "bad_flanking";
    case ViolationCode::BadSideOrientation: return "bad_side_orientation";
    case ViolationCode::NotAutomorphism: return "not_automorphism";
  }
  return "unknown";
}

Diagram standard_like_diagram(int rank) {
  if (rank < 1 || rank > kMaxRank) throw std::out_of_range("rank out of range");
  Diagram d;
  d.rank = rank;
  d.orientation.assign(rank, +1);
  d.outer_plus.resize(rank);
  d.outer_minus.assign(rank, -1);
  for (int i = 0; i < rank; ++i) {
    d.comps.push_back({i + 1, +1});
    d.comp_parent.push_back(-1);
    d.outer_plus[i] = i;
  }
  return d;
}

namespace {

bool acyclic_parents(const std::vector<int>& parent) {
  int n = static_cast<int>(parent.size());
  for (int start = 0; start < n; ++start) {
    int cur = start, steps = 0;
    while (cur != -1) {
      cur = parent[cur];
      if (++steps > n) return false;
    }
  }
  return true;
}

struct FlankInfo {
  bool ok = false;
  int eps_plus = 0;
  int eps_minus = 0;
};

// Classify how the zone inside token t relates, across the attached
// component, to its parent zone on one portal side. eps = +1 when the token
// opens into the component's inside region.
bool flank_side(const Diagram& d, int token, bool plus, int* eps) {
  const DiagramToken& t = d.tokens[token];
  int comp = plus ? t.plus_comp : t.minus_comp;
  int parent_region =
      d.token_parent[token] == -1
          ? (plus ? d.outer_plus[t.portal - 1] : d.outer_minus[t.portal - 1])
          : (plus ? d.token_zone_plus[d.token_parent[token]] : d.token_zone_minus[d.token_parent[token]]);
  int zone = plus ? d.token_zone_plus[token] : d.token_zone_minus[token];
  int outside = d.comp_parent[comp];
  if (parent_region == outside && zone == comp) {
    *eps = +1;
    return true;
  }
  if (parent_region == comp && zone == outside) {
    *eps = -1;
    return true;
  }
  return false;
}

bool structure_check(const Diagram& d, std::vector<Violation>* out) {
  auto add = [&](ViolationCode c, std::string detail) {
    if (out) out->push_back({c, std::move(detail)});
  };
  bool ok = true;

  if (d.rank < 1 || d.rank > kMaxRank) {
    add(ViolationCode::BadRank, "rank must be in 1..26");
    return false;
  }
  const int nc = static_cast<int>(d.comps.size());
  const int nt = static_cast<int>(d.tokens.size());
  if (static_cast<int>(d.orientation.size()) != d.rank ||
      static_cast<int>(d.comp_parent.size()) != nc ||
      static_cast<int>(d.token_parent.size()) != nt ||
      static_cast<int>(d.token_zone_plus.size()) != nt ||
      static_cast<int>(d.token_zone_minus.size()) != nt ||
      static_cast<int>(d.outer_plus.size()) != d.rank ||
      static_cast<int>(d.outer_minus.size()) != d.rank) {
    add(ViolationCode::BadShape, "array sizes inconsistent");
    return false;
  }
  for (int s = 0; s < d.rank; ++s)
    if (d.orientation[s] != 1 && d.orientation[s] != -1) {
      add(ViolationCode::BadShape, "orientation must be +1 or -1");
      ok = false;
    }
  for (int c = 0; c < nc; ++c) {
    if (d.comps[c].sphere < 1 || d.comps[c].sphere > d.rank) {
      add(ViolationCode::BadLabel, "component sphere label out of range");
      ok = false;
    }
    if (d.comps[c].rel != 1 && d.comps[c].rel != -1) {
      add(ViolationCode::BadShape, "side_orientation must be +1 or -1");
      ok = false;
    }
    if (d.comp_parent[c] < -1 || d.comp_parent[c] >= nc) {
      add(ViolationCode::BadContainment, "containment parent out of range");
      ok = false;
    }
  }
  for (int t = 0; t < nt; ++t) {
    const DiagramToken& tok = d.tokens[t];
    if (tok.portal < 1 || tok.portal > d.rank) {
      add(ViolationCode::BadShape, "token portal out of range");
      ok = false;
    }
    if (tok.plus_comp < 0 || tok.plus_comp >= nc || tok.minus_comp < 0 || tok.minus_comp >= nc) {
      add(ViolationCode::BadShape, "token endpoint out of range");
      ok = false;
    }
    if (d.token_parent[t] < -1 || d.token_parent[t] >= nt) {
      add(ViolationCode::BadForest, "token forest parent out of range");
      ok = false;
    }
  }
  if (!ok) return false;

  for (int t = 0; t < nt; ++t) {
    const DiagramToken& tok = d.tokens[t];
    if (d.comps[tok.plus_comp].sphere != d.comps[tok.minus_comp].sphere) {
      add(ViolationCode::BadShape, "token joins components of different spheres");
      ok = false;
    }
    if (d.token_parent[t] != -1 && d.tokens[d.token_parent[t]].portal != tok.portal) {
      add(ViolationCode::BadForest, "token nested under a token of another portal");
      ok = false;
    }
  }
  if (!acyclic_parents(d.token_parent)) {
    add(ViolationCode::BadForest, "token forest has a cycle");
    ok = false;
  }
  if (!acyclic_parents(d.comp_parent)) {
    add(ViolationCode::BadContainment, "containment has a cycle");
    ok = false;
  }

  // Per sphere: at least one component, and the component/token graph is a
  // tree (every circle on a sphere separates it).
  for (int label = 1; label <= d.rank; ++label) {
    std::vector<int> comps_of;
    for (int c = 0; c < nc; ++c)
      if (d.comps[c].sphere == label) comps_of.push_back(c);
    if (comps_of.empty()) {
      add(ViolationCode::BadLabel, "sphere label " + std::to_string(label) + " has no component");
      ok = false;
      continue;
    }
    int edges = 0;
    std::vector<int> uf(nc);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    bool cyclic = false;
    for (int t = 0; t < nt; ++t) {
      if (d.comps[d.tokens[t].plus_comp].sphere != label) continue;
      ++edges;
      int a = find(d.tokens[t].plus_comp), b = find(d.tokens[t].minus_comp);
      if (a == b)
        cyclic = true;
      else
        uf[a] = b;
    }
    std::set<int> roots;
    for (int c : comps_of) roots.insert(find(c));
    if (cyclic || roots.size() != 1 || edges + 1 != static_cast<int>(comps_of.size())) {
      add(ViolationCode::SphereNotTree,
          "sphere " + std::to_string(label) + " components do not form a tree");
      ok = false;
    }
  }
  if (!ok) return false;

  auto region_ok = [&](int r) { return r >= -1 && r < nc; };
  for (int i = 0; i < d.rank; ++i)
    if (!region_ok(d.outer_plus[i]) || !region_ok(d.outer_minus[i])) {
      add(ViolationCode::BadZone, "outer zone region out of range");
      ok = false;
    }
  for (int t = 0; t < nt; ++t)
    if (!region_ok(d.token_zone_plus[t]) || !region_ok(d.token_zone_minus[t])) {
      add(ViolationCode::BadZone, "token zone region out of range");
      ok = false;
    }
  if (!ok) return false;

  for (int t = 0; t < nt; ++t) {
    int ep = 0, em = 0;
    bool okp = flank_side(d, t, true, &ep);
    bool okm = flank_side(d, t, false, &em);
    if (!okp || !okm) {
      add(ViolationCode::BadFlanking, "token " + std::to_string(t) +
                                          " zone not adjacent to its parent zone across the "
                                          "attached component");
      ok = false;
      continue;
    }
    if (ep * d.side(d.tokens[t].plus_comp) != em * d.side(d.tokens[t].minus_comp)) {
      add(ViolationCode::BadSideOrientation,
          "token " + std::to_string(t) + " sides disagree on crossing orientation");
      ok = false;
    }
  }
  return ok;
}

// Letters crossed descending from the ambient root into `region`.
void descent_letters(const Diagram& d, int region, std::vector<Letter>* out) {
  static thread_local std::vector<int> chain;
  chain.clear();
  for (int c = region; c != -1; c = d.comp_parent[c]) chain.push_back(c);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
    out->push_back(Letter(d.comps[*it].sphere, d.side(*it)));
}

Word loop_word(const Diagram& d, int region_plus, int region_minus) {
  std::vector<Letter> ls;
  descent_letters(d, region_plus, &ls);
  std::vector<Letter> back;
  descent_letters(d, region_minus, &back);
  for (auto it = back.rbegin(); it != back.rend(); ++it) ls.push_back(it->inverse());
  return reduce(Word(std::move(ls)));
}

}  // namespace

bool structurally_valid(const Diagram& d) { return structure_check(d, nullptr); }

std::vector<Violation> validate(const Diagram& d) {
  std::vector<Violation> out;
  if (!structure_check(d, &out)) return out;
  Endomorphism e = trace(d);
  if (!is_automorphism(e))
    out.push_back({ViolationCode::NotAutomorphism, "trace is not an automorphism"});
  return out;
}

Endomorphism trace(const Diagram& d) {
  Endomorphism e;
  e.rank = d.rank;
  for (int j = 0; j < d.rank; ++j)
    e.images.push_back(loop_word(d, d.outer_plus[j], d.outer_minus[j]));
  return e;
}

Word trace_generator_via(const Diagram& d, int gen, int via_token) {
  if (gen < 1 || gen > d.rank) throw std::out_of_range("generator out of range");
  if (via_token == -1) return loop_word(d, d.outer_plus[gen - 1], d.outer_minus[gen - 1]);
  if (via_token < 0 || via_token >= static_cast<int>(d.tokens.size()) ||
      d.tokens[via_token].portal != gen)
    throw std::out_of_range("token not on requested portal");
  return loop_word(d, d.token_zone_plus[via_token], d.token_zone_minus[via_token]);
}

int total_tokens(const Diagram& d) { return static_cast<int>(d.tokens.size()); }

int degree_of_sphere(const Diagram& d, int label) {
  if (label < 1 || label > d.rank) throw std::out_of_range("unknown sphere label");
  int n = 0;
  for (const DiagramToken& t : d.tokens)
    if (d.comps[t.plus_comp].sphere == label) ++n;
  return n;
}

int pair_count(const Diagram& d, int standard_index, int label) {
  if (label < 1 || label > d.rank) throw std::out_of_range("unknown sphere label");
  if (standard_index < 1 || standard_index > d.rank)
    throw std::out_of_range("unknown standard sphere index");
  int n = 0;
  for (const DiagramToken& t : d.tokens)
    if (t.portal == standard_index && d.comps[t.plus_comp].sphere == label) ++n;
  return n;
}

ComponentKind component_kind(const Diagram& d, int comp) {
  int boundary = 0;
  for (const DiagramToken& t : d.tokens) {
    if (t.plus_comp == comp) ++boundary;
    if (t.minus_comp == comp) ++boundary;
  }
  if (boundary == 0) return ComponentKind::Closed;
  if (boundary == 1) return ComponentKind::EndCap;
  return ComponentKind::Tunnel;
}

std::vector<std::pair<int, ComponentKind>> components_of(const Diagram& d, int label) {
  if (label < 1 || label > d.rank) throw std::out_of_range("unknown sphere label");
  std::vector<std::pair<int, ComponentKind>> out;
  for (int c = 0; c < static_cast<int>(d.comps.size()); ++c)
    if (d.comps[c].sphere == label) out.emplace_back(c, component_kind(d, c));
  return out;
}

// ---------------------------------------------------------------------------
// Canonicalization

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0x100000001b3ULL;
}

std::uint64_t mix_sorted(std::uint64_t h, std::vector<std::uint64_t> vs) {
  std::sort(vs.begin(), vs.end());
  for (auto v : vs) h = mix(h, v);
  return h;
}

std::string serialize_raw(const Diagram& d) {
  std::ostringstream os;
  os << "n" << d.rank << "|o";
  for (auto o : d.orientation) os << (o > 0 ? '+' : '-');
  os << "|c";
  for (std::size_t c = 0; c < d.comps.size(); ++c)
    os << '(' << d.comps[c].sphere << ',' << d.comps[c].rel << ',' << d.comp_parent[c] << ')';
  os << "|t";
  for (std::size_t t = 0; t < d.tokens.size(); ++t)
    os << '(' << d.tokens[t].portal << ',' << d.tokens[t].plus_comp << ',' << d.tokens[t].minus_comp
       << ',' << d.token_parent[t] << ',' << d.token_zone_plus[t] << ',' << d.token_zone_minus[t]
       << ')';
  os << "|s";
  for (int i = 0; i < d.rank; ++i) os << '(' << d.outer_plus[i] << ',' << d.outer_minus[i] << ')';
  return os.str();
}

// Renumber by the given orders (new id = position) and normalize side bits so
// the anchor component of each sphere carries rel = +1.
Diagram renumber(const Diagram& d, const std::vector<int>& comp_order,
                 const std::vector<int>& token_order) {
  const int nc = static_cast<int>(d.comps.size());
  const int nt = static_cast<int>(d.tokens.size());
  std::vector<int> cmap(nc), tmap(nt);
  for (int i = 0; i < nc; ++i) cmap[comp_order[i]] = i;
  for (int i = 0; i < nt; ++i) tmap[token_order[i]] = i;
  auto mr = [&](int region) { return region == -1 ? -1 : cmap[region]; };

  Diagram out;
  out.rank = d.rank;
  out.orientation = d.orientation;
  out.comps.resize(nc);
  out.comp_parent.resize(nc);
  for (int c = 0; c < nc; ++c) {
    out.comps[cmap[c]] = d.comps[c];
    out.comp_parent[cmap[c]] = mr(d.comp_parent[c]);
  }
  out.tokens.resize(nt);
  out.token_parent.resize(nt);
  out.token_zone_plus.resize(nt);
  out.token_zone_minus.resize(nt);
  for (int t = 0; t < nt; ++t) {
    out.tokens[tmap[t]] = {d.tokens[t].portal, cmap[d.tokens[t].plus_comp],
                           cmap[d.tokens[t].minus_comp]};
    out.token_parent[tmap[t]] = d.token_parent[t] == -1 ? -1 : tmap[d.token_parent[t]];
    out.token_zone_plus[tmap[t]] = mr(d.token_zone_plus[t]);
    out.token_zone_minus[tmap[t]] = mr(d.token_zone_minus[t]);
  }
  out.outer_plus.resize(d.rank);
  out.outer_minus.resize(d.rank);
  for (int i = 0; i < d.rank; ++i) {
    out.outer_plus[i] = mr(d.outer_plus[i]);
    out.outer_minus[i] = mr(d.outer_minus[i]);
  }

  // Anchor: plus component of the sphere's first token, or its sole
  // component for a closed sphere. Re-express orientation so rel(anchor)=+1
  // while keeping every effective crossing sign.
  std::vector<int> eff(nc);
  for (int c = 0; c < nc; ++c) eff[c] = out.side(c);
  for (int label = 1; label <= d.rank; ++label) {
    int anchor = -1;
    for (int t = 0; t < nt && anchor == -1; ++t)
      if (out.comps[out.tokens[t].plus_comp].sphere == label) anchor = out.tokens[t].plus_comp;
    for (int c = 0; c < nc && anchor == -1; ++c)
      if (out.comps[c].sphere == label) anchor = c;
    if (anchor == -1) continue;
    out.orientation[label - 1] = static_cast<std::int8_t>(eff[anchor]);
    for (int c = 0; c < nc; ++c)
      if (out.comps[c].sphere == label) out.comps[c].rel = eff[c] * out.orientation[label - 1];
  }
  return out;
}

}  // namespace

Diagram canonicalize(const Diagram& d) {
  const int nc = static_cast<int>(d.comps.size());
  const int nt = static_cast<int>(d.tokens.size());

  std::vector<std::uint64_t> ccol(nc), tcol(nt);
  for (int c = 0; c < nc; ++c) {
    std::uint64_t h = mix(1, d.comps[c].sphere);
    h = mix(h, static_cast<std::uint64_t>(d.side(c) + 2));
    std::vector<std::uint64_t> tags;
    for (int i = 0; i < d.rank; ++i) {
      if (d.outer_plus[i] == c) tags.push_back(mix(10, i));
      if (d.outer_minus[i] == c) tags.push_back(mix(11, i));
    }
    ccol[c] = mix_sorted(h, std::move(tags));
  }
  for (int t = 0; t < nt; ++t) tcol[t] = mix(2, d.tokens[t].portal);

  const std::uint64_t kRoot = 0xabcdef12345ULL;
  auto region_color = [&](int r) { return r == -1 ? kRoot : ccol[r]; };
  for (int round = 0; round < nc + nt + 2; ++round) {
    std::vector<std::uint64_t> nccol(nc), ntcol(nt);
    for (int c = 0; c < nc; ++c) {
      std::uint64_t h = mix(ccol[c], region_color(d.comp_parent[c]));
      std::vector<std::uint64_t> kids, inc, zones;
      for (int c2 = 0; c2 < nc; ++c2)
        if (d.comp_parent[c2] == c) kids.push_back(ccol[c2]);
      for (int t = 0; t < nt; ++t) {
        if (d.tokens[t].plus_comp == c) inc.push_back(mix(20, tcol[t]));
        if (d.tokens[t].minus_comp == c) inc.push_back(mix(21, tcol[t]));
        if (d.token_zone_plus[t] == c) zones.push_back(mix(22, tcol[t]));
        if (d.token_zone_minus[t] == c) zones.push_back(mix(23, tcol[t]));
      }
      h = mix_sorted(h, std::move(kids));
      h = mix_sorted(h, std::move(inc));
      nccol[c] = mix_sorted(h, std::move(zones));
    }
    for (int t = 0; t < nt; ++t) {
      std::uint64_t h = mix(tcol[t], d.token_parent[t] == -1 ? kRoot : tcol[d.token_parent[t]]);
      std::vector<std::uint64_t> kids;
      for (int t2 = 0; t2 < nt; ++t2)
        if (d.token_parent[t2] == t) kids.push_back(tcol[t2]);
      h = mix_sorted(h, std::move(kids));
      h = mix(h, ccol[d.tokens[t].plus_comp]);
      h = mix(h, ccol[d.tokens[t].minus_comp]);
      h = mix(h, region_color(d.token_zone_plus[t]));
      ntcol[t] = mix(h, region_color(d.token_zone_minus[t]));
    }
    ccol = std::move(nccol);
    tcol = std::move(ntcol);
  }

  auto order_and_groups = [](const std::vector<std::uint64_t>& col) {
    std::vector<int> order(col.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return col[a] < col[b]; });
    std::vector<std::vector<int>> groups;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i > 0 && col[order[i]] == col[order[i - 1]])
        groups.back().push_back(order[i]);
      else
        groups.push_back({order[i]});
    }
    return std::make_pair(order, groups);
  };
  auto [corder, cgroups] = order_and_groups(ccol);
  auto [torder, tgroups] = order_and_groups(tcol);

  // Brute force over tie groups, keeping the lexicographically least
  // serialization. Groups are almost always singletons.
  Diagram best;
  std::string best_str;
  std::vector<int> cperm, tperm;
  std::function<void(std::size_t)> walk_c;
  std::function<void(std::size_t)> walk_t = [&](std::size_t gi) {
    if (gi == tgroups.size()) {
      Diagram cand = renumber(d, cperm, tperm);
      std::string s = serialize_raw(cand);
      if (best_str.empty() || s < best_str) {
        best_str = std::move(s);
        best = std::move(cand);
      }
      return;
    }
    std::vector<int> g = tgroups[gi];
    std::sort(g.begin(), g.end());
    do {
      std::size_t base = tperm.size();
      tperm.insert(tperm.end(), g.begin(), g.end());
      walk_t(gi + 1);
      tperm.resize(base);
    } while (std::next_permutation(g.begin(), g.end()));
  };
  walk_c = [&](std::size_t gi) {
    if (gi == cgroups.size()) {
      walk_t(0);
      return;
    }
    std::vector<int> g = cgroups[gi];
    std::sort(g.begin(), g.end());
    do {
      std::size_t base = cperm.size();
      cperm.insert(cperm.end(), g.begin(), g.end());
      walk_c(gi + 1);
      cperm.resize(base);
    } while (std::next_permutation(g.begin(), g.end()));
  };
  walk_c(0);
  return best;
}

std::string canonical_string(const Diagram& d) { return serialize_raw(canonicalize(d)); }

std::string serialize_compact(const Diagram& d) { return serialize_raw(d); }

}  // namespace fgw
