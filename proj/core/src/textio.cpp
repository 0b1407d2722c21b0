#include "fgw/textio.hpp"

#include <cctype>
#include <sstream>

#include "json.hpp"

namespace fgw {

using nlohmann::json;

Word parse_word(std::string_view text) {
  std::vector<Letter> letters;
  bool saw_one = false;
  bool saw_letter = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '1') {
      saw_one = true;
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      letters.emplace_back(c - 'a' + 1, +1);
      saw_letter = true;
    } else if (c >= 'A' && c <= 'Z') {
      letters.emplace_back(c - 'A' + 1, -1);
      saw_letter = true;
    } else {
      throw ParseError("illegal_character", std::string("illegal character '") + c + "' in word",
                       i, i + 1);
    }
  }
  if (saw_one && saw_letter)
    throw ParseError("illegal_character", "'1' cannot be mixed with letters", 0, text.size());
  if (!saw_one && !saw_letter)
    throw ParseError("empty_input", "expected a word ('1' for the empty word)", 0, text.size());
  return Word(std::move(letters));
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Letter& l : w.letters())
    s += static_cast<char>((l.sign > 0 ? 'a' : 'A') + l.gen - 1);
  return s;
}

Endomorphism parse_endomorphism(std::string_view text, int rank) {
  if (rank < 1 || rank > kMaxRank) throw std::out_of_range("rank out of range");
  Endomorphism e;
  e.rank = rank;
  e.images.assign(rank, Word());
  std::vector<bool> assigned(rank, false);

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t semi = text.find(';', pos);
    std::size_t end = semi == std::string_view::npos ? text.size() : semi;
    std::string_view part = text.substr(pos, end - pos);
    std::size_t arrow = part.find("->");
    if (arrow == std::string_view::npos)
      throw ParseError("bad_assignment", "expected 'letter -> word'", pos, end);
    std::string_view lhs = part.substr(0, arrow);
    int gen = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      char c = lhs[i];
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c >= 'a' && c <= 'z' && gen == 0)
        gen = c - 'a' + 1;
      else
        throw ParseError("bad_assignment", "left side must be a single generator", pos,
                         pos + arrow);
    }
    if (gen == 0)
      throw ParseError("bad_assignment", "left side must be a single generator", pos, pos + arrow);
    if (gen > rank)
      throw ParseError("generator_out_of_range",
                       "generator '" + std::string(1, static_cast<char>('a' + gen - 1)) +
                           "' exceeds rank " + std::to_string(rank),
                       pos, pos + arrow);
    if (assigned[gen - 1])
      throw ParseError("duplicate_generator",
                       "generator '" + std::string(1, static_cast<char>('a' + gen - 1)) +
                           "' assigned twice",
                       pos, end);
    Word img;
    try {
      img = parse_word(part.substr(arrow + 2));
    } catch (const ParseError& pe) {
      throw ParseError(pe.code, pe.what(), pos + arrow + 2 + pe.begin, pos + arrow + 2 + pe.end);
    }
    if (img.max_generator() > rank)
      throw ParseError("generator_out_of_range", "image uses a generator beyond the rank", pos,
                       end);
    e.images[gen - 1] = reduce(img);
    assigned[gen - 1] = true;
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  for (int g = 0; g < rank; ++g)
    if (!assigned[g])
      throw ParseError("missing_generator",
                       "no assignment for generator '" +
                           std::string(1, static_cast<char>('a' + g)) + "'",
                       0, text.size());
  return e;
}

std::string format_endomorphism(const Endomorphism& e) {
  std::string s;
  for (int g = 0; g < e.rank; ++g) {
    if (g > 0) s += "; ";
    s += static_cast<char>('a' + g);
    s += "->";
    s += format_word(e.images[g]);
  }
  return s;
}

namespace {

json pairs_array(const std::vector<int>& vals) {
  json arr = json::array();
  for (std::size_t i = 0; i < vals.size(); ++i) arr.push_back({static_cast<int>(i), vals[i]});
  return arr;
}

std::vector<int> read_pairs(const json& arr, std::size_t count, const char* field) {
  if (!arr.is_array() || arr.size() != count)
    throw ParseError("bad_field", std::string(field) + " must list every id exactly once", 0, 0);
  std::vector<int> out(count, 0);
  std::vector<bool> seen(count, false);
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw ParseError("bad_field", std::string(field) + " entries must be [id, value]", 0, 0);
    int id = p[0].get<int>();
    if (id < 0 || id >= static_cast<int>(count) || seen[id])
      throw ParseError("bad_field", std::string(field) + " has a bad or repeated id", 0, 0);
    seen[id] = true;
    out[id] = p[1].get<int>();
  }
  return out;
}

}  // namespace

std::string format_diagram(const Diagram& d, bool pretty) {
  json spheres = json::array();
  for (int label = 1; label <= d.rank; ++label) {
    json comps = json::array();
    for (int c = 0; c < static_cast<int>(d.comps.size()); ++c)
      if (d.comps[c].sphere == label)
        comps.push_back({{"id", c}, {"side_orientation", d.comps[c].rel}});
    json tokens = json::array();
    for (int t = 0; t < static_cast<int>(d.tokens.size()); ++t)
      if (d.comps[d.tokens[t].plus_comp].sphere == label)
        tokens.push_back({{"id", t},
                          {"portal", d.tokens[t].portal},
                          {"plus_component", d.tokens[t].plus_comp},
                          {"minus_component", d.tokens[t].minus_comp}});
    spheres.push_back({{"label", label},
                       {"orientation", static_cast<int>(d.orientation[label - 1])},
                       {"components", comps},
                       {"tokens", tokens}});
  }
  json nesting = json::array();
  for (int p = 1; p <= d.rank; ++p) {
    json parents = json::array();
    for (int t = 0; t < static_cast<int>(d.tokens.size()); ++t)
      if (d.tokens[t].portal == p) parents.push_back({t, d.token_parent[t]});
    nesting.push_back({{"portal", p}, {"token_parents", parents}});
  }
  json doc = {
      {"rank", d.rank},
      {"spheres", spheres},
      {"portal_nesting", nesting},
      {"containment",
       {{"component_parents", pairs_array(d.comp_parent)},
        {"zone_assignment",
         {{"outer_plus", d.outer_plus},
          {"outer_minus", d.outer_minus},
          {"token_zone_plus", pairs_array(d.token_zone_plus)},
          {"token_zone_minus", pairs_array(d.token_zone_minus)}}}}},
  };
  return pretty ? doc.dump(2) : doc.dump();
}

Diagram parse_diagram_unchecked(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw ParseError("bad_json", ex.what(), 0, text.size());
  }
  try {
    Diagram d;
    d.rank = doc.at("rank").get<int>();
    if (d.rank < 1 || d.rank > kMaxRank)
      throw ParseError("bad_field", "rank must be in 1..26", 0, 0);
    // First pass: sizes.
    int nc = 0, nt = 0;
    for (const auto& s : doc.at("spheres")) {
      nc += static_cast<int>(s.at("components").size());
      nt += static_cast<int>(s.at("tokens").size());
    }
    d.orientation.assign(d.rank, +1);
    d.comps.assign(nc, {});
    d.tokens.assign(nt, {});
    std::vector<bool> cseen(nc, false), tseen(nt, false);
    for (const auto& s : doc.at("spheres")) {
      int label = s.at("label").get<int>();
      if (label < 1 || label > d.rank)
        throw ParseError("bad_field", "sphere label out of range", 0, 0);
      d.orientation[label - 1] = static_cast<std::int8_t>(s.at("orientation").get<int>());
      for (const auto& c : s.at("components")) {
        int id = c.at("id").get<int>();
        if (id < 0 || id >= nc || cseen[id])
          throw ParseError("bad_field", "bad or repeated component id", 0, 0);
        cseen[id] = true;
        d.comps[id] = {label, c.at("side_orientation").get<int>()};
      }
      for (const auto& t : s.at("tokens")) {
        int id = t.at("id").get<int>();
        if (id < 0 || id >= nt || tseen[id])
          throw ParseError("bad_field", "bad or repeated token id", 0, 0);
        tseen[id] = true;
        d.tokens[id] = {t.at("portal").get<int>(), t.at("plus_component").get<int>(),
                        t.at("minus_component").get<int>()};
      }
    }
    for (bool b : cseen)
      if (!b) throw ParseError("bad_field", "component ids must be 0..n-1", 0, 0);
    for (bool b : tseen)
      if (!b) throw ParseError("bad_field", "token ids must be 0..n-1", 0, 0);

    d.token_parent.assign(nt, -1);
    std::vector<bool> pset(nt, false);
    for (const auto& pn : doc.at("portal_nesting")) {
      for (const auto& p : pn.at("token_parents")) {
        int id = p[0].get<int>();
        if (id < 0 || id >= nt || pset[id])
          throw ParseError("bad_field", "portal_nesting has a bad or repeated token id", 0, 0);
        pset[id] = true;
        d.token_parent[id] = p[1].get<int>();
      }
    }
    for (bool b : pset)
      if (!b) throw ParseError("bad_field", "portal_nesting must cover every token", 0, 0);

    const json& cont = doc.at("containment");
    d.comp_parent = read_pairs(cont.at("component_parents"), nc, "component_parents");
    const json& za = cont.at("zone_assignment");
    d.outer_plus = za.at("outer_plus").get<std::vector<int>>();
    d.outer_minus = za.at("outer_minus").get<std::vector<int>>();
    d.token_zone_plus = read_pairs(za.at("token_zone_plus"), nt, "token_zone_plus");
    d.token_zone_minus = read_pairs(za.at("token_zone_minus"), nt, "token_zone_minus");
    return d;
  } catch (const json::exception& ex) {
    throw ParseError("bad_field", ex.what(), 0, 0);
  }
}

Diagram parse_diagram(const std::string& text) {
  Diagram d = parse_diagram_unchecked(text);
  std::vector<Violation> vs = validate(d);
  if (!vs.empty()) throw DiagramRejected(std::move(vs));
  return d;
}

std::string render_dot(const Diagram& d) {
  std::ostringstream os;
  auto portal_name = [](int p) { return std::string(1, static_cast<char>('a' + p - 1)); };
  os << "digraph sphere_components {\n";
  for (int c = 0; c < static_cast<int>(d.comps.size()); ++c) {
    const char* kind = "closed";
    switch (component_kind(d, c)) {
      case ComponentKind::Closed: kind = "closed"; break;
      case ComponentKind::EndCap: kind = "end-cap"; break;
      case ComponentKind::Tunnel: kind = "tunnel"; break;
    }
    os << "  c" << c << " [label=\"c" << c << " sphere=" << portal_name(d.comps[c].sphere)
       << " " << kind << "\"];\n";
  }
  for (int t = 0; t < static_cast<int>(d.tokens.size()); ++t)
    os << "  c" << d.tokens[t].plus_comp << " -> c" << d.tokens[t].minus_comp << " [label=\"t" << t
       << " portal=" << portal_name(d.tokens[t].portal) << "\"];\n";
  os << "}\n";

  os << "digraph containment {\n  root [label=\"ambient\"];\n";
  auto region = [&](int r) { return r == -1 ? std::string("root") : "c" + std::to_string(r); };
  for (int c = 0; c < static_cast<int>(d.comps.size()); ++c)
    os << "  " << region(d.comp_parent[c]) << " -> c" << c << ";\n";
  for (int p = 0; p < d.rank; ++p) {
    os << "  zop_" << portal_name(p + 1) << " [label=\"outer " << portal_name(p + 1)
       << "+\",shape=box];\n";
    os << "  zom_" << portal_name(p + 1) << " [label=\"outer " << portal_name(p + 1)
       << "-\",shape=box];\n";
    os << "  " << region(d.outer_plus[p]) << " -> zop_" << portal_name(p + 1) << " [style=dotted];\n";
    os << "  " << region(d.outer_minus[p]) << " -> zom_" << portal_name(p + 1)
       << " [style=dotted];\n";
  }
  for (int t = 0; t < static_cast<int>(d.tokens.size()); ++t) {
    os << "  ztp_" << t << " [label=\"t" << t << "+\",shape=box];\n";
    os << "  ztm_" << t << " [label=\"t" << t << "-\",shape=box];\n";
    os << "  " << region(d.token_zone_plus[t]) << " -> ztp_" << t << " [style=dotted];\n";
    os << "  " << region(d.token_zone_minus[t]) << " -> ztm_" << t << " [style=dotted];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fgw
