#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgw/morphism.hpp"

namespace fgw {

// Combinatorial collared sphere basis drawn against the standard basis.
//
// The cut model is S^3 minus 2n balls; standard sphere i appears as a portal
// with a plus and a minus boundary side. Each nonstandard sphere is cut by
// its intersection circles (tokens) into components. Components nest: the
// containment tree has the ambient basepoint region as root and one node per
// component (the region inside it). Tokens nest per portal in a forest shared
// by the two sides. Every zone (a portal side's outer surface, or the patch
// inside a token and outside its nested children) is exposed to exactly one
// region.

enum class ComponentKind { Closed, EndCap, Tunnel };

struct DiagramComponent {
  int sphere = 1;  // owning sphere label, 1..rank
  int rel = 1;     // +1 when the sphere's positive side faces this component's
                   // inside region, relative to the sphere orientation

  friend bool operator==(const DiagramComponent&, const DiagramComponent&) = default;
};

struct DiagramToken {
  int portal = 1;      // standard sphere index, 1..rank
  int plus_comp = 0;   // component attached on the portal's plus side
  int minus_comp = 0;  // component attached on the minus side

  friend bool operator==(const DiagramToken&, const DiagramToken&) = default;
};

struct Diagram {
  int rank = 0;
  std::vector<std::int8_t> orientation;  // per sphere label, +1 or -1
  std::vector<DiagramComponent> comps;
  std::vector<DiagramToken> tokens;
  std::vector<int> token_parent;  // portal nesting forest; -1 at a forest root
  std::vector<int> comp_parent;   // containment tree; -1 means the ambient root

  // Zone assignment. Regions are component ids, -1 for the ambient root.
  std::vector<int> outer_plus;        // per portal: region of the outer plus zone
  std::vector<int> outer_minus;       // per portal: region of the outer minus zone
  std::vector<int> token_zone_plus;   // per token: region inside it, plus side
  std::vector<int> token_zone_minus;  // per token: region inside it, minus side

  // Effective crossing sign of a component: +1 when entering it from outside
  // crosses its sphere in the positive direction.
  int side(int comp) const { return orientation[comps[comp].sphere - 1] * comps[comp].rel; }

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

enum class ViolationCode {
  BadRank,
  BadShape,        // inconsistent array sizes or value ranges
  BadLabel,        // sphere label out of range or missing
  SphereNotTree,   // component/token graph of a sphere is not a tree
  BadForest,       // portal nesting forest malformed
  BadContainment,  // containment parents cyclic or out of range
  BadZone,         // zone assigned to a nonexistent region
  BadFlanking,     // token zone not adjacent to its parent zone across the
                   // attached component
  BadSideOrientation,  // the two sides of a token disagree on orientation
  NotAutomorphism,
};

struct Violation {
  ViolationCode code;
  std::string detail;
};

const char* violation_code_name(ViolationCode code);

// All n spheres closed, sphere i wrapped around portal i's plus side.
Diagram standard_like_diagram(int rank);

// Every structural invariant, then the induced-automorphism condition.
// Empty result means the diagram is valid.
std::vector<Violation> validate(const Diagram& d);

// True when every check short of the automorphism condition passes; trace is
// well defined exactly then.
bool structurally_valid(const Diagram& d);

// Read the induced endomorphism: the loop through portal j dives to the outer
// plus zone, crosses, and returns from the outer minus zone; crossed
// components spell the image in time order.
Endomorphism trace(const Diagram& d);

// Same loop routed through the zone of one token (or the outer zone when
// via_token is -1); equal to trace on valid diagrams.
Word trace_generator_via(const Diagram& d, int gen, int via_token);

int degree_of_sphere(const Diagram& d, int label);
int pair_count(const Diagram& d, int standard_index, int label);
int total_tokens(const Diagram& d);

ComponentKind component_kind(const Diagram& d, int comp);
std::vector<std::pair<int, ComponentKind>> components_of(const Diagram& d, int label);

// Canonical relabeling of components and tokens (color refinement plus
// brute force on ties) with side bits normalized to the sphere anchor.
// Isotopic-by-renaming diagrams share one canonical form.
Diagram canonicalize(const Diagram& d);
std::string canonical_string(const Diagram& d);

// Compact one-line serialization of a diagram as-is (no relabeling).
std::string serialize_compact(const Diagram& d);

}  // namespace fgw
