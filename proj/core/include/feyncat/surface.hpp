#ifndef FEYNCAT_SURFACE_HPP_
#define FEYNCAT_SURFACE_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "feyncat/graph.hpp"
#include "feyncat/kan.hpp"
#include "feyncat/report.hpp"

namespace feyncat {

// Vertices with a cyclic order of their flags; flags not on an edge are
// external.  A twisted edge (sign 1) joins its ends with a half turn.
struct RibbonGraph {
  std::vector<std::vector<Label>> orders;
  std::vector<std::pair<Label, Label>> edges;
  std::vector<int> signs;  // per edge; empty means all untwisted
  // dihedral sign of external flags relative to their vertex; absent is 0
  std::map<Label, int> marks;

  int sign(int e) const { return signs.empty() ? 0 : signs[e]; }
  int flag_count() const;
  std::vector<Label> external() const;
  void validate() const;  // throws invalid_object
  bool operator==(const RibbonGraph&) const = default;
};

struct SurfaceType {
  bool orientable = true;
  int genus = 0;  // non-orientable genus (crosscap count) when !orientable
  int boundary = 0;
  int euler = 0;

  std::string to_string() const;
  bool operator==(const SurfaceType&) const = default;
};
std::string to_json(const SurfaceType& s, int indent = -1);

// A side of a flag: 1 faces the next flag in the vertex order, 0 the
// previous one.
using Side = std::pair<Label, int>;

// Orbits of the side permutation: each is one boundary circle of the
// thickened graph, walked along the vertex orders.
std::vector<std::vector<Side>> boundary_sides(const RibbonGraph& g);
// External flags met along each boundary circle, in walking order.  A
// flagless vertex contributes one empty circle.
std::vector<std::vector<Label>> boundary_cycles(const RibbonGraph& g);

bool is_orientable(const RibbonGraph& g);
std::vector<RibbonGraph> components(const RibbonGraph& g);

// Thickened surface.  With `cap_unmarked`, boundary circles without external
// flags are filled by disks (polygon gluing words use this).
SurfaceType classify_surface(const RibbonGraph& g, bool cap_unmarked = false);
std::vector<SurfaceType> classify_components(const RibbonGraph& g, bool cap_unmarked = false);

// Puts a 2-valent vertex in the middle of edge e.
RibbonGraph subdivide(const RibbonGraph& g, int e);
// Flips vertices along a spanning forest until tree edges are untwisted,
// then rotates every order to its least rotation and sorts the edges.
RibbonGraph normalize_gauge(const RibbonGraph& g);

// Separating invariant used against pushforward classes: surface type plus
// the cyclic arrangement of external labels on each boundary circle, each
// with its mark read against the walking direction.  `unoriented` forgets
// the global orientation.
std::string surface_key(const RibbonGraph& g, bool unoriented);

struct Letter {
  std::string name;
  bool inverse = false;
};
// "a b a^-1 b^-1"; each letter at most twice.
std::vector<Letter> parse_word(const std::string& text);
std::string format_word(const std::vector<Letter>& w);
// The polygon as one vertex; paired letters become edges, twisted when both
// occurrences carry the same exponent; single letters stay external.
RibbonGraph word_ribbon(const std::vector<Letter>& w);
SurfaceType classify_word(const std::vector<Letter>& w);
SurfaceType classify_word(const std::string& text);

// Representative ribbon graph of a class of i_*(CycAss) or i_*(CycDihed).
RibbonGraph ribbon_of(const CorollaPushforward& p, const CommaObject& x);
RibbonGraph class_ribbon(const CorollaPushforward& p, int cls);

// Checks that surface_key separates the classes of i_*(op) at c and is
// constant on every class.  A missing genus mark means 0.
Report envelope_cross_check(Corolla c, int bound = -1, OpPtr op = nullptr);

// Boundary circles go into comments.
std::string to_dot(const RibbonGraph& g);

}  // namespace feyncat

#endif
