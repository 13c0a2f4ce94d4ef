#pragma once

#include <array>
#include <string>
#include <vector>

#include "hypgeo/errors.hpp"

namespace hypgeo::surf {

// One pair of pants: three boundary slots, each holding the length of the
// geodesic occupying it. A pair of pants is determined by these three
// lengths, so no further geometry is stored per node.
struct PantsNode {
  std::array<double, 3> len{};
};

struct SlotRef {
  int pants = -1;
  int slot = -1;  // 0, 1 or 2
  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

// Interior curve of a decomposition: two slots identified, plus a twist
// parameter recorded modulo the curve length. Twists are Fenchel-Nielsen
// bookkeeping only; nothing here develops the twisted metric.
struct Gluing {
  SlotRef a;
  SlotRef b;
  double twist = 0.0;
};

// A surface assembled from pairs of pants along a gluing graph. Slots not
// appearing in any gluing are the surface boundary. |chi| equals the number
// of pants, and a connected closed complex has genus  gluings - pants + 1.
struct PantsComplex {
  std::vector<PantsNode> pants;
  std::vector<Gluing> gluings;

  double slot_length(SlotRef s) const { return pants[s.pants].len[s.slot]; }
  // Unglued slots in pants-major scan order; this order is the boundary
  // numbering used by perturb_boundaries.
  std::vector<SlotRef> free_slots() const;
};

// Structural well-formedness: slot refs in range, no slot in two gluings,
// no slot glued to itself, all lengths positive and finite, glued lengths
// equal to 1e-12 (relative). Does not constrain how boundaries distribute
// over pants; see one_boundary_per_pants.
bool complex_valid(const PantsComplex& c, std::string* why = nullptr);

// True when no pair of pants carries two or more surface boundary slots.
bool one_boundary_per_pants(const PantsComplex& c);

bool complex_connected(const PantsComplex& c);

// Genus of a connected closed complex, from the cycle rank of the gluing
// graph. Errors when the complex has free slots or is disconnected.
Result<int> closed_genus(const PantsComplex& c);

// Interior curves next to a surface boundary must be at least 2 arcsinh(1)
// long. This is the self-dual collar threshold (a geodesic of this length
// has collar half-width arcsinh(1), so curves crossing it are at least this
// long again), and it is what the boundary-perturbation maps require of the
// two non-perturbed boundaries of a pair of pants.
double min_adjacent_length();

// Curve lengths consumed by build_decomposition, in the builder's canonical
// order: one spine curve per chain unit (genus beads first, then boundary
// pants, in cycle order), followed by the two internal curves of each bead.
// interior has 3g-3+n entries, boundary has n.
struct LengthAssignment {
  std::vector<double> interior;
  std::vector<double> boundary;
};

LengthAssignment uniform_lengths(int g, int n, double interior_len,
                                 double boundary_len = 1.0);

// Decomposition of the genus-g surface with n boundary curves into
// 2g-2+n pairs of pants arranged as a cycle of units: g-1 two-pants genus
// beads and n single-pants boundary carriers. Every pair of pants touches
// at most one surface boundary, and both interior curves of each boundary
// pants must be >= min_adjacent_length(). Needs g >= 1 and 2g-2+n >= 1.
Result<PantsComplex> build_decomposition(int g, int n,
                                         const LengthAssignment& lengths);

// Replaces the interior curve (a gluing index) by a transversal one: the two
// pants on its sides form a four-holed sphere, which is re-split along the
// other pairing of its four outer slots. The pairing keeps surface
// boundaries in distinct new pants whenever the old pants did. The new
// curve's length is supplied by the caller and must be >= 2 arcsinh(1);
// the construction guarantees such a curve exists but its exact length is
// not computed here. Applying the move twice at the same index restores the
// original gluing graph.
Result<PantsComplex> whitehead_move(const PantsComplex& c, int curve,
                                    double new_length);

// Rescales each boundary length by (1 + deltas[i]), boundaries numbered as
// in free_slots(). Interior lengths and twists are untouched. Each boundary
// pants must hold exactly one boundary slot, and every rescaling must be
// admissible for the pants-level perturbation map, whose admissibility
// errors are returned as-is.
Result<PantsComplex> perturb_boundaries(const PantsComplex& y,
                                        const std::vector<double>& deltas);

// g-1 = i_g * k + r_g with 0 <= r_g < k; pieces lists k-r_g copies of i_g
// followed by r_g copies of i_g+1, so the piece genera sum to g-1.
struct GenusPartition {
  int g = 0;
  int k = 0;
  int i_g = 0;
  int r_g = 0;
  std::vector<int> pieces;
};

// Needs g >= 2, k >= 1 and g-1 >= k so every piece has genus >= 1.
Result<GenusPartition> genus_partition(int g, int k);

struct ChainSurface {
  PantsComplex complex;
  std::vector<int> chain_curves;  // gluing indices, cycle order
  std::vector<int> piece_genus;   // cycle order, matches the partition
  std::vector<std::vector<int>> piece_pants;
};

// Assembles the closed genus-g surface as a cycle of two-boundary pieces,
// one per partition entry, every chain curve of length boundary_length and
// twisted by twists[j] (one twist per chain curve; k of them). Piece
// interiors use interior_length everywhere, which must be at least
// min_adjacent_length(). For k = 1 the two boundaries of the single piece
// are glued to each other.
Result<ChainSurface> glue_chain(const GenusPartition& partition,
                                double boundary_length,
                                const std::vector<double>& twists,
                                double interior_length = min_adjacent_length());

struct PieceQuotient {
  std::vector<int> pants;  // member pants indices, ascending
  double area = 0.0;       // 2 pi |chi|, Gauss-Bonnet
  int curve_in = -1;       // gluing indices of the two incident chain curves
  int curve_out = -1;      // (equal when k = 1)
  double width_in = 0.0;   // collar half-widths of those curves
  double width_out = 0.0;
  double half_collar_in = 0.0;  // half-collar areas len * sinh(width)
  double half_collar_out = 0.0;
  double quotient = 0.0;
};

// Mini-max data of the piecewise test functions that are constant off the
// chain-curve half-collars and ramp linearly across them: bound is the max
// over pieces of
//   (half_collar_in / width_in^2 + half_collar_out / width_out^2)
//     / (area - 4)
// and is an upper bound for lambda_{k-1} of the chain surface.
struct TestFunctionBound {
  std::vector<PieceQuotient> pieces;
  double bound = 0.0;
};

// chain_curves must cut the closed complex into a cycle of pieces, each
// incident to exactly two of them. Every piece area exceeds 4 for genuine
// complexes (area = 2 pi * pants count); a hypothetical piece with
// area <= 4 is reported as a domain error rather than a negative quotient.
Result<TestFunctionBound> rayleigh_upper_bound(
    const PantsComplex& z, const std::vector<int>& chain_curves);

// 2 pi (cosh r - 1); throws std::invalid_argument for r < 0.
double ball_area(double r);

// Dirichlet eigenvalue bound 1/4 + (2 pi / r)^2 for the hyperbolic ball of
// radius r > 0 (throws std::invalid_argument otherwise).
double cheng_ball_bound(double r);

// arccosh(1 + 2(g-1)/(k+1)): a maximal net with this separation has at
// least k+1 points on a closed genus-g surface, by area counting.
// Needs g >= 2 and k >= 1 (throws std::invalid_argument).
double cheng_net_radius(int g, int k);

// 1/4 + (4 pi / cheng_net_radius(g,k))^2, an upper bound for the k-th
// eigenvalue of every closed genus-g surface; equals
// cheng_ball_bound(cheng_net_radius(g,k)/2).
double cheng_bound(int g, int k);

}  // namespace hypgeo::surf
