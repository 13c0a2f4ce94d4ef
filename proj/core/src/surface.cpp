#include "hypgeo/surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hypgeo/hyptrig.hpp"
#include "hypgeo/numerics.hpp"
#include "hypgeo/pants_maps.hpp"
#include "hypgeo/parallel.hpp"

namespace hypgeo::surf {

namespace {

constexpr double kLengthMatchTol = 1e-12;

bool lengths_match(double a, double b) {
  return std::fabs(a - b) <= kLengthMatchTol * std::max(1.0, std::max(a, b));
}

double normalize_twist(double t, double len) {
  double r = std::fmod(t, len);
  if (r < 0.0) r += len;
  return r;
}

bool slot_in_range(const PantsComplex& c, SlotRef r) {
  return r.pants >= 0 && r.pants < static_cast<int>(c.pants.size()) && r.slot >= 0 &&
         r.slot < 3;
}

}  // namespace

std::vector<SlotRef> PantsComplex::free_slots() const {
  std::vector<char> used(pants.size() * 3, 0);
  for (const Gluing& g : gluings)
    for (SlotRef r : {g.a, g.b})
      if (r.pants >= 0 && r.pants < static_cast<int>(pants.size()) && r.slot >= 0 &&
          r.slot < 3)
        used[3 * r.pants + r.slot] = 1;
  std::vector<SlotRef> out;
  for (int p = 0; p < static_cast<int>(pants.size()); ++p)
    for (int s = 0; s < 3; ++s)
      if (!used[3 * p + s]) out.push_back({p, s});
  return out;
}

bool complex_valid(const PantsComplex& c, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  for (int p = 0; p < static_cast<int>(c.pants.size()); ++p)
    for (int s = 0; s < 3; ++s) {
      const double l = c.pants[p].len[s];
      if (!(l > 0.0) || !std::isfinite(l)) {
        std::ostringstream os;
        os << "pants " << p << " slot " << s << " has nonpositive length";
        return fail(os.str());
      }
    }
  std::vector<char> used(c.pants.size() * 3, 0);
  for (int i = 0; i < static_cast<int>(c.gluings.size()); ++i) {
    const Gluing& g = c.gluings[i];
    if (!slot_in_range(c, g.a) || !slot_in_range(c, g.b)) {
      std::ostringstream os;
      os << "gluing " << i << " references a slot out of range";
      return fail(os.str());
    }
    if (g.a == g.b) {
      std::ostringstream os;
      os << "gluing " << i << " identifies a slot with itself";
      return fail(os.str());
    }
    for (SlotRef r : {g.a, g.b}) {
      if (used[3 * r.pants + r.slot]) {
        std::ostringstream os;
        os << "pants " << r.pants << " slot " << r.slot << " appears in two gluings";
        return fail(os.str());
      }
      used[3 * r.pants + r.slot] = 1;
    }
    if (!lengths_match(c.slot_length(g.a), c.slot_length(g.b))) {
      std::ostringstream os;
      os << "gluing " << i << " joins slots of different lengths";
      return fail(os.str());
    }
  }
  return true;
}

bool one_boundary_per_pants(const PantsComplex& c) {
  std::vector<int> frees(c.pants.size(), 0);
  for (SlotRef r : c.free_slots())
    if (++frees[r.pants] > 1) return false;
  return true;
}

bool complex_connected(const PantsComplex& c) {
  const int np = static_cast<int>(c.pants.size());
  if (np <= 1) return true;
  std::vector<std::vector<int>> adj(np);
  for (const Gluing& g : c.gluings) {
    if (!slot_in_range(c, g.a) || !slot_in_range(c, g.b)) continue;
    adj[g.a.pants].push_back(g.b.pants);
    adj[g.b.pants].push_back(g.a.pants);
  }
  std::vector<char> seen(np, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int found = 1;
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    for (int q : adj[p])
      if (!seen[q]) {
        seen[q] = 1;
        ++found;
        stack.push_back(q);
      }
  }
  return found == np;
}

Result<int> closed_genus(const PantsComplex& c) {
  std::string why;
  if (!complex_valid(c, &why))
    return make_error(Errc::invalid_argument, "closed_genus: " + why);
  if (!c.free_slots().empty())
    return make_error(Errc::precondition_unmet, "closed_genus: complex has free boundary slots");
  if (!complex_connected(c))
    return make_error(Errc::precondition_unmet, "closed_genus: complex is disconnected");
  return static_cast<int>(c.gluings.size()) - static_cast<int>(c.pants.size()) + 1;
}

double min_adjacent_length() { return 2.0 * num::arcsinh(1.0); }

LengthAssignment uniform_lengths(int g, int n, double interior_len, double boundary_len) {
  LengthAssignment out;
  if (g < 1 || n < 0) return out;
  out.interior.assign(static_cast<size_t>(3 * g - 3 + n), interior_len);
  out.boundary.assign(static_cast<size_t>(n), boundary_len);
  return out;
}

Result<PantsComplex> build_decomposition(int g, int n, const LengthAssignment& lengths) {
  if (g < 1 || n < 0)
    return make_error(Errc::invalid_argument,
                      "build_decomposition: needs genus >= 1 and boundary count >= 0");
  const int num_pants = 2 * g - 2 + n;
  if (num_pants < 1)
    return make_error(Errc::invalid_argument,
                      "build_decomposition: the closed torus carries no pants decomposition");
  const int beads = g - 1;
  const int units = beads + n;
  const int num_interior = 3 * g - 3 + n;
  if (static_cast<int>(lengths.interior.size()) != num_interior ||
      static_cast<int>(lengths.boundary.size()) != n) {
    std::ostringstream os;
    os << "build_decomposition: expected " << num_interior << " interior and " << n
       << " boundary lengths, got " << lengths.interior.size() << " and "
       << lengths.boundary.size();
    return make_error(Errc::invalid_argument, os.str());
  }
  for (double l : lengths.interior)
    if (!(l > 0.0) || !std::isfinite(l))
      return make_error(Errc::invalid_argument,
                        "build_decomposition: interior lengths must be positive");
  for (double l : lengths.boundary)
    if (!(l > 0.0) || !std::isfinite(l))
      return make_error(Errc::invalid_argument,
                        "build_decomposition: boundary lengths must be positive");
  const double len_floor = min_adjacent_length() - 1e-12;
  for (int j = 0; j < n; ++j) {
    const int u = beads + j;
    const int left = (u + units - 1) % units;
    if (lengths.interior[left] < len_floor || lengths.interior[u] < len_floor) {
      std::ostringstream os;
      os << "build_decomposition: boundary " << j
         << " sits next to an interior curve shorter than 2 arcsinh(1)";
      return make_error(Errc::bound_violated, os.str());
    }
  }

  PantsComplex c;
  c.pants.resize(static_cast<size_t>(num_pants));
  auto unit_left = [&](int u) {
    return u < beads ? SlotRef{2 * u, 0} : SlotRef{2 * beads + (u - beads), 0};
  };
  auto unit_right = [&](int u) {
    return u < beads ? SlotRef{2 * u + 1, 0} : SlotRef{2 * beads + (u - beads), 1};
  };
  auto set_len = [&](SlotRef s, double l) { c.pants[s.pants].len[s.slot] = l; };
  // spine: one curve per unit, closing into a cycle
  for (int u = 0; u < units; ++u) {
    const SlotRef a = unit_right(u);
    const SlotRef b = unit_left((u + 1) % units);
    set_len(a, lengths.interior[u]);
    set_len(b, lengths.interior[u]);
    c.gluings.push_back({a, b, 0.0});
  }
  // each bead is two pants glued along two further curves
  for (int bd = 0; bd < beads; ++bd)
    for (int s = 1; s <= 2; ++s) {
      const double l = lengths.interior[units + 2 * bd + (s - 1)];
      const SlotRef x{2 * bd, s};
      const SlotRef y{2 * bd + 1, s};
      set_len(x, l);
      set_len(y, l);
      c.gluings.push_back({x, y, 0.0});
    }
  for (int j = 0; j < n; ++j) set_len({2 * beads + j, 2}, lengths.boundary[j]);
  return c;
}

Result<PantsComplex> whitehead_move(const PantsComplex& c, int curve, double new_length) {
  std::string why;
  if (!complex_valid(c, &why))
    return make_error(Errc::invalid_argument, "whitehead_move: " + why);
  if (curve < 0 || curve >= static_cast<int>(c.gluings.size()))
    return make_error(Errc::invalid_argument, "whitehead_move: no such curve");
  const Gluing cut = c.gluings[curve];
  const int P = cut.a.pants;
  const int Q = cut.b.pants;
  if (P == Q)
    return make_error(Errc::precondition_unmet,
                      "whitehead_move: both sides of the curve lie on one pair of pants; "
                      "the move needs a four-holed sphere");
  std::array<int, 2> ps{};
  std::array<int, 2> qs{};
  {
    int t = 0;
    for (int s = 0; s < 3; ++s)
      if (s != cut.a.slot) ps[t++] = s;
    t = 0;
    for (int s = 0; s < 3; ++s)
      if (s != cut.b.slot) qs[t++] = s;
  }
  auto is_free = [&](SlotRef r) {
    for (const Gluing& g : c.gluings)
      if (g.a == r || g.b == r) return false;
    return true;
  };
  const bool fp0 = is_free({P, ps[0]});
  const bool fp1 = is_free({P, ps[1]});
  const bool fq0 = is_free({Q, qs[0]});
  const bool fq1 = is_free({Q, qs[1]});
  // default pairing joins same-position slots; swap when that would put two
  // surface boundaries on one of the new pants
  const bool swap_q = (fp0 && fq0) || (fp1 && fq1);
  if (swap_q && ((fp0 && fq1) || (fp1 && fq0)))
    return make_error(Errc::precondition_unmet,
                      "whitehead_move: every re-pairing would put two surface boundaries "
                      "on one pair of pants");
  const int qa = swap_q ? qs[1] : qs[0];
  const int qb = swap_q ? qs[0] : qs[1];
  if (!(new_length >= min_adjacent_length() - 1e-12) || !std::isfinite(new_length))
    return make_error(Errc::bound_violated,
                      "whitehead_move: replacement curve must be at least 2 arcsinh(1) long");

  // the four outer slots keep their occupants and migrate to fixed positions
  // on the rebuilt pants
  auto remap = [&](SlotRef r) -> SlotRef {
    if (r == SlotRef{P, ps[0]}) return {P, 0};
    if (r == SlotRef{Q, qa}) return {P, 1};
    if (r == SlotRef{P, ps[1]}) return {Q, 0};
    if (r == SlotRef{Q, qb}) return {Q, 1};
    return r;
  };
  PantsComplex out = c;
  out.pants[P].len = {c.slot_length({P, ps[0]}), c.slot_length({Q, qa}), new_length};
  out.pants[Q].len = {c.slot_length({P, ps[1]}), c.slot_length({Q, qb}), new_length};
  for (int i = 0; i < static_cast<int>(out.gluings.size()); ++i) {
    if (i == curve) continue;
    out.gluings[i].a = remap(c.gluings[i].a);
    out.gluings[i].b = remap(c.gluings[i].b);
  }
  out.gluings[curve] = {{P, 2}, {Q, 2}, 0.0};
  return out;
}

Result<PantsComplex> perturb_boundaries(const PantsComplex& y,
                                        const std::vector<double>& deltas) {
  std::string why;
  if (!complex_valid(y, &why))
    return make_error(Errc::invalid_argument, "perturb_boundaries: " + why);
  const std::vector<SlotRef> frees = y.free_slots();
  if (deltas.size() != frees.size()) {
    std::ostringstream os;
    os << "perturb_boundaries: needs one delta per boundary, have " << frees.size()
       << " boundaries and " << deltas.size() << " deltas";
    return make_error(Errc::invalid_argument, os.str());
  }
  if (!one_boundary_per_pants(y))
    return make_error(Errc::precondition_unmet,
                      "perturb_boundaries: a pair of pants carries two surface boundaries");
  PantsComplex out = y;
  for (size_t i = 0; i < frees.size(); ++i) {
    const SlotRef f = frees[i];
    if (!std::isfinite(deltas[i]) || !(1.0 + deltas[i] > 0.0)) {
      std::ostringstream os;
      os << "perturb_boundaries: boundary " << i << " scale factor must stay positive";
      return make_error(Errc::invalid_argument, os.str());
    }
    double other[2];
    int t = 0;
    for (int s = 0; s < 3; ++s)
      if (s != f.slot) other[t++] = y.pants[f.pants].len[s];
    const double lg = y.pants[f.pants].len[f.slot];
    const double lgp = (1.0 + deltas[i]) * lg;
    // Swapping P(a,b,g) for P(a,b,(1+d)g) is Fenchel-Nielsen bookkeeping and
    // works for any positive target length; the size-restricted admissibility
    // rule belongs to the comparison map between the two complexes, not to
    // the complexes themselves. Probing the map at the identity still routes
    // its structural requirements (glued sides at least 2 arcsinh 1) through
    // with their original diagnostics.
    const maps::Pants before{other[0], other[1], lg};
    auto probe = maps::pants_map(before, before, maps::PantsPoint{0, {0.0, 0.0}});
    if (!probe.ok()) {
      std::ostringstream os;
      os << "perturb_boundaries: boundary " << i << ": " << probe.error().detail;
      return make_error(probe.error().code, os.str());
    }
    out.pants[f.pants].len[f.slot] = lgp;
  }
  return out;
}

Result<GenusPartition> genus_partition(int g, int k) {
  if (g < 2 || k < 1)
    return make_error(Errc::invalid_argument, "genus_partition: needs g >= 2 and k >= 1");
  if (g - 1 < k)
    return make_error(Errc::invalid_argument,
                      "genus_partition: g-1 < k would leave pieces of genus zero");
  GenusPartition part;
  part.g = g;
  part.k = k;
  part.i_g = (g - 1) / k;
  part.r_g = (g - 1) % k;
  part.pieces.assign(static_cast<size_t>(k - part.r_g), part.i_g);
  part.pieces.insert(part.pieces.end(), static_cast<size_t>(part.r_g), part.i_g + 1);
  return part;
}

Result<ChainSurface> glue_chain(const GenusPartition& partition, double boundary_length,
                                const std::vector<double>& twists,
                                double interior_length) {
  const int k = static_cast<int>(partition.pieces.size());
  if (k < 1 || partition.k != k)
    return make_error(Errc::invalid_argument,
                      "glue_chain: partition piece list does not match its k");
  long long total = 0;
  for (int gi : partition.pieces) {
    if (gi < 1)
      return make_error(Errc::invalid_argument, "glue_chain: piece genera must be >= 1");
    total += gi;
  }
  if (total != partition.g - 1)
    return make_error(Errc::invalid_argument, "glue_chain: piece genera must sum to g-1");
  if (static_cast<int>(twists.size()) != k) {
    std::ostringstream os;
    os << "glue_chain: expected " << k << " twists, one per chain curve, got "
       << twists.size();
    return make_error(Errc::invalid_argument, os.str());
  }
  if (!(boundary_length > 0.0) || !std::isfinite(boundary_length))
    return make_error(Errc::invalid_argument, "glue_chain: boundary length must be positive");
  if (!(interior_length >= min_adjacent_length() - 1e-12) || !std::isfinite(interior_length))
    return make_error(Errc::bound_violated,
                      "glue_chain: interior curves must be at least 2 arcsinh(1) so the "
                      "boundary pants stay admissible");

  ChainSurface out;
  std::vector<std::array<SlotRef, 2>> ends(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) {
    const int gj = partition.pieces[static_cast<size_t>(j)];
    auto piece =
        build_decomposition(gj, 2, uniform_lengths(gj, 2, interior_length, boundary_length));
    if (!piece.ok()) return piece.error();
    const int off = static_cast<int>(out.complex.pants.size());
    const std::vector<SlotRef> frees = piece->free_slots();
    for (const PantsNode& nd : piece->pants) out.complex.pants.push_back(nd);
    for (Gluing gl : piece->gluings) {
      gl.a.pants += off;
      gl.b.pants += off;
      out.complex.gluings.push_back(gl);
    }
    ends[static_cast<size_t>(j)] = {SlotRef{frees[0].pants + off, frees[0].slot},
                                    SlotRef{frees[1].pants + off, frees[1].slot}};
    out.piece_genus.push_back(gj);
    std::vector<int> members(piece->pants.size());
    for (size_t m = 0; m < members.size(); ++m) members[m] = off + static_cast<int>(m);
    out.piece_pants.push_back(std::move(members));
  }
  for (int j = 0; j < k; ++j) {
    const SlotRef a = ends[static_cast<size_t>(j)][1];
    const SlotRef b = ends[static_cast<size_t>((j + 1) % k)][0];
    out.chain_curves.push_back(static_cast<int>(out.complex.gluings.size()));
    out.complex.gluings.push_back({a, b, normalize_twist(twists[static_cast<size_t>(j)],
                                                         boundary_length)});
  }
  auto genus = closed_genus(out.complex);
  if (!genus.ok() || *genus != partition.g)
    return make_error(Errc::geometry_inconsistent,
                      "glue_chain: assembled complex does not close to the requested genus");
  return out;
}

Result<TestFunctionBound> rayleigh_upper_bound(const PantsComplex& z,
                                               const std::vector<int>& chain_curves) {
  std::string why;
  if (!complex_valid(z, &why))
    return make_error(Errc::invalid_argument, "rayleigh_upper_bound: " + why);
  if (!z.free_slots().empty())
    return make_error(Errc::precondition_unmet,
                      "rayleigh_upper_bound: the chain surface must be closed");
  if (chain_curves.empty())
    return make_error(Errc::invalid_argument, "rayleigh_upper_bound: no chain curves given");
  std::vector<char> is_chain(z.gluings.size(), 0);
  for (int idx : chain_curves) {
    if (idx < 0 || idx >= static_cast<int>(z.gluings.size()))
      return make_error(Errc::invalid_argument,
                        "rayleigh_upper_bound: chain curve index out of range");
    if (is_chain[static_cast<size_t>(idx)])
      return make_error(Errc::invalid_argument, "rayleigh_upper_bound: duplicate chain curve");
    is_chain[static_cast<size_t>(idx)] = 1;
  }

  // pieces are the components of the gluing graph with the chain curves removed
  const int np = static_cast<int>(z.pants.size());
  std::vector<std::vector<int>> adj(static_cast<size_t>(np));
  for (int i = 0; i < static_cast<int>(z.gluings.size()); ++i) {
    if (is_chain[static_cast<size_t>(i)]) continue;
    adj[static_cast<size_t>(z.gluings[i].a.pants)].push_back(z.gluings[i].b.pants);
    adj[static_cast<size_t>(z.gluings[i].b.pants)].push_back(z.gluings[i].a.pants);
  }
  std::vector<int> comp(static_cast<size_t>(np), -1);
  int ncomp = 0;
  for (int seed = 0; seed < np; ++seed) {
    if (comp[static_cast<size_t>(seed)] >= 0) continue;
    std::vector<int> stack{seed};
    comp[static_cast<size_t>(seed)] = ncomp;
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      for (int q : adj[static_cast<size_t>(p)])
        if (comp[static_cast<size_t>(q)] < 0) {
          comp[static_cast<size_t>(q)] = ncomp;
          stack.push_back(q);
        }
    }
    ++ncomp;
  }

  // each piece must meet exactly two chain-curve sides (one curve twice for k=1)
  std::vector<std::vector<int>> incident(static_cast<size_t>(ncomp));
  for (size_t t = 0; t < chain_curves.size(); ++t) {
    const Gluing& gl = z.gluings[static_cast<size_t>(chain_curves[t])];
    incident[static_cast<size_t>(comp[static_cast<size_t>(gl.a.pants)])].push_back(
        chain_curves[t]);
    incident[static_cast<size_t>(comp[static_cast<size_t>(gl.b.pants)])].push_back(
        chain_curves[t]);
  }
  for (int i = 0; i < ncomp; ++i)
    if (incident[static_cast<size_t>(i)].size() != 2)
      return make_error(Errc::precondition_unmet,
                        "rayleigh_upper_bound: chain curves do not cut the surface into a "
                        "cycle of two-boundary pieces");

  // order pieces by smallest member pants index
  std::vector<std::vector<int>> members(static_cast<size_t>(ncomp));
  for (int p = 0; p < np; ++p) members[static_cast<size_t>(comp[static_cast<size_t>(p)])].push_back(p);
  std::vector<int> order(static_cast<size_t>(ncomp));
  for (int i = 0; i < ncomp; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return members[static_cast<size_t>(a)].front() < members[static_cast<size_t>(b)].front();
  });

  TestFunctionBound report;
  report.pieces.resize(static_cast<size_t>(ncomp));
  parallel_for(static_cast<size_t>(ncomp), [&](size_t slot) {
    const int ci = order[slot];
    PieceQuotient& piece = report.pieces[slot];
    piece.pants = members[static_cast<size_t>(ci)];
    piece.area = 2.0 * num::pi * static_cast<double>(piece.pants.size());
    piece.curve_in = incident[static_cast<size_t>(ci)][0];
    piece.curve_out = incident[static_cast<size_t>(ci)][1];
    if (piece.area <= 4.0) return;  // reported below, outside the parallel region
    const double l_in = z.slot_length(z.gluings[static_cast<size_t>(piece.curve_in)].a);
    const double l_out = z.slot_length(z.gluings[static_cast<size_t>(piece.curve_out)].a);
    piece.width_in = trig::collar_width(l_in);
    piece.width_out = trig::collar_width(l_out);
    piece.half_collar_in = trig::collar_area(trig::make_collar(l_in, true));
    piece.half_collar_out = trig::collar_area(trig::make_collar(l_out, true));
    piece.quotient = (piece.half_collar_in / num::sq(piece.width_in) +
                      piece.half_collar_out / num::sq(piece.width_out)) /
                     (piece.area - 4.0);
  });
  for (const PieceQuotient& piece : report.pieces)
    if (piece.area <= 4.0)
      return make_error(Errc::domain_error,
                        "rayleigh_upper_bound: piece area must exceed 4 for the test "
                        "function to have positive mass");
  report.bound = 0.0;
  for (const PieceQuotient& piece : report.pieces)
    report.bound = std::max(report.bound, piece.quotient);
  return report;
}

double ball_area(double r) {
  if (!(r >= 0.0) || !std::isfinite(r))
    throw std::invalid_argument("ball_area: radius must be nonnegative");
  return 2.0 * num::pi * (std::cosh(r) - 1.0);
}

double cheng_ball_bound(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("cheng_ball_bound: radius must be positive");
  return 0.25 + num::sq(2.0 * num::pi / r);
}

double cheng_net_radius(int g, int k) {
  if (g < 2 || k < 1)
    throw std::invalid_argument("cheng_net_radius: needs g >= 2 and k >= 1");
  return num::arccosh(1.0 + 2.0 * (static_cast<double>(g) - 1.0) /
                                (static_cast<double>(k) + 1.0));
}

double cheng_bound(int g, int k) {
  return 0.25 + num::sq(4.0 * num::pi / cheng_net_radius(g, k));
}

}  // namespace hypgeo::surf
