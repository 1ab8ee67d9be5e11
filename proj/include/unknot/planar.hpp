#pragma once

// Dart-level combinatorial map of a knot diagram.
//
// Crossing c owns darts 4c..4c+3 in counterclockwise order; opposite slots
// belong to the same strand.  `mate[d]` is the dart at the far end of d's
// edge.  Faces are orbits of d -> sigma^{-1}(mate[d]) (the face to the left
// of each dart).  A diagram is a knot iff the traversal orbit has length 2n,
// and spherical iff it has n+2 faces.

#include <cassert>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "unknot/diagram.hpp"

namespace unknot {

struct Map {
  std::vector<int32_t> mate;       // size 4n, involution without fixed points
  std::vector<uint8_t> over_axis;  // per crossing: 0 = slots {0,2} over, 1 = {1,3}

  int n() const { return static_cast<int>(over_axis.size()); }
  int darts() const { return static_cast<int>(mate.size()); }

  static int crossing(int d) { return d >> 2; }
  static int slot(int d) { return d & 3; }
  static int dart(int c, int s) { return 4 * c + (s & 3); }
  static int sigma(int d) { return (d & ~3) | ((d + 1) & 3); }
  static int sigma_inv(int d) { return (d & ~3) | ((d + 3) & 3); }
  static int opposite(int d) { return d ^ 2; }

  int face_next(int d) const { return sigma_inv(mate[d]); }
  // Next arrival dart when traveling through the diagram.
  int traverse_next(int d) const { return mate[opposite(d)]; }

  bool over_dart(int d) const { return (slot(d) & 1) == over_axis[crossing(d)]; }

  bool operator==(const Map&) const = default;
};

// Arrival darts in traversal order, starting from `d0`; empty Map -> empty.
inline std::vector<int> traversal(const Map& m, int d0) {
  std::vector<int> arr;
  if (m.darts() == 0) return arr;
  int d = d0;
  do {
    arr.push_back(d);
    d = m.traverse_next(d);
  } while (d != d0 && static_cast<int>(arr.size()) <= m.darts());
  return arr;
}

inline bool is_knot(const Map& m) {
  if (m.darts() == 0) return true;
  return static_cast<int>(traversal(m, 0).size()) == 2 * m.n();
}

inline std::vector<std::vector<int>> faces(const Map& m) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(m.darts(), false);
  for (int d0 = 0; d0 < m.darts(); ++d0) {
    if (seen[d0]) continue;
    std::vector<int> orbit;
    int d = d0;
    do {
      seen[d] = true;
      orbit.push_back(d);
      d = m.face_next(d);
    } while (d != d0);
    out.push_back(std::move(orbit));
  }
  return out;
}

inline bool is_sphere(const Map& m) {
  if (m.darts() == 0) return true;
  return static_cast<int>(faces(m).size()) == m.n() + 2;
}

// ---------------------------------------------------------------------------
// Conversions

// Build the dart map of a resolved diagram with planar data.  Crossings are
// indexed in first-visit order; each crossing's slot 0 is its stored anchor.
inline Map to_map(const ResolvedDiagram& rd) {
  const ShadowDiagram& d = rd.shadow;
  if (!d.planar) fail("MissingPlanarData", "planar data required");
  int n = d.crossings();
  Map m;
  m.over_axis.assign(n, 0);
  m.mate.assign(4 * n, -1);
  auto labels = d.labels_first_visit();
  std::map<std::string, int> index;
  for (int c = 0; c < n; ++c) index[labels[c]] = c;
  // locate every (pos,end) in the rotation tuples
  int n2 = d.size();
  std::vector<int> dart_of_in(n2, -1), dart_of_out(n2, -1);
  for (int c = 0; c < n; ++c) {
    const RotationTuple& tup = d.planar->at(labels[c]);
    for (int s = 0; s < 4; ++s) {
      if (tup[s].end == End::In)
        dart_of_in[tup[s].pos] = Map::dart(c, s);
      else
        dart_of_out[tup[s].pos] = Map::dart(c, s);
    }
  }
  for (int k = 0; k < n2; ++k) {
    int p = d.walk_pos(k);
    int q = d.walk_pos(k + 1);
    int a = dart_of_out[p], b = dart_of_in[q];
    if (a < 0 || b < 0) fail("PlanarMismatch", "incomplete rotation data");
    m.mate[a] = b;
    m.mate[b] = a;
  }
  for (int c = 0; c < n; ++c) {
    int over_pos = rd.resolution.at(labels[c]);
    int din = dart_of_in[over_pos];
    m.over_axis[c] = static_cast<uint8_t>(Map::slot(din) & 1);
  }
  for (int32_t v : m.mate)
    if (v < 0) fail("PlanarMismatch", "incomplete rotation data");
  return m;
}

inline Map shadow_to_map(const ShadowDiagram& d) {
  ResolvedDiagram rd;
  rd.shadow = d;
  for (const auto& lab : d.labels_first_visit()) rd.resolution[lab] = d.occurrences(lab)[0];
  return to_map(rd);
}

// Rebuild a resolved diagram from a map, walking from arrival dart `d0`.
// Labels are "1".."n" in first-visit order; the basepoint sits on d0's edge.
inline ResolvedDiagram from_map(const Map& m, int d0 = 0) {
  ResolvedDiagram rd;
  rd.shadow.basepoint = 0;
  if (m.darts() == 0) return rd;
  auto arr = traversal(m, d0);
  int n2 = static_cast<int>(arr.size());
  if (n2 != 2 * m.n()) fail("PlanarMismatch", "map is not a single loop");
  std::vector<int> first_visit(m.n(), -1);
  std::vector<std::string> label(m.n());
  std::vector<int> pos_of_dart(m.darts(), -1);  // arrival dart -> position
  int next = 1;
  rd.shadow.word.resize(n2);
  for (int k = 0; k < n2; ++k) {
    int c = Map::crossing(arr[k]);
    if (first_visit[c] < 0) {
      first_visit[c] = k;
      label[c] = std::to_string(next++);
    }
    rd.shadow.word[k] = label[c];
    pos_of_dart[arr[k]] = k;
  }
  PlanarData pd;
  for (int c = 0; c < m.n(); ++c) {
    int din = arr[first_visit[c]];
    RotationTuple tup;
    for (int s = 0; s < 4; ++s) {
      int dd = Map::dart(c, (Map::slot(din) + s) & 3);
      if (pos_of_dart[dd] >= 0)
        tup[s] = HalfEdge{pos_of_dart[dd], End::In};
      else
        tup[s] = HalfEdge{pos_of_dart[Map::opposite(dd)], End::Out};
    }
    pd[label[c]] = tup;
    bool first_over = m.over_dart(din);
    auto occ = std::array<int, 2>{first_visit[c], -1};
    for (int k = first_visit[c] + 1; k < n2; ++k)
      if (Map::crossing(arr[k]) == c) occ[1] = k;
    rd.resolution[label[c]] = first_over ? occ[0] : occ[1];
  }
  rd.shadow.planar = std::move(pd);
  return rd;
}

// ---------------------------------------------------------------------------
// Canonical codes

namespace detail {

// Candidate serialization of a map starting from arrival dart d0.  Encodes
// the word (with over/under flags when resolved) and every rotation tuple,
// so equal vectors mean equal marked diagrams up to relabeling.
inline std::vector<int> map_code_from(const Map& m, int d0, bool resolved) {
  auto arr = traversal(m, d0);
  int n2 = static_cast<int>(arr.size());
  std::vector<int> lab(m.n(), -1), first_in(m.n(), -1);
  std::vector<int> pos_of_dart(m.darts(), -1);
  int next = 0;
  for (int k = 0; k < n2; ++k) {
    int c = Map::crossing(arr[k]);
    if (lab[c] < 0) {
      lab[c] = next++;
      first_in[c] = arr[k];
    }
    pos_of_dart[arr[k]] = k;
  }
  std::vector<int> code;
  code.reserve(n2 * 2 + m.n() * 4);
  for (int k = 0; k < n2; ++k) {
    int c = Map::crossing(arr[k]);
    code.push_back(lab[c] * 2 + (resolved && m.over_dart(arr[k]) ? 1 : 0));
  }
  std::vector<int> order(m.n());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lab[a] < lab[b]; });
  for (int c : order) {
    int din = first_in[c];
    for (int s = 0; s < 4; ++s) {
      int dd = Map::dart(c, (Map::slot(din) + s) & 3);
      if (pos_of_dart[dd] >= 0)
        code.push_back(pos_of_dart[dd] * 2);
      else
        code.push_back(pos_of_dart[Map::opposite(dd)] * 2 + 1);
    }
  }
  return code;
}

}  // namespace detail

// Least serialization over all starting darts and both traversal directions.
inline std::vector<int> map_code(const Map& m, bool resolved) {
  if (m.darts() == 0) return {};
  std::vector<int> best;
  for (int d = 0; d < m.darts(); ++d) {
    auto cand = detail::map_code_from(m, d, resolved);
    if (best.empty() || cand < best) best = std::move(cand);
  }
  return best;
}

inline std::string map_code_string(const Map& m, bool resolved) {
  std::string s;
  for (int v : map_code(m, resolved)) {
    s += std::to_string(v);
    s += ',';
  }
  return s;
}

// ---------------------------------------------------------------------------
// Validation.  Violations are data, not errors.

inline std::vector<Violation> validate(const ShadowDiagram& d) {
  std::vector<Violation> out;
  std::map<std::string, int> count;
  for (const auto& s : d.word) ++count[s];
  for (const auto& [lab, c] : count)
    if (c != 2)
      out.push_back({"MalformedWord",
                     "label " + lab + " occurs " + std::to_string(c) + " times"});
  if (d.size() > 0 && (d.basepoint < 0 || d.basepoint >= d.size()))
    out.push_back({"BadBasepoint", "basepoint gap out of range"});
  if (!out.empty()) return out;
  if (d.planar) {
    const PlanarData& pd = *d.planar;
    if (static_cast<int>(pd.size()) != d.crossings()) {
      out.push_back({"PlanarMismatch", "planar data covers " + std::to_string(pd.size()) +
                                           " crossings, word has " +
                                           std::to_string(d.crossings())});
      return out;
    }
    for (const auto& [lab, tup] : pd) {
      if (!count.count(lab)) {
        out.push_back({"PlanarMismatch", "planar data names unknown crossing " + lab});
        continue;
      }
      auto occ = d.occurrences(lab);
      // the tuple's half-edges must be exactly in/out at both occurrences
      std::map<std::pair<int, int>, int> seen;
      for (const auto& he : tup) ++seen[{he.pos, static_cast<int>(he.end)}];
      bool ok = seen.size() == 4;
      for (int o : {occ[0], occ[1]})
        for (int e : {0, 1}) ok = ok && seen.count({o, e});
      if (!ok) {
        out.push_back({"PlanarMismatch", "rotation at crossing " + lab +
                                             " does not match its word positions"});
        continue;
      }
      // opposite slots belong to the same passage
      for (int s = 0; s < 2; ++s)
        if (tup[s].pos != tup[s + 2].pos)
          out.push_back({"PlanarMismatch",
                         "strands at crossing " + lab + " are not opposite in the rotation"});
    }
    if (out.empty() && d.size() > 0) {
      Map m;
      try {
        m = shadow_to_map(d);
      } catch (const Error& e) {
        out.push_back({"PlanarMismatch", e.what()});
        return out;
      }
      if (!is_knot(m))
        out.push_back(
            {"DisconnectedTraversal", "planar data does not traverse a single loop"});
      else if (!is_sphere(m))
        out.push_back({"NotSpherical", "rotation system does not embed in the 2-sphere"});
    }
  }
  return out;
}

inline std::vector<Violation> validate(const ResolvedDiagram& rd) {
  std::vector<Violation> out = validate(rd.shadow);
  std::map<std::string, int> count;
  for (const auto& s : rd.shadow.word) ++count[s];
  for (const auto& [lab, c] : count) {
    (void)c;
    auto it = rd.resolution.find(lab);
    if (it == rd.resolution.end()) {
      out.push_back({"UnresolvedCrossing", "resolution missing crossing " + lab});
      continue;
    }
    if (it->second < 0 || it->second >= rd.shadow.size() ||
        rd.shadow.word[it->second] != lab)
      out.push_back({"BadResolution", "over position for crossing " + lab +
                                          " does not carry that label"});
  }
  for (const auto& [lab, pos] : rd.resolution) {
    (void)pos;
    if (!count.count(lab))
      out.push_back({"BadResolution", "resolution names unknown crossing " + lab});
  }
  return out;
}

inline std::vector<Violation> validate(const ResolvedDiagram& rd, const HeightProfile& hp) {
  std::vector<Violation> out = validate(rd);
  if (static_cast<int>(hp.heights.size()) != rd.shadow.size()) {
    out.push_back({"BadProfile", "height count does not match word length"});
    return out;
  }
  for (double h : hp.heights)
    if (!(h > 0.0 && h < 1.0))
      out.push_back({"BadProfile", "height outside (0,1)"});
  for (const auto& [lab, over] : rd.resolution) {
    auto occ = rd.shadow.occurrences(lab);
    int under = occ[0] == over ? occ[1] : occ[0];
    if (over < rd.shadow.size() && under < rd.shadow.size() &&
        !(hp.heights[over] > hp.heights[under]))
      out.push_back({"BadProfile", "crossing " + lab + " over strand not above under strand"});
  }
  return out;
}

}  // namespace unknot
