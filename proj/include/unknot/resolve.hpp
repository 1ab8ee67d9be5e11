#pragma once

// Crossing resolutions that unknot a shadow.
//
// descending_resolution: walking from *, the first visit to each crossing
// goes over; heights decrease strictly along the walk, so the profile has a
// single maximum and a single minimum.
//
// loop_erasure_resolution: repeatedly pick the crossing whose *-free arc is
// shortest, lift that arc above everything else, and erase it together with
// its crossings.  Each step records a 2-cell; the final cell is the
// hemisphere containing *.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "unknot/diagram.hpp"

namespace unknot {

struct DescendingResult {
  ResolvedDiagram resolved;
  HeightProfile profile;
};

inline DescendingResult descending_resolution(const ShadowDiagram& shadow) {
  DescendingResult out;
  out.resolved.shadow = shadow;
  int n2 = shadow.size();
  out.profile.heights.assign(n2, 0.0);
  for (int k = 0; k < n2; ++k) {
    int p = shadow.walk_pos(k);
    out.profile.heights[p] = 1.0 - static_cast<double>(k + 1) / (n2 + 1);
    out.resolved.resolution.emplace(shadow.word[p], p);  // first visit wins
  }
  return out;
}

// A witness height profile for an arbitrary resolution: ranks from a
// topological order of the under->over constraints, walk index as tie-break.
inline HeightProfile height_profile_for(const ResolvedDiagram& rd) {
  const ShadowDiagram& d = rd.shadow;
  int n2 = d.size();
  std::vector<int> indeg(n2, 0);
  std::vector<std::vector<int>> up(n2);  // under -> over
  for (const auto& [lab, over] : rd.resolution) {
    auto occ = d.occurrences(lab);
    int under = occ[0] == over ? occ[1] : occ[0];
    up[under].push_back(over);
    ++indeg[over];
  }
  std::set<std::pair<int, int>> ready;  // (walk index, pos)
  for (int p = 0; p < n2; ++p)
    if (indeg[p] == 0) ready.insert({d.walk_index(p), p});
  HeightProfile hp;
  hp.heights.assign(n2, 0.0);
  int rank = 0;
  while (!ready.empty()) {
    auto [w, p] = *ready.begin();
    (void)w;
    ready.erase(ready.begin());
    hp.heights[p] = static_cast<double>(++rank) / (n2 + 1);
    for (int q : up[p])
      if (--indeg[q] == 0) ready.insert({d.walk_index(q), q});
  }
  return hp;
}

// ---------------------------------------------------------------------------
// Loop erasure

struct CellRecord {
  int ordinal = 0;                         // E_i
  std::string closing;                     // the crossing c at alpha's endpoints
  int c_first = -1, c_second = -1;         // original word positions of c, walk order
  std::vector<int> alpha_interior;         // original positions inside alpha
  std::vector<int> beta_positions;         // rest of the word when the cell was cut
  std::map<std::string, int> decisions;    // label -> over position chosen here
};

struct LoopErasureResult {
  Resolution resolution;
  std::vector<CellRecord> cells;  // the erasure cells E_1..E_{j-1}
  int hemisphere_ordinal = 1;     // the final cell E_j containing *
};

inline LoopErasureResult loop_erasure_resolution(const ShadowDiagram& shadow) {
  LoopErasureResult out;
  // live word as original positions in walk order from *
  std::vector<int> live;
  for (int k = 0; k < shadow.size(); ++k) live.push_back(shadow.walk_pos(k));
  int ordinal = 0;
  while (!live.empty()) {
    // first/second live occurrence index of each label
    std::map<std::string, std::pair<int, int>> occ;
    for (int i = 0; i < static_cast<int>(live.size()); ++i) {
      const std::string& lab = shadow.word[live[i]];
      auto it = occ.find(lab);
      if (it == occ.end())
        occ[lab] = {i, -1};
      else
        it->second.second = i;
    }
    // choose c with the shortest *-free arc; ties to the earliest first visit
    std::string c;
    int ci = -1, cj = -1;
    for (const auto& [lab, ij] : occ) {
      int gap = ij.second - ij.first - 1;
      if (ci < 0 || gap < cj - ci - 1 || (gap == cj - ci - 1 && ij.first < ci)) {
        c = lab;
        ci = ij.first;
        cj = ij.second;
      }
    }
    CellRecord cell;
    cell.ordinal = ++ordinal;
    cell.closing = c;
    cell.c_first = live[ci];
    cell.c_second = live[cj];
    // alpha lies above beta: every interior crossing resolves alpha-side over;
    // the closing crossing itself resolves earlier-occurrence over.
    out.resolution[c] = live[ci];
    cell.decisions[c] = live[ci];
    std::set<std::string> erased{c};
    for (int i = ci + 1; i < cj; ++i) {
      const std::string& lab = shadow.word[live[i]];
      if (erased.count(lab))
        fail("Internal", "alpha interior repeats label " + lab);
      cell.alpha_interior.push_back(live[i]);
      out.resolution[lab] = live[i];
      cell.decisions[lab] = live[i];
      erased.insert(lab);
    }
    std::vector<int> next;
    for (int i = 0; i < static_cast<int>(live.size()); ++i) {
      if (i >= ci && i <= cj) continue;  // alpha and its endpoints
      if (erased.count(shadow.word[live[i]])) continue;
      next.push_back(live[i]);
      cell.beta_positions.push_back(live[i]);
    }
    out.cells.push_back(std::move(cell));
    live = std::move(next);
  }
  out.hemisphere_ordinal = ordinal + 1;
  return out;
}

// ---------------------------------------------------------------------------
// Minimal extrema count
//
// Minimum, over all height assignments compatible with the resolution, of the
// number of cyclic local maxima (the basepoint value 0 included in the cycle).
// Equivalent to brute force over orderings: a height assignment with k maxima
// is exactly an alternating turning structure (k maxima, k minima with * among
// the minima) whose monotone-arc chains plus the under->over constraints are
// acyclic.

namespace detail {

inline bool turning_structure_feasible(const std::vector<std::pair<int, int>>& constraints,
                                       const std::vector<int>& turns, int n2) {
  // turns: walk indices t_0 < t_1 < ... < t_{2K-2}, alternating max (even
  // index) / min (odd index); * is the closing minimum.
  std::vector<std::vector<int>> adj(n2);
  std::vector<int> indeg(n2, 0);
  auto edge = [&](int lo, int hi) {
    adj[lo].push_back(hi);
    ++indeg[hi];
  };
  // Monotone chains between consecutive turning points; arcs alternate
  // ascending/descending starting upward from *.
  int m = static_cast<int>(turns.size());
  int lo = 0;
  for (int t = 0; t <= m; ++t) {
    int hi = t < m ? turns[t] : n2 - 1;
    bool ascending = (t % 2) == 0;
    for (int w = lo; w < hi; ++w) ascending ? edge(w, w + 1) : edge(w + 1, w);
    lo = hi;
  }
  for (const auto& [under, over] : constraints) edge(under, over);
  // Kahn
  std::vector<int> stack;
  for (int w = 0; w < n2; ++w)
    if (indeg[w] == 0) stack.push_back(w);
  int seen = 0;
  while (!stack.empty()) {
    int w = stack.back();
    stack.pop_back();
    ++seen;
    for (int q : adj[w])
      if (--indeg[q] == 0) stack.push_back(q);
  }
  return seen == n2;
}

inline bool try_structures(const std::vector<std::pair<int, int>>& constraints, int n2, int K,
                           std::vector<int>& turns, int from) {
  int need = 2 * K - 1 - static_cast<int>(turns.size());
  if (need == 0) return turning_structure_feasible(constraints, turns, n2);
  for (int t = from; t + need - 1 < n2; ++t) {
    turns.push_back(t);
    if (try_structures(constraints, n2, K, turns, t + 1)) return true;
    turns.pop_back();
  }
  return false;
}

}  // namespace detail

// Count of local maxima forced by the resolution, minimized over compatible
// height functions.  Positions are addressed by walk index internally.
inline int min_extrema(const ResolvedDiagram& rd, int bound = 8) {
  const ShadowDiagram& d = rd.shadow;
  int n = d.crossings();
  if (n > bound)
    fail("TooLarge", "crossing count " + std::to_string(n) + " exceeds brute-force bound " +
                         std::to_string(bound));
  int n2 = d.size();
  if (n2 == 0) return 1;  // a circle-valued Morse function has a maximum
  std::vector<std::pair<int, int>> constraints;  // (under walk idx, over walk idx)
  for (const auto& [lab, over] : rd.resolution) {
    auto occ = d.occurrences(lab);
    int under = occ[0] == over ? occ[1] : occ[0];
    constraints.push_back({d.walk_index(under), d.walk_index(over)});
  }
  for (int K = 1; K <= n + 1; ++K) {
    std::vector<int> turns;
    if (detail::try_structures(constraints, n2, K, turns, 0)) return K;
  }
  fail("Internal", "no feasible turning structure found");
}

}  // namespace unknot
