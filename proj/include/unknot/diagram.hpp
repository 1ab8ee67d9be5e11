#pragma once

// Immersed-loop diagrams (shadows) and resolved knot diagrams.
//
// A shadow is an unsigned Gauss word: the cyclic sequence of crossing labels
// met while walking the loop from the basepoint, each label appearing exactly
// twice.  Optionally the shadow carries planar data: for every crossing, the
// four incident half-edges in counterclockwise order.  A resolution picks the
// over-strand at every crossing, turning the shadow into a knot diagram.
//
// The basepoint is a gap between consecutive word symbols, never a crossing.
// Heights are order data only; the collar parameter is normalized to 1, the
// basepoint height to 0.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace unknot {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

struct Violation {
  std::string kind;
  std::string detail;
};

enum class End : uint8_t { In = 0, Out = 1 };

// One of the four half-edge ends incident to a crossing, identified by the
// word position of the passage it belongs to.
struct HalfEdge {
  int pos = -1;
  End end = End::In;
  bool operator==(const HalfEdge&) const = default;
};

// Four incident half-edges in counterclockwise order.  Slot 0 is anchored at
// the incoming half-edge of the label's earlier word position.
using RotationTuple = std::array<HalfEdge, 4>;
using PlanarData = std::map<std::string, RotationTuple>;

struct ShadowDiagram {
  std::vector<std::string> word;     // cyclic; each label occurs exactly twice
  std::optional<PlanarData> planar;  // rotation system, when known
  int basepoint = 0;                 // gap index: * sits just before word[basepoint]

  int size() const { return static_cast<int>(word.size()); }
  int crossings() const { return size() / 2; }

  // Walk order: the k-th position visited when walking from *.
  int walk_pos(int k) const {
    int n2 = size();
    return n2 == 0 ? 0 : (basepoint + k % n2 + n2) % n2;
  }
  // Inverse: how many steps from * until `pos` is visited.
  int walk_index(int pos) const {
    int n2 = size();
    return n2 == 0 ? 0 : (pos - basepoint + n2) % n2;
  }

  // The two word positions carrying `label`, in walk order from *.
  std::array<int, 2> occurrences(const std::string& label) const {
    std::array<int, 2> occ{-1, -1};
    for (int k = 0; k < size(); ++k) {
      int p = walk_pos(k);
      if (word[p] == label) (occ[0] < 0 ? occ[0] : occ[1]) = p;
    }
    if (occ[1] < 0) fail("MalformedWord", "label " + label + " does not occur twice");
    return occ;
  }

  std::vector<std::string> labels_first_visit() const {
    std::vector<std::string> out;
    for (int k = 0; k < size(); ++k) {
      const std::string& s = word[walk_pos(k)];
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    return out;
  }
};

// Over-strand choice: label -> word position of the over passage.
using Resolution = std::map<std::string, int>;

struct ResolvedDiagram {
  ShadowDiagram shadow;
  Resolution resolution;

  bool is_over(int pos) const {
    auto it = resolution.find(shadow.word[pos]);
    return it != resolution.end() && it->second == pos;
  }
};

// Strand height at each word position; the basepoint gap has height 0,
// everything else lies in (0,1).  Only the relative order is meaningful.
struct HeightProfile {
  std::vector<double> heights;  // indexed by word position
};

// ---------------------------------------------------------------------------
// Representation changes and equality

// Re-present the same marked diagram with the word rotated left by r.
inline ShadowDiagram rotated(const ShadowDiagram& d, int r) {
  int n2 = d.size();
  if (n2 == 0) return d;
  r = (r % n2 + n2) % n2;
  ShadowDiagram out;
  out.word.resize(n2);
  for (int p = 0; p < n2; ++p) out.word[(p - r + n2) % n2] = d.word[p];
  out.basepoint = (d.basepoint - r + n2) % n2;
  if (d.planar) {
    PlanarData pd;
    for (const auto& [lab, tup] : *d.planar) {
      RotationTuple t = tup;
      for (auto& he : t) he.pos = (he.pos - r + n2) % n2;
      // keep slot 0 anchored at the incoming end of the earlier position
      pd[lab] = t;
    }
    out.planar = std::move(pd);
  }
  return out;
}

// Normalize so the basepoint gap is 0 and, for planar data, every rotation
// tuple is anchored at the incoming end of its earlier (walk-order) position.
inline ShadowDiagram normalized(const ShadowDiagram& d) {
  ShadowDiagram out = rotated(d, d.basepoint);
  if (out.planar) {
    for (auto& [lab, tup] : *out.planar) {
      int first = -1;
      for (int s = 0; s < 4; ++s)
        if (tup[s].end == End::In && (first < 0 || tup[s].pos < tup[first].pos)) first = s;
      if (first > 0) {
        RotationTuple t;
        for (int s = 0; s < 4; ++s) t[s] = tup[(first + s) % 4];
        tup = t;
      }
    }
  }
  return out;
}

// Marked-diagram equality: same cyclic word relative to *, same planar data.
inline bool operator==(const ShadowDiagram& a, const ShadowDiagram& b) {
  ShadowDiagram na = normalized(a), nb = normalized(b);
  return na.word == nb.word && na.planar == nb.planar;
}

inline bool operator==(const ResolvedDiagram& a, const ResolvedDiagram& b) {
  return a.shadow == b.shadow && a.resolution == b.resolution;
}

// Canonical renumbering for deduplication: labels become "1".."n" in first
// visit order from the basepoint.
inline ShadowDiagram canonical_renumber(const ShadowDiagram& d) {
  std::map<std::string, std::string> ren;
  int next = 1;
  for (int k = 0; k < d.size(); ++k) {
    const std::string& s = d.word[d.walk_pos(k)];
    if (!ren.count(s)) ren[s] = std::to_string(next++);
  }
  ShadowDiagram out = d;
  for (auto& s : out.word) s = ren[s];
  if (d.planar) {
    PlanarData pd;
    for (const auto& [lab, tup] : *d.planar) pd[ren.at(lab)] = tup;
    out.planar = std::move(pd);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline std::vector<std::string> tokens_of(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

inline std::vector<std::string> strip_comments(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

}  // namespace detail

// Parse an unsigned Gauss word: whitespace-separated labels, * implicitly
// before the first token unless `basepoint` overrides.  Whitespace-only text
// is the 0-crossing diagram.
inline ShadowDiagram parse_gauss_shadow(const std::string& text, int basepoint = 0) {
  ShadowDiagram d;
  std::string body;
  for (const auto& l : detail::strip_comments(text)) body += l + " ";
  d.word = detail::tokens_of(body);
  std::map<std::string, int> count;
  for (const auto& s : d.word) ++count[s];
  for (const auto& [lab, c] : count)
    if (c != 2) fail("MalformedWord", "label " + lab + " occurs " + std::to_string(c) + " times");
  if (d.size() == 0) {
    d.basepoint = 0;
    return d;
  }
  if (basepoint < 0 || basepoint >= d.size())
    fail("MalformedWord", "basepoint gap " + std::to_string(basepoint) + " out of range");
  d.basepoint = basepoint;
  return d;
}

// Parse a resolved word: tokens O<label> / U<label>.
inline ResolvedDiagram parse_resolved_word(const std::string& text, int basepoint = 0) {
  std::string body;
  for (const auto& l : detail::strip_comments(text)) body += l + " ";
  auto toks = detail::tokens_of(body);
  ResolvedDiagram rd;
  std::vector<char> flags;
  for (const auto& t : toks) {
    if (t.size() < 2 || (t[0] != 'O' && t[0] != 'U'))
      fail("MalformedWord", "expected O<label> or U<label>, got " + t);
    rd.shadow.word.push_back(t.substr(1));
    flags.push_back(t[0]);
  }
  std::map<std::string, int> count;
  for (const auto& s : rd.shadow.word) ++count[s];
  for (const auto& [lab, c] : count)
    if (c != 2) fail("MalformedWord", "label " + lab + " occurs " + std::to_string(c) + " times");
  for (int p = 0; p < rd.shadow.size(); ++p) {
    if (flags[p] == 'O') {
      auto [it, fresh] = rd.resolution.emplace(rd.shadow.word[p], p);
      if (!fresh && it->second != p)
        fail("MalformedWord", "label " + rd.shadow.word[p] + " marked over twice");
    }
  }
  for (const auto& [lab, c] : count)
    if (!rd.resolution.count(lab)) fail("MalformedWord", "label " + lab + " never marked over");
  if (rd.shadow.size() > 0) {
    if (basepoint < 0 || basepoint >= rd.shadow.size())
      fail("MalformedWord", "basepoint gap out of range");
    rd.shadow.basepoint = basepoint;
  }
  return rd;
}

namespace detail {

// Shared walker for the planar formats.  Tuples list, per crossing, the four
// incident edge identifiers counterclockwise; edges are numbered 1..2n along
// the traversal from *.  Edge k enters word position k-1.  Returns, on
// success: for each tuple, the positions/ends its slots serve.
struct PdWalk {
  std::vector<std::array<HalfEdge, 4>> slot_role;  // per tuple per slot
  std::vector<int> pos_tuple;                      // word position -> tuple index
  std::vector<int> pos_in_slot;                    // word position -> arrival slot
};

inline std::optional<PdWalk> pd_walk(const std::vector<std::array<int, 4>>& tuples,
                                     int start_tuple, int start_slot) {
  int n = static_cast<int>(tuples.size());
  int n2 = 2 * n;
  PdWalk w;
  w.slot_role.assign(n, {HalfEdge{-1, End::In}, HalfEdge{-1, End::In}, HalfEdge{-1, End::In},
                         HalfEdge{-1, End::In}});
  std::vector<std::array<bool, 4>> used(n, {false, false, false, false});
  w.pos_tuple.assign(n2, -1);
  w.pos_in_slot.assign(n2, -1);
  int t = start_tuple, s = start_slot;
  for (int pos = 0; pos < n2; ++pos) {
    if (tuples[t][s] != pos + 1 || used[t][s]) return std::nullopt;
    used[t][s] = true;
    w.slot_role[t][s] = HalfEdge{pos, End::In};
    w.pos_tuple[pos] = t;
    w.pos_in_slot[pos] = s;
    int out = (s + 2) % 4;
    int out_edge = pos + 2 <= n2 ? pos + 2 : 1;
    if (used[t][out] || tuples[t][out] != out_edge) return std::nullopt;
    used[t][out] = true;
    w.slot_role[t][out] = HalfEdge{pos, End::Out};
    if (pos == n2 - 1) break;
    // move to the other occurrence of out_edge
    int nt = -1, ns = -1;
    for (int i = 0; i < n && nt < 0; ++i)
      for (int j = 0; j < 4; ++j)
        if (!used[i][j] && tuples[i][j] == out_edge) {
          nt = i;
          ns = j;
          break;
        }
    if (nt < 0) return std::nullopt;
    t = nt;
    s = ns;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 4; ++j)
      if (!used[i][j]) return std::nullopt;
  return w;
}

inline std::vector<std::array<int, 4>> pd_tuples(const std::string& text, char lead) {
  std::vector<std::array<int, 4>> tuples;
  for (const auto& line : strip_comments(text)) {
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks[0] != std::string(1, lead))
      fail("MalformedWord", "expected '" + std::string(1, lead) + "' line, got: " + line);
    if (toks.size() != 5) fail("MalformedWord", "expected 4 edge ids per line: " + line);
    std::array<int, 4> t{};
    for (int i = 0; i < 4; ++i) t[i] = std::stoi(toks[i + 1]);
    tuples.push_back(t);
  }
  int n = static_cast<int>(tuples.size());
  std::map<int, int> edge_count;
  for (const auto& t : tuples)
    for (int e : t) ++edge_count[e];
  for (const auto& [e, c] : edge_count)
    if (c != 2)
      fail("InconsistentEdges",
           "edge " + std::to_string(e) + " occurs " + std::to_string(c) + " times");
  for (int e = 1; e <= 2 * n; ++e)
    if (!edge_count.count(e)) fail("InconsistentEdges", "edge " + std::to_string(e) + " missing");
  return tuples;
}

inline ShadowDiagram shadow_from_walk(const std::vector<std::array<int, 4>>& tuples,
                                      const PdWalk& w) {
  int n = static_cast<int>(tuples.size());
  ShadowDiagram d;
  d.basepoint = 0;
  d.word.resize(2 * n);
  std::vector<std::string> tuple_label(n );
  std::vector<int> first_visit(n, -1);
  int next = 1;
  for (int pos = 0; pos < 2 * n; ++pos) {
    int t = w.pos_tuple[pos];
    if (first_visit[t] < 0) {
      first_visit[t] = pos;
      tuple_label[t] = std::to_string(next++);
    }
    d.word[pos] = tuple_label[t];
  }
  PlanarData pd;
  for (int t = 0; t < n; ++t) {
    int anchor = w.pos_in_slot[first_visit[t]];
    RotationTuple rt;
    for (int s = 0; s < 4; ++s) rt[s] = w.slot_role[t][(anchor + s) % 4];
    pd[tuple_label[t]] = rt;
  }
  d.planar = std::move(pd);
  return d;
}

}  // namespace detail

// Parse a shadow planar code: one `P a b c d` line per crossing, edge ids
// counterclockwise, first slot the incoming edge of the earlier visit.
inline ShadowDiagram parse_pd_shadow(const std::string& text) {
  auto tuples = detail::pd_tuples(text, 'P');
  if (tuples.empty()) return ShadowDiagram{};
  int n = static_cast<int>(tuples.size());
  // try each occurrence of edge 1 as the first arrival
  std::optional<detail::PdWalk> best;
  for (int t = 0; t < n && !best; ++t)
    for (int s = 0; s < 4 && !best; ++s)
      if (tuples[t][s] == 1)
        if (auto w = detail::pd_walk(tuples, t, s)) {
          // anchoring: slot 0 must serve the incoming end of the earlier visit
          bool ok = true;
          for (int i = 0; i < n && ok; ++i) {
            int fp = 2 * n;
            for (int s2 = 0; s2 < 4; ++s2)
              if (w->slot_role[i][s2].end == End::In) fp = std::min(fp, w->slot_role[i][s2].pos);
            ok = w->slot_role[i][0].end == End::In && w->slot_role[i][0].pos == fp;
          }
          if (ok) best = w;
        }
  if (!best) fail("DisconnectedTraversal", "edges do not close into a single loop");
  return detail::shadow_from_walk(tuples, *best);
}

// Parse a resolved planar code: `X a b c d` lines, first slot the incoming
// under-strand edge.
inline ResolvedDiagram parse_resolved_pd(const std::string& text) {
  auto tuples = detail::pd_tuples(text, 'X');
  if (tuples.empty()) return ResolvedDiagram{};
  int n = static_cast<int>(tuples.size());
  std::optional<detail::PdWalk> best;
  for (int t = 0; t < n && !best; ++t)
    for (int s = 0; s < 4 && !best; ++s)
      if (tuples[t][s] == 1)
        if (auto w = detail::pd_walk(tuples, t, s)) {
          bool ok = true;  // slot 0 carries an incoming end at every crossing
          for (int i = 0; i < n && ok; ++i) ok = w->slot_role[i][0].end == End::In;
          if (ok) best = w;
        }
  if (!best) fail("DisconnectedTraversal", "edges do not close into a single loop");
  ResolvedDiagram rd;
  rd.shadow = detail::shadow_from_walk(tuples, *best);
  // under passage = the one arriving at slot 0; the other passage is over
  for (int t = 0; t < n; ++t) {
    int under_pos = best->slot_role[t][0].pos;
    const std::string& lab = rd.shadow.word[under_pos];
    auto occ = rd.shadow.occurrences(lab);
    rd.resolution[lab] = occ[0] == under_pos ? occ[1] : occ[0];
  }
  return rd;
}

// ---------------------------------------------------------------------------
// Serialization.  Words are emitted in walk order, so the basepoint is
// implicitly before the first token; planar codes number edges 1..2n along
// the traversal from *.

namespace detail {

// Edge id entering walk index k (1-based traversal numbering).
inline int in_edge_of_walk(int k, int n2) { return k + 1; }
inline int out_edge_of_walk(int k, int n2) { return k + 2 <= n2 ? k + 2 : 1; }

inline int edge_of(const ShadowDiagram& d, const HalfEdge& he) {
  int k = d.walk_index(he.pos);
  return he.end == End::In ? in_edge_of_walk(k, d.size()) : out_edge_of_walk(k, d.size());
}

}  // namespace detail

inline std::string serialize_gauss(const ShadowDiagram& d) {
  std::string out;
  for (int k = 0; k < d.size(); ++k) {
    if (k) out += ' ';
    out += d.word[d.walk_pos(k)];
  }
  return out;
}

inline std::string serialize_resolved_word(const ResolvedDiagram& rd) {
  std::string out;
  for (int k = 0; k < rd.shadow.size(); ++k) {
    if (k) out += ' ';
    int p = rd.shadow.walk_pos(k);
    out += rd.is_over(p) ? 'O' : 'U';
    out += rd.shadow.word[p];
  }
  return out;
}

// P-lines in first-visit order, each tuple anchored at the incoming edge of
// the earlier visit.
inline std::string serialize_pd(const ShadowDiagram& d) {
  if (!d.planar) fail("MissingPlanarData", "shadow has no planar data");
  std::string out;
  for (const auto& lab : d.labels_first_visit()) {
    const RotationTuple& tup = d.planar->at(lab);
    int anchor = 0;
    int best = d.size();
    for (int s = 0; s < 4; ++s)
      if (tup[s].end == End::In && d.walk_index(tup[s].pos) < best) {
        best = d.walk_index(tup[s].pos);
        anchor = s;
      }
    out += "P";
    for (int s = 0; s < 4; ++s)
      out += ' ' + std::to_string(detail::edge_of(d, tup[(anchor + s) % 4]));
    out += '\n';
  }
  return out;
}

// X-lines in first-visit order, each tuple anchored at the incoming edge of
// the under passage.
inline std::string serialize_resolved_pd(const ResolvedDiagram& rd) {
  const ShadowDiagram& d = rd.shadow;
  if (!d.planar) fail("MissingPlanarData", "diagram has no planar data");
  std::string out;
  for (const auto& lab : d.labels_first_visit()) {
    const RotationTuple& tup = d.planar->at(lab);
    auto occ = d.occurrences(lab);
    int under = rd.resolution.at(lab) == occ[0] ? occ[1] : occ[0];
    int anchor = 0;
    for (int s = 0; s < 4; ++s)
      if (tup[s].end == End::In && tup[s].pos == under) anchor = s;
    out += "X";
    for (int s = 0; s < 4; ++s)
      out += ' ' + std::to_string(detail::edge_of(d, tup[(anchor + s) % 4]));
    out += '\n';
  }
  return out;
}

inline std::string serialize(const ShadowDiagram& d) {
  return d.planar ? serialize_pd(d) : serialize_gauss(d);
}

inline std::string serialize(const ResolvedDiagram& rd) {
  return rd.shadow.planar ? serialize_resolved_pd(rd) : serialize_resolved_word(rd);
}

// Validation lives in planar.hpp: checking planar data against the word
// needs the dart map.

}  // namespace unknot
