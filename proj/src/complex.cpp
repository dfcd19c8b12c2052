// Copyright 2026 The ramcube Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ramcube/complex.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <sstream>

#include "ramcube/errors.hpp"

namespace ramcube {

int dir_count(DirSet s) { return std::popcount(s); }

std::vector<int> dirs_of(DirSet s) {
  std::vector<int> out;
  for (int j = 0; s >> j; ++j)
    if (has_dir(s, j)) out.push_back(j);
  return out;
}

CubicalComplex::CubicalComplex(std::vector<int> regularity)
    : regularity_(std::move(regularity)) {
  if (regularity_.size() > 16) throw PreconditionError("at most 16 directions");
  layers_.resize(std::size_t{1} << regularity_.size());
  for (auto& l : layers_) {
    l.bot.resize(regularity_.size());
    l.top.resize(regularity_.size());
    l.inv.resize(regularity_.size());
  }
}

void CubicalComplex::set_count(DirSet dirs, std::size_t n) {
  if (n >= kNoCube) throw PreconditionError("too many cubes");
  layers_.at(dirs).count = n;
}

void CubicalComplex::set_maps(DirSet dirs, int j, std::vector<CubeId> bot,
                              std::vector<CubeId> top, std::vector<CubeId> inv) {
  if (!has_dir(dirs, j)) throw PreconditionError("set_maps: direction not in set");
  Layer& l = layers_.at(dirs);
  l.bot[j] = std::move(bot);
  l.top[j] = std::move(top);
  l.inv[j] = std::move(inv);
}

void CubicalComplex::set_parities(std::vector<std::uint32_t> bits) {
  if (!bits.empty() && bits.size() != vertex_count())
    throw PreconditionError("set_parities: one entry per vertex required");
  parities_ = std::move(bits);
}

void CubicalComplex::set_vertex_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != vertex_count())
    throw PreconditionError("set_vertex_labels: one entry per vertex required");
  vertex_labels_ = std::move(labels);
}

std::string CubicalComplex::vertex_label(CubeId v) const {
  return vertex_labels_.empty() ? std::to_string(v) : vertex_labels_[v];
}

CubeId CubicalComplex::origin(DirSet dirs, CubeId c) const {
  for (int j : dirs_of(dirs)) {
    c = bot(dirs, j, c);
    dirs = without_dir(dirs, j);
  }
  return c;
}

CubeId CubicalComplex::edge_at_origin(DirSet dirs, CubeId c, int j) const {
  for (int k : dirs_of(dirs)) {
    if (k == j) continue;
    c = bot(dirs, k, c);
    dirs = without_dir(dirs, k);
  }
  return c;
}

namespace {

bool maps_well_formed(const CubicalComplex& x, DirSet dirs, int j) {
  if (!x.has_maps(dirs, j)) return false;
  const std::size_t n = x.count(dirs);
  const std::size_t lower = x.count(without_dir(dirs, j));
  for (CubeId c = 0; c < n; ++c) {
    if (x.bot(dirs, j, c) >= lower || x.top(dirs, j, c) >= lower ||
        x.inv(dirs, j, c) >= n)
      return false;
  }
  return true;
}

}  // namespace

void CubicalComplex::finalize() {
  orientation_consistent_ = true;
  const DirSet all = all_dirs();
  bool structure_ok = true;
  for (DirSet dirs = 1; dirs <= all && dirs != 0; ++dirs) {
    for (int j : dirs_of(dirs)) {
      const Layer& l = layers_[dirs];
      if (l.bot[j].size() != l.count || l.top[j].size() != l.count ||
          l.inv[j].size() != l.count || !maps_well_formed(*this, dirs, j))
        structure_ok = false;
    }
  }
  for (DirSet dirs = 0; dirs <= all; ++dirs) {
    Layer& l = layers_[dirs];
    l.canonical.clear();
    l.cell.assign(l.count, 0);
    l.flips.assign(l.count, 0);
    if (dirs == 0 || !structure_ok) {
      if (dirs != 0) orientation_consistent_ = false;
      l.canonical.resize(l.count);
      std::iota(l.canonical.begin(), l.canonical.end(), CubeId{0});
      std::iota(l.cell.begin(), l.cell.end(), std::size_t{0});
      continue;
    }
    const std::vector<int> js = dirs_of(dirs);
    const std::size_t orbit_size = std::size_t{1} << js.size();
    std::vector<char> seen(l.count, 0);
    std::vector<DirSet> rel(l.count, 0);
    std::vector<CubeId> orbit;
    for (CubeId start = 0; start < l.count; ++start) {
      if (seen[start]) continue;
      orbit.clear();
      orbit.push_back(start);
      seen[start] = 1;
      rel[start] = 0;
      for (std::size_t q = 0; q < orbit.size(); ++q) {
        const CubeId c = orbit[q];
        for (int j : js) {
          const CubeId d = l.inv[j][c];
          const DirSet m = rel[c] ^ (1u << j);
          if (!seen[d]) {
            seen[d] = 1;
            rel[d] = m;
            orbit.push_back(d);
          } else if (rel[d] != m) {
            orientation_consistent_ = false;
          }
        }
      }
      if (orbit.size() != orbit_size) orientation_consistent_ = false;
      CubeId canon = start;
      if (has_parities()) {
        for (CubeId c : orbit) {
          if ((parities_[origin(dirs, c)] & dirs) == 0) {
            canon = c;
            break;
          }
        }
      }
      const std::size_t cell = l.canonical.size();
      l.canonical.push_back(canon);
      for (CubeId c : orbit) {
        l.cell[c] = cell;
        l.flips[c] = rel[c] ^ rel[canon];
      }
    }
  }
}

bool AxiomReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AxiomCheck& c) { return c.pass; });
}

namespace {

void record(AxiomCheck& check, DirSet dirs, int j, CubeId c, std::string detail) {
  ++check.violations;
  if (check.pass) check.witness = AxiomWitness{dirs, j, c, std::move(detail)};
  check.pass = false;
}

}  // namespace

AxiomReport verify_axioms(const CubicalComplex& x) {
  AxiomReport report;
  AxiomCheck structure;
  structure.name = "structure";
  AxiomCheck simply_transitive;
  simply_transitive.name = "axiom1_simply_transitive";
  AxiomCheck commuting;
  commuting.name = "axiom2_faces_commute_with_inversions";
  AxiomCheck top_inv;
  top_inv.name = "axiom3_top_inv_is_bot";
  AxiomCheck regular;
  regular.name = "axiom4_regularity";
  const DirSet all = x.all_dirs();

  for (DirSet dirs = 1; dirs <= all && dirs != 0; ++dirs)
    for (int j : dirs_of(dirs))
      if (!maps_well_formed(x, dirs, j))
        record(structure, dirs, j, kNoCube, "missing or out-of-range face maps");
  if (!structure.pass) {
    for (AxiomCheck* c : {&simply_transitive, &commuting, &top_inv, &regular}) {
      c->pass = false;
      c->witness = AxiomWitness{0, -1, kNoCube, "skipped: malformed tables"};
    }
    report.checks = {structure, simply_transitive, commuting, top_inv, regular};
    return report;
  }

  for (DirSet dirs = 1; dirs <= all && dirs != 0; ++dirs) {
    const std::vector<int> js = dirs_of(dirs);
    const std::size_t n = x.count(dirs);
    for (CubeId c = 0; c < n; ++c) {
      for (int j : js) {
        if (x.inv(dirs, j, x.inv(dirs, j, c)) != c)
          record(simply_transitive, dirs, j, c, "inv_j is not an involution");
        for (int k : js) {
          if (k <= j) continue;
          if (x.inv(dirs, j, x.inv(dirs, k, c)) != x.inv(dirs, k, x.inv(dirs, j, c)))
            record(simply_transitive, dirs, j, c, "inversions do not commute");
        }
      }
      // Freeness: no nonempty product of inversions fixes c.
      for (DirSet sub = 1; sub < (1u << js.size()); ++sub) {
        CubeId d = c;
        for (std::size_t b = 0; b < js.size(); ++b)
          if ((sub >> b) & 1u) d = x.inv(dirs, js[b], d);
        if (d == c) {
          record(simply_transitive, dirs, -1, c, "orientation fixed by an inversion");
          break;
        }
      }
      for (int j : js) {
        const DirSet lower = without_dir(dirs, j);
        if (x.top(dirs, j, x.inv(dirs, j, c)) != x.bot(dirs, j, c))
          record(top_inv, dirs, j, c, "top_j(inv_j c) != bot_j(c)");
        for (int k : js) {
          if (k == j) continue;
          const CubeId ik = x.inv(dirs, k, c);
          if (x.top(dirs, j, ik) != x.inv(lower, k, x.top(dirs, j, c)))
            record(commuting, dirs, j, c, "top_j inv_k != inv_k top_j");
          if (x.bot(dirs, j, ik) != x.inv(lower, k, x.bot(dirs, j, c)))
            record(commuting, dirs, j, c, "bot_j inv_k != inv_k bot_j");
        }
      }
    }
  }

  for (DirSet dirs = 0; dirs <= all; ++dirs) {
    for (int j = 0; j < x.dimension(); ++j) {
      if (has_dir(dirs, j)) continue;
      const DirSet upper = with_dir(dirs, j);
      std::vector<std::uint32_t> hits(x.count(dirs), 0);
      for (CubeId t = 0; t < x.count(upper); ++t) ++hits[x.top(upper, j, t)];
      for (CubeId c = 0; c < x.count(dirs); ++c)
        if (hits[c] != static_cast<std::uint32_t>(x.regularity(j)))
          record(regular, dirs, j, c,
                 "j-th top of " + std::to_string(hits[c]) + " cubes, expected " +
                     std::to_string(x.regularity(j)));
    }
    if (dirs == all) break;
  }

  report.checks = {structure, simply_transitive, commuting, top_inv, regular};
  return report;
}

ParityReport verify_parities(const CubicalComplex& x) {
  ParityReport r;
  if (!x.has_parities()) {
    r.witness = AxiomWitness{0, -1, kNoCube, "complex carries no parities"};
    return r;
  }
  for (int i = 0; i < x.dimension(); ++i) {
    const DirSet e = 1u << i;
    for (CubeId c = 0; c < x.count(e); ++c) {
      const CubeId b = x.bot(e, i, c);
      const CubeId t = x.top(e, i, c);
      for (int j = 0; j < x.dimension(); ++j) {
        const bool same = x.parity(j, b) == x.parity(j, t);
        if (same != (i != j)) {
          r.witness = AxiomWitness{e, j, c, "parity relation fails on edge"};
          return r;
        }
      }
    }
  }
  r.pass = true;
  return r;
}

CubicalComplex graph_complex(
    std::size_t vertices,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
    int regularity, std::vector<std::uint32_t> parities) {
  CubicalComplex x({regularity});
  x.set_count(0, vertices);
  x.set_count(1, 2 * edges.size());
  std::vector<CubeId> bot(2 * edges.size()), top(2 * edges.size()), inv(2 * edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    if (u >= vertices || v >= vertices) throw PreconditionError("graph_complex: bad vertex");
    bot[2 * e] = u;
    top[2 * e] = v;
    bot[2 * e + 1] = v;
    top[2 * e + 1] = u;
    inv[2 * e] = static_cast<CubeId>(2 * e + 1);
    inv[2 * e + 1] = static_cast<CubeId>(2 * e);
  }
  x.set_maps(1, 0, std::move(bot), std::move(top), std::move(inv));
  x.set_parities(std::move(parities));
  x.finalize();
  return x;
}

CubicalComplex point_complex() {
  CubicalComplex x(std::vector<int>{});
  x.set_count(0, 1);
  x.set_parities({0});
  x.finalize();
  return x;
}

CubicalComplex unit_cube(int g) {
  CubicalComplex x = point_complex();
  const CubicalComplex interval = graph_complex(2, {{0, 1}}, 1, {0, 1});
  for (int j = 0; j < g; ++j) x = product(x, interval);
  return x;
}

CubicalComplex product(const CubicalComplex& x, const CubicalComplex& y) {
  const int gx = x.dimension();
  std::vector<int> reg = x.regularity();
  reg.insert(reg.end(), y.regularity().begin(), y.regularity().end());
  CubicalComplex z(reg);
  const DirSet low = (1u << gx) - 1u;
  const DirSet all = z.all_dirs();
  for (DirSet dirs = 0; dirs <= all; ++dirs) {
    const DirSet d1 = dirs & low;
    const DirSet d2 = dirs >> gx;
    z.set_count(dirs, x.count(d1) * y.count(d2));
    if (dirs == all) break;
  }
  for (DirSet dirs = 1; dirs <= all && dirs != 0; ++dirs) {
    const DirSet d1 = dirs & low;
    const DirSet d2 = dirs >> gx;
    const std::size_t n1 = x.count(d1);
    const std::size_t n2 = y.count(d2);
    for (int j : dirs_of(dirs)) {
      std::vector<CubeId> bot(n1 * n2), top(n1 * n2), inv(n1 * n2);
      for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b) {
          const std::size_t c = a * n2 + b;
          if (j < gx) {
            bot[c] = static_cast<CubeId>(x.bot(d1, j, a) * n2 + b);
            top[c] = static_cast<CubeId>(x.top(d1, j, a) * n2 + b);
            inv[c] = static_cast<CubeId>(x.inv(d1, j, a) * n2 + b);
          } else {
            const int jy = j - gx;
            const std::size_t m2 = y.count(without_dir(d2, jy));
            bot[c] = static_cast<CubeId>(a * m2 + y.bot(d2, jy, b));
            top[c] = static_cast<CubeId>(a * m2 + y.top(d2, jy, b));
            inv[c] = static_cast<CubeId>(a * n2 + y.inv(d2, jy, b));
          }
        }
      z.set_maps(dirs, j, std::move(bot), std::move(top), std::move(inv));
    }
  }
  const std::size_t nv = y.vertex_count();
  if (x.has_parities() && y.has_parities()) {
    std::vector<std::uint32_t> bits(x.vertex_count() * nv);
    for (std::size_t a = 0; a < x.vertex_count(); ++a)
      for (std::size_t b = 0; b < nv; ++b)
        bits[a * nv + b] = x.parity_bits(static_cast<CubeId>(a)) |
                           (y.parity_bits(static_cast<CubeId>(b)) << gx);
    z.set_parities(std::move(bits));
  }
  if (!x.vertex_labels().empty() || !y.vertex_labels().empty()) {
    std::vector<std::string> labels(x.vertex_count() * nv);
    for (std::size_t a = 0; a < x.vertex_count(); ++a)
      for (std::size_t b = 0; b < nv; ++b)
        labels[a * nv + b] = x.vertex_label(static_cast<CubeId>(a)) + " x " +
                             y.vertex_label(static_cast<CubeId>(b));
    z.set_vertex_labels(std::move(labels));
  }
  z.finalize();
  return z;
}

CubicalComplex disjoint_union(const CubicalComplex& x, const CubicalComplex& y) {
  if (x.regularity() != y.regularity())
    throw PreconditionError("disjoint_union: regularities differ");
  CubicalComplex z(x.regularity());
  const DirSet all = z.all_dirs();
  for (DirSet dirs = 0; dirs <= all; ++dirs) {
    z.set_count(dirs, x.count(dirs) + y.count(dirs));
    if (dirs == all) break;
  }
  for (DirSet dirs = 1; dirs <= all && dirs != 0; ++dirs) {
    const std::size_t nx = x.count(dirs);
    for (int j : dirs_of(dirs)) {
      const CubeId off_low = static_cast<CubeId>(x.count(without_dir(dirs, j)));
      const CubeId off = static_cast<CubeId>(nx);
      std::vector<CubeId> bot, top, inv;
      for (CubeId c = 0; c < nx; ++c) {
        bot.push_back(x.bot(dirs, j, c));
        top.push_back(x.top(dirs, j, c));
        inv.push_back(x.inv(dirs, j, c));
      }
      for (CubeId c = 0; c < y.count(dirs); ++c) {
        bot.push_back(off_low + y.bot(dirs, j, c));
        top.push_back(off_low + y.top(dirs, j, c));
        inv.push_back(off + y.inv(dirs, j, c));
      }
      z.set_maps(dirs, j, std::move(bot), std::move(top), std::move(inv));
    }
  }
  if (x.has_parities() && y.has_parities()) {
    std::vector<std::uint32_t> bits;
    for (CubeId v = 0; v < x.vertex_count(); ++v) bits.push_back(x.parity_bits(v));
    for (CubeId v = 0; v < y.vertex_count(); ++v) bits.push_back(y.parity_bits(v));
    z.set_parities(std::move(bits));
  }
  z.finalize();
  return z;
}

LinkGraph link_graph(const CubicalComplex& x, int j, DirSet dirs) {
  if (j < 0 || j >= x.dimension() || has_dir(dirs, j))
    throw PreconditionError("link_graph: direction must lie outside the set");
  if (!x.has_parities())
    throw PreconditionError("link_graph: complex carries no parities");
  if (!x.orientation_consistent())
    throw PreconditionError("link_graph: orientations are inconsistent");
  LinkGraph g;
  g.direction = j;
  g.dirs = dirs;
  g.regularity = x.regularity(j);
  const std::size_t cells = x.cell_count(dirs);
  g.vertex_cube.resize(cells);
  for (std::size_t u = 0; u < cells; ++u) g.vertex_cube[u] = x.canonical(dirs, u);

  const DirSet upper = with_dir(dirs, j);
  std::vector<std::uint32_t> edge_of(x.count(upper), 0xffffffffu);
  for (CubeId t = 0; t < x.count(upper); ++t) {
    const CubeId b = x.bot(upper, j, t);
    if (!x.is_canonical(dirs, b)) continue;
    const CubeId e = x.top(upper, j, t);
    if (!x.is_canonical(dirs, e))
      throw PreconditionError("link_graph: top face not canonical; parities inconsistent");
    edge_of[t] = static_cast<std::uint32_t>(g.edges.size());
    g.edges.push_back({t, static_cast<std::uint32_t>(x.cell_of(dirs, b)),
                       static_cast<std::uint32_t>(x.cell_of(dirs, e)), 0});
  }
  for (auto& e : g.edges) {
    const std::uint32_t opp = edge_of[x.inv(upper, j, e.cube)];
    if (opp == 0xffffffffu)
      throw PreconditionError("link_graph: opposite edge missing");
    e.opposite = opp;
  }
  return g;
}

namespace {

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Components connected_components(
    std::size_t vertices,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  DisjointSets ds(vertices);
  for (const auto& [a, b] : edges) ds.unite(a, b);
  Components c;
  c.label.assign(vertices, 0);
  std::vector<std::uint32_t> root_label(vertices, 0xffffffffu);
  for (std::uint32_t v = 0; v < vertices; ++v) {
    const std::uint32_t r = ds.find(v);
    if (root_label[r] == 0xffffffffu) root_label[r] = static_cast<std::uint32_t>(c.count++);
    c.label[v] = root_label[r];
  }
  return c;
}

Components connected_components(const LinkGraph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(g.edges.size());
  for (const auto& e : g.edges) edges.emplace_back(e.origin, e.terminus);
  return connected_components(g.vertex_count(), edges);
}

std::optional<std::size_t> skeleton_girth(const CubicalComplex& x) {
  const std::size_t n = x.vertex_count();
  struct Arc {
    std::uint32_t to;
    std::uint32_t cell;
  };
  std::vector<std::vector<Arc>> adj(n);
  std::uint32_t cell_base = 0;
  for (int j = 0; j < x.dimension(); ++j) {
    const DirSet e = 1u << j;
    for (CubeId c = 0; c < x.count(e); ++c)
      adj[x.bot(e, j, c)].push_back(
          {x.top(e, j, c), cell_base + static_cast<std::uint32_t>(x.cell_of(e, c))});
    cell_base += static_cast<std::uint32_t>(x.cell_count(e));
  }
  std::optional<std::size_t> best;
  std::vector<std::int64_t> dist(n);
  std::vector<std::uint32_t> via(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    via[s] = 0xffffffffu;
    std::deque<std::uint32_t> q{s};
    while (!q.empty()) {
      const std::uint32_t u = q.front();
      q.pop_front();
      if (best && static_cast<std::size_t>(2 * dist[u]) >= *best) break;
      for (const Arc& a : adj[u]) {
        if (a.cell == via[u]) continue;
        if (dist[a.to] < 0) {
          dist[a.to] = dist[u] + 1;
          via[a.to] = a.cell;
          q.push_back(a.to);
        } else {
          const auto len = static_cast<std::size_t>(dist[u] + dist[a.to] + 1);
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

std::string skeleton_dot(const CubicalComplex& x) {
  std::ostringstream os;
  os << "graph skeleton {\n";
  for (CubeId v = 0; v < x.vertex_count(); ++v)
    os << "  v" << v << " [label=\"" << x.vertex_label(v) << "\"];\n";
  for (int j = 0; j < x.dimension(); ++j) {
    const DirSet e = 1u << j;
    for (std::size_t u = 0; u < x.cell_count(e); ++u) {
      const CubeId c = x.canonical(e, u);
      os << "  v" << x.bot(e, j, c) << " -- v" << x.top(e, j, c) << " [dir=" << j + 1
         << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string link_graph_dot(const LinkGraph& g) {
  std::ostringstream os;
  os << "graph link {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    os << "  v" << v << " [label=\"" << g.vertex_cube[v] << "\"];\n";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.opposite < i) continue;
    os << "  v" << e.origin << " -- v" << e.terminus << " [dir=" << g.direction + 1
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ramcube
