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

#include "ramcube/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "ramcube/errors.hpp"

namespace ramcube {

GeneratorSystem build_generators(const std::vector<std::int64_t>& primes,
                                 const FiniteGroupTable& groups) {
  GeneratorSystem sys;
  for (std::int64_t p : primes) {
    DirectionGenerators d;
    d.prime = p;
    d.gens = enumerate_generators(p);
    if (static_cast<std::int64_t>(d.gens.size()) != p + 1)
      throw ConstructionError("prime " + std::to_string(p) + ": found " +
                              std::to_string(d.gens.size()) +
                              " normalized generators, expected " +
                              std::to_string(p + 1));
    for (const Quaternion& q : d.gens) {
      const auto it = std::find(d.gens.begin(), d.gens.end(), conjugate(q));
      if (it == d.gens.end())
        throw ConstructionError("generator set not closed under conjugation");
      d.partner.push_back(static_cast<int>(it - d.gens.begin()));
      const Mat2 m = embed(q, groups.residue);
      d.image.push_back(groups.h.index_of(m));
      d.cover_image.push_back(groups.cover.index_of(m));
    }
    sys.dirs.push_back(std::move(d));
  }
  return sys;
}

namespace {

Quaternion product_in_order(const std::vector<int>& order, const std::vector<int>& idx,
                            const GeneratorSystem& gens) {
  Quaternion p{1, 0, 0, 0};
  for (std::size_t k = 0; k < order.size(); ++k)
    p = p * gens.dirs[static_cast<std::size_t>(order[k])].gens[static_cast<std::size_t>(idx[k])];
  return p;
}

}  // namespace

RewriteResult factor(const Quaternion& q, const std::vector<int>& order,
                     const GeneratorSystem& gens) {
  std::size_t total = 1;
  for (int j : order) total *= static_cast<std::size_t>(gens.dirs[static_cast<std::size_t>(j)].regularity());
  std::vector<int> idx(order.size(), 0);
  std::optional<RewriteResult> found;
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rest = t;
    for (std::size_t k = order.size(); k-- > 0;) {
      const auto r = static_cast<std::size_t>(gens.dirs[static_cast<std::size_t>(order[k])].regularity());
      idx[k] = static_cast<int>(rest % r);
      rest /= r;
    }
    const Quaternion p = product_in_order(order, idx, gens);
    int unit = 0;
    if (p == q) unit = 1;
    else if (p == negate(q)) unit = -1;
    if (unit == 0) continue;
    if (found) throw ConstructionError("factorization of " + to_string(q) + " is not unique");
    found = RewriteResult{idx, unit};
  }
  if (!found) throw ConstructionError("no factorization of " + to_string(q));
  return *found;
}

RewriteResult rewrite(const std::vector<int>& order, const std::vector<int>& indices,
                      const GeneratorSystem& gens) {
  if (order.size() != indices.size())
    throw PreconditionError("rewrite: order and indices differ in length");
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw PreconditionError("rewrite: repeated direction");
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k] < 0 || order[k] >= gens.dimension() || indices[k] < 0 ||
        indices[k] >= gens.dirs[static_cast<std::size_t>(order[k])].regularity())
      throw PreconditionError("rewrite: index out of range");
  }
  return factor(product_in_order(order, indices, gens), sorted, gens);
}

std::size_t ArithComplex::tuple_count(DirSet dirs) const {
  std::size_t n = 1;
  for (int j : dirs_of(dirs)) n *= static_cast<std::size_t>(gens.dirs[static_cast<std::size_t>(j)].regularity());
  return n;
}

std::vector<int> ArithComplex::decode_tuple(DirSet dirs, std::size_t tuple) const {
  const std::vector<int> js = dirs_of(dirs);
  std::vector<int> idx(js.size());
  for (std::size_t k = js.size(); k-- > 0;) {
    const auto r = static_cast<std::size_t>(gens.dirs[static_cast<std::size_t>(js[k])].regularity());
    idx[k] = static_cast<int>(tuple % r);
    tuple /= r;
  }
  return idx;
}

std::size_t ArithComplex::encode_tuple(DirSet dirs, const std::vector<int>& idx) const {
  const std::vector<int> js = dirs_of(dirs);
  std::size_t t = 0;
  for (std::size_t k = 0; k < js.size(); ++k)
    t = t * static_cast<std::size_t>(gens.dirs[static_cast<std::size_t>(js[k])].regularity()) +
        static_cast<std::size_t>(idx[k]);
  return t;
}

namespace {

// Face data of one oriented tuple type: per direction j in J, the tuple of
// the bottom face, the first generator and tuple of the top face, and the
// tuple of the j-inverted cube.
struct TupleFaces {
  std::vector<std::size_t> bot_tuple;
  std::vector<int> top_first;
  std::vector<std::size_t> top_tuple;
  std::vector<std::size_t> inv_tuple;
};

std::string vertex_label(const ArithComplex& x, const GradedVertex& v) {
  std::string s = to_string(x.groups.h.element(v.h));
  if (x.vertices.size() != x.groups.h.size()) {
    s += " p=";
    for (int j = 0; j < x.dimension(); ++j) s += ((v.parity >> j) & 1u) ? '1' : '0';
  }
  return s;
}

}  // namespace

ArithComplex build_complex_unchecked(const ArithComplexConfig& cfg) {
  if (cfg.primes.empty()) throw ConfigError("at least one prime is required");
  if (cfg.primes.size() > 8) throw ConfigError("at most 8 primes are supported");
  std::set<std::int64_t> distinct(cfg.primes.begin(), cfg.primes.end());
  if (distinct.size() != cfg.primes.size()) throw ConfigError("primes must be distinct");

  ArithComplex x;
  x.config = cfg;
  x.groups = build_group(cfg.primes, cfg.n1, cfg.residue);
  x.gens = build_generators(cfg.primes, x.groups);
  const int g = x.dimension();

  // Vertices: the subgroup of H x (Z/2)^g generated by (image, e_j).
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  auto key = [g](std::uint32_t h, std::uint32_t par) {
    return (static_cast<std::uint64_t>(h) << g) | par;
  };
  x.vertices.push_back({x.groups.h.identity(), 0});
  index.emplace(key(x.groups.h.identity(), 0), 0);
  x.step.assign(static_cast<std::size_t>(g), {});
  for (int j = 0; j < g; ++j)
    x.step[static_cast<std::size_t>(j)].assign(
        static_cast<std::size_t>(x.gens.dirs[static_cast<std::size_t>(j)].regularity()), {});
  for (std::size_t q = 0; q < x.vertices.size(); ++q) {
    const GradedVertex v = x.vertices[q];
    for (int j = 0; j < g; ++j) {
      const auto& d = x.gens.dirs[static_cast<std::size_t>(j)];
      for (int i = 0; i < d.regularity(); ++i) {
        const std::uint32_t h = x.groups.h.multiply(v.h, d.image[static_cast<std::size_t>(i)]);
        const std::uint32_t par = v.parity ^ (1u << j);
        auto [it, fresh] = index.emplace(key(h, par), static_cast<std::uint32_t>(x.vertices.size()));
        if (fresh) x.vertices.push_back({h, par});
        x.step[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].push_back(it->second);
      }
    }
  }
  const std::size_t nv = x.vertices.size();

  std::vector<int> reg;
  for (const auto& d : x.gens.dirs) reg.push_back(d.regularity());
  CubicalComplex cx(reg);
  const DirSet all = cx.all_dirs();
  for (DirSet dirs = 0; dirs <= all; ++dirs) cx.set_count(dirs, nv * x.tuple_count(dirs));

  for (DirSet dirs = 1; dirs <= all; ++dirs) {
    const std::vector<int> js = dirs_of(dirs);
    const std::size_t nt = x.tuple_count(dirs);
    // Face data per tuple, computed once and shared by all vertices.
    std::vector<TupleFaces> faces(nt);
    for (std::size_t t = 0; t < nt; ++t) {
      const std::vector<int> idx = x.decode_tuple(dirs, t);
      const Quaternion diag = product_in_order(js, idx, x.gens);
      TupleFaces& f = faces[t];
      for (int j : js) {
        std::vector<int> rest;
        for (int k : js)
          if (k != j) rest.push_back(k);
        std::vector<int> bot_order = rest;
        bot_order.push_back(j);
        const RewriteResult b = factor(diag, bot_order, x.gens);
        const std::vector<int> bot_rest(b.indices.begin(), b.indices.end() - 1);
        std::vector<int> top_order{j};
        top_order.insert(top_order.end(), rest.begin(), rest.end());
        const RewriteResult tp = factor(diag, top_order, x.gens);
        const std::vector<int> top_rest(tp.indices.begin() + 1, tp.indices.end());
        const int a = tp.indices.front();
        const auto& dj = x.gens.dirs[static_cast<std::size_t>(j)];
        const Quaternion flipped =
            dj.gens[static_cast<std::size_t>(dj.partner[static_cast<std::size_t>(a)])] *
            product_in_order(rest, bot_rest, x.gens);
        const RewriteResult iv = factor(flipped, js, x.gens);
        const DirSet lower = without_dir(dirs, j);
        f.bot_tuple.push_back(x.encode_tuple(lower, bot_rest));
        f.top_first.push_back(a);
        f.top_tuple.push_back(x.encode_tuple(lower, top_rest));
        f.inv_tuple.push_back(x.encode_tuple(dirs, iv.indices));
      }
    }
    for (std::size_t k = 0; k < js.size(); ++k) {
      const int j = js[k];
      const DirSet lower = without_dir(dirs, j);
      const std::size_t nl = x.tuple_count(lower);
      const auto& stepj = x.step[static_cast<std::size_t>(j)];
      std::vector<CubeId> bot(nv * nt), top(nv * nt), inv(nv * nt);
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t t = 0; t < nt; ++t) {
          const TupleFaces& f = faces[t];
          const std::size_t c = v * nt + t;
          const std::size_t w = stepj[static_cast<std::size_t>(f.top_first[k])][v];
          bot[c] = static_cast<CubeId>(v * nl + f.bot_tuple[k]);
          top[c] = static_cast<CubeId>(w * nl + f.top_tuple[k]);
          inv[c] = static_cast<CubeId>(w * nt + f.inv_tuple[k]);
        }
      cx.set_maps(dirs, j, std::move(bot), std::move(top), std::move(inv));
    }
    if (dirs == all) break;
  }

  std::vector<std::uint32_t> parities(nv);
  for (std::size_t v = 0; v < nv; ++v) parities[v] = x.vertices[v].parity;
  cx.set_parities(std::move(parities));
  x.complex = std::move(cx);
  std::vector<std::string> labels;
  labels.reserve(nv);
  for (const auto& v : x.vertices) labels.push_back(vertex_label(x, v));
  x.complex.set_vertex_labels(std::move(labels));
  x.complex.finalize();
  return x;
}

ArithComplex build_complex(const ArithComplexConfig& cfg) {
  ArithComplex x = build_complex_unchecked(cfg);
  const AxiomReport ax = verify_axioms(x.complex);
  for (const AxiomCheck& c : ax.checks) {
    if (!c.pass)
      throw ConstructionError("N1 = " + std::to_string(cfg.n1) +
                              " too small / action not free: " + c.name + " fails (" +
                              std::to_string(c.violations) + " violations)");
  }
  if (!verify_parities(x.complex).pass)
    throw ConstructionError("N1 = " + std::to_string(cfg.n1) + ": parity check fails");
  return x;
}

std::int64_t find_smallest_n1(const std::vector<std::int64_t>& primes, std::int64_t limit,
                              std::int64_t start) {
  for (std::int64_t n = std::max<std::int64_t>(start, 3); n <= limit; ++n) {
    if (!is_prime(n)) continue;
    if (std::any_of(primes.begin(), primes.end(), [n](std::int64_t p) { return p % n == 0; }))
      continue;
    try {
      build_complex({primes, n, std::nullopt});
      return n;
    } catch (const ConstructionError&) {
    }
  }
  throw ConstructionError("no valid N1 up to " + std::to_string(limit));
}

std::vector<ConnectivityEntry> irreducibility_report(const CubicalComplex& x) {
  std::vector<ConnectivityEntry> out;
  const DirSet all = x.all_dirs();
  for (int j = 0; j < x.dimension(); ++j) {
    for (DirSet dirs = 0; dirs <= all; ++dirs) {
      if (!has_dir(dirs, j)) {
        const LinkGraph lg = link_graph(x, j, dirs);
        const Components comp = connected_components(lg);
        ConnectivityEntry e;
        e.direction = j;
        e.dirs = dirs;
        e.vertices = lg.vertex_count();
        e.components = comp.count;
        // Parities of directions outside I + j are constant on components
        // (origins of canonical cubes).
        const DirSet fixed = all & ~with_dir(dirs, j);
        std::set<std::uint32_t> classes;
        std::vector<std::set<std::uint32_t>> per_comp(comp.count);
        for (std::size_t v = 0; v < lg.vertex_count(); ++v) {
          const std::uint32_t bits = x.parity_bits(x.origin(dirs, lg.vertex_cube[v])) & fixed;
          classes.insert(bits);
          per_comp[comp.label[v]].insert(bits);
        }
        e.parity_classes = classes.size();
        e.connected_within_parity_classes =
            comp.count == classes.size() &&
            std::all_of(per_comp.begin(), per_comp.end(),
                        [](const auto& s) { return s.size() == 1; });
        out.push_back(e);
      }
      if (dirs == all) break;
    }
  }
  return out;
}

std::size_t girth_bound(std::int64_t q, std::int64_t n1) {
  const double v = 2.0 * std::log(static_cast<double>(n1) * static_cast<double>(n1) / 4.0) /
                   std::log(static_cast<double>(q));
  return static_cast<std::size_t>(std::ceil(v - 1e-12));
}

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Representative of q modulo rational scalars: divide by the content and
// make the first nonzero coordinate positive.
Quaternion primitive(Quaternion q) {
  const std::int64_t c = gcd64(gcd64(q.a0, q.a1), gcd64(q.a2, q.a3));
  if (c > 1) q = {q.a0 / c, q.a1 / c, q.a2 / c, q.a3 / c};
  const std::int64_t lead = q.a0 != 0 ? q.a0 : q.a1 != 0 ? q.a1 : q.a2 != 0 ? q.a2 : q.a3;
  return lead < 0 ? negate(q) : q;
}

}  // namespace

GirthResult girth(const ArithComplex& x, std::size_t max_depth) {
  GirthResult res;
  std::int64_t q = 0;
  for (std::int64_t p : x.config.primes) q = std::max(q, p);
  res.bound = girth_bound(q, x.config.n1);

  struct Node {
    Quaternion key;
    std::uint32_t vertex;
  };
  // Image vertex -> depth of the first cover vertex seen over it.
  std::vector<std::int64_t> image_depth(x.vertices.size(), -1);
  std::set<Quaternion> seen;
  std::vector<Node> layer{{Quaternion{1, 0, 0, 0}, 0}};
  seen.insert(layer.front().key);
  image_depth[0] = 0;
  std::optional<std::size_t> best;
  std::size_t depth = 0;
  while (depth < max_depth) {
    if (best && 2 * depth >= *best) break;
    ++depth;
    std::vector<Node> next;
    for (const Node& n : layer) {
      for (int j = 0; j < x.dimension(); ++j) {
        const auto& d = x.gens.dirs[static_cast<std::size_t>(j)];
        for (int i = 0; i < d.regularity(); ++i) {
          const Quaternion k = primitive(n.key * d.gens[static_cast<std::size_t>(i)]);
          if (!seen.insert(k).second) continue;
          const std::uint32_t v =
              x.step[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][n.vertex];
          if (image_depth[v] >= 0) {
            const std::size_t len = static_cast<std::size_t>(image_depth[v]) + depth;
            if (!best || len < *best) best = len;
          } else {
            image_depth[v] = static_cast<std::int64_t>(depth);
          }
          next.push_back({k, v});
        }
      }
    }
    layer = std::move(next);
    if (layer.empty()) break;
  }
  res.depth_reached = depth;
  res.girth = best;
  if (best) {
    res.bound_met = *best >= res.bound;
    res.lower_bound = *best;
  } else {
    res.lower_bound = 2 * depth + 1;
    res.bound_met = res.lower_bound >= res.bound;
  }
  return res;
}

}  // namespace ramcube
