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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ramcube {

// Directions are 0-based; a direction set is a bitmask (bit j = direction j).
using DirSet = std::uint32_t;
using CubeId = std::uint32_t;
inline constexpr CubeId kNoCube = 0xffffffffu;

inline bool has_dir(DirSet s, int j) { return ((s >> j) & 1u) != 0; }
inline DirSet with_dir(DirSet s, int j) { return s | (1u << j); }
inline DirSet without_dir(DirSet s, int j) { return s & ~(1u << j); }
int dir_count(DirSet s);
std::vector<int> dirs_of(DirSet s);

// An oriented cube: its direction set and its id within Sigma_I.
struct OrientedCube {
  DirSet dirs = 0;
  CubeId id = 0;
  friend bool operator==(const OrientedCube&, const OrientedCube&) = default;
};

// Finite regular cubical complex with fully materialized cube tables.
// Sigma_I holds the oriented I-cubes; bot_j and top_j map Sigma_I to
// Sigma_{I - j} and inv_j maps Sigma_I to itself, for j in I.
class CubicalComplex {
 public:
  CubicalComplex() = default;
  explicit CubicalComplex(std::vector<int> regularity);

  int dimension() const { return static_cast<int>(regularity_.size()); }
  const std::vector<int>& regularity() const { return regularity_; }
  int regularity(int j) const { return regularity_[static_cast<std::size_t>(j)]; }
  DirSet all_dirs() const { return (1u << dimension()) - 1u; }

  // --- construction ---
  void set_count(DirSet dirs, std::size_t n);
  void set_maps(DirSet dirs, int j, std::vector<CubeId> bot,
                std::vector<CubeId> top, std::vector<CubeId> inv);
  void set_parities(std::vector<std::uint32_t> bits);
  void set_vertex_labels(std::vector<std::string> labels);
  // Computes orientation orbits and canonical representatives. Must be
  // called after all maps are set; tolerates axiom violations (those are
  // reported by verify_axioms).
  void finalize();

  // --- oriented cubes ---
  std::size_t count(DirSet dirs) const { return layers_[dirs].count; }
  std::size_t vertex_count() const { return count(0); }
  CubeId bot(DirSet dirs, int j, CubeId c) const { return layers_[dirs].bot[j][c]; }
  CubeId top(DirSet dirs, int j, CubeId c) const { return layers_[dirs].top[j][c]; }
  CubeId inv(DirSet dirs, int j, CubeId c) const { return layers_[dirs].inv[j][c]; }
  bool has_maps(DirSet dirs, int j) const {
    return !layers_[dirs].bot[j].empty();
  }

  // Origin vertex: iterated bottoms over all directions of the cube.
  CubeId origin(DirSet dirs, CubeId c) const;
  // The direction-j edge at the origin (bottoms in all other directions).
  CubeId edge_at_origin(DirSet dirs, CubeId c, int j) const;

  // --- parities ---
  bool has_parities() const { return !parities_.empty(); }
  std::uint32_t parity_bits(CubeId v) const { return parities_[v]; }
  int parity(int j, CubeId v) const { return static_cast<int>((parities_[v] >> j) & 1u); }

  // --- unoriented cubes (valid after finalize) ---
  // Cells are listed in order of their smallest oriented id.
  std::size_t cell_count(DirSet dirs) const { return layers_[dirs].canonical.size(); }
  CubeId canonical(DirSet dirs, std::size_t cell) const {
    return layers_[dirs].canonical[cell];
  }
  std::size_t cell_of(DirSet dirs, CubeId c) const { return layers_[dirs].cell[c]; }
  // Set K of directions with c = inv_K(canonical(cell_of(c))).
  DirSet flips_of(DirSet dirs, CubeId c) const { return layers_[dirs].flips[c]; }
  bool is_canonical(DirSet dirs, CubeId c) const {
    return layers_[dirs].flips[c] == 0 &&
           layers_[dirs].canonical[layers_[dirs].cell[c]] == c;
  }
  // False when some orbit of the inversion group had the wrong size, in
  // which case flips_of is meaningless.
  bool orientation_consistent() const { return orientation_consistent_; }

  const std::vector<std::string>& vertex_labels() const { return vertex_labels_; }
  std::string vertex_label(CubeId v) const;

 private:
  struct Layer {
    std::size_t count = 0;
    std::vector<std::vector<CubeId>> bot, top, inv;  // indexed by direction
    std::vector<CubeId> canonical;
    std::vector<std::size_t> cell;
    std::vector<DirSet> flips;
  };

  std::vector<int> regularity_;
  std::vector<Layer> layers_;
  std::vector<std::uint32_t> parities_;
  std::vector<std::string> vertex_labels_;
  bool orientation_consistent_ = true;
};

struct AxiomWitness {
  DirSet dirs = 0;
  int direction = -1;
  CubeId cube = kNoCube;
  std::string detail;
};

struct AxiomCheck {
  std::string name;
  bool pass = true;
  std::size_t violations = 0;
  std::optional<AxiomWitness> witness;
};

// Axiom 1: the inversions generate a simply transitive (Z/2)^I action on
// the orientations of every cube. Axiom 2: faces commute with inversions in
// other directions. Axiom 3: top_j inv_j = bot_j. Axiom 4: every oriented
// I-cube is the j-th top of exactly r_j oriented (I+j)-cubes.
struct AxiomReport {
  std::vector<AxiomCheck> checks;  // always 4 entries, plus "structure"
  bool pass() const;
};

AxiomReport verify_axioms(const CubicalComplex& x);

struct ParityReport {
  bool pass = false;
  std::optional<AxiomWitness> witness;
};

// p_j(top e) == p_j(bot e) iff e is not a direction-j edge, for all edges.
ParityReport verify_parities(const CubicalComplex& x);

// Graph (g = 1) with the given undirected edges; oriented edge 2e runs
// first -> second and 2e+1 is its inversion. Parities are optional.
CubicalComplex graph_complex(std::size_t vertices,
                             const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                             int regularity,
                             std::vector<std::uint32_t> parities = {});

// Single vertex, g = 0.
CubicalComplex point_complex();

// [0,1]^g with parities.
CubicalComplex unit_cube(int g);

CubicalComplex product(const CubicalComplex& x, const CubicalComplex& y);

// Same g and regularity required.
CubicalComplex disjoint_union(const CubicalComplex& x, const CubicalComplex& y);

// Link graph Gr_{j,I}: vertices are the canonically oriented I-cubes, edges
// the oriented (I+j)-cubes whose I-orientation is canonical.
struct LinkGraph {
  int direction = 0;
  DirSet dirs = 0;
  int regularity = 0;
  std::vector<CubeId> vertex_cube;  // canonical I-cube per vertex
  struct Edge {
    CubeId cube;  // oriented (I+j)-cube
    std::uint32_t origin;
    std::uint32_t terminus;
    std::uint32_t opposite;
  };
  std::vector<Edge> edges;
  std::size_t vertex_count() const { return vertex_cube.size(); }
};

LinkGraph link_graph(const CubicalComplex& x, int j, DirSet dirs);

struct Components {
  std::size_t count = 0;
  std::vector<std::uint32_t> label;  // per vertex, labels 0..count-1
};

Components connected_components(const LinkGraph& g);
Components connected_components(std::size_t vertices,
                                const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

// Plain graph girth of the 1-skeleton (shortest cycle, multi-edges count as
// 2-cycles). Exhaustive BFS from every vertex; meant for g = 1 complexes.
std::optional<std::size_t> skeleton_girth(const CubicalComplex& x);

// DOT text of the 1-skeleton: one undirected edge per unoriented edge with
// attribute dir=j (1-based), vertices labeled by their vertex labels.
std::string skeleton_dot(const CubicalComplex& x);

// DOT text of a link graph; vertex labels are cube ids.
std::string link_graph_dot(const LinkGraph& g);

}  // namespace ramcube
