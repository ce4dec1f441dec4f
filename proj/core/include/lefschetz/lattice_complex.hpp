#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lefschetz/polytope.hpp"

namespace lefschetz {

// Bit i set when the element lies in the cone over maximal cell i.
using CellMask = std::uint64_t;

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto c : p) h = (h ^ (std::size_t)c) * 0x100000001b3ULL + (h >> 7);
    return h;
  }
};

// Lattice point of the cone over some cell.
struct Element {
  Point point;
  std::int64_t height = 0;
  CellMask cells = 0;
  bool in_subcomplex = false;
};

// All semigroup elements of one height, sorted by coordinates.
class Layer {
 public:
  std::int64_t height = 0;
  std::vector<Element> elements;

  std::optional<std::size_t> find(const Point& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const { return elements.size(); }

 private:
  friend class LatticeComplex;
  std::unordered_map<Point, std::size_t, PointHash> index_;
};

struct ComplexReport {
  bool valid = true;
  std::string kind;  // "ball", "sphere", "polytope" or "other"
  std::vector<std::string> violations;
};

// Polyhedral complex of lattice polytopes in a common ambient lattice, with a
// designated subcomplex Y (given by cells; their faces are implied).
class LatticeComplex {
 public:
  LatticeComplex() = default;
  LatticeComplex(std::vector<Polytope> cells, std::vector<std::size_t> subcomplex, std::string name = {});

  // (P, boundary of P): P plus its facets, the facets forming the subcomplex.
  static LatticeComplex from_polytope(const Polytope& P);
  // Facets of P as a sphere with empty subcomplex.
  static LatticeComplex boundary_of(const Polytope& P);

  const std::string& name() const { return name_; }
  int ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }
  const std::vector<Polytope>& cells() const { return cells_; }
  const std::vector<std::size_t>& maximal_cells() const { return maximal_; }
  const std::vector<std::size_t>& subcomplex() const { return subcomplex_; }
  bool has_subcomplex() const { return !subcomplex_.empty(); }

  // Same cells, subcomplex replaced by the ridges that lie in one maximal cell.
  LatticeComplex with_boundary_subcomplex() const;
  // Same cells with a different subcomplex.
  LatticeComplex with_subcomplex(std::vector<Polytope> extra_cells, bool keep_existing) const;

  const Layer& layer(std::int64_t h) const;

  // Sum of elements given as (height, index) pairs; nullopt when no cell
  // contains all of them.
  std::optional<std::size_t> sum(const std::vector<std::pair<std::int64_t, std::size_t>>& args) const;
  std::optional<std::size_t> sum2(std::int64_t h1, std::size_t i1, std::int64_t h2, std::size_t i2) const;
  // Element (x / p, h / p) if integral and in some cell; h must be divisible by p.
  std::optional<std::size_t> divide(const Point& x, std::int64_t h, std::int64_t p) const;

  ComplexReport validate() const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::int64_t, std::unique_ptr<Layer>> layers;
  };

  std::string name_;
  int ambient_ = 0;
  int dim_ = -1;
  std::vector<Polytope> cells_;
  std::vector<std::size_t> maximal_;
  std::vector<std::size_t> subcomplex_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Pyramid over every cell with apex e_{d+1}; base cells are kept as cells.
// The subcomplex is the pyramid over the old subcomplex, plus the base if
// `base_in_subcomplex`.
LatticeComplex pyramid_complex(const LatticeComplex& X, bool base_in_subcomplex);

// k-th generation porcupine over P (1 <= k <= dim P + 1), each apex on its own
// fresh coordinate axis. Subcomplex: its boundary sphere.
LatticeComplex porcupine(const Polytope& P, int k);

// Boundary sphere of a ball-shaped complex as a complex of its own.
LatticeComplex boundary_sphere(const LatticeComplex& X);

}  // namespace lefschetz
