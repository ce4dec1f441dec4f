#include "lefschetz/lattice_complex.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace lefschetz {

namespace {

bool cell_inside(const Polytope& small, const Polytope& big) {
  for (const auto& v : small.vertices())
    if (!big.contains(v)) return false;
  return true;
}

// Ridges of the maximal cells keyed by their sorted vertex lists.
std::map<std::vector<Point>, std::vector<std::size_t>> ridge_incidence(const LatticeComplex& X) {
  std::map<std::vector<Point>, std::vector<std::size_t>> ridges;
  for (auto ci : X.maximal_cells()) {
    const Polytope& C = X.cells()[ci];
    if (C.dim() != X.dim()) continue;
    for (std::size_t f = 0; f < C.faces().size(); ++f) {
      if (C.faces()[f].dim != C.dim() - 1) continue;
      auto vs = C.face_vertices(f);
      std::sort(vs.begin(), vs.end());
      ridges[vs].push_back(ci);
    }
  }
  return ridges;
}

}  // namespace

LatticeComplex::LatticeComplex(std::vector<Polytope> cells, std::vector<std::size_t> subcomplex, std::string name)
    : name_(std::move(name)), cells_(std::move(cells)), subcomplex_(std::move(subcomplex)) {
  if (cells_.empty()) throw GeometryError("LatticeComplex: no cells");
  ambient_ = cells_[0].ambient_dim();
  for (const auto& c : cells_) {
    if (c.ambient_dim() != ambient_) throw GeometryError("LatticeComplex: cells in different ambient lattices");
    dim_ = std::max(dim_, c.dim());
  }
  for (auto s : subcomplex_)
    if (s >= cells_.size()) throw GeometryError("LatticeComplex: subcomplex index out of range");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cells_.size() && maximal; ++j) {
      if (i == j || !cell_inside(cells_[i], cells_[j])) continue;
      // equal cells: keep the first copy
      if (cells_[j].dim() > cells_[i].dim() || j < i) maximal = false;
    }
    if (maximal) maximal_.push_back(i);
  }
  if (maximal_.size() > 64) throw GeometryError("LatticeComplex: more than 64 maximal cells");
}

LatticeComplex LatticeComplex::from_polytope(const Polytope& P) {
  std::vector<Polytope> cells{P};
  std::vector<std::size_t> sub;
  for (std::size_t f = 0; f < P.faces().size(); ++f) {
    if (P.faces()[f].dim != P.dim() - 1) continue;
    sub.push_back(cells.size());
    cells.push_back(P.face_polytope(f));
  }
  return LatticeComplex(std::move(cells), std::move(sub), P.name());
}

LatticeComplex LatticeComplex::boundary_of(const Polytope& P) {
  std::vector<Polytope> cells;
  for (std::size_t f = 0; f < P.faces().size(); ++f)
    if (P.faces()[f].dim == P.dim() - 1) cells.push_back(P.face_polytope(f));
  return LatticeComplex(std::move(cells), {}, P.name().empty() ? "" : "boundary(" + P.name() + ")");
}

LatticeComplex LatticeComplex::with_boundary_subcomplex() const {
  std::vector<Polytope> extra;
  for (const auto& [verts, owners] : ridge_incidence(*this))
    if (owners.size() == 1) extra.push_back(Polytope::from_points(verts));
  return with_subcomplex(std::move(extra), false);
}

LatticeComplex LatticeComplex::with_subcomplex(std::vector<Polytope> extra_cells, bool keep_existing) const {
  std::vector<Polytope> cells = cells_;
  std::vector<std::size_t> sub = keep_existing ? subcomplex_ : std::vector<std::size_t>{};
  for (auto& c : extra_cells) {
    std::size_t found = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].vertices() == c.vertices()) found = i;
    if (found == cells.size()) cells.push_back(std::move(c));
    if (std::find(sub.begin(), sub.end(), found) == sub.end()) sub.push_back(found);
  }
  return LatticeComplex(std::move(cells), std::move(sub), name_);
}

const Layer& LatticeComplex::layer(std::int64_t h) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->layers.find(h);
  if (it != cache_->layers.end()) return *it->second;
  std::map<Point, CellMask> acc;
  for (std::size_t b = 0; b < maximal_.size(); ++b)
    for (auto& x : cells_[maximal_[b]].points_at_height(h)) acc[x] |= (CellMask{1} << b);
  auto L = std::make_unique<Layer>();
  L->height = h;
  for (auto& [x, mask] : acc) {
    Element e{x, h, mask, false};
    for (auto s : subcomplex_)
      if (cells_[s].contains(x, h)) {
        e.in_subcomplex = true;
        break;
      }
    L->index_.emplace(x, L->elements.size());
    L->elements.push_back(std::move(e));
  }
  const Layer& ref = *L;
  cache_->layers.emplace(h, std::move(L));
  return ref;
}

std::optional<std::size_t> LatticeComplex::sum2(std::int64_t h1, std::size_t i1, std::int64_t h2, std::size_t i2) const {
  const Element& a = layer(h1).elements[i1];
  const Element& b = layer(h2).elements[i2];
  if (!(a.cells & b.cells)) return std::nullopt;
  auto r = layer(h1 + h2).find(a.point + b.point);
  if (!r) throw std::logic_error("LatticeComplex::sum: sum inside a common cell is missing from its layer");
  return r;
}

std::optional<std::size_t> LatticeComplex::sum(const std::vector<std::pair<std::int64_t, std::size_t>>& args) const {
  CellMask mask = ~CellMask{0};
  Point x(ambient_, 0);
  std::int64_t h = 0;
  for (const auto& [hh, i] : args) {
    const Element& e = layer(hh).elements[i];
    mask &= e.cells;
    x = x + e.point;
    h += hh;
  }
  if (!mask) return std::nullopt;
  auto r = layer(h).find(x);
  if (!r) throw std::logic_error("LatticeComplex::sum: sum inside a common cell is missing from its layer");
  return r;
}

std::optional<std::size_t> LatticeComplex::divide(const Point& x, std::int64_t h, std::int64_t p) const {
  if (h % p != 0) throw GeometryError("divide: height not divisible");
  Point y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] % p != 0) return std::nullopt;
    y[k] = x[k] / p;
  }
  return layer(h / p).find(y);
}

ComplexReport LatticeComplex::validate() const {
  ComplexReport rep;
  auto fail = [&](std::string msg) {
    rep.valid = false;
    rep.violations.push_back(std::move(msg));
  };
  // Intersections of maximal cells are common faces, checked on heights 1 and 2.
  for (std::size_t a = 0; a < maximal_.size(); ++a)
    for (std::size_t b = a + 1; b < maximal_.size(); ++b) {
      const Polytope& A = cells_[maximal_[a]];
      const Polytope& B = cells_[maximal_[b]];
      for (std::int64_t h = 1; h <= 2; ++h) {
        std::vector<Point> common;
        const auto pb = B.points_at_height(h);
        for (const auto& x : A.points_at_height(h))
          if (std::binary_search(pb.begin(), pb.end(), x)) common.push_back(x);
        if (common.empty()) continue;
        auto is_face_set = [&](const Polytope& C) {
          for (std::size_t f = 0; f < C.faces().size(); ++f) {
            std::vector<Point> fp;
            for (const auto& x : C.points_at_height(h))
              if (C.face_contains(f, x, h)) fp.push_back(x);
            if (fp == common) return true;
          }
          return false;
        };
        if (!is_face_set(A) || !is_face_set(B)) {
          fail("cells " + std::to_string(maximal_[a]) + " and " + std::to_string(maximal_[b]) +
               " meet in a set that is not a common face (height " + std::to_string(h) + ")");
          break;
        }
      }
    }
  for (auto s : subcomplex_) {
    bool ok = false;
    const auto sp = cells_[s].lattice_points();
    for (auto m : maximal_) {
      const Polytope& C = cells_[m];
      for (std::size_t f = 0; f < C.faces().size() && !ok; ++f) {
        std::vector<Point> fp;
        for (const auto& x : C.lattice_points())
          if (C.face_contains(f, x)) fp.push_back(x);
        if (fp == sp && affine_dimension(C.face_vertices(f)) == cells_[s].dim()) ok = true;
      }
      if (ok) break;
    }
    if (!ok) fail("subcomplex cell " + std::to_string(s) + " is not a face of a maximal cell");
  }
  if (maximal_.size() == 1) {
    rep.kind = "polytope";
    return rep;
  }
  const auto ridges = ridge_incidence(*this);
  bool pure = true;
  for (auto m : maximal_)
    if (cells_[m].dim() != dim_) pure = false;
  std::size_t ones = 0, over = 0;
  std::vector<std::size_t> parent(cells_.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> root = [&](std::size_t i) { return parent[i] == i ? i : parent[i] = root(parent[i]); };
  for (const auto& [verts, owners] : ridges) {
    if (owners.size() == 1) ++ones;
    if (owners.size() > 2) ++over;
    for (std::size_t k = 1; k < owners.size(); ++k) parent[root(owners[k])] = root(owners[0]);
  }
  std::set<std::size_t> comps;
  for (auto m : maximal_) comps.insert(root(m));
  if (!pure) {
    rep.kind = "other";
  } else if (over) {
    rep.kind = "other";
    fail(std::to_string(over) + " ridges lie in more than two facets");
  } else if (comps.size() != 1) {
    rep.kind = "other";
    fail("facet adjacency graph is disconnected");
  } else {
    rep.kind = ones ? "ball" : "sphere";
  }
  return rep;
}

LatticeComplex pyramid_complex(const LatticeComplex& X, bool base_in_subcomplex) {
  const int n = X.ambient_dim();
  auto lift = [&](const Polytope& C, bool with_apex) {
    std::vector<Point> pts;
    for (const auto& v : C.vertices()) {
      Point w = v;
      w.push_back(0);
      pts.push_back(std::move(w));
    }
    if (with_apex) {
      Point apex(n + 1, 0);
      apex[n] = 1;
      pts.push_back(std::move(apex));
    }
    return Polytope::from_points(std::move(pts));
  };
  std::vector<Polytope> cells;
  std::vector<std::size_t> sub;
  for (std::size_t i = 0; i < X.cells().size(); ++i) {
    const bool in_y = std::find(X.subcomplex().begin(), X.subcomplex().end(), i) != X.subcomplex().end();
    if (in_y) sub.push_back(cells.size());
    cells.push_back(lift(X.cells()[i], true));
    if (base_in_subcomplex) sub.push_back(cells.size());
    cells.push_back(lift(X.cells()[i], false));
  }
  return LatticeComplex(std::move(cells), std::move(sub), X.name().empty() ? "" : "pyr(" + X.name() + ")");
}

LatticeComplex porcupine(const Polytope& P, int k) {
  const int d = P.dim();
  if (k < 1 || k > d + 1) throw GeometryError("porcupine: generation out of range");
  if (d > 2) throw GeometryError("porcupine: scale bound exceeded (dim <= 2)");
  // Assign apex coordinates: one axis per (generation, face) pair.
  std::map<std::pair<int, std::size_t>, int> axis;
  int next = P.ambient_dim();
  std::vector<std::vector<std::size_t>> chains;  // face indices G_d, G_{d-1}, ..., G_i
  std::function<void(std::vector<std::size_t>&)> walk = [&](std::vector<std::size_t>& chain) {
    chains.push_back(chain);
    const int depth = (int)chain.size();  // generations used
    if (depth >= k) return;
    const Face& cur = P.faces()[chain.back()];
    for (std::size_t f = 0; f < P.faces().size(); ++f) {
      const Face& g = P.faces()[f];
      if (g.dim != cur.dim - 1 || (g.vertex_mask & cur.vertex_mask) != g.vertex_mask) continue;
      chain.push_back(f);
      walk(chain);
      chain.pop_back();
    }
  };
  std::vector<std::size_t> start{P.top_face()};
  walk(start);
  for (const auto& chain : chains)
    for (std::size_t g = 0; g < chain.size(); ++g) {
      auto key = std::make_pair((int)g, chain[g]);
      if (!axis.count(key)) axis[key] = next++;
    }
  const int ambient = next;
  std::vector<Polytope> cells;
  for (const auto& chain : chains) {
    std::vector<Point> pts;
    for (const auto& v : P.face_vertices(chain.back())) {
      Point w(ambient, 0);
      std::copy(v.begin(), v.end(), w.begin());
      pts.push_back(std::move(w));
    }
    for (std::size_t g = 0; g < chain.size(); ++g) {
      Point apex(ambient, 0);
      apex[axis.at({(int)g, chain[g]})] = 1;
      pts.push_back(std::move(apex));
    }
    cells.push_back(Polytope::from_points(std::move(pts)));
  }
  LatticeComplex ball(std::move(cells), {}, P.name().empty() ? "" : "porc" + std::to_string(k) + "(" + P.name() + ")");
  return ball.with_boundary_subcomplex();
}

LatticeComplex boundary_sphere(const LatticeComplex& X) {
  std::vector<Polytope> cells;
  for (const auto& [verts, owners] : ridge_incidence(X))
    if (owners.size() == 1) cells.push_back(Polytope::from_points(verts));
  if (cells.empty()) throw GeometryError("boundary_sphere: complex has no boundary ridges");
  return LatticeComplex(std::move(cells), {}, X.name().empty() ? "" : "boundary(" + X.name() + ")");
}

}  // namespace lefschetz
