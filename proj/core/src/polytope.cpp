#include "lefschetz/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace lefschetz {

using boost::multiprecision::cpp_rational;
using boost::multiprecision::cpp_int;

std::int64_t dot(const Point& a, const Point& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
Point operator+(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
Point operator-(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
Point scaled(const Point& a, std::int64_t k) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}
std::string to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

namespace {

struct Rref {
  std::vector<std::vector<cpp_rational>> rows;
  std::vector<std::size_t> pivots;
};

Rref rref(std::vector<std::vector<cpp_rational>> m, std::size_t cols) {
  Rref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const cpp_rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const cpp_rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::vector<std::vector<cpp_rational>> differences(const std::vector<Point>& pts) {
  std::vector<std::vector<cpp_rational>> d;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<cpp_rational> row(pts[0].size());
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = pts[i][k] - pts[0][k];
    d.push_back(std::move(row));
  }
  return d;
}

std::int64_t gcd_all(const Point& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

// Leibniz determinant on small integer matrices.
cpp_int int_det(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  cpp_int total = 0;
  do {
    std::size_t inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    cpp_int t = 1;
    for (std::size_t i = 0; i < n && t != 0; ++i) t *= a[i][perm[i]];
    total += (inv % 2) ? -t : t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Odometer over a box; calls f(x) for every lattice point.
template <class Fn>
void scan_box(const Point& lo, const Point& hi, std::size_t budget, Fn&& f) {
  long double volume = 1;
  for (std::size_t k = 0; k < lo.size(); ++k) volume *= (long double)(hi[k] - lo[k] + 1);
  if (volume > (long double)budget) throw BudgetExceeded("lattice point enumeration exceeds budget");
  Point x = lo;
  if (lo.empty()) {
    f(x);
    return;
  }
  while (true) {
    f(x);
    std::size_t k = 0;
    while (k < x.size()) {
      if (x[k] < hi[k]) {
        ++x[k];
        break;
      }
      x[k] = lo[k];
      ++k;
    }
    if (k == x.size()) break;
  }
}

}  // namespace

int affine_dimension(const std::vector<Point>& pts) {
  if (pts.empty()) return -1;
  return (int)rref(differences(pts), pts[0].size()).pivots.size();
}

Polytope Polytope::from_points(std::vector<Point> pts, std::string name) {
  if (pts.empty()) throw GeometryError("build_polytope: empty vertex list");
  const std::size_t n = pts[0].size();
  for (const auto& p : pts) {
    if (p.size() != n) throw GeometryError("build_polytope: inconsistent coordinate lengths");
    for (auto c : p)
      if (c > 1000000 || c < -1000000) throw GeometryError("build_polytope: coordinate out of range");
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Polytope P;
  P.name_ = std::move(name);
  P.ambient_ = (int)n;

  // Affine hull: pivot coordinates give an injective projection.
  const Rref hull = rref(differences(pts), n);
  const std::size_t m = hull.pivots.size();
  P.dim_ = (int)m;
  std::vector<bool> is_pivot(n, false);
  for (auto c : hull.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    // c . (v - v0) = 0 for the direction space: c_f = 1, c_pivot = -R[k][f]
    std::vector<cpp_rational> c(n, 0);
    c[f] = 1;
    for (std::size_t k = 0; k < m; ++k) c[hull.pivots[k]] = -hull.rows[k][f];
    cpp_int l = 1;
    for (auto& x : c) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    Point normal(n);
    for (std::size_t k = 0; k < n; ++k) normal[k] = (std::int64_t)(c[k] * l).convert_to<cpp_int>();
    const std::int64_t g = gcd_all(normal);
    for (auto& x : normal) x /= g;
    P.equations_.push_back({normal, dot(normal, pts[0])});
  }

  // Facets in the projected full-dimensional polytope.
  std::vector<Point> proj;
  for (const auto& p : pts) {
    Point q(m);
    for (std::size_t k = 0; k < m; ++k) q[k] = p[hull.pivots[k]];
    proj.push_back(std::move(q));
  }
  std::set<Halfspace> found;
  if (m >= 1) {
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t N = proj.size();
    auto next_subset = [&]() {
      std::size_t i = m;
      while (i-- > 0) {
        if (idx[i] < N - m + i) {
          ++idx[i];
          for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
          return true;
        }
      }
      return false;
    };
    if (N >= m) {
      do {
        std::vector<std::vector<std::int64_t>> diff;
        for (std::size_t i = 1; i < m; ++i) diff.push_back(proj[idx[i]] - proj[idx[0]]);
        Point a(m);
        for (std::size_t col = 0; col < m; ++col) {
          std::vector<std::vector<std::int64_t>> minor;
          for (const auto& row : diff) {
            std::vector<std::int64_t> r;
            for (std::size_t j = 0; j < m; ++j)
              if (j != col) r.push_back(row[j]);
            minor.push_back(std::move(r));
          }
          cpp_int d = int_det(minor);
          if (col % 2) d = -d;
          a[col] = (std::int64_t)d;
        }
        const std::int64_t g = gcd_all(a);
        if (g == 0) continue;
        for (auto& x : a) x /= g;
        const std::int64_t b = dot(a, proj[idx[0]]);
        bool le = true, ge = true;
        for (const auto& q : proj) {
          const std::int64_t v = dot(a, q);
          if (v > b) le = false;
          if (v < b) ge = false;
        }
        if (!le && !ge) continue;
        if (!le) {
          for (auto& x : a) x = -x;
          found.insert({a, -b});
        } else {
          found.insert({a, b});
        }
        if (le && ge) throw GeometryError("build_polytope: degenerate facet candidate");
      } while (next_subset());
    }
  }
  std::vector<Halfspace> proj_facets(found.begin(), found.end());

  // Vertices: tight facet normals of full rank.
  for (std::size_t i = 0; i < proj.size(); ++i) {
    std::vector<std::vector<cpp_rational>> normals;
    for (const auto& h : proj_facets) {
      if (dot(h.normal, proj[i]) != h.bound) continue;
      std::vector<cpp_rational> row(h.normal.begin(), h.normal.end());
      normals.push_back(std::move(row));
    }
    if (rref(normals, m).pivots.size() == m) P.vertices_.push_back(pts[i]);
  }
  if (P.vertices_.size() > 64) throw GeometryError("build_polytope: more than 64 vertices");

  for (const auto& h : proj_facets) {
    Halfspace lifted{Point(n, 0), h.bound};
    for (std::size_t k = 0; k < m; ++k) lifted.normal[hull.pivots[k]] = h.normal[k];
    std::uint64_t mask = 0;
    for (std::size_t v = 0; v < P.vertices_.size(); ++v)
      if (dot(lifted.normal, P.vertices_[v]) == lifted.bound) mask |= (1ULL << v);
    P.facets_.push_back(std::move(lifted));
    P.facet_masks_.push_back(mask);
  }

  // Face lattice by intersection closure of facets.
  const std::uint64_t all = P.vertices_.size() == 64 ? ~0ULL : ((1ULL << P.vertices_.size()) - 1);
  std::set<std::uint64_t> masks(P.facet_masks_.begin(), P.facet_masks_.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint64_t> cur(masks.begin(), masks.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        const std::uint64_t x = cur[i] & cur[j];
        if (x && masks.insert(x).second) grew = true;
      }
  }
  masks.erase(all);
  for (auto mask : masks) {
    std::vector<Point> vs;
    for (std::size_t v = 0; v < P.vertices_.size(); ++v)
      if (mask >> v & 1ULL) vs.push_back(P.vertices_[v]);
    P.faces_.push_back({mask, affine_dimension(vs)});
  }
  std::stable_sort(P.faces_.begin(), P.faces_.end(), [](const Face& a, const Face& b) { return a.dim < b.dim; });
  P.faces_.push_back({all, P.dim_});
  return P;
}

bool Polytope::contains(const Point& x, std::int64_t h) const {
  for (const auto& e : equations_)
    if (dot(e.normal, x) != h * e.value) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, x) > h * f.bound) return false;
  if (h == 0) {
    for (auto c : x)
      if (c) return false;
  }
  return true;
}

bool Polytope::contains_relative_interior(const Point& x, std::int64_t h) const {
  if (h <= 0) return false;
  for (const auto& e : equations_)
    if (dot(e.normal, x) != h * e.value) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, x) >= h * f.bound) return false;
  return true;
}

bool Polytope::face_contains(std::size_t fi, const Point& x, std::int64_t h) const {
  if (!contains(x, h)) return false;
  const std::uint64_t mask = faces_[fi].vertex_mask;
  for (std::size_t k = 0; k < facets_.size(); ++k) {
    if ((facet_masks_[k] & mask) != mask) continue;
    if (dot(facets_[k].normal, x) != h * facets_[k].bound) return false;
  }
  return true;
}

std::vector<Point> Polytope::points_at_height(std::int64_t h, std::size_t budget) const {
  if (h < 0) throw GeometryError("points_at_height: negative height");
  Point lo(ambient_), hi(ambient_);
  for (int k = 0; k < ambient_; ++k) {
    std::int64_t mn = vertices_[0][k], mx = mn;
    for (const auto& v : vertices_) {
      mn = std::min(mn, v[k]);
      mx = std::max(mx, v[k]);
    }
    lo[k] = h * mn;
    hi[k] = h * mx;
  }
  std::vector<Point> out;
  scan_box(lo, hi, budget, [&](const Point& x) {
    if (contains(x, h)) out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> Polytope::interior_points_at_height(std::int64_t h, std::size_t budget) const {
  std::vector<Point> out;
  for (auto& x : points_at_height(h, budget))
    if (contains_relative_interior(x, h)) out.push_back(std::move(x));
  return out;
}

std::vector<Point> Polytope::face_vertices(std::size_t f) const {
  std::vector<Point> vs;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (faces_[f].vertex_mask >> v & 1ULL) vs.push_back(vertices_[v]);
  return vs;
}

Polytope Polytope::face_polytope(std::size_t f) const { return from_points(face_vertices(f)); }

std::vector<Flag> Polytope::full_flags() const {
  std::vector<Flag> out;
  std::vector<std::size_t> chain{top_face()};
  // Walk down one dimension at a time.
  auto rec = [&](auto&& self) -> void {
    const Face& cur = faces_[chain.back()];
    if (cur.dim == 0) {
      Flag fl;
      fl.faces.assign(chain.rbegin(), chain.rend());
      out.push_back(std::move(fl));
      return;
    }
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      const Face& f = faces_[i];
      if (f.dim != cur.dim - 1 || (f.vertex_mask & cur.vertex_mask) != f.vertex_mask) continue;
      chain.push_back(i);
      self(self);
      chain.pop_back();
    }
  };
  if (dim_ == 0) {
    out.push_back(Flag{{top_face()}});
    return out;
  }
  rec(rec);
  return out;
}

}  // namespace lefschetz
