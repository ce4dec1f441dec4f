#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lefschetz {

using Point = std::vector<std::int64_t>;

// (point, height) with point in height * P.
struct ConeElement {
  Point point;
  std::int64_t height = 0;
  friend bool operator==(const ConeElement&, const ConeElement&) = default;
  friend auto operator<=>(const ConeElement&, const ConeElement&) = default;
};

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultPointBudget = 100'000'000;

// normal . x <= bound, primitive normal.
struct Halfspace {
  Point normal;
  std::int64_t bound = 0;
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
  friend auto operator<=>(const Halfspace&, const Halfspace&) = default;
};

// normal . x == value
struct Hyperplane {
  Point normal;
  std::int64_t value = 0;
};

// A face is recorded by the vertices it contains.
struct Face {
  std::uint64_t vertex_mask = 0;
  int dim = -1;
};

// Chain of face indices tau_0 < tau_1 < ... < tau_d = P.
struct Flag {
  std::vector<std::size_t> faces;
};

class Polytope {
 public:
  Polytope() = default;
  static Polytope from_points(std::vector<Point> pts, std::string name = {});

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  int ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }
  bool full_dimensional() const { return dim_ == ambient_; }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<std::uint64_t>& facet_masks() const { return facet_masks_; }
  const std::vector<Hyperplane>& equations() const { return equations_; }
  const std::vector<Face>& faces() const { return faces_; }
  std::size_t top_face() const { return faces_.size() - 1; }

  bool contains(const Point& x, std::int64_t h = 1) const;
  bool contains_relative_interior(const Point& x, std::int64_t h = 1) const;
  // x in h * (face f)
  bool face_contains(std::size_t f, const Point& x, std::int64_t h = 1) const;

  std::vector<Point> points_at_height(std::int64_t h, std::size_t budget = kDefaultPointBudget) const;
  std::vector<Point> interior_points_at_height(std::int64_t h, std::size_t budget = kDefaultPointBudget) const;
  std::vector<Point> lattice_points() const { return points_at_height(1); }

  std::vector<Point> face_vertices(std::size_t f) const;
  Polytope face_polytope(std::size_t f) const;
  std::vector<Flag> full_flags() const;

 private:
  std::string name_;
  int ambient_ = 0;
  int dim_ = -1;
  std::vector<Point> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<std::uint64_t> facet_masks_;
  std::vector<Hyperplane> equations_;
  std::vector<Face> faces_;  // sorted by dimension, P last
};

// Affine dimension of a point set (-1 for the empty set).
int affine_dimension(const std::vector<Point>& pts);

std::int64_t dot(const Point& a, const Point& b);
Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point scaled(const Point& a, std::int64_t k);
std::string to_string(const Point& p);

}  // namespace lefschetz
