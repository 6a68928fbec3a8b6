#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace silevy {

// A point of the index space T.  Box points live in [0,side]^p (first `dim`
// entries of `x`); tree points name a vertex of the finite rooted tree by id
// (`node` >= 0) with the Neveu path stored in the domain.
struct Point {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  int dim = 1;
  std::int32_t node = -1;

  bool is_tree() const { return node >= 0; }

  static Point box1(double a) { return Point{{a, 0.0, 0.0}, 1, -1}; }
  static Point box2(double a, double b) { return Point{{a, b, 0.0}, 2, -1}; }
  static Point box3(double a, double b, double c) { return Point{{a, b, c}, 3, -1}; }
  static Point tree(std::int32_t id) { return Point{{0.0, 0.0, 0.0}, 1, id}; }
};

constexpr int kMaxBoxDim = 3;

// The two concrete index spaces: the box lattice [0,side]^p with A(t)=[0,t],
// and a finite rooted tree with A(t) = ancestors of t plus t itself.
class Domain {
 public:
  enum class Kind { Box, Tree };

  struct TreeNode {
    std::int32_t parent = -1;
    double edge_len = 1.0;       // length of the edge to the parent (root: 0)
    double depth_w = 0.0;        // sum of edge lengths on the root path
    int depth = 0;
    std::vector<std::int32_t> children;
    std::vector<std::int32_t> path;  // Neveu word, 1-based child indices
  };

  static Domain box(int p, double side);
  // nodes[0] must be the root; parents must precede children.
  static Domain tree(std::vector<TreeNode> nodes);

  Kind kind() const { return kind_; }
  bool is_box() const { return kind_ == Kind::Box; }
  int dim() const { return dim_; }
  double side() const { return side_; }

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int tree_depth() const { return tree_depth_; }

  bool contains(const Point& t) const;
  void require_point(const Point& t) const;  // throws std::invalid_argument

  bool leq(const Point& s, const Point& t) const;
  Point meet(const Point& s, const Point& t) const;
  Point origin() const;  // 0_T

  // Lexicographic tip order used to canonicalize extremal representations.
  bool tip_less(const Point& s, const Point& t) const;
  bool tip_eq(const Point& s, const Point& t) const;

  std::string describe_point(const Point& t) const;

 private:
  Kind kind_ = Kind::Box;
  int dim_ = 1;
  double side_ = 1.0;
  std::vector<TreeNode> nodes_;
  int tree_depth_ = 0;
};

}  // namespace silevy
