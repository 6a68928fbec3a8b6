#include "silevy/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace silevy {

Domain Domain::box(int p, double side) {
  if (p < 1 || p > kMaxBoxDim) throw std::invalid_argument("box dimension must be in [1,3]");
  if (!(side > 0.0) || !std::isfinite(side)) throw std::invalid_argument("box side must be positive and finite");
  Domain d;
  d.kind_ = Kind::Box;
  d.dim_ = p;
  d.side_ = side;
  return d;
}

Domain Domain::tree(std::vector<TreeNode> nodes) {
  if (nodes.empty()) throw std::invalid_argument("tree needs at least a root node");
  if (nodes[0].parent != -1) throw std::invalid_argument("nodes[0] must be the root");
  Domain d;
  d.kind_ = Kind::Tree;
  d.dim_ = 1;
  d.nodes_ = std::move(nodes);
  auto& ns = d.nodes_;
  ns[0].edge_len = 0.0;
  ns[0].depth = 0;
  ns[0].depth_w = 0.0;
  ns[0].path.clear();
  for (std::size_t i = 1; i < ns.size(); ++i) {
    const std::int32_t par = ns[i].parent;
    if (par < 0 || static_cast<std::size_t>(par) >= i)
      throw std::invalid_argument("tree parents must precede children");
    if (!(ns[i].edge_len >= 0.0)) throw std::invalid_argument("edge length must be >= 0");
    ns[i].depth = ns[par].depth + 1;
    ns[i].depth_w = ns[par].depth_w + ns[i].edge_len;
    ns[par].children.push_back(static_cast<std::int32_t>(i));
    ns[i].path = ns[par].path;
    ns[i].path.push_back(static_cast<std::int32_t>(ns[par].children.size()));
    d.tree_depth_ = std::max(d.tree_depth_, ns[i].depth);
  }
  return d;
}

bool Domain::contains(const Point& t) const {
  if (is_box()) {
    if (t.is_tree() || t.dim != dim_) return false;
    for (int i = 0; i < dim_; ++i) {
      if (!(t.x[i] >= 0.0) || !(t.x[i] <= side_) || !std::isfinite(t.x[i])) return false;
    }
    return true;
  }
  return t.is_tree() && static_cast<std::size_t>(t.node) < nodes_.size();
}

void Domain::require_point(const Point& t) const {
  if (!contains(t)) throw std::invalid_argument("point does not belong to the domain: " + describe_point(t));
}

bool Domain::leq(const Point& s, const Point& t) const {
  if (is_box()) {
    if (s.is_tree() || t.is_tree() || s.dim != dim_ || t.dim != dim_)
      throw std::invalid_argument("domain mismatch in leq");
    for (int i = 0; i < dim_; ++i)
      if (s.x[i] > t.x[i]) return false;
    return true;
  }
  if (!s.is_tree() || !t.is_tree()) throw std::invalid_argument("domain mismatch in leq");
  // s is an ancestor of t (or t itself).
  std::int32_t cur = t.node;
  const int sd = nodes_.at(s.node).depth;
  while (nodes_.at(cur).depth > sd) cur = nodes_[cur].parent;
  return cur == s.node;
}

Point Domain::meet(const Point& s, const Point& t) const {
  if (is_box()) {
    if (s.is_tree() || t.is_tree() || s.dim != dim_ || t.dim != dim_)
      throw std::invalid_argument("domain mismatch in meet");
    Point r;
    r.dim = dim_;
    for (int i = 0; i < dim_; ++i) r.x[i] = std::min(s.x[i], t.x[i]);
    return r;
  }
  if (!s.is_tree() || !t.is_tree()) throw std::invalid_argument("domain mismatch in meet");
  std::int32_t a = s.node, b = t.node;
  while (nodes_.at(a).depth > nodes_.at(b).depth) a = nodes_[a].parent;
  while (nodes_.at(b).depth > nodes_.at(a).depth) b = nodes_[b].parent;
  while (a != b) {
    a = nodes_[a].parent;
    b = nodes_[b].parent;
  }
  return Point::tree(a);
}

Point Domain::origin() const {
  if (is_box()) {
    Point r;
    r.dim = dim_;
    return r;
  }
  return Point::tree(0);
}

bool Domain::tip_less(const Point& s, const Point& t) const {
  if (is_box()) {
    for (int i = 0; i < dim_; ++i) {
      if (s.x[i] < t.x[i]) return true;
      if (s.x[i] > t.x[i]) return false;
    }
    return false;
  }
  const auto& ps = nodes_.at(s.node).path;
  const auto& pt = nodes_.at(t.node).path;
  return std::lexicographical_compare(ps.begin(), ps.end(), pt.begin(), pt.end());
}

bool Domain::tip_eq(const Point& s, const Point& t) const {
  if (is_box()) {
    for (int i = 0; i < dim_; ++i)
      if (s.x[i] != t.x[i]) return false;
    return true;
  }
  return s.node == t.node;
}

std::string Domain::describe_point(const Point& t) const {
  std::ostringstream os;
  if (t.is_tree()) {
    os << "node";
    if (static_cast<std::size_t>(t.node) < nodes_.size()) {
      for (auto c : nodes_[t.node].path) os << "." << c;
      if (t.node == 0) os << ".root";
    } else {
      os << "#" << t.node;
    }
  } else {
    os << "(";
    for (int i = 0; i < t.dim; ++i) os << (i ? "," : "") << t.x[i];
    os << ")";
  }
  return os.str();
}

}  // namespace silevy
