#include "khull/convex_hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

namespace khull {

namespace {

using V3 = Eigen::Vector3d;

double cross2(const Vector& o, const Vector& a, const Vector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double segment_distance(const Vector& p, const Vector& a, const Vector& b) {
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

// Closest point on triangle abc to p (Ericson, Real-Time Collision Detection 5.1.5).
V3 closest_on_triangle(const V3& p, const V3& a, const V3& b, const V3& c) {
  const V3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return a;
  const V3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + (d1 / (d1 - d3)) * ab;
  const V3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + (d2 / (d2 - d6)) * ac;
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

TaggedPolytope hull_2d(std::span<const TaggedPoint> input) {
  std::vector<std::size_t> order(input.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const auto& p = input[i].point;
    const auto& q = input[j].point;
    return p[0] < q[0] || (p[0] == q[0] && p[1] < q[1]);
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t i, std::size_t j) { return input[i].point == input[j].point; }),
              order.end());
  if (order.size() < 3) throw DomainError("convex hull: fewer than three distinct points in the plane");

  // Andrew's monotone chain; collinear points are dropped.
  std::vector<std::size_t> chain(2 * order.size());
  std::size_t k = 0;
  for (std::size_t i : order) {
    while (k >= 2 && cross2(input[chain[k - 2]].point, input[chain[k - 1]].point, input[i].point) <= 0) --k;
    chain[k++] = i;
  }
  for (std::size_t idx = order.size() - 1, t = k + 1; idx-- > 0;) {
    const std::size_t i = order[idx];
    while (k >= t && cross2(input[chain[k - 2]].point, input[chain[k - 1]].point, input[i].point) <= 0) --k;
    chain[k++] = i;
  }
  chain.resize(k - 1);
  if (chain.size() < 3) throw DomainError("convex hull: points are collinear");

  std::vector<TaggedPoint> verts;
  verts.reserve(chain.size());
  for (std::size_t i : chain) verts.push_back(input[i]);
  const std::size_t n = verts.size();
  std::vector<HullFacet> facets(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const Vector e = verts[j].point - verts[i].point;
    Vector normal = vec2(e[1], -e[0]);
    normal.normalize();
    facets[i].vertices = {i, j};
    facets[i].normal = normal;
    facets[i].offset = normal.dot(verts[i].point);
    facets[i].neighbors = {(i + n - 1) % n, j};
  }
  return TaggedPolytope(2, std::move(verts), std::move(facets));
}

// Quickhull in three dimensions with outside sets.
class Quickhull3 {
 public:
  explicit Quickhull3(std::span<const TaggedPoint> input) : input_(input) {
    pts_.reserve(input.size());
    double scale = 0.0;
    for (const auto& tp : input) {
      pts_.emplace_back(tp.point[0], tp.point[1], tp.point[2]);
      scale = std::max(scale, pts_.back().cwiseAbs().maxCoeff());
    }
    eps_ = 1e-12 * std::max(scale, std::numeric_limits<double>::min());
  }

  TaggedPolytope run() {
    build_simplex();
    std::vector<int> stack;
    for (int f = 0; f < static_cast<int>(tris_.size()); ++f) stack.push_back(f);
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      if (!tris_[f].alive || tris_[f].outside.empty()) continue;
      for (int nf : add_point(f)) stack.push_back(nf);
    }
    return collect();
  }

 private:
  struct Tri {
    std::array<int, 3> v{};
    std::array<int, 3> nb{};
    V3 n;
    double off = 0.0;
    std::vector<int> outside;
    bool alive = true;
    int mark = -1;
  };

  double dist(const Tri& t, int p) const { return t.n.dot(pts_[p]) - t.off; }

  int make_tri(int a, int b, int c) {
    Tri t;
    t.v = {a, b, c};
    t.nb = {-1, -1, -1};
    const V3 n = (pts_[b] - pts_[a]).cross(pts_[c] - pts_[a]);
    t.n = n.normalized();
    t.off = t.n.dot((pts_[a] + pts_[b] + pts_[c]) / 3.0);
    tris_.push_back(std::move(t));
    return static_cast<int>(tris_.size()) - 1;
  }

  void build_simplex() {
    const int n = static_cast<int>(pts_.size());
    if (n < 4) throw DomainError("convex hull: fewer than four points in space");
    int i0 = 0, i1 = 0;
    // Farthest pair among the axis extremes.
    std::array<int, 6> ext{};
    for (int axis = 0; axis < 3; ++axis) {
      int lo = 0, hi = 0;
      for (int i = 1; i < n; ++i) {
        if (pts_[i][axis] < pts_[lo][axis]) lo = i;
        if (pts_[i][axis] > pts_[hi][axis]) hi = i;
      }
      ext[2 * axis] = lo;
      ext[2 * axis + 1] = hi;
    }
    double best = -1.0;
    for (int a : ext)
      for (int b : ext) {
        const double d = (pts_[a] - pts_[b]).squaredNorm();
        if (d > best) best = d, i0 = a, i1 = b;
      }
    if (best <= eps_ * eps_) throw DomainError("convex hull: all points coincide");
    const V3 dir = (pts_[i1] - pts_[i0]).normalized();
    int i2 = -1;
    best = 0.0;
    for (int i = 0; i < n; ++i) {
      const V3 w = pts_[i] - pts_[i0];
      const double d = (w - w.dot(dir) * dir).norm();
      if (d > best) best = d, i2 = i;
    }
    if (i2 < 0 || best <= eps_) throw DomainError("convex hull: points are collinear");
    const V3 pn = (pts_[i1] - pts_[i0]).cross(pts_[i2] - pts_[i0]).normalized();
    int i3 = -1;
    best = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(pn.dot(pts_[i] - pts_[i0]));
      if (d > best) best = d, i3 = i;
    }
    if (i3 < 0 || best <= eps_) throw DomainError("convex hull: points are coplanar");

    if (pn.dot(pts_[i3] - pts_[i0]) > 0) std::swap(i1, i2);
    // Now i3 lies below plane (i0,i1,i2) oriented outward.
    const int f0 = make_tri(i0, i1, i2);
    const int f1 = make_tri(i0, i3, i1);
    const int f2 = make_tri(i1, i3, i2);
    const int f3 = make_tri(i2, i3, i0);
    link_all({f0, f1, f2, f3});

    std::vector<bool> used(n, false);
    used[i0] = used[i1] = used[i2] = used[i3] = true;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      for (int f : {f0, f1, f2, f3}) {
        if (dist(tris_[f], i) > eps_) {
          tris_[f].outside.push_back(i);
          break;
        }
      }
    }
  }

  // Connect neighbor slots of a closed set of triangles by matching edges.
  void link_all(std::initializer_list<int> faces) {
    std::map<std::pair<int, int>, std::pair<int, int>> half;
    for (int f : faces)
      for (int k = 0; k < 3; ++k) half[{tris_[f].v[k], tris_[f].v[(k + 1) % 3]}] = {f, k};
    for (int f : faces)
      for (int k = 0; k < 3; ++k) {
        const auto it = half.find({tris_[f].v[(k + 1) % 3], tris_[f].v[k]});
        if (it == half.end()) throw DomainError("convex hull: inconsistent initial simplex");
        tris_[f].nb[k] = it->second.first;
      }
  }

  std::vector<int> add_point(int start) {
    Tri& sf = tris_[start];
    int eye = sf.outside.front();
    double far = dist(sf, eye);
    for (int p : sf.outside) {
      const double d = dist(sf, p);
      if (d > far) far = d, eye = p;
    }

    // Visible set by flood fill from the start facet.
    ++epoch_;
    std::vector<int> visible{start};
    tris_[start].mark = epoch_;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const Tri& t = tris_[visible[q]];
      for (int nbf : t.nb) {
        if (tris_[nbf].mark == epoch_) continue;
        if (dist(tris_[nbf], eye) > eps_) {
          tris_[nbf].mark = epoch_;
          visible.push_back(nbf);
        }
      }
    }

    // Horizon edges (a,b) as they appear in visible triangles, with the
    // hidden neighbor across them.
    struct Horizon {
      int a, b, hidden;
    };
    std::vector<Horizon> horizon;
    for (int f : visible) {
      const Tri& t = tris_[f];
      for (int k = 0; k < 3; ++k)
        if (tris_[t.nb[k]].mark != epoch_) horizon.push_back({t.v[k], t.v[(k + 1) % 3], t.nb[k]});
    }

    std::unordered_map<int, int> by_start, by_end;
    std::vector<int> created;
    created.reserve(horizon.size());
    for (const auto& h : horizon) {
      const int nf = make_tri(h.a, h.b, eye);
      created.push_back(nf);
      tris_[nf].nb[0] = h.hidden;
      Tri& hidden = tris_[h.hidden];
      for (int k = 0; k < 3; ++k)
        if (hidden.v[k] == h.b && hidden.v[(k + 1) % 3] == h.a) hidden.nb[k] = nf;
      by_start[h.a] = nf;
      by_end[h.b] = nf;
    }
    for (int nf : created) {
      Tri& t = tris_[nf];
      // edge (b, eye) borders the new facet starting at b; edge (eye, a) the one ending at a.
      const auto s = by_start.find(t.v[1]);
      const auto e = by_end.find(t.v[0]);
      if (s == by_start.end() || e == by_end.end()) throw DomainError("convex hull: horizon is not a cycle");
      t.nb[1] = s->second;
      t.nb[2] = e->second;
    }

    std::vector<int> orphans;
    for (int f : visible) {
      Tri& t = tris_[f];
      t.alive = false;
      for (int p : t.outside)
        if (p != eye) orphans.push_back(p);
      t.outside.clear();
      t.outside.shrink_to_fit();
    }
    for (int p : orphans) {
      for (int nf : created) {
        if (dist(tris_[nf], p) > eps_) {
          tris_[nf].outside.push_back(p);
          break;
        }
      }
    }
    return created;
  }

  TaggedPolytope collect() const {
    std::vector<int> remap(pts_.size(), -1);
    std::vector<TaggedPoint> verts;
    std::vector<int> tri_index(tris_.size(), -1);
    int count = 0;
    for (std::size_t f = 0; f < tris_.size(); ++f)
      if (tris_[f].alive) tri_index[f] = count++;
    std::vector<HullFacet> facets;
    facets.reserve(count);
    for (std::size_t f = 0; f < tris_.size(); ++f) {
      const Tri& t = tris_[f];
      if (!t.alive) continue;
      HullFacet hf;
      for (int k = 0; k < 3; ++k) {
        int& r = remap[t.v[k]];
        if (r < 0) {
          r = static_cast<int>(verts.size());
          verts.push_back(input_[t.v[k]]);
        }
        hf.vertices.push_back(static_cast<std::size_t>(r));
        hf.neighbors.push_back(static_cast<std::size_t>(tri_index[t.nb[k]]));
      }
      hf.normal = Vector(t.n);
      hf.offset = t.off;
      facets.push_back(std::move(hf));
    }
    return TaggedPolytope(3, std::move(verts), std::move(facets));
  }

  std::span<const TaggedPoint> input_;
  std::vector<V3> pts_;
  std::vector<Tri> tris_;
  double eps_ = 0.0;
  int epoch_ = 0;
};

}  // namespace

TaggedPolytope::TaggedPolytope(int dim, std::vector<TaggedPoint> vertices, std::vector<HullFacet> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {}

std::vector<std::array<std::size_t, 2>> TaggedPolytope::edges() const {
  std::set<std::array<std::size_t, 2>> unique;
  for (const auto& f : facets_) {
    const std::size_t m = f.vertices.size();
    const std::size_t steps = dim_ == 2 ? 1 : m;
    for (std::size_t k = 0; k < steps; ++k) {
      std::size_t a = f.vertices[k], b = f.vertices[(k + 1) % m];
      if (a > b) std::swap(a, b);
      unique.insert({a, b});
    }
  }
  return {unique.begin(), unique.end()};
}

double TaggedPolytope::volume() const {
  double v = 0.0;
  if (dim_ == 2) {
    for (const auto& f : facets_) {
      const Vector& a = vertices_[f.vertices[0]].point;
      const Vector& b = vertices_[f.vertices[1]].point;
      v += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * v;
  }
  for (const auto& f : facets_) {
    const Vector& a = vertices_[f.vertices[0]].point;
    const Vector& b = vertices_[f.vertices[1]].point;
    const Vector& c = vertices_[f.vertices[2]].point;
    v += V3(a[0], a[1], a[2]).dot(V3(b[0], b[1], b[2]).cross(V3(c[0], c[1], c[2])));
  }
  return v / 6.0;
}

double TaggedPolytope::surface_area() const {
  double s = 0.0;
  for (const auto& f : facets_) {
    if (dim_ == 2) {
      s += (vertices_[f.vertices[1]].point - vertices_[f.vertices[0]].point).norm();
    } else {
      const Vector& a = vertices_[f.vertices[0]].point;
      const V3 ab(vertices_[f.vertices[1]].point - a), ac(vertices_[f.vertices[2]].point - a);
      s += 0.5 * ab.cross(ac).norm();
    }
  }
  return s;
}

double TaggedPolytope::min_offset() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : facets_) m = std::min(m, f.offset);
  return m;
}

double TaggedPolytope::facet_excess(const Vector& x) const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& f : facets_) m = std::max(m, f.normal.dot(x) - f.offset);
  return m;
}

std::vector<std::size_t> TaggedPolytope::merged_labels() const {
  UnionFind uf(facets_.size());
  if (dim_ == 3) {
    double scale = 0.0;
    for (const auto& v : vertices_) scale = std::max(scale, v.point.cwiseAbs().maxCoeff());
    for (std::size_t f = 0; f < facets_.size(); ++f)
      for (std::size_t g : facets_[f].neighbors) {
        if (g <= f) continue;
        const double c = facets_[f].normal.dot(facets_[g].normal);
        if (c >= 1.0 - 1e-10 && std::abs(facets_[f].offset - facets_[g].offset) <= 1e-9 * std::max(scale, 1.0))
          uf.unite(f, g);
      }
  }
  std::vector<std::size_t> label(facets_.size());
  std::unordered_map<std::size_t, std::size_t> dense;
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    const std::size_t root = uf.find(f);
    const auto it = dense.try_emplace(root, dense.size()).first;
    label[f] = it->second;
  }
  return label;
}

std::vector<MergedFacet> TaggedPolytope::merged_facets() const {
  const auto label = merged_labels();
  std::size_t groups = 0;
  for (std::size_t l : label) groups = std::max(groups, l + 1);
  std::vector<MergedFacet> out(groups);
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    MergedFacet& m = out[label[f]];
    if (m.triangles.empty()) {
      m.normal = facets_[f].normal;
      m.offset = facets_[f].offset;
    }
    m.triangles.push_back(f);
    if (dim_ == 2) {
      m.area += (vertices_[facets_[f].vertices[1]].point - vertices_[facets_[f].vertices[0]].point).norm();
    } else {
      const Vector& a = vertices_[facets_[f].vertices[0]].point;
      const V3 ab(vertices_[facets_[f].vertices[1]].point - a), ac(vertices_[facets_[f].vertices[2]].point - a);
      m.area += 0.5 * ab.cross(ac).norm();
    }
  }
  return out;
}

std::vector<MergedEdge> TaggedPolytope::merged_edges() const {
  std::vector<MergedEdge> out;
  if (dim_ == 2) return out;
  const auto label = merged_labels();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::map<std::size_t, int>> ends;
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    const auto& hf = facets_[f];
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t g = hf.neighbors[k];
      if (label[f] == label[g] || label[f] > label[g]) continue;
      const auto key = std::make_pair(label[f], label[g]);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, out.size()).first;
        MergedEdge e;
        e.facets = {label[f], label[g]};
        e.exterior_angle = std::acos(std::clamp(hf.normal.dot(facets_[g].normal), -1.0, 1.0));
        out.push_back(e);
        ends.emplace_back();
      }
      const std::size_t a = hf.vertices[k], b = hf.vertices[(k + 1) % 3];
      out[it->second].length += (vertices_[a].point - vertices_[b].point).norm();
      ends[it->second][a] ^= 1;
      ends[it->second][b] ^= 1;
    }
  }
  for (std::size_t e = 0; e < out.size(); ++e) {
    std::size_t slot = 0;
    for (const auto& [v, parity] : ends[e])
      if (parity && slot < 2) out[e].endpoints[slot++] = v;
  }
  return out;
}

std::vector<long> TaggedPolytope::f_vector() const {
  if (dim_ == 2) {
    const long n = static_cast<long>(vertices_.size());
    return {n, n};
  }
  const auto label = merged_labels();
  std::set<std::pair<std::size_t, std::size_t>> edge_pairs;
  std::vector<std::set<std::size_t>> incident(vertices_.size());
  std::size_t groups = 0;
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    groups = std::max(groups, label[f] + 1);
    for (std::size_t k = 0; k < 3; ++k) {
      incident[facets_[f].vertices[k]].insert(label[f]);
      const std::size_t g = facets_[f].neighbors[k];
      if (label[f] != label[g]) edge_pairs.insert(std::minmax(label[f], label[g]));
    }
  }
  long corners = 0;
  for (const auto& s : incident)
    if (s.size() >= 3) ++corners;
  return {corners, static_cast<long>(edge_pairs.size()), static_cast<long>(groups)};
}

double TaggedPolytope::distance(const Vector& x) const {
  if (facet_excess(x) <= 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  if (dim_ == 2) {
    for (const auto& f : facets_)
      best = std::min(best, segment_distance(x, vertices_[f.vertices[0]].point, vertices_[f.vertices[1]].point));
    return best;
  }
  const V3 p(x[0], x[1], x[2]);
  for (const auto& f : facets_) {
    if (f.normal.dot(x) - f.offset <= 0.0) continue;
    const auto& a = vertices_[f.vertices[0]].point;
    const auto& b = vertices_[f.vertices[1]].point;
    const auto& c = vertices_[f.vertices[2]].point;
    const V3 q = closest_on_triangle(p, V3(a[0], a[1], a[2]), V3(b[0], b[1], b[2]), V3(c[0], c[1], c[2]));
    best = std::min(best, (q - p).norm());
  }
  return best;
}

TaggedPolytope convex_hull(std::span<const TaggedPoint> points) {
  if (points.empty()) throw DomainError("convex hull: empty input");
  const int d = static_cast<int>(points.front().point.size());
  for (const auto& p : points)
    if (p.point.size() != d) throw ArgumentError("convex hull: mixed dimensions");
  if (d == 2) return hull_2d(points);
  if (d == 3) return Quickhull3(points).run();
  throw UnsupportedKindError("convex hull: only d = 2 and d = 3 are supported");
}

TaggedPolytope convex_hull(std::span<const Vector> points) {
  std::vector<TaggedPoint> tagged;
  tagged.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) tagged.push_back({i, points[i]});
  return convex_hull(std::span<const TaggedPoint>(tagged));
}

std::vector<std::size_t> extreme_point_indices(std::span<const Vector> points) {
  std::vector<std::size_t> all(points.size());
  std::iota(all.begin(), all.end(), 0);
  const int d = points.empty() ? 0 : static_cast<int>(points.front().size());
  if (d != 2 && d != 3) return all;
  try {
    const TaggedPolytope hull = convex_hull(points);
    std::vector<std::size_t> out;
    out.reserve(hull.vertices().size());
    for (const auto& v : hull.vertices()) out.push_back(v.owner);
    std::sort(out.begin(), out.end());
    return out;
  } catch (const DomainError&) {
    return all;
  }
}

}  // namespace khull
