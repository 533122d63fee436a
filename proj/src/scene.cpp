#include "vrc/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace vrc {

namespace {

constexpr double kTMin = 1e-7;

std::optional<Hit> hit_sphere(const Sphere& s, const Vec3& o, const Vec3& d, double t_max) {
  Vec3 oc = o - s.center;
  double b = dot(oc, d);
  double c = dot(oc, oc) - s.radius * s.radius;
  double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  double sq = std::sqrt(disc);
  double t = -b - sq;
  if (t < kTMin) t = -b + sq;
  if (t < kTMin || t > t_max) return std::nullopt;
  Hit h;
  h.t = t;
  h.point = o + d * t;
  h.normal = (h.point - s.center) / s.radius;
  return h;
}

std::optional<Hit> hit_box(const Box& b, const Vec3& o, const Vec3& d, double t_max) {
  double t0 = kTMin, t1 = t_max;
  int axis = -1;
  double sign = 1.0;
  const double omin[3] = {b.min.x, b.min.y, b.min.z};
  const double omax[3] = {b.max.x, b.max.y, b.max.z};
  const double oo[3] = {o.x, o.y, o.z};
  const double dd[3] = {d.x, d.y, d.z};
  for (int i = 0; i < 3; ++i) {
    if (dd[i] == 0.0) {
      if (oo[i] < omin[i] || oo[i] > omax[i]) return std::nullopt;
      continue;
    }
    double inv = 1.0 / dd[i];
    double tn = (omin[i] - oo[i]) * inv;
    double tf = (omax[i] - oo[i]) * inv;
    double s = -1.0;
    if (tn > tf) {
      std::swap(tn, tf);
      s = 1.0;
    }
    if (tn > t0) {
      t0 = tn;
      axis = i;
      sign = s;
    }
    t1 = std::min(t1, tf);
    if (t0 > t1) return std::nullopt;
  }
  if (axis < 0) return std::nullopt;  // origin inside the box: no entry face
  Hit h;
  h.t = t0;
  h.point = o + d * t0;
  h.normal = Vec3{axis == 0 ? sign : 0.0, axis == 1 ? sign : 0.0, axis == 2 ? sign : 0.0};
  return h;
}

std::optional<Hit> hit_ground(const GroundPlane& g, const Vec3& o, const Vec3& d, double t_max) {
  if (d.z == 0.0) return std::nullopt;
  double t = (g.height - o.z) / d.z;
  if (t < kTMin || t > t_max) return std::nullopt;
  Hit h;
  h.t = t;
  h.point = o + d * t;
  h.normal = Vec3{0, 0, 1};
  return h;
}

// Moller-Trumbore, one-sided culling disabled.
bool hit_triangle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& o, const Vec3& d,
                  double t_max, double& t_out) {
  Vec3 e1 = b - a, e2 = c - a;
  Vec3 p = cross(d, e2);
  double det = dot(e1, p);
  if (std::abs(det) < 1e-14) return false;
  double inv = 1.0 / det;
  Vec3 tv = o - a;
  double u = dot(tv, p) * inv;
  if (u < 0.0 || u > 1.0) return false;
  Vec3 q = cross(tv, e1);
  double v = dot(d, q) * inv;
  if (v < 0.0 || u + v > 1.0) return false;
  double t = dot(e2, q) * inv;
  if (t < kTMin || t > t_max) return false;
  t_out = t;
  return true;
}

std::optional<Hit> hit_quad(const Quad& q, const Vec3& o, const Vec3& d, double t_max) {
  double t;
  bool ok = hit_triangle(q.corners[0], q.corners[1], q.corners[2], o, d, t_max, t) ||
            hit_triangle(q.corners[0], q.corners[2], q.corners[3], o, d, t_max, t);
  if (!ok) return std::nullopt;
  Hit h;
  h.t = t;
  h.point = o + d * t;
  h.normal = normalized(cross(q.corners[1] - q.corners[0], q.corners[3] - q.corners[0]));
  // Rectangle parameters via edge projection (exact for rectangles, which is
  // all that panel texturing needs).
  Vec3 e1 = q.corners[1] - q.corners[0];
  Vec3 e2 = q.corners[3] - q.corners[0];
  Vec3 rel = h.point - q.corners[0];
  h.quad_s = dot(rel, e1) / norm2(e1);
  h.quad_t = dot(rel, e2) / norm2(e2);
  return h;
}

}  // namespace

const char* role_name(Role r) {
  switch (r) {
    case Role::Coin: return "coin";
    case Role::Barrier: return "barrier";
    case Role::Wall: return "wall";
    case Role::Ground: return "ground";
    case Role::Robot: return "robot";
    case Role::CockpitPanel: return "cockpit_panel";
    case Role::Decor: return "decor";
  }
  return "?";
}

Entity& Scene::add(Entity e) {
  e.id = static_cast<int32_t>(entities.size()) + 1;
  entities.push_back(std::move(e));
  return entities.back();
}

const Entity* Scene::find(int32_t id) const {
  if (id < 1 || id > static_cast<int32_t>(entities.size())) return nullptr;
  const Entity& e = entities[static_cast<size_t>(id) - 1];
  return e.id == id ? &e : nullptr;
}

Entity* Scene::find(int32_t id) {
  return const_cast<Entity*>(static_cast<const Scene*>(this)->find(id));
}

void Scene::validate() const {
  std::unordered_set<int32_t> ids;
  for (const Entity& e : entities) {
    if (!ids.insert(e.id).second)
      throw std::invalid_argument("duplicate entity id " + std::to_string(e.id));
    if (const auto* s = std::get_if<Sphere>(&e.shape)) {
      if (s->radius <= 0) throw std::invalid_argument("sphere radius must be > 0");
    } else if (const auto* b = std::get_if<Box>(&e.shape)) {
      if (!(b->min.x < b->max.x && b->min.y < b->max.y && b->min.z < b->max.z))
        throw std::invalid_argument("box min must be < max componentwise");
    }
  }
  double n = norm(light_dir);
  if (std::abs(n - 1.0) > 1e-9) throw std::invalid_argument("light direction must be unit length");
}

std::optional<Hit> intersect_entity(const Entity& e, const Vec3& origin, const Vec3& direction,
                                    double t_max) {
  std::optional<Hit> h;
  if (e.pose.is_identity()) {
    switch (e.shape.index()) {
      case 0: h = hit_sphere(std::get<Sphere>(e.shape), origin, direction, t_max); break;
      case 1: h = hit_box(std::get<Box>(e.shape), origin, direction, t_max); break;
      case 2: h = hit_ground(std::get<GroundPlane>(e.shape), origin, direction, t_max); break;
      case 3: h = hit_quad(std::get<Quad>(e.shape), origin, direction, t_max); break;
    }
  } else {
    Vec3 lo = e.pose.to_local(origin);
    Vec3 ld = e.pose.dir_to_local(direction);
    switch (e.shape.index()) {
      case 0: h = hit_sphere(std::get<Sphere>(e.shape), lo, ld, t_max); break;
      case 1: h = hit_box(std::get<Box>(e.shape), lo, ld, t_max); break;
      case 2: h = hit_ground(std::get<GroundPlane>(e.shape), lo, ld, t_max); break;
      case 3: h = hit_quad(std::get<Quad>(e.shape), lo, ld, t_max); break;
    }
    if (h) {
      h->point = e.pose.to_world(h->point);
      h->normal = e.pose.dir_to_world(h->normal);
    }
  }
  if (h) {
    h->entity_id = e.id;
    if (dot(h->normal, direction) > 0.0) h->normal = -h->normal;
  }
  return h;
}

std::optional<Hit> query_ray(const Scene& scene, const Vec3& origin, const Vec3& direction,
                             double t_max) {
  if (!is_finite(origin) || !is_finite(direction))
    throw std::invalid_argument("query_ray: non-finite origin or direction");
  if (!(t_max > 0.0)) throw std::invalid_argument("query_ray: t_max must be > 0");
  std::optional<Hit> best;
  double limit = t_max;
  for (const Entity& e : scene.entities) {
    if (!e.alive) continue;
    if (auto h = intersect_entity(e, origin, direction, limit)) {
      best = *h;
      limit = h->t;
    }
  }
  return best;
}

namespace {

void grow_bounds(Vec3& bmin, Vec3& bmax, const Vec3& p) {
  bmin.x = std::min(bmin.x, p.x);
  bmin.y = std::min(bmin.y, p.y);
  bmin.z = std::min(bmin.z, p.z);
  bmax.x = std::max(bmax.x, p.x);
  bmax.y = std::max(bmax.y, p.y);
  bmax.z = std::max(bmax.z, p.z);
}

// World-space box of a bounded entity, padded so that rounding in the
// pose transforms can never push a true hit outside of it.
void entity_bounds(const Entity& e, Vec3& bmin, Vec3& bmax) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  bmin = {kInf, kInf, kInf};
  bmax = {-kInf, -kInf, -kInf};
  if (const auto* s = std::get_if<Sphere>(&e.shape)) {
    Vec3 c = e.pose.to_world(s->center);
    grow_bounds(bmin, bmax, c - Vec3{s->radius, s->radius, s->radius});
    grow_bounds(bmin, bmax, c + Vec3{s->radius, s->radius, s->radius});
  } else if (const auto* b = std::get_if<Box>(&e.shape)) {
    for (int k = 0; k < 8; ++k) {
      Vec3 corner{(k & 1) ? b->max.x : b->min.x, (k & 2) ? b->max.y : b->min.y,
                  (k & 4) ? b->max.z : b->min.z};
      grow_bounds(bmin, bmax, e.pose.to_world(corner));
    }
  } else if (const auto* q = std::get_if<Quad>(&e.shape)) {
    for (const Vec3& corner : q->corners) grow_bounds(bmin, bmax, e.pose.to_world(corner));
  }
  double span = std::max({std::abs(bmin.x), std::abs(bmin.y), std::abs(bmin.z), std::abs(bmax.x),
                          std::abs(bmax.y), std::abs(bmax.z)});
  double pad = 1e-9 * (1.0 + span);
  bmin = bmin - Vec3{pad, pad, pad};
  bmax = bmax + Vec3{pad, pad, pad};
}

struct IndexBuilder {
  SceneIndex& idx;
  std::vector<Vec3> bmin, bmax, centroid;  // indexed by entity index

  int32_t build(int32_t first, int32_t count) {
    int32_t self = static_cast<int32_t>(idx.nodes.size());
    idx.nodes.emplace_back();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    Vec3 nmin{kInf, kInf, kInf}, nmax{-kInf, -kInf, -kInf};
    Vec3 cmin{kInf, kInf, kInf}, cmax{-kInf, -kInf, -kInf};
    for (int32_t k = first; k < first + count; ++k) {
      size_t ei = static_cast<size_t>(idx.items[static_cast<size_t>(k)]);
      grow_bounds(nmin, nmax, bmin[ei]);
      grow_bounds(nmin, nmax, bmax[ei]);
      grow_bounds(cmin, cmax, centroid[ei]);
    }
    idx.nodes[static_cast<size_t>(self)].bmin = nmin;
    idx.nodes[static_cast<size_t>(self)].bmax = nmax;
    if (count <= 4) {
      idx.nodes[static_cast<size_t>(self)].first = first;
      idx.nodes[static_cast<size_t>(self)].count = count;
      return self;
    }
    Vec3 extent = cmax - cmin;
    int axis = 0;
    if (extent.y > extent.x) axis = 1;
    if (extent.z > (axis == 0 ? extent.x : extent.y)) axis = 2;
    int32_t mid = first + count / 2;
    auto key = [&](int32_t ei) {
      const Vec3& c = centroid[static_cast<size_t>(ei)];
      return axis == 0 ? c.x : axis == 1 ? c.y : c.z;
    };
    std::nth_element(idx.items.begin() + first, idx.items.begin() + mid,
                     idx.items.begin() + first + count, [&](int32_t a, int32_t b) {
                       double ka = key(a), kb = key(b);
                       return ka < kb || (ka == kb && a < b);
                     });
    int32_t l = build(first, mid - first);
    int32_t r = build(mid, first + count - mid);
    idx.nodes[static_cast<size_t>(self)].left = l;
    idx.nodes[static_cast<size_t>(self)].right = r;
    return self;
  }
};

// Slab test over [0, limit]; writes the entry distance on hit.
bool hit_node_bounds(const Vec3& bmin, const Vec3& bmax, const Vec3& o, const Vec3& d, double limit,
                     double& t_entry) {
  double t0 = 0.0, t1 = limit;
  const double bn[3] = {bmin.x, bmin.y, bmin.z};
  const double bf[3] = {bmax.x, bmax.y, bmax.z};
  const double oo[3] = {o.x, o.y, o.z};
  const double dd[3] = {d.x, d.y, d.z};
  for (int i = 0; i < 3; ++i) {
    if (dd[i] == 0.0) {
      if (oo[i] < bn[i] || oo[i] > bf[i]) return false;
      continue;
    }
    double inv = 1.0 / dd[i];
    double tn = (bn[i] - oo[i]) * inv;
    double tf = (bf[i] - oo[i]) * inv;
    if (tn > tf) std::swap(tn, tf);
    if (tn > t0) t0 = tn;
    if (tf < t1) t1 = tf;
    if (t0 > t1) return false;
  }
  t_entry = t0;
  return true;
}

}  // namespace

SceneIndex build_scene_index(const Scene& scene) {
  SceneIndex idx;
  idx.scene = &scene;
  size_t n = scene.entities.size();
  IndexBuilder b{idx, std::vector<Vec3>(n), std::vector<Vec3>(n), std::vector<Vec3>(n)};
  for (size_t i = 0; i < n; ++i) {
    const Entity& e = scene.entities[i];
    if (!e.alive) continue;
    if (std::holds_alternative<GroundPlane>(e.shape)) {
      idx.planes.push_back(static_cast<int32_t>(i));
      continue;
    }
    entity_bounds(e, b.bmin[i], b.bmax[i]);
    b.centroid[i] = (b.bmin[i] + b.bmax[i]) * 0.5;
    idx.items.push_back(static_cast<int32_t>(i));
  }
  if (!idx.items.empty()) {
    idx.nodes.reserve(2 * idx.items.size());
    b.build(0, static_cast<int32_t>(idx.items.size()));
  }
  return idx;
}

std::optional<Hit> query_ray(const SceneIndex& index, const Vec3& origin, const Vec3& direction,
                             double t_max) {
  if (index.scene == nullptr) throw std::invalid_argument("query_ray: index was not built");
  if (!is_finite(origin) || !is_finite(direction))
    throw std::invalid_argument("query_ray: non-finite origin or direction");
  if (!(t_max > 0.0)) throw std::invalid_argument("query_ray: t_max must be > 0");
  const Scene& scene = *index.scene;
  std::optional<Hit> best;
  double limit = t_max;
  // Equal-t ties go to the higher entity id, matching the linear scan where a
  // later entity overwrites an earlier hit at the same distance.
  auto consider = [&](int32_t ei) {
    const Entity& e = scene.entities[static_cast<size_t>(ei)];
    if (!e.alive) return;
    if (auto h = intersect_entity(e, origin, direction, limit)) {
      if (!best || h->t < best->t || (h->t == best->t && h->entity_id > best->entity_id)) {
        best = *h;
        limit = best->t;
      }
    }
  };
  for (int32_t ei : index.planes) consider(ei);
  if (index.nodes.empty()) return best;
  struct Slot {
    int32_t node;
    double t;
  };
  Slot stack[64];
  int sp = 0;
  stack[sp++] = {0, 0.0};
  while (sp > 0) {
    Slot s = stack[--sp];
    if (s.t > limit) continue;  // node entry past the best hit; equal must still visit
    const SceneIndex::Node& n = index.nodes[static_cast<size_t>(s.node)];
    if (n.count > 0) {
      for (int32_t k = 0; k < n.count; ++k)
        consider(index.items[static_cast<size_t>(n.first + k)]);
      continue;
    }
    const SceneIndex::Node& a = index.nodes[static_cast<size_t>(n.left)];
    const SceneIndex::Node& c = index.nodes[static_cast<size_t>(n.right)];
    double ta = 0.0, tc = 0.0;
    bool ha = hit_node_bounds(a.bmin, a.bmax, origin, direction, limit, ta);
    bool hc = hit_node_bounds(c.bmin, c.bmax, origin, direction, limit, tc);
    if (ha && hc) {
      Slot near{n.left, ta}, far{n.right, tc};
      if (tc < ta) std::swap(near, far);
      stack[sp++] = far;
      stack[sp++] = near;
    } else if (ha) {
      stack[sp++] = {n.left, ta};
    } else if (hc) {
      stack[sp++] = {n.right, tc};
    }
  }
  return best;
}

}  // namespace vrc
