#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "vrc/geometry.hpp"

namespace vrc {

struct Image8;  // frame.hpp

struct Sphere {
  Vec3 center;
  double radius = 1.0;
  bool operator==(const Sphere&) const = default;
};

// Axis-aligned in the entity's local frame; the entity pose may orient it.
struct Box {
  Vec3 min, max;
  bool operator==(const Box&) const = default;
};

// Infinite horizontal plane z = height, normal +Z.
struct GroundPlane {
  double height = 0.0;
  bool operator==(const GroundPlane&) const = default;
};

// Planar quad given by its four corners (counter-clockwise). Intersection
// treats it as two triangles; corners must be coplanar.
struct Quad {
  std::array<Vec3, 4> corners;
  bool operator==(const Quad&) const = default;
};

using Shape = std::variant<Sphere, Box, GroundPlane, Quad>;

enum class Role : uint8_t { Coin, Barrier, Wall, Ground, Robot, CockpitPanel, Decor };

const char* role_name(Role r);

// Affine map from a rectangular quad's (s,t) in [0,1]^2 to continuous
// capture-image coordinates. Used only by cockpit panel entities.
struct PanelUv {
  double u0 = 0.0, v0 = 0.0;   // image coords of corner (s=0, t=0)
  double du = 0.0, dv = 0.0;   // image-coord span along s and t
  bool operator==(const PanelUv&) const = default;
};

struct Entity {
  int32_t id = 0;  // unique within a Scene; 0 is reserved for "no entity"
  Shape shape;
  Vec3 albedo{0.5, 0.5, 0.5};
  Role role = Role::Decor;
  Pose pose;  // rigid transform applied to the shape
  bool alive = true;

  // Procedural checker (world-XY, soft edges). cell <= 0 disables it.
  Vec3 checker_albedo{0.5, 0.5, 0.5};
  double checker_cell = 0.0;
  double checker_softness = 0.15;  // transition width as a fraction of a cell

  // Unlit texture for cockpit panels; non-owning, only valid while composing.
  const Image8* panel_texture = nullptr;
  PanelUv panel_uv;

  bool operator==(const Entity& o) const {
    return id == o.id && shape == o.shape && albedo == o.albedo && role == o.role &&
           pose == o.pose && alive == o.alive && checker_albedo == o.checker_albedo &&
           checker_cell == o.checker_cell && checker_softness == o.checker_softness &&
           panel_texture == o.panel_texture && panel_uv == o.panel_uv;
  }
};

struct Scene {
  std::vector<Entity> entities;
  Vec3 light_dir{0.30151134457776363, 0.30151134457776363, 0.90453403373329089};  // toward light, unit
  double light_intensity = 0.9;
  double ambient = 0.25;
  Vec3 background{0.53, 0.71, 0.92};

  bool operator==(const Scene& o) const {
    return entities == o.entities && light_dir == o.light_dir &&
           light_intensity == o.light_intensity && ambient == o.ambient &&
           background == o.background;
  }

  // Appends, assigns the next id (1-based insertion order), and returns the
  // stored entity. Rendering relies on entities[i].id == i + 1.
  Entity& add(Entity e);
  const Entity* find(int32_t id) const;
  Entity* find(int32_t id);

  void validate() const;
};

struct Hit {
  int32_t entity_id = 0;
  double t = 0.0;  // ray parameter = Euclidean distance for unit directions
  Vec3 point;
  Vec3 normal;        // unit, flipped toward the ray origin
  double quad_s = 0;  // rectangle parameters, filled for Quad hits only
  double quad_t = 0;
};

// Nearest intersection along origin + t*direction with 0 < t <= t_max.
// Dead entities are skipped. Direction must be unit length.
std::optional<Hit> query_ray(const Scene& scene, const Vec3& origin, const Vec3& direction,
                             double t_max);

// Bounding-volume tree over a scene snapshot. Queries through it return
// exactly what the linear scan returns, including the tie rule for equal-t
// hits. The index borrows the scene; mutating any entity pose, shape, or
// alive flag afterwards invalidates it. Build cost is trivial next to one
// frame, so the renderer rebuilds per call.
struct SceneIndex {
  struct Node {
    Vec3 bmin, bmax;
    int32_t left = -1, right = -1;  // child nodes when internal
    int32_t first = 0, count = 0;   // item range when leaf (count > 0)
  };
  const Scene* scene = nullptr;
  std::vector<Node> nodes;      // nodes[0] is the root when non-empty
  std::vector<int32_t> items;   // entity indices with finite bounds
  std::vector<int32_t> planes;  // unbounded entities, tested linearly
};

SceneIndex build_scene_index(const Scene& scene);

std::optional<Hit> query_ray(const SceneIndex& index, const Vec3& origin, const Vec3& direction,
                             double t_max);

// Intersection against a single entity, ignoring the alive flag. Exposed for
// the brute-force test oracle and the cockpit mask kernel.
std::optional<Hit> intersect_entity(const Entity& e, const Vec3& origin, const Vec3& direction,
                                    double t_max);

}  // namespace vrc
