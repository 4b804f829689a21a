#pragma once

#include <optional>
#include <vector>

#include "pmlab/params.hpp"

namespace pmlab {

// Point of the closed unit ball.
struct GeoPoint {
    std::vector<double> coords;

    GeoPoint() = default;
    GeoPoint(std::initializer_list<double> c) : coords(c) { validate(); }
    explicit GeoPoint(std::vector<double> c) : coords(std::move(c)) {
        validate();
    }

    double norm2() const {
        double s = 0.0;
        for (double c : coords) s += c * c;
        return s;
    }
    double norm() const;

  private:
    void validate() const;
};

// Semimetric d(z1,z2) = |z1-z2| / (sqrt(rho(z1)) + sqrt(rho(z2)) + sqrt(|z1-z2|)).
double semimetric(const GeoPoint& z1, const GeoPoint& z2);

// Point of the hypocycloid geodesic through (1,0) with rolling-circle radius
// r in (0, 1/2], parametrized by intrinsic arclength t (2D).
GeoPoint hypocycloid_point(double r, double t);
// Velocity of the same parametrization (for the |Gamma'|^2 = 1-|Gamma|^2 check).
GeoPoint hypocycloid_velocity(double r, double t);

// Closed-form intrinsic distance for the covered pairs: collinear points on a
// common ray through the origin, or two boundary points.  Returns nullopt
// when the pair is not covered.
std::optional<double> geodesic_distance_exact(const GeoPoint& z1,
                                              const GeoPoint& z2);

// Brute-force 2D geodesic oracle: concentric-ring graph with edge weights
// from the conformal length element |dz|/sqrt(1-|z|^2), Dijkstra shortest
// paths, and optional polyline shortening against the continuous metric.
class GeodesicOracle {
  public:
    // h: target intrinsic mesh spacing; nodes are clamped to |z| <= 1 - h^2.
    explicit GeodesicOracle(double h);

    double mesh_spacing() const { return h_; }
    std::size_t node_count() const { return pos_.size() / 2; }

    // Shortest-path distance between the mesh nodes nearest to z1 and z2.
    // refine=true post-optimizes the Dijkstra polyline in the continuous
    // metric, removing the O(1) direction-quantization bias of the graph.
    double distance(const GeoPoint& z1, const GeoPoint& z2,
                    bool refine = true) const;

    // Distances from z1 to many targets with a single Dijkstra sweep
    // (refinement applied per target when requested).
    std::vector<double> distances(const GeoPoint& z1,
                                  const std::vector<GeoPoint>& targets,
                                  bool refine = true) const;

  private:
    double h_;
    double r_max_;
    std::vector<double> pos_;                 // x,y interleaved
    std::vector<int> ring_of_;                // ring index per node
    std::vector<std::vector<int>> ring_nodes_;
    std::vector<int> adj_head_;               // CSR adjacency
    std::vector<int> adj_node_;
    std::vector<double> adj_weight_;

    int snap(const GeoPoint& z) const;
    std::vector<double> dijkstra(int source, std::vector<int>* prev) const;
    double refine_path(std::vector<int> path, double x0, double y0, double x1,
                       double y1) const;
};

// mu_sigma volume of the intrinsic ball {z' : d(z,z') < r}; N = 1 or 2.
double intrinsic_ball_volume(const GeoPoint& z, double r,
                             const ModelParams& params, int samples = 400);

}  // namespace pmlab
