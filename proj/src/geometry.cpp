#include "pmlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace pmlab {

namespace {

double dist_euclid(const GeoPoint& a, const GeoPoint& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        double d = a.coords[i] - b.coords[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// 1/sqrt(1 - |z|^2), the conformal length density
double metric_density(double x, double y) {
    double s = 1.0 - x * x - y * y;
    return 1.0 / std::sqrt(std::max(s, 1e-300));
}

// length of the segment (x1,y1)-(x2,y2) in the conformal metric, two-point
// Gauss per segment
double segment_length(double x1, double y1, double x2, double y2) {
    static const double g = 0.5 / std::sqrt(3.0);
    double mx = 0.5 * (x1 + x2), my = 0.5 * (y1 + y2);
    double dx = x2 - x1, dy = y2 - y1;
    double len = std::sqrt(dx * dx + dy * dy);
    double xa = mx - g * dx, ya = my - g * dy;
    double xb = mx + g * dx, yb = my + g * dy;
    return 0.5 * len * (metric_density(xa, ya) + metric_density(xb, yb));
}

}  // namespace

void GeoPoint::validate() const {
    if (norm2() > 1.0 + 1e-12)
        throw std::domain_error("GeoPoint: outside the closed unit ball");
}

double GeoPoint::norm() const { return std::sqrt(norm2()); }

double semimetric(const GeoPoint& z1, const GeoPoint& z2) {
    if (z1.coords.size() != z2.coords.size())
        throw std::invalid_argument("semimetric: dimension mismatch");
    double diff = dist_euclid(z1, z2);
    if (diff == 0.0) return 0.0;
    double rho1 = 0.5 * std::max(0.0, 1.0 - z1.norm2());
    double rho2 = 0.5 * std::max(0.0, 1.0 - z2.norm2());
    return diff / (std::sqrt(rho1) + std::sqrt(rho2) + std::sqrt(diff));
}

GeoPoint hypocycloid_point(double r, double t) {
    if (!(r > 0.0 && r <= 0.5))
        throw std::domain_error("hypocycloid_point: r in (0, 1/2] required");
    double a = std::sqrt(r / (1.0 - r));
    double b = std::sqrt((1.0 - r) / r);
    double x = (1.0 - r) * std::cos(a * t) + r * std::cos(b * t);
    double y = (1.0 - r) * std::sin(a * t) - r * std::sin(b * t);
    // rounding can push |z| marginally above 1
    double n2 = x * x + y * y;
    if (n2 > 1.0) {
        double s = 1.0 / std::sqrt(n2);
        x *= s;
        y *= s;
    }
    return GeoPoint{x, y};
}

GeoPoint hypocycloid_velocity(double r, double t) {
    if (!(r > 0.0 && r <= 0.5))
        throw std::domain_error("hypocycloid_velocity: r in (0, 1/2]");
    double a = std::sqrt(r / (1.0 - r));
    double b = std::sqrt((1.0 - r) / r);
    double c = std::sqrt(r * (1.0 - r));
    GeoPoint v;
    v.coords = {-c * (std::sin(a * t) + std::sin(b * t)),
                c * (std::cos(a * t) - std::cos(b * t))};
    return v;
}

std::optional<double> geodesic_distance_exact(const GeoPoint& z1,
                                              const GeoPoint& z2) {
    double n1 = z1.norm(), n2 = z2.norm();
    double diff = dist_euclid(z1, z2);
    if (diff == 0.0) return 0.0;

    // same ray through the origin (includes one point at the origin)
    double dot = 0.0;
    for (std::size_t i = 0; i < z1.coords.size(); ++i)
        dot += z1.coords[i] * z2.coords[i];
    if (n1 * n2 < 1e-14 || std::abs(dot - n1 * n2) <= 1e-12 * std::max(n1 * n2, 1e-30)) {
        if (n1 * n2 < 1e-14 || dot >= 0.0)
            return std::abs(std::acos(std::min(1.0, n1)) -
                            std::acos(std::min(1.0, n2)));
    }

    // two boundary points: |z1 - z2| = 2 sin(pi r), distance 2 pi sqrt(r(1-r))
    if (std::abs(n1 - 1.0) <= 1e-12 && std::abs(n2 - 1.0) <= 1e-12) {
        double s = std::min(1.0, 0.5 * diff);
        double r = std::asin(s) / M_PI;
        return 2.0 * M_PI * std::sqrt(r * (1.0 - r));
    }
    return std::nullopt;
}

GeodesicOracle::GeodesicOracle(double h) : h_(h) {
    if (!(h > 1e-4 && h < 0.3))
        throw std::invalid_argument("GeodesicOracle: h out of range");
    r_max_ = 1.0 - h * h;

    // center node
    pos_.push_back(0.0);
    pos_.push_back(0.0);
    ring_of_.push_back(0);
    ring_nodes_.push_back({0});

    // rings uniform in s = arcsin(r) so radial spacing is ~h in the metric
    const double s_max = std::asin(r_max_);
    const int n_rings = std::max(2, static_cast<int>(std::ceil(s_max / h)));
    std::vector<int> ring_count(n_rings + 1, 0);
    for (int i = 1; i <= n_rings; ++i) {
        double s = s_max * i / n_rings;
        double r = std::sin(s);
        // in-ring spacing ~h in the metric: count ~ 2 pi r / (cos(s) h)
        int m = static_cast<int>(
            std::ceil(2.0 * M_PI * r / (std::cos(s) * h)));
        m = std::max(8, m + (m % 2));  // even, so phi = 0 and pi exist
        ring_count[i] = m;
        ring_nodes_.push_back({});
        ring_nodes_[i].reserve(m);
        for (int j = 0; j < m; ++j) {
            double phi = 2.0 * M_PI * j / m;
            ring_nodes_[i].push_back(static_cast<int>(pos_.size() / 2));
            pos_.push_back(r * std::cos(phi));
            pos_.push_back(r * std::sin(phi));
            ring_of_.push_back(i);
        }
    }

    // adjacency: same-ring neighbors; nearest + flanking nodes on the rings
    // one step in and out; center connects to ring 1
    std::vector<std::vector<std::pair<int, double>>> adj(pos_.size() / 2);
    auto add_edge = [&](int a, int b) {
        if (a == b) return;
        double w = segment_length(pos_[2 * a], pos_[2 * a + 1], pos_[2 * b],
                                  pos_[2 * b + 1]);
        adj[a].push_back({b, w});
        adj[b].push_back({a, w});
    };
    for (int i = 1; i <= n_rings; ++i) {
        const auto& ring = ring_nodes_[i];
        const int m = static_cast<int>(ring.size());
        for (int j = 0; j < m; ++j) add_edge(ring[j], ring[(j + 1) % m]);
        if (i == 1) {
            for (int j = 0; j < m; ++j) add_edge(0, ring[j]);
        }
        if (i < n_rings) {
            const auto& next = ring_nodes_[i + 1];
            const int mn = static_cast<int>(next.size());
            for (int j = 0; j < m; ++j) {
                double phi = 2.0 * M_PI * j / m;
                int jn = static_cast<int>(std::round(phi * mn / (2.0 * M_PI)));
                for (int d = -1; d <= 1; ++d)
                    add_edge(ring[j], next[((jn + d) % mn + mn) % mn]);
            }
            for (int j = 0; j < mn; ++j) {
                double phi = 2.0 * M_PI * j / mn;
                int jp = static_cast<int>(std::round(phi * m / (2.0 * M_PI)));
                add_edge(next[j], ring[jp % m]);
            }
        }
    }

    // dedupe and pack to CSR
    adj_head_.assign(pos_.size() / 2 + 1, 0);
    for (std::size_t v = 0; v < adj.size(); ++v) {
        auto& row = adj[v];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end(),
                              [](auto& a, auto& b) { return a.first == b.first; }),
                  row.end());
        adj_head_[v + 1] = adj_head_[v] + static_cast<int>(row.size());
    }
    adj_node_.resize(adj_head_.back());
    adj_weight_.resize(adj_head_.back());
    for (std::size_t v = 0; v < adj.size(); ++v) {
        int at = adj_head_[v];
        for (auto& [n, w] : adj[v]) {
            adj_node_[at] = n;
            adj_weight_[at] = w;
            ++at;
        }
    }
}

int GeodesicOracle::snap(const GeoPoint& z) const {
    if (z.coords.size() != 2)
        throw std::invalid_argument("GeodesicOracle: 2D points only");
    double x = z.coords[0], y = z.coords[1];
    double r = std::sqrt(x * x + y * y);
    if (r > r_max_) {
        double s = r_max_ / r;
        x *= s;
        y *= s;
        r = r_max_;
    }
    // nearest ring by arcsin, then nearest node on that ring
    const double s_max = std::asin(r_max_);
    const int n_rings = static_cast<int>(ring_nodes_.size()) - 1;
    int ring = static_cast<int>(std::round(std::asin(r) / s_max * n_rings));
    ring = std::clamp(ring, 0, n_rings);
    if (ring == 0) return 0;
    const auto& nodes = ring_nodes_[ring];
    double phi = std::atan2(y, x);
    if (phi < 0) phi += 2.0 * M_PI;
    int j = static_cast<int>(std::round(phi * nodes.size() / (2.0 * M_PI)));
    return nodes[j % nodes.size()];
}

std::vector<double> GeodesicOracle::dijkstra(int source,
                                             std::vector<int>* prev) const {
    const int n = static_cast<int>(pos_.size() / 2);
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    if (prev) prev->assign(n, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (int e = adj_head_[u]; e < adj_head_[u + 1]; ++e) {
            int v = adj_node_[e];
            double nd = d + adj_weight_[e];
            if (nd < dist[v]) {
                dist[v] = nd;
                if (prev) (*prev)[v] = u;
                pq.push({nd, v});
            }
        }
    }
    return dist;
}

double GeodesicOracle::refine_path(std::vector<int> path, double x0, double y0,
                                   double x1e, double y1e) const {
    // polyline through the graph path, with the true (clamped) query points
    // as endpoints; subdivide once so corners can be cut
    std::vector<double> qx, qy;
    qx.push_back(x0);
    qy.push_back(y0);
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        qx.push_back(pos_[2 * path[i]]);
        qy.push_back(pos_[2 * path[i] + 1]);
    }
    qx.push_back(x1e);
    qy.push_back(y1e);
    std::vector<double> px, py;
    for (std::size_t i = 0; i + 1 < qx.size(); ++i) {
        px.push_back(qx[i]);
        py.push_back(qy[i]);
        px.push_back(0.5 * (qx[i] + qx[i + 1]));
        py.push_back(0.5 * (qy[i] + qy[i + 1]));
    }
    px.push_back(qx.back());
    py.push_back(qy.back());

    auto total = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < px.size(); ++i)
            s += segment_length(px[i], py[i], px[i + 1], py[i + 1]);
        return s;
    };

    // coordinate descent on interior vertices; clamp to |z| <= r_max
    double len = total();
    double step = 0.5 * h_;
    for (int sweep = 0; sweep < 200; ++sweep) {
        bool improved = false;
        for (std::size_t i = 1; i + 1 < px.size(); ++i) {
            double base = segment_length(px[i - 1], py[i - 1], px[i], py[i]) +
                          segment_length(px[i], py[i], px[i + 1], py[i + 1]);
            double bx = px[i], by = py[i], best = base;
            for (int dir = 0; dir < 8; ++dir) {
                double ang = 2.0 * M_PI * dir / 8;
                double nx = px[i] + step * std::cos(ang);
                double ny = py[i] + step * std::sin(ang);
                double r = std::sqrt(nx * nx + ny * ny);
                if (r > r_max_) {
                    nx *= r_max_ / r;
                    ny *= r_max_ / r;
                }
                double cand =
                    segment_length(px[i - 1], py[i - 1], nx, ny) +
                    segment_length(nx, ny, px[i + 1], py[i + 1]);
                if (cand < best) {
                    best = cand;
                    bx = nx;
                    by = ny;
                }
            }
            if (best < base - 1e-15) {
                px[i] = bx;
                py[i] = by;
                improved = true;
            }
        }
        if (!improved) {
            step *= 0.5;
            if (step < 1e-5 * h_) break;
        }
    }
    double refined = total();
    return std::min(len, refined);
}

double GeodesicOracle::distance(const GeoPoint& z1, const GeoPoint& z2,
                                bool refine) const {
    return distances(z1, {z2}, refine)[0];
}

std::vector<double> GeodesicOracle::distances(
    const GeoPoint& z1, const std::vector<GeoPoint>& targets,
    bool refine) const {
    int s = snap(z1);
    std::vector<int> prev;
    std::vector<double> dist = dijkstra(s, refine ? &prev : nullptr);
    auto clamp_pt = [&](const GeoPoint& z, double& x, double& y) {
        x = z.coords[0];
        y = z.coords[1];
        double r = std::sqrt(x * x + y * y);
        if (r > r_max_) {
            x *= r_max_ / r;
            y *= r_max_ / r;
        }
    };
    double sx, sy;
    clamp_pt(z1, sx, sy);
    std::vector<double> out;
    out.reserve(targets.size());
    for (const auto& t : targets) {
        int v = snap(t);
        if (!std::isfinite(dist[v]))
            throw std::runtime_error("GeodesicOracle: disconnected snap");
        double tx, ty;
        clamp_pt(t, tx, ty);
        if (v == s && !refine) {
            out.push_back(0.0);
            continue;
        }
        if (!refine) {
            out.push_back(dist[v]);
            continue;
        }
        std::vector<int> path;
        for (int u = v; u != -1; u = prev[u]) path.push_back(u);
        std::reverse(path.begin(), path.end());
        out.push_back(refine_path(std::move(path), sx, sy, tx, ty));
    }
    return out;
}

double intrinsic_ball_volume(const GeoPoint& z, double r,
                             const ModelParams& params, int samples) {
    if (!(r > 0.0))
        throw std::invalid_argument("intrinsic_ball_volume: r > 0 required");
    const int N = params.dim;
    const double sigma = params.sigma;
    if (N != 1 && N != 2)
        throw std::invalid_argument("intrinsic_ball_volume: N = 1 or 2 only");

    // cell masses in u = |z'|^2 are exact:
    //   d/du [ -(0.5(1-u))^{sigma+1} * 2/(sigma+1) ] = (0.5(1-u))^sigma
    auto mass_u = [&](double u1, double u2) {
        double c = 2.0 / (sigma + 1.0);
        return c * (std::pow(0.5 * (1.0 - u1), sigma + 1.0) -
                    std::pow(0.5 * (1.0 - u2), sigma + 1.0));
    };

    // Euclidean window that certainly contains the d-ball (radius
    // ~ r(r+sqrt(rho)) with a generous constant), so small balls are still
    // resolved by the sampling
    const double zn = z.norm();
    const double rho_z = 0.5 * std::max(0.0, 1.0 - zn * zn);
    double R_E = 6.0 * r * (r + std::sqrt(rho_z)) + 3.0 * r * r;
    R_E = std::min(R_E, 2.0);
    const double lo_r = std::max(0.0, zn - R_E);
    const double hi_r = std::min(1.0, zn + R_E);
    const double lo_u = lo_r * lo_r, hi_u = hi_r * hi_r;

    double vol = 0.0;
    if (N == 1) {
        for (double sgn : {1.0, -1.0}) {
            // window per sign: around sgn*|z| when covered, else around 0
            for (int i = 0; i < samples; ++i) {
                double u1 = lo_u + (hi_u - lo_u) * i / samples;
                double u2 = lo_u + (hi_u - lo_u) * (i + 1) / samples;
                double rr = std::sqrt(0.5 * (u1 + u2));
                if (rr < 1e-9) rr = 1e-9;
                GeoPoint p{sgn * rr};
                if (semimetric(z, p) < r) vol += 0.5 * mass_u(u1, u2) / rr;
            }
        }
        // the window above is centered on |z|; if the ball reaches across
        // the origin the far side is caught because lo_r clamps at 0
        return vol;
    }
    // 2D: angular window around the direction of z
    double phi_z = (zn > 1e-12) ? std::atan2(z.coords[1], z.coords[0]) : 0.0;
    double dphi_max = M_PI;
    if (zn > R_E) dphi_max = std::asin(std::min(1.0, R_E / zn)) * 1.2;
    const int n_ang = samples;
    const double cell_ang = 2.0 * dphi_max / n_ang;
    for (int i = 0; i < samples; ++i) {
        double u1 = lo_u + (hi_u - lo_u) * i / samples;
        double u2 = lo_u + (hi_u - lo_u) * (i + 1) / samples;
        double rr = std::sqrt(0.5 * (u1 + u2));
        double ring_mass = 0.5 * mass_u(u1, u2);  // per unit angle
        for (int j = 0; j < n_ang; ++j) {
            double phi = phi_z - dphi_max + cell_ang * (j + 0.5);
            GeoPoint p{rr * std::cos(phi), rr * std::sin(phi)};
            if (semimetric(z, p) < r) vol += ring_mass * cell_ang;
        }
    }
    return vol;
}

}  // namespace pmlab
