#include "pmlab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace pmlab {

namespace {

double norm_of(const std::vector<double>& x) {
    double s = 0.0;
    for (double c : x) s += c * c;
    return std::sqrt(s);
}

std::vector<double> ray_point(const std::vector<double>& dir, double x) {
    std::vector<double> p(dir.size());
    for (std::size_t i = 0; i < dir.size(); ++i) p[i] = x * dir[i];
    return p;
}

// directions probed for support bounds and admissibility checks
std::vector<std::vector<double>> sector_directions(const ModelParams& params,
                                                   Sector sector) {
    switch (sector) {
        case Sector::radial: {
            std::vector<double> e(params.dim, 0.0);
            e[0] = 1.0;
            return {e};
        }
        case Sector::full_1d:
            return {{1.0}, {-1.0}};
        case Sector::full_2d: {
            std::vector<std::vector<double>> dirs;
            for (int j = 0; j < 32; ++j) {
                double phi = 2.0 * M_PI * j / 32;
                dirs.push_back({std::cos(phi), std::sin(phi)});
            }
            return dirs;
        }
    }
    return {};
}

// largest x with v(x dir) > 0, bracketed in [0, hi]
double support_edge(const PressureProfile& v, const std::vector<double>& dir,
                    double hi) {
    double lo = 0.0;
    if (!(v(ray_point(dir, lo)) > 0.0))
        throw std::invalid_argument("transform: pressure vanishes at origin");
    while (v(ray_point(dir, hi)) > 0.0) hi *= 1.5;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (v(ray_point(dir, mid)) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double barenblatt_pressure(double R, const std::vector<double>& x) {
    if (!(R > 0.0))
        throw std::invalid_argument("barenblatt_pressure: R > 0 required");
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return std::max(0.0, 0.5 * (R - r2));
}

PressureProfile make_barenblatt_profile(const ModelParams& params,
                                        Sector sector, double R) {
    PressureProfile v;
    v.params = params;
    v.sector = sector;
    v.eval = [R](const std::vector<double>& x) {
        return barenblatt_pressure(R, x);
    };
    v.support_inner = v.support_outer = std::sqrt(R);
    return v;
}

PressureProfile make_pressure_profile(
    const ModelParams& params, Sector sector,
    std::function<double(const std::vector<double>&)> eval,
    double support_inner, double support_outer) {
    PressureProfile v;
    v.params = params;
    v.sector = sector;
    v.eval = std::move(eval);
    v.support_inner = support_inner;
    v.support_outer = support_outer;
    return v;
}

double jacobian_forward(double v_value, const std::vector<double>& grad_v,
                        const std::vector<double>& x,
                        const ModelParams& params) {
    double x2 = 0.0, xdotg = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x2 += x[i] * x[i];
        xdotg += x[i] * grad_v[i];
    }
    double base = 2.0 * v_value + x2;
    if (!(base > 0.0))
        throw std::domain_error("jacobian_forward: 2v + |x|^2 must be positive");
    return std::pow(base, -0.5 * params.dim - 1.0) * (2.0 * v_value - xdotg);
}

PerturbationProfile forward_map(const PressureProfile& v) {
    const ModelParams params = v.params;
    const Sector sector = v.sector;
    auto dirs = sector_directions(params, sector);

    // per-direction support edges, plus the Jacobian condition 2v - x.v' > 0
    // sampled along each ray (v' by central differences)
    auto edges = std::make_shared<std::vector<double>>();
    for (const auto& dir : dirs) {
        double edge = support_edge(v, dir, std::max(1.0, v.support_outer));
        edges->push_back(edge);
        const double fd = 1e-6 * edge;
        for (int i = 1; i < 64; ++i) {
            double x = edge * i / 64.0;
            double vp = (v(ray_point(dir, x + fd)) - v(ray_point(dir, x - fd))) /
                        (2.0 * fd);
            double val = v(ray_point(dir, x));
            if (!(2.0 * val - x * vp > 0.0))
                throw std::invalid_argument(
                    "forward_map: non-invertible input (2v - x.grad v <= 0)");
        }
    }

    auto dirs_ptr = std::make_shared<std::vector<std::vector<double>>>(dirs);
    auto veval = v.eval;
    auto eval = [params, sector, veval, dirs_ptr,
                 edges](const std::vector<double>& z) -> double {
        double rz = norm_of(z);
        if (rz > 1.0 + 1e-12)
            throw std::domain_error("forward_map: z outside the closed ball");
        rz = std::min(rz, 1.0);
        if (rz < 1e-14) return std::sqrt(2.0 * veval(std::vector<double>(
                                   params.dim, 0.0))) - 1.0;
        std::vector<double> dir(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) dir[i] = z[i] / rz;
        // matching stored edge: nearest direction
        double edge = 0.0;
        {
            double best = -2.0;
            for (std::size_t d = 0; d < dirs_ptr->size(); ++d) {
                double dot = 0.0;
                for (std::size_t i = 0; i < dir.size(); ++i)
                    dot += dir[i] * (*dirs_ptr)[d][i];
                if (dot > best) {
                    best = dot;
                    edge = (*edges)[d];
                }
            }
        }
        if (rz >= 1.0 - 1e-14) return edge - 1.0;  // boundary maps to the edge
        // solve x / sqrt(2 v(x dir) + x^2) = rz on [0, edge]
        double lo = 0.0, hi = edge;
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi);
            double val = veval(ray_point(dir, mid));
            double phi = mid / std::sqrt(2.0 * val + mid * mid);
            if (phi < rz)
                lo = mid;
            else
                hi = mid;
            if (hi - lo < 1e-13 * std::max(1.0, edge)) break;
        }
        double x = 0.5 * (lo + hi);
        return std::sqrt(2.0 * veval(ray_point(dir, x)) + x * x) - 1.0;
    };

    PerturbationProfile w;
    w.params = params;
    w.sector = sector;
    w.eval = eval;
    // sampled sup and Lipschitz estimates
    double sup = 0.0, lip = 0.0;
    const int S = 160;
    for (const auto& dir : dirs) {
        double prev = 0.0, prev_r = 0.0;
        for (int i = 0; i <= S; ++i) {
            double r = static_cast<double>(i) / S;
            std::vector<double> z(dir.size());
            for (std::size_t c = 0; c < dir.size(); ++c) z[c] = r * dir[c];
            double val = eval(z);
            sup = std::max(sup, std::abs(val));
            if (i > 0)
                lip = std::max(lip, std::abs(val - prev) / (r - prev_r));
            prev = val;
            prev_r = r;
        }
    }
    w.sup_norm = sup;
    w.lip_seminorm = lip;
    return w;
}

PressureProfile inverse_map(const PerturbationProfile& w) {
    const ModelParams params = w.params;
    const Sector sector = w.sector;
    auto dirs = sector_directions(params, sector);

    // Jacobian condition 1 + w + z.grad w > 0 sampled along rays
    for (const auto& dir : dirs) {
        const double fd = 1e-6;
        for (int i = 0; i <= 64; ++i) {
            double r = (i == 64) ? 1.0 - fd : i / 64.0;
            auto zp = ray_point(dir, r + fd), zm = ray_point(dir, r - fd < 0 ? 0 : r - fd);
            double wval = w(ray_point(dir, r));
            double wp = (w(zp) - w(zm)) / (norm_of(zp) - norm_of(zm));
            if (!(1.0 + wval + r * wp > 0.0))
                throw std::invalid_argument(
                    "inverse_map: fold (1 + w + z.grad w <= 0)");
        }
    }

    double inner = 1e300, outer = 0.0;
    for (const auto& dir : dirs) {
        double edge = 1.0 + w(dir);
        inner = std::min(inner, edge);
        outer = std::max(outer, edge);
    }

    auto weval = w.eval;
    auto eval = [params, weval](const std::vector<double>& x) -> double {
        double rx = norm_of(x);
        if (rx < 1e-14) {
            double w0 = weval(std::vector<double>(params.dim, 0.0));
            return 0.5 * (1.0 + w0) * (1.0 + w0);
        }
        std::vector<double> dir(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) dir[i] = x[i] / rx;
        double edge = 1.0 + weval(dir);
        if (rx >= edge) return 0.0;
        // solve (1 + w(z dir)) z = rx on z in [0, 1], bisection to 1e-12
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
            double mid = 0.5 * (lo + hi);
            double val = (1.0 + weval(ray_point(dir, mid))) * mid;
            if (val < rx)
                lo = mid;
            else
                hi = mid;
        }
        double z = 0.5 * (lo + hi);
        double wz = weval(ray_point(dir, z));
        return 0.5 * (1.0 - z * z) * (1.0 + wz) * (1.0 + wz);
    };

    PressureProfile v;
    v.params = params;
    v.sector = sector;
    v.eval = eval;
    v.support_inner = inner;
    v.support_outer = outer;
    return v;
}

PerturbationProfile perturbation_from_field(const ModeSet& ms,
                                            const SpectralField& f) {
    PerturbationProfile w;
    w.params = ms.params;
    w.sector = ms.sector;
    auto ms_ptr = std::make_shared<ModeSet>(ms);
    auto f_ptr = std::make_shared<SpectralField>(f);
    w.eval = [ms_ptr, f_ptr](const std::vector<double>& z) {
        return eval_field_at(*ms_ptr, *f_ptr, z);
    };
    // sup / Lipschitz estimates from a polar sample
    double sup = 0.0, lip = 0.0;
    const int S = 128;
    auto dirs = sector_directions(ms.params, ms.sector);
    for (const auto& dir : dirs) {
        double ang = (ms.sector == Sector::full_1d)
                         ? dir[0]
                         : std::atan2(dir.size() > 1 ? dir[1] : 0.0, dir[0]);
        for (int i = 0; i <= S; ++i) {
            double r = static_cast<double>(i) / S;
            PointEval pe = eval_field_polar(*ms_ptr, *f_ptr, r, ang);
            sup = std::max(sup, std::abs(pe.value));
            lip = std::max(lip,
                           std::sqrt(pe.dr * pe.dr + pe.dt * pe.dt));
        }
    }
    w.sup_norm = sup;
    w.lip_seminorm = lip;
    return w;
}

namespace {

// composite 5-point Gauss on [lo, hi]
double integrate_1d(const std::function<double(double)>& f, double lo,
                    double hi, int cells) {
    static const double xs[5] = {-0.906179845938664, -0.538469310105683, 0.0,
                                 0.538469310105683, 0.906179845938664};
    static const double ws[5] = {0.236926885056189, 0.478628670499366,
                                 0.568888888888889, 0.478628670499366,
                                 0.236926885056189};
    double h = (hi - lo) / cells, total = 0.0;
    for (int c = 0; c < cells; ++c) {
        double mid = lo + (c + 0.5) * h;
        for (int q = 0; q < 5; ++q)
            total += 0.5 * h * ws[q] * f(mid + 0.5 * h * xs[q]);
    }
    return total;
}

}  // namespace

double pressure_mass(const PressureProfile& v, int cells) {
    const ModelParams& p = v.params;
    const double sp1 = p.sigma + 1.0;
    if (v.sector == Sector::full_1d) {
        return integrate_1d(
            [&](double x) { return std::pow(v({x}), sp1); }, -v.support_outer,
            v.support_outer, cells);
    }
    // radial in N dimensions
    return sphere_area(p.dim) *
           integrate_1d(
               [&](double x) {
                   std::vector<double> pt(p.dim, 0.0);
                   pt[0] = x;
                   return std::pow(v(pt), sp1) * std::pow(x, p.dim - 1);
               },
               0.0, v.support_outer, cells);
}

std::vector<double> pressure_first_moment(const PressureProfile& v,
                                          int cells) {
    const ModelParams& p = v.params;
    const double sp1 = p.sigma + 1.0;
    std::vector<double> m(p.dim, 0.0);
    if (v.sector == Sector::full_1d) {
        m[0] = integrate_1d(
            [&](double x) { return std::pow(v({x}), sp1) * x; },
            -v.support_outer, v.support_outer, cells);
    }
    // radial profiles have vanishing first moment by symmetry
    return m;
}

double pressure_second_moment(const PressureProfile& v,
                              const std::vector<double>& M, int cells) {
    (void)cells;
    if (v.sector != Sector::full_2d) {
        // trace-free moments of radial/1D profiles vanish by symmetry
        (void)M;
        return 0.0;
    }
    throw std::invalid_argument(
        "pressure_second_moment: use pullback_moments for the 2D sector");
}

PullbackMoments pullback_moments(const Grid& grid,
                                 const std::vector<double>& w_val,
                                 const std::vector<double>& w_dr,
                                 const std::vector<double>& w_dt,
                                 const std::vector<double>& M) {
    (void)w_dt;
    const ModelParams& p = grid.params;
    const double beta = p.beta();
    PullbackMoments out;
    out.first.assign(p.dim, 0.0);
    const bool with_M = !M.empty();
    if (with_M && (grid.sector != Sector::full_2d || M.size() != 4))
        throw std::invalid_argument(
            "pullback_moments: M is a 2x2 row-major matrix (2D sector)");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& node = grid.nodes[i];
        double opw = 1.0 + w_val[i];
        double jac = opw + node.r * w_dr[i];  // 1 + w + z.grad w
        double w1 = node.w_sigma * node.rho;  // mu_{sigma+1} weight
        double opw_beta = std::pow(opw, beta);
        out.mass += w1 * opw_beta * jac;
        double zi[2] = {node.x, node.y};
        if (grid.sector == Sector::full_1d) zi[0] = node.sign * node.r;
        for (int d = 0; d < p.dim; ++d)
            out.first[d] += w1 * opw_beta * opw * jac * zi[d];
        if (with_M) {
            double zMz = M[0] * zi[0] * zi[0] + (M[1] + M[2]) * zi[0] * zi[1] +
                         M[3] * zi[1] * zi[1];
            out.second_tracefree += w1 * opw_beta * opw * opw * jac * zMz;
        }
    }
    if (grid.sector == Sector::radial) {
        // angular symmetry: first moment vanishes
        std::fill(out.first.begin(), out.first.end(), 0.0);
    }
    return out;
}

std::pair<double, double> support_bounds(const PressureProfile& v) {
    return {v.support_inner, v.support_outer};
}

}  // namespace pmlab
