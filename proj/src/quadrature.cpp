#include "pmlab/quadrature.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmlab {

namespace {

// Recurrence coefficients of the (monic) Jacobi polynomials for the weight
// (1-x)^alpha (1+x)^beta on [-1,1].
double jacobi_diag(int n, double a, double b) {
    if (n == 0) return (b - a) / (a + b + 2.0);
    double t = 2.0 * n + a + b;
    return (b * b - a * a) / (t * (t + 2.0));
}

double jacobi_offdiag_sq(int n, double a, double b) {
    // b_n^2 for n >= 1
    if (n == 1)
        return 4.0 * (1.0 + a) * (1.0 + b) /
               ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    double t = 2.0 * n + a + b;
    return 4.0 * n * (n + a) * (n + b) * (n + a + b) /
           (t * t * (t + 1.0) * (t - 1.0));
}

}  // namespace

RadialQuadrature build_radial_quadrature(const ModelParams& params, int order) {
    if (order < 1)
        throw std::invalid_argument("build_radial_quadrature: order >= 1");
    const double a = params.sigma;                    // exponent of (1-x)
    const double b = 0.5 * (params.dim - 2.0);        // exponent of (1+x)

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(order, order);
    for (int n = 0; n < order; ++n) {
        T(n, n) = jacobi_diag(n, a, b);
        if (n + 1 < order) {
            double off = std::sqrt(jacobi_offdiag_sq(n + 1, a, b));
            T(n, n + 1) = off;
            T(n + 1, n) = off;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error(
            "build_radial_quadrature: tridiagonal eigensolver failed");

    // mu0 = int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
    const double log_mu0 = (a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                           std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0);
    const double mu0 = std::exp(log_mu0);

    RadialQuadrature quad;
    quad.order = order;
    quad.nodes.resize(order);
    quad.weights.resize(order);
    // Map x in (-1,1) to u = (1+x)/2 in (0,1); r = sqrt(u).  The stored
    // weights absorb the substitution constants:
    // int_0^1 g(r) (0.5(1-r^2))^sigma r^{N-1} dr
    //   = 2^{-(sigma+1)} int_0^1 g(sqrt(u)) (1-u)^sigma u^{(N-2)/2} du
    //   = 2^{-(sigma+1)} 2^{-(a+b+1)} int_{-1}^1 g(...) (1-x)^a (1+x)^b dx
    const double w_factor = std::pow(2.0, -(params.sigma + 1.0)) /
                            std::pow(2.0, a + b + 1.0);
    for (int q = 0; q < order; ++q) {
        double x = eig.eigenvalues()(q);
        double u = 0.5 * (1.0 + x);
        if (!(u > 0.0 && u < 1.0))
            throw std::runtime_error(
                "build_radial_quadrature: node left the open interval");
        double v0 = eig.eigenvectors()(0, q);
        quad.nodes[q] = std::sqrt(u);
        quad.weights[q] = mu0 * v0 * v0 * w_factor;
    }
    // eigenvalues come out sorted ascending, so nodes are increasing
    for (double w : quad.weights)
        if (!(w > 0.0))
            throw std::runtime_error(
                "build_radial_quadrature: nonpositive weight");
    return quad;
}

double ball_measure(const ModelParams& params, const RadialQuadrature& quad) {
    double s = 0.0;
    for (double w : quad.weights) s += w;
    return sphere_area(params.dim) * s;
}

Grid build_grid(const ModelParams& params, Sector sector, int radial_order,
                int angular_order) {
    if (sector == Sector::full_1d && params.dim != 1)
        throw std::invalid_argument("build_grid: full_1d requires N = 1");
    if (sector == Sector::full_2d && params.dim != 2)
        throw std::invalid_argument("build_grid: full_2d requires N = 2");

    Grid grid;
    grid.sector = sector;
    grid.params = params;
    grid.radial = build_radial_quadrature(params, radial_order);

    const auto& rq = grid.radial;
    switch (sector) {
        case Sector::radial: {
            grid.angular_order = 1;
            const double area = sphere_area(params.dim);
            for (int q = 0; q < rq.order; ++q) {
                GridNode n;
                n.r = rq.nodes[q];
                n.x = n.r;
                n.w_sigma = area * rq.weights[q];
                n.rho = rho_from_r2(n.r * n.r);
                grid.nodes.push_back(n);
            }
            break;
        }
        case Sector::full_1d: {
            grid.angular_order = 2;
            for (int q = 0; q < rq.order; ++q) {
                for (double s : {1.0, -1.0}) {
                    GridNode n;
                    n.r = rq.nodes[q];
                    n.sign = s;
                    n.x = s * n.r;
                    n.w_sigma = rq.weights[q];
                    n.rho = rho_from_r2(n.r * n.r);
                    grid.nodes.push_back(n);
                }
            }
            break;
        }
        case Sector::full_2d: {
            if (angular_order < 4)
                throw std::invalid_argument(
                    "build_grid: full_2d needs angular_order >= 4");
            grid.angular_order = angular_order;
            const double dphi = 2.0 * M_PI / angular_order;
            for (int q = 0; q < rq.order; ++q) {
                for (int j = 0; j < angular_order; ++j) {
                    GridNode n;
                    n.r = rq.nodes[q];
                    n.phi = dphi * j;
                    n.x = n.r * std::cos(n.phi);
                    n.y = n.r * std::sin(n.phi);
                    n.w_sigma = rq.weights[q] * dphi;
                    n.rho = rho_from_r2(n.r * n.r);
                    grid.nodes.push_back(n);
                }
            }
            break;
        }
    }
    return grid;
}

double inner_sigma(const Grid& grid, const std::vector<double>& f,
                   const std::vector<double>& g) {
    if (f.size() != grid.size() || g.size() != grid.size())
        throw std::invalid_argument("inner_sigma: field/grid size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        s += grid.nodes[i].w_sigma * f[i] * g[i];
    return s;
}

double inner_grad_sigma1(const Grid& grid, const std::vector<double>& f_dr,
                         const std::vector<double>& f_dt,
                         const std::vector<double>& g_dr,
                         const std::vector<double>& g_dt) {
    if (f_dr.size() != grid.size() || g_dr.size() != grid.size() ||
        f_dt.size() != grid.size() || g_dt.size() != grid.size())
        throw std::invalid_argument(
            "inner_grad_sigma1: field/grid size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& n = grid.nodes[i];
        s += n.w_sigma * n.rho * (f_dr[i] * g_dr[i] + f_dt[i] * g_dt[i]);
    }
    return s;
}

double integral_sigma(const Grid& grid, const std::vector<double>& f) {
    if (f.size() != grid.size())
        throw std::invalid_argument("integral_sigma: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        s += grid.nodes[i].w_sigma * f[i];
    return s;
}

double integral_sigma1(const Grid& grid, const std::vector<double>& f) {
    if (f.size() != grid.size())
        throw std::invalid_argument("integral_sigma1: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        s += grid.nodes[i].w_sigma * grid.nodes[i].rho * f[i];
    return s;
}

}  // namespace pmlab
