#pragma once

#include <vector>

#include "pmlab/params.hpp"

namespace pmlab {

// Gauss-Jacobi quadrature for the radial part of mu_sigma on the unit ball.
// After substituting u = r^2, the weight (1-r^2)^sigma/2^sigma * r^{N-1} dr
// becomes a classical Jacobi weight (1-u)^sigma u^{(N-2)/2} on (0,1) up to
// constants.  Nodes and weights come from the symmetric tridiagonal Jacobi
// matrix (Golub-Welsch).
//
// With Q nodes, sums Sum_q weight[q]*g(r[q]) equal
//   int_0^1 g(r) * (0.5*(1-r^2))^sigma * r^{N-1} dr
// exactly (to rounding) whenever g is a polynomial in r^2 of degree <= 2Q-1.
struct RadialQuadrature {
    int order = 0;                 // Q >= 1
    std::vector<double> nodes;     // radii in (0,1), increasing
    std::vector<double> weights;   // positive
};

RadialQuadrature build_radial_quadrature(const ModelParams& params, int order);

// Total measure |B|_sigma of the unit ball under mu_sigma.
double ball_measure(const ModelParams& params, const RadialQuadrature& quad);

// Sector of the discretization / mode set.
enum class Sector { radial, full_1d, full_2d };

// A quadrature grid on the ball for one of the supported sectors.
// Every node carries its radius, angular tag, position and the mu_sigma
// quadrature weight (angular factor included).  Integrals against
// mu_{sigma+1} reuse the same nodes with weights multiplied by rho.
struct GridNode {
    double r = 0.0;       // radius in (0,1)
    double phi = 0.0;     // angle (2D); +-1 stored in sign for 1D
    double sign = 1.0;    // 1D: z = sign*r
    double x = 0.0;       // Cartesian position (x[,y])
    double y = 0.0;
    double w_sigma = 0.0; // mu_sigma weight
    double rho = 0.0;     // rho at the node
};

struct Grid {
    Sector sector = Sector::radial;
    ModelParams params;
    RadialQuadrature radial;
    int angular_order = 1;         // number of angular nodes (2D)
    std::vector<GridNode> nodes;

    std::size_t size() const { return nodes.size(); }
};

// Builds the tensor grid for a sector.  angular_order is used only for
// full_2d (equispaced trapezoid points on the circle, exact for
// trigonometric polynomials of degree < angular_order).
Grid build_grid(const ModelParams& params, Sector sector, int radial_order,
                int angular_order = 0);

// L^2_sigma inner product of two fields sampled on the grid nodes.
double inner_sigma(const Grid& grid, const std::vector<double>& f,
                   const std::vector<double>& g);

// Inner product of gradients against mu_{sigma+1}.  Gradients are given in
// the (radial, tangential) channels used throughout: |grad|^2 = dr^2 + dt^2.
double inner_grad_sigma1(const Grid& grid, const std::vector<double>& f_dr,
                         const std::vector<double>& f_dt,
                         const std::vector<double>& g_dr,
                         const std::vector<double>& g_dt);

// Integral of a sampled field against mu_sigma (resp. mu_{sigma+1}).
double integral_sigma(const Grid& grid, const std::vector<double>& f);
double integral_sigma1(const Grid& grid, const std::vector<double>& f);

}  // namespace pmlab
