#pragma once

#include <cmath>
#include <stdexcept>

namespace pmlab {

// Model parameters for the confined porous medium flow in perturbation
// variables.  The exponent sigma fixes the weight rho^sigma on the unit
// ball; beta and gamma are the derived constants that show up in the
// perturbation equation and in the dilation eigenfunction.
struct ModelParams {
    int dim = 1;           // spatial dimension N >= 1
    double sigma = 1.0;    // sigma in (-1, inf)

    ModelParams() = default;
    ModelParams(int N, double sigma_in) : dim(N), sigma(sigma_in) {
        if (N < 1)
            throw std::invalid_argument("ModelParams: dimension must be >= 1");
        if (!(sigma_in > -1.0))
            throw std::invalid_argument("ModelParams: sigma must be > -1");
    }

    // beta = N + 2*sigma + 1
    double beta() const { return dim + 2.0 * sigma + 1.0; }

    // m = (sigma+2)/(sigma+1) > 1
    double m() const { return (sigma + 2.0) / (sigma + 1.0); }

    // gamma = (2(sigma+1)+N)/N; the dilation mode is 1 - gamma*|z|^2
    double gamma() const { return (2.0 * (sigma + 1.0) + dim) / dim; }
};

// rho(z) = (1 - |z|^2)/2, evaluated from |z|^2
inline double rho_from_r2(double r2) { return 0.5 * (1.0 - r2); }

// rho at a point of the closed unit ball; |z| > 1 + 1e-12 is a domain error.
template <typename Vec>
double rho(const Vec& z) {
    double r2 = 0.0;
    for (int i = 0; i < static_cast<int>(z.size()); ++i) r2 += z[i] * z[i];
    if (r2 > 1.0 + 1e-12)
        throw std::domain_error("rho: point outside the closed unit ball");
    return rho_from_r2(r2);
}

// Surface measure of the unit sphere S^{N-1}; S^0 carries measure 2.
inline double sphere_area(int N) {
    if (N < 1) throw std::invalid_argument("sphere_area: N >= 1 required");
    // 2 pi^{N/2} / Gamma(N/2)
    return 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
}

}  // namespace pmlab
