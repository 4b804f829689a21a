#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pmlab/params.hpp"
#include "pmlab/quadrature.hpp"

namespace pmlab {

// Index (l, n, k) of an eigenmode: degree-l spherical harmonic (n counts the
// harmonic within its multiplicity), k the radial excitation.
struct EigenIndex {
    int l = 0;
    int n = 1;
    int k = 0;

    bool operator==(const EigenIndex& o) const {
        return l == o.l && n == o.n && k == o.k;
    }
};

// Number of independent spherical harmonics of degree l on S^{N-1}.
// Returns 0 for l >= 2 when N = 1 (no such harmonics on two points).
int multiplicity(const ModelParams& params, int l);

// lambda_{lk} = (sigma+1)(l+2k) + k(2k+2l+N-2)
double eigenvalue(const ModelParams& params, int l, int k);

// Coefficients c_0..c_k of the terminating hypergeometric series
// F(-k, sigma+l+N/2+k; l+N/2; u) as a polynomial in u = r^2; c_0 = 1.
std::vector<double> radial_eigenpoly(const ModelParams& params, int l, int k);

// Applies L = -rho*Laplace + (sigma+1) z.grad to a polynomial
// f(r^2) r^l Y_l, expressed by the coefficients of f.  The result lives in
// the same sector and has the same degree.
std::vector<double> apply_operator_radial(const ModelParams& params, int l,
                                          const std::vector<double>& coeffs);

// Evaluation helpers for polynomials in u with Horner.
double poly_eval(const std::vector<double>& c, double u);
double poly_deriv_eval(const std::vector<double>& c, double u);

// One eigenmode.  The angular factor is fixed by the sector:
//   radial:   1
//   full_1d:  sign^l (Y(+-1) = (+-1)^l)
//   full_2d:  cos(l phi) for n=1, sin(l phi) for n=2 (l >= 1)
struct EigenMode {
    EigenIndex index;
    double lambda = 0.0;
    std::vector<double> radial_coeffs;  // c_0..c_k, c_0 = 1
    double norm_const = 1.0;            // unit L^2_sigma norm
    int degree = 0;                     // l + 2k

    // Value and (radial, tangential/r) derivative channels at (r, angular).
    // For 1D the angular tag is the sign of z; for 2D it is phi.
    double value(double r, double angular, Sector sector) const;
    double deriv_radial(double r, double angular, Sector sector) const;
    double deriv_tangential(double r, double angular, Sector sector) const;
};

struct ModeSet {
    ModelParams params;
    Sector sector = Sector::radial;
    int max_degree = 0;
    int l_max = 0;
    std::vector<EigenMode> modes;

    std::size_t size() const { return modes.size(); }
    const EigenMode& operator[](std::size_t i) const { return modes[i]; }

    // Index of the first mode with the given (l, n, k); -1 if absent.
    int find(const EigenIndex& idx) const;
};

// Assembles the sector's modes up to max_degree (and |l| <= l_max in 2D),
// normalized to unit L^2_sigma norm, sorted by (lambda, l, n, k).
// Throws if the internally chosen quadrature cannot represent the Gram
// integrals exactly.
ModeSet build_mode_set(const ModelParams& params, Sector sector,
                       int max_degree, int l_max = -1);

// Precomputed mode values and derivative channels on a grid, row-major
// [mode][node].  Self-contained (carries the node weights), so the owning
// structures stay freely copyable.
struct BasisTables {
    std::size_t n_modes = 0;
    std::size_t n_nodes = 0;
    std::vector<double> val;
    std::vector<double> dr;
    std::vector<double> dt;
    std::vector<double> w_sigma;  // mu_sigma node weights

    BasisTables() = default;
    BasisTables(const ModeSet& ms, const Grid& g);

    double v(std::size_t i, std::size_t node) const {
        return val[i * n_nodes + node];
    }
    double der_r(std::size_t i, std::size_t node) const {
        return dr[i * n_nodes + node];
    }
    double der_t(std::size_t i, std::size_t node) const {
        return dt[i * n_nodes + node];
    }
};

// A field in the span of a mode set, stored by coefficients.
struct SpectralField {
    std::vector<double> coeffs;

    SpectralField() = default;
    explicit SpectralField(std::size_t n) : coeffs(n, 0.0) {}

    std::size_t size() const { return coeffs.size(); }
    double& operator[](std::size_t i) { return coeffs[i]; }
    double operator[](std::size_t i) const { return coeffs[i]; }

    double l2_norm() const;  // = L^2_sigma norm (orthonormal basis)
    double h1_seminorm(const ModeSet& ms) const;  // |grad .|_{L^2_{sigma+1}}

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

// Samples of the field and its gradient channels on the table's grid.
void evaluate_field(const BasisTables& tables, const SpectralField& f,
                    std::vector<double>& out_val);
void evaluate_field_gradient(const BasisTables& tables, const SpectralField& f,
                             std::vector<double>& out_dr,
                             std::vector<double>& out_dt);

// L^2_sigma projection of grid samples onto a subset of the modes.
SpectralField project(const BasisTables& tables, const ModeSet& ms,
                      const std::vector<double>& samples,
                      const std::function<bool(const EigenIndex&)>& subset);
SpectralField project_all(const BasisTables& tables, const ModeSet& ms,
                          const std::vector<double>& samples);

// Applies L mode-wise (diagonal in the eigenbasis).
SpectralField operator_apply(const ModeSet& ms, const SpectralField& f);

// e^{-tL}: coefficient-wise decay; t < 0 is a domain error.
SpectralField heat_semigroup(const ModeSet& ms, const SpectralField& f,
                             double t);

// Truncated heat kernel G_M(t,z,z') = sum_i e^{-lambda_i t} psi_i(z) psi_i(z').
// Points are given in Cartesian coordinates of length N.
double heat_kernel(const ModeSet& ms, double t, const std::vector<double>& z1,
                   const std::vector<double>& z2);

// Mode value at a Cartesian point (length N, inside the closed ball).
double eval_mode_at(const ModeSet& ms, const EigenMode& mode,
                    const std::vector<double>& z);

// Field value at a Cartesian point.
double eval_field_at(const ModeSet& ms, const SpectralField& f,
                     const std::vector<double>& z);

// Field value and gradient channels (radial, tangential) at (r, angular tag).
struct PointEval {
    double value = 0.0;
    double dr = 0.0;
    double dt = 0.0;
};
PointEval eval_field_polar(const ModeSet& ms, const SpectralField& f, double r,
                           double angular);

}  // namespace pmlab
