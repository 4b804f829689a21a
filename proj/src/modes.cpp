#include "pmlab/modes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmlab {

int multiplicity(const ModelParams& params, int l) {
    if (l < 0) throw std::invalid_argument("multiplicity: l >= 0 required");
    const int N = params.dim;
    if (l == 0) return 1;
    if (N == 1) return l == 1 ? 1 : 0;
    // (N+l-3)! (N+2l-2) / (l! (N-2)!)
    double v = static_cast<double>(N + 2 * l - 2);
    // (N+l-3)! / (l! (N-2)!) = prod_{j=1..l-1} (N-2+j) / (l * (l-1)!) ... use
    // lgamma for robustness at moderate l.
    double lg = std::lgamma(N + l - 2.0) - std::lgamma(l + 1.0) -
                std::lgamma(N - 1.0);
    return static_cast<int>(std::llround(v * std::exp(lg)));
}

double eigenvalue(const ModelParams& params, int l, int k) {
    if (l < 0 || k < 0)
        throw std::invalid_argument("eigenvalue: l, k >= 0 required");
    if (params.dim == 1 && l >= 2)
        throw std::invalid_argument("eigenvalue: N = 1 admits only l in {0,1}");
    return (params.sigma + 1.0) * (l + 2.0 * k) +
           k * (2.0 * k + 2.0 * l + params.dim - 2.0);
}

std::vector<double> radial_eigenpoly(const ModelParams& params, int l, int k) {
    if (l < 0 || k < 0)
        throw std::invalid_argument("radial_eigenpoly: l, k >= 0 required");
    if (params.dim == 1 && l >= 2)
        throw std::invalid_argument("radial_eigenpoly: invalid index for N=1");
    const double b = params.sigma + l + 0.5 * params.dim + k;
    const double c = l + 0.5 * params.dim;
    std::vector<double> out(k + 1, 0.0);
    out[0] = 1.0;
    // c_{j} = c_{j-1} * (-k+j-1)(b+j-1) / ((c+j-1) j)
    for (int j = 1; j <= k; ++j)
        out[j] = out[j - 1] * (-k + j - 1.0) * (b + j - 1.0) /
                 ((c + j - 1.0) * j);
    return out;
}

std::vector<double> apply_operator_radial(const ModelParams& params, int l,
                                          const std::vector<double>& coeffs) {
    // For w = f(u) r^l Y_l with u = r^2:
    //   L w = [ -1/2 (1-u)(4u f'' + (4l+2N) f') + (sigma+1)(2u f' + l f) ] r^l Y_l
    // which in coefficient space is upper bidiagonal.
    const int N = params.dim;
    const double sp1 = params.sigma + 1.0;
    const int d = static_cast<int>(coeffs.size()) - 1;
    std::vector<double> out(coeffs.size(), 0.0);
    for (int i = 0; i <= d; ++i) {
        double diag = 2.0 * i * (i - 1.0) + (2.0 * l + N) * i +
                      sp1 * (2.0 * i + l);
        out[i] += diag * coeffs[i];
        if (i + 1 <= d) {
            double super = -(i + 1.0) * (2.0 * i + 2.0 * l + N);
            out[i] += super * coeffs[i + 1];
        }
    }
    return out;
}

double poly_eval(const std::vector<double>& c, double u) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * u + c[i];
    return v;
}

double poly_deriv_eval(const std::vector<double>& c, double u) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) v = v * u + c[i] * i;
    return v;
}

namespace {

double angular_value(int l, int n, double angular, Sector sector) {
    switch (sector) {
        case Sector::radial:
            return 1.0;
        case Sector::full_1d:
            return (l % 2 == 0) ? 1.0 : angular;  // sign^l
        case Sector::full_2d:
            if (l == 0) return 1.0;
            return n == 1 ? std::cos(l * angular) : std::sin(l * angular);
    }
    return 1.0;
}

// d/dphi of the angular factor, divided by l (2D only)
double angular_deriv_over_l(int l, int n, double angular) {
    if (l == 0) return 0.0;
    return n == 1 ? -std::sin(l * angular) : std::cos(l * angular);
}

}  // namespace

double EigenMode::value(double r, double angular, Sector sector) const {
    const double u = r * r;
    return norm_const * poly_eval(radial_coeffs, u) *
           std::pow(r, index.l) * angular_value(index.l, index.n, angular, sector);
}

double EigenMode::deriv_radial(double r, double angular, Sector sector) const {
    const double u = r * r;
    const int l = index.l;
    const double q = poly_eval(radial_coeffs, u);
    const double qp = poly_deriv_eval(radial_coeffs, u);
    // d/dr [q(r^2) r^l] = 2 r^{l+1} q' + l r^{l-1} q
    double radial = 2.0 * std::pow(r, l + 1) * qp;
    if (l > 0) radial += l * std::pow(r, l - 1) * q;
    return norm_const * radial * angular_value(l, index.n, angular, sector);
}

double EigenMode::deriv_tangential(double r, double angular,
                                   Sector sector) const {
    if (sector != Sector::full_2d || index.l == 0) return 0.0;
    const int l = index.l;
    const double q = poly_eval(radial_coeffs, r * r);
    // (1/r) d/dphi [q r^l T(phi)] = q r^{l-1} l T'(phi)/l * l ... = l q r^{l-1} T'/l
    return norm_const * l * std::pow(r, l - 1) * q *
           angular_deriv_over_l(l, index.n, angular);
}

int ModeSet::find(const EigenIndex& idx) const {
    for (std::size_t i = 0; i < modes.size(); ++i)
        if (modes[i].index == idx) return static_cast<int>(i);
    return -1;
}

ModeSet build_mode_set(const ModelParams& params, Sector sector,
                       int max_degree, int l_max) {
    if (max_degree < 0)
        throw std::invalid_argument("build_mode_set: max_degree >= 0");
    if (sector == Sector::full_1d && params.dim != 1)
        throw std::invalid_argument("build_mode_set: full_1d requires N = 1");
    if (sector == Sector::full_2d && params.dim != 2)
        throw std::invalid_argument("build_mode_set: full_2d requires N = 2");

    ModeSet ms;
    ms.params = params;
    ms.sector = sector;
    ms.max_degree = max_degree;

    int lmax = 0;
    switch (sector) {
        case Sector::radial: lmax = 0; break;
        case Sector::full_1d: lmax = std::min(1, max_degree); break;
        case Sector::full_2d:
            lmax = (l_max >= 0) ? std::min(l_max, max_degree) : max_degree;
            break;
    }
    ms.l_max = lmax;

    for (int l = 0; l <= lmax; ++l) {
        const int mult = multiplicity(params, l);
        if (mult == 0) continue;
        const int n_count = (sector == Sector::radial) ? 1 : mult;
        for (int k = 0; 2 * k + l <= max_degree; ++k) {
            for (int n = 1; n <= n_count; ++n) {
                EigenMode mode;
                mode.index = {l, n, k};
                mode.lambda = eigenvalue(params, l, k);
                mode.radial_coeffs = radial_eigenpoly(params, l, k);
                mode.degree = l + 2 * k;
                mode.norm_const = 1.0;
                ms.modes.push_back(mode);
            }
        }
    }

    std::sort(ms.modes.begin(), ms.modes.end(),
              [](const EigenMode& a, const EigenMode& b) {
                  if (a.lambda != b.lambda) return a.lambda < b.lambda;
                  if (a.index.l != b.index.l) return a.index.l < b.index.l;
                  if (a.index.n != b.index.n) return a.index.n < b.index.n;
                  return a.index.k < b.index.k;
              });

    // Normalize with a quadrature that integrates the Gram entries exactly:
    // psi_i psi_j has u-degree <= max_degree and angular degree <= 2 l_max.
    const int q_order = max_degree + 2;
    const int ang = (sector == Sector::full_2d)
                        ? std::max(8, 2 * lmax + 4)
                        : 0;
    Grid grid = build_grid(params, sector, q_order, ang);
    for (auto& mode : ms.modes) {
        double nrm2 = 0.0;
        for (const auto& node : grid.nodes) {
            double ang_tag = (sector == Sector::full_1d) ? node.sign : node.phi;
            double v = mode.value(node.r, ang_tag, sector);
            nrm2 += node.w_sigma * v * v;
        }
        if (!(nrm2 > 0.0))
            throw std::runtime_error(
                "build_mode_set: quadrature order insufficient for Gram "
                "integrals");
        mode.norm_const = 1.0 / std::sqrt(nrm2);
    }
    return ms;
}

BasisTables::BasisTables(const ModeSet& ms, const Grid& g)
    : n_modes(ms.size()), n_nodes(g.size()) {
    const std::size_t M = ms.size(), G = g.size();
    val.resize(M * G);
    dr.resize(M * G);
    dt.resize(M * G);
    w_sigma.resize(G);
    for (std::size_t j = 0; j < G; ++j) w_sigma[j] = g.nodes[j].w_sigma;
    for (std::size_t i = 0; i < M; ++i) {
        const auto& mode = ms.modes[i];
        for (std::size_t j = 0; j < G; ++j) {
            const auto& node = g.nodes[j];
            double ang =
                (g.sector == Sector::full_1d) ? node.sign : node.phi;
            val[i * G + j] = mode.value(node.r, ang, g.sector);
            dr[i * G + j] = mode.deriv_radial(node.r, ang, g.sector);
            dt[i * G + j] = mode.deriv_tangential(node.r, ang, g.sector);
        }
    }
}

double SpectralField::l2_norm() const {
    double s = 0.0;
    for (double c : coeffs) s += c * c;
    return std::sqrt(s);
}

double SpectralField::h1_seminorm(const ModeSet& ms) const {
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        s += ms.modes[i].lambda * coeffs[i] * coeffs[i];
    return std::sqrt(std::max(0.0, s));
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
}
SpectralField& SpectralField::operator-=(const SpectralField& o) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
}
SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coeffs) c *= s;
    return *this;
}
SpectralField operator+(SpectralField a, const SpectralField& b) {
    a += b;
    return a;
}
SpectralField operator-(SpectralField a, const SpectralField& b) {
    a -= b;
    return a;
}
SpectralField operator*(double s, SpectralField a) {
    a *= s;
    return a;
}

void evaluate_field(const BasisTables& tables, const SpectralField& f,
                    std::vector<double>& out_val) {
    const std::size_t M = tables.n_modes, G = tables.n_nodes;
    if (f.size() != M)
        throw std::invalid_argument("evaluate_field: coefficient count");
    out_val.assign(G, 0.0);
    for (std::size_t i = 0; i < M; ++i) {
        const double c = f[i];
        if (c == 0.0) continue;
        const double* row = tables.val.data() + i * G;
        for (std::size_t j = 0; j < G; ++j) out_val[j] += c * row[j];
    }
}

void evaluate_field_gradient(const BasisTables& tables, const SpectralField& f,
                             std::vector<double>& out_dr,
                             std::vector<double>& out_dt) {
    const std::size_t M = tables.n_modes, G = tables.n_nodes;
    if (f.size() != M)
        throw std::invalid_argument("evaluate_field_gradient: coefficients");
    out_dr.assign(G, 0.0);
    out_dt.assign(G, 0.0);
    for (std::size_t i = 0; i < M; ++i) {
        const double c = f[i];
        if (c == 0.0) continue;
        const double* rr = tables.dr.data() + i * G;
        const double* rt = tables.dt.data() + i * G;
        for (std::size_t j = 0; j < G; ++j) {
            out_dr[j] += c * rr[j];
            out_dt[j] += c * rt[j];
        }
    }
}

SpectralField project(const BasisTables& tables, const ModeSet& ms,
                      const std::vector<double>& samples,
                      const std::function<bool(const EigenIndex&)>& subset) {
    const std::size_t M = tables.n_modes, G = tables.n_nodes;
    if (samples.size() != G)
        throw std::invalid_argument("project: sample/grid size mismatch");
    if (ms.size() != M)
        throw std::invalid_argument("project: mode set/table mismatch");
    SpectralField out(M);
    for (std::size_t i = 0; i < M; ++i) {
        if (!subset(ms.modes[i].index)) continue;
        const double* row = tables.val.data() + i * G;
        double s = 0.0;
        for (std::size_t j = 0; j < G; ++j)
            s += tables.w_sigma[j] * row[j] * samples[j];
        out[i] = s;
    }
    return out;
}

SpectralField project_all(const BasisTables& tables, const ModeSet& ms,
                          const std::vector<double>& samples) {
    return project(tables, ms, samples,
                   [](const EigenIndex&) { return true; });
}

SpectralField operator_apply(const ModeSet& ms, const SpectralField& f) {
    SpectralField out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = ms.modes[i].lambda * f[i];
    return out;
}

SpectralField heat_semigroup(const ModeSet& ms, const SpectralField& f,
                             double t) {
    if (t < 0.0)
        throw std::domain_error("heat_semigroup: t >= 0 required");
    SpectralField out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = std::exp(-ms.modes[i].lambda * t) * f[i];
    return out;
}

double eval_mode_at(const ModeSet& ms, const EigenMode& mode,
                    const std::vector<double>& z) {
    if (static_cast<int>(z.size()) != ms.params.dim)
        throw std::invalid_argument("eval_mode_at: point dimension");
    double r2 = 0.0;
    for (double c : z) r2 += c * c;
    if (r2 > 1.0 + 1e-12)
        throw std::domain_error("eval_mode_at: point outside the closed ball");
    double r = std::sqrt(std::min(r2, 1.0));
    double ang = 0.0;
    if (ms.sector == Sector::full_1d)
        ang = (z[0] >= 0.0) ? 1.0 : -1.0;
    else if (ms.sector == Sector::full_2d)
        ang = std::atan2(z[1], z[0]);
    return mode.value(r, ang, ms.sector);
}

double eval_field_at(const ModeSet& ms, const SpectralField& f,
                     const std::vector<double>& z) {
    double s = 0.0;
    for (std::size_t i = 0; i < ms.size(); ++i)
        if (f[i] != 0.0) s += f[i] * eval_mode_at(ms, ms.modes[i], z);
    return s;
}

PointEval eval_field_polar(const ModeSet& ms, const SpectralField& f, double r,
                           double angular) {
    PointEval out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (f[i] == 0.0) continue;
        const auto& mode = ms.modes[i];
        out.value += f[i] * mode.value(r, angular, ms.sector);
        out.dr += f[i] * mode.deriv_radial(r, angular, ms.sector);
        out.dt += f[i] * mode.deriv_tangential(r, angular, ms.sector);
    }
    return out;
}

double heat_kernel(const ModeSet& ms, double t, const std::vector<double>& z1,
                   const std::vector<double>& z2) {
    if (!(t > 0.0)) throw std::domain_error("heat_kernel: t > 0 required");
    double s = 0.0;
    for (const auto& mode : ms.modes)
        s += std::exp(-mode.lambda * t) *
             (eval_mode_at(ms, mode, z1) * eval_mode_at(ms, mode, z2));
    return s;
}

}  // namespace pmlab
