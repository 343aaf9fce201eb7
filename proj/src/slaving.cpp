#include "wkbflow/slaving.hpp"

#include <sstream>

namespace wkbflow {

namespace {

constexpr std::complex<double> imag_unit{0.0, 1.0};
using Cplx = std::complex<double>;

/// Pointwise geometry shared by the fast-operator formulas.
struct PointCtx {
    double rho;     // rho_bar
    Vec2 b;         // p_bar / rho_bar
    Vec2 e;         // grad S / |grad S|
    double k;       // |grad S|
    double doppler; // c_s - e . b, the Doppler-shifted phase speed
};

class SlowGeometry {
public:
    SlowGeometry(const SlowMeanFields& slow, const IsothermalParams& params,
                 const char* who)
        : grid_(slow.rho_bar.grid()), cs_(params.c_s) {
        gs_ = slow.S.gradient();
        gnorm_ = slow.S.gradient_norm();
        const double floor_k = grad_s_floor(grid_);
        for (int ix = 0; ix < grid_.points(); ++ix) {
            if (gnorm_[ix] < floor_k) {
                std::ostringstream msg;
                msg << who << ": min |grad S| = " << gnorm_[ix] << " < floor " << floor_k
                    << " at index " << ix;
                throw VanishingPhaseGradient(msg.str());
            }
            if (!(slow.rho_bar[ix] > 0.0)) {
                std::ostringstream msg;
                msg << who << ": rho_bar = " << slow.rho_bar[ix] << " at index " << ix;
                throw NonPositiveDensity(msg.str());
            }
        }
        rho_ = &slow.rho_bar;
        p_ = &slow.p_bar;
    }

    PointCtx at(int ix, const char* who) const {
        PointCtx c;
        c.rho = (*rho_)[ix];
        c.k = gnorm_[ix];
        double eb = 0.0;
        for (int a = 0; a < grid_.dim; ++a) {
            c.b[a] = (*p_)[a][ix] / c.rho;
            c.e[a] = gs_[a][ix] / c.k;
            eb += c.e[a] * c.b[a];
        }
        if (grid_.dim == 1) { c.b[1] = 0.0; c.e[1] = 0.0; }
        c.doppler = cs_ - eb;
        if (std::abs(c.doppler) < 1e-6 * cs_) {
            std::ostringstream msg;
            msg << who << ": |c_s - e_k . p_bar/rho_bar| = " << std::abs(c.doppler)
                << " below floor " << 1e-6 * cs_ << " at index " << ix;
            throw ResonantDenominator(msg.str());
        }
        return c;
    }

    const VectorField& grad_s_field() const { return gs_; }
    const ScalarField& grad_norm() const { return gnorm_; }

private:
    TorusGrid grid_;
    double cs_;
    VectorField gs_;
    ScalarField gnorm_;
    const ScalarField* rho_;
    const VectorField* p_;
};

/// Projection tensor T = (2 I - e e + (I - e e) . (b e) / (c_s - e.b)) / 2.
void tensor_T(const PointCtx& c, int dim, double T[2][2]) {
    double bperp[2] = {0.0, 0.0};
    double be = 0.0;
    for (int a = 0; a < dim; ++a) be += c.b[a] * c.e[a];
    for (int a = 0; a < dim; ++a) bperp[a] = c.b[a] - be * c.e[a];
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            double t = 2.0 * (a == b ? 1.0 : 0.0) - c.e[a] * c.e[b] +
                       bperp[a] * c.e[b] / c.doppler;
            T[a][b] = 0.5 * t;
        }
}

/// Matrix I + b e / (c_s - e.b) entering the alpha block.
void tensor_M1(const PointCtx& c, int dim, double M[2][2]) {
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            M[a][b] = (a == b ? 1.0 : 0.0) + c.b[a] * c.e[b] / c.doppler;
}

/// Coefficient vector of the chi block:
/// b + grad chi_bar + ((b . grad chi_bar + |b|^2 + c_s^2)/(c_s - e.b)) e.
void chi_weight(const PointCtx& c, const Vec2& grad_chi, double cs, int dim, double w[2]) {
    double bg = 0.0, b2 = 0.0;
    for (int a = 0; a < dim; ++a) {
        bg += c.b[a] * grad_chi[a];
        b2 += c.b[a] * c.b[a];
    }
    const double s = (bg + b2 + cs * cs) / c.doppler;
    for (int a = 0; a < dim; ++a) w[a] = c.b[a] + grad_chi[a] + s * c.e[a];
}

void require_zero_mean(const LoopField& f, const char* who) {
    for (int ix = 0; ix < f.grid().points(); ++ix)
        if (std::abs(f.coeff(ix, 0)) > tol_mean) {
            std::ostringstream msg;
            msg << who << ": |angle mean| = " << std::abs(f.coeff(ix, 0))
                << " at x-index " << ix;
            throw MeanNotZero(msg.str());
        }
}

} // namespace

FastFields apply_A(const SlowMeanFields& slow, const IsothermalParams& params,
                   const FastFields& y) {
    const TorusGrid& g = slow.rho_bar.grid();
    const int dim = g.dim, nh = g.harmonics();
    const double cs = params.c_s;
    SlowGeometry geo(slow, params, "apply_A");

    VectorField grad_chi(g);
    for (int a = 0; a < dim; ++a) grad_chi[a] = spectral_deriv(slow.chi_bar, a);

    FastFields out(g);
    for (int ix = 0; ix < g.points(); ++ix) {
        const PointCtx c = geo.at(ix, "apply_A");
        double T[2][2], M1[2][2], w[2];
        tensor_T(c, dim, T);
        tensor_M1(c, dim, M1);
        chi_weight(c, {grad_chi[0][ix], dim == 2 ? grad_chi[1][ix] : 0.0}, cs, dim, w);

        // N = c_s k (I + e e - bperp e / (c_s - e.b)) is the inverse of T/(c_s k).
        double N[2][2];
        {
            double be = 0.0;
            for (int a = 0; a < dim; ++a) be += c.b[a] * c.e[a];
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) {
                    double bperp_a = c.b[a] - be * c.e[a];
                    N[a][b] = cs * c.k *
                              ((a == b ? 1.0 : 0.0) + c.e[a] * c.e[b] -
                               bperp_a * c.e[b] / c.doppler);
                }
        }

        for (int m = 0; m < nh; ++m) {
            const Cplx dth = imag_unit * double(m);
            Cplx ph[2] = {y.p_hat[0].coeff(ix, m),
                          dim == 2 ? y.p_hat[1].coeff(ix, m) : Cplx{0.0, 0.0}};
            for (int a = 0; a < dim; ++a) {
                Cplx acc = cs * c.k * dth * y.alpha_hat[a].coeff(ix, m);
                for (int b = 0; b < dim; ++b) acc -= M1[a][b] * ph[b] / c.rho;
                out.alpha_hat[a].coeff(ix, m) = acc;

                Cplx pacc{0.0, 0.0};
                for (int b = 0; b < dim; ++b) pacc += N[a][b] * (dth * ph[b]);
                out.p_hat[a].coeff(ix, m) = pacc;
            }
            Cplx xacc = cs * c.k * dth * y.chi_hat.coeff(ix, m);
            for (int a = 0; a < dim; ++a) xacc -= w[a] * ph[a] / c.rho;
            out.chi_hat.coeff(ix, m) = xacc;
        }
    }
    return out;
}

FastFields invert_A(const SlowMeanFields& slow, const IsothermalParams& params,
                    const FastFields& dy) {
    const TorusGrid& g = slow.rho_bar.grid();
    const int dim = g.dim, nh = g.harmonics();
    const double cs = params.c_s;
    SlowGeometry geo(slow, params, "invert_A");

    for (int a = 0; a < dim; ++a) {
        require_zero_mean(dy.alpha_hat[a], "invert_A alpha");
        require_zero_mean(dy.p_hat[a], "invert_A p");
    }
    require_zero_mean(dy.chi_hat, "invert_A chi");

    VectorField grad_chi(g);
    for (int a = 0; a < dim; ++a) grad_chi[a] = spectral_deriv(slow.chi_bar, a);

    FastFields out(g);
    for (int ix = 0; ix < g.points(); ++ix) {
        const PointCtx c = geo.at(ix, "invert_A");
        double T[2][2], M1[2][2], w[2];
        tensor_T(c, dim, T);
        tensor_M1(c, dim, M1);
        chi_weight(c, {grad_chi[0][ix], dim == 2 ? grad_chi[1][ix] : 0.0}, cs, dim, w);
        const double csk = cs * c.k;

        for (int m = 1; m < nh; ++m) {
            const Cplx anti = 1.0 / (imag_unit * double(m));  // one antiderivative
            const Cplx anti2 = anti * anti;
            Cplx dp[2] = {dy.p_hat[0].coeff(ix, m),
                          dim == 2 ? dy.p_hat[1].coeff(ix, m) : Cplx{0.0, 0.0}};
            Cplx Tdp[2] = {Cplx{0.0, 0.0}, Cplx{0.0, 0.0}};
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) Tdp[a] += T[a][b] * dp[b];

            for (int a = 0; a < dim; ++a) {
                out.p_hat[a].coeff(ix, m) = Tdp[a] * anti / csk;

                Cplx acc = dy.alpha_hat[a].coeff(ix, m) * anti / csk;
                for (int b = 0; b < dim; ++b)
                    acc += M1[a][b] * Tdp[b] * anti2 / (csk * csk * c.rho);
                out.alpha_hat[a].coeff(ix, m) = acc;
            }
            Cplx xacc = dy.chi_hat.coeff(ix, m) * anti / csk;
            for (int a = 0; a < dim; ++a)
                xacc += w[a] * Tdp[a] * anti2 / (csk * csk * c.rho);
            out.chi_hat.coeff(ix, m) = xacc;
        }
    }
    return out;
}

FastFields slaving_leading(const SlowMeanFields& slow, const IsothermalParams& params,
                           const LoopField& rho_hat) {
    const TorusGrid& g = slow.rho_bar.grid();
    const int dim = g.dim;
    const double cs = params.c_s;
    SlowGeometry geo(slow, params, "slaving");
    require_zero_mean(rho_hat, "slaving rho_hat");

    VectorField grad_chi(g);
    for (int a = 0; a < dim; ++a) grad_chi[a] = spectral_deriv(slow.chi_bar, a);

    ScalarField inv_rho(g);
    for (int ix = 0; ix < g.points(); ++ix) inv_rho[ix] = 1.0 / slow.rho_bar[ix];
    LoopField anti = theta_antiderivative(scale_by(rho_hat, inv_rho)); // I[rho_hat/rho_bar]

    FastFields out(g);
    for (int ix = 0; ix < g.points(); ++ix) {
        const PointCtx c = geo.at(ix, "slaving");
        double eg = 0.0, eb = 0.0;
        for (int a = 0; a < dim; ++a) {
            eg += c.e[a] * grad_chi[a][ix];
            eb += c.e[a] * c.b[a];
        }
        const int nh = g.harmonics();
        for (int m = 0; m < nh; ++m) {
            const Cplx av = anti.coeff(ix, m);
            const Cplx rh = rho_hat.coeff(ix, m);
            for (int a = 0; a < dim; ++a) {
                out.alpha_hat[a].coeff(ix, m) = c.e[a] / c.k * av;
                out.p_hat[a].coeff(ix, m) = (c.b[a] + cs * c.e[a]) * rh;
            }
            out.chi_hat.coeff(ix, m) = (eg + eb - cs) / c.k * av;
        }
    }
    return out;
}

LoopField lambda_hat(const SlowMeanFields& slow, const IsothermalParams& params,
                     const LoopField& rho_hat, const VectorLoopField& p_hat) {
    const TorusGrid& g = slow.rho_bar.grid();
    const int dim = g.dim, nh = g.harmonics();
    SlowGeometry geo(slow, params, "lambda_hat");

    LoopField out = rho_hat;
    for (int ix = 0; ix < g.points(); ++ix) {
        const PointCtx c = geo.at(ix, "lambda_hat");
        // Denominator c_s |grad S| - p_bar . grad S / rho_bar = k (c_s - e.b).
        const double denom = c.k * c.doppler;
        for (int m = 0; m < nh; ++m) {
            Cplx acc{0.0, 0.0};
            for (int a = 0; a < dim; ++a)
                acc += p_hat[a].coeff(ix, m) * (c.e[a] * c.k);
            out.coeff(ix, m) += acc / denom;
        }
    }
    return out;
}

double l2(const LoopField& f) {
    // Parseval: mean over x of fint f^2 dtheta.
    const int nh = f.grid().harmonics();
    double s = 0.0;
    for (int ix = 0; ix < f.grid().points(); ++ix) {
        s += std::norm(f.coeff(ix, 0));
        for (int m = 1; m < nh; ++m) s += 2.0 * std::norm(f.coeff(ix, m));
    }
    return std::sqrt(s / f.grid().points());
}

double fast_norm(const FastFields& y) {
    double s = 0.0;
    for (int a = 0; a < y.alpha_hat.dim(); ++a) {
        const double na = l2(y.alpha_hat[a]);
        const double np = l2(y.p_hat[a]);
        s += na * na + np * np;
    }
    const double nc = l2(y.chi_hat);
    return std::sqrt(s + nc * nc);
}

} // namespace wkbflow
