#include "wkbflow/loop_field.hpp"

#include "wkbflow/fft.hpp"

namespace wkbflow {

LoopField LoopField::from_values(const TorusGrid& g, const std::vector<double>& vals) {
    LoopField out(g);
    const int nt = g.n_theta, nh = g.harmonics();
    for (int ix = 0; ix < g.points(); ++ix) {
        fft::r2c(nt, vals.data() + static_cast<size_t>(ix) * nt, &out.coeff(ix, 0));
        out.coeff(ix, nh - 1) = 0.0; // Nyquist pinned
    }
    return out;
}

LoopField LoopField::from_scalar(const ScalarField& f) {
    LoopField out(f.grid());
    for (int ix = 0; ix < f.grid().points(); ++ix) out.coeff(ix, 0) = f[ix];
    return out;
}

LoopField LoopField::sample(const TorusGrid& g,
                            const std::function<double(double, double, double)>& f) {
    std::vector<double> vals(static_cast<size_t>(g.points()) * g.n_theta);
    for (int i = 0; i < g.n[0]; ++i)
        for (int j = 0; j < g.n[1]; ++j)
            for (int t = 0; t < g.n_theta; ++t)
                vals[static_cast<size_t>(g.index(i, j)) * g.n_theta + t] =
                    f(g.x(0, i), g.dim == 2 ? g.x(1, j) : 0.0, g.theta(t));
    return from_values(g, vals);
}

std::vector<double> LoopField::values() const {
    const int nt = grid_.n_theta;
    std::vector<double> vals(static_cast<size_t>(grid_.points()) * nt);
    for (int ix = 0; ix < grid_.points(); ++ix)
        fft::c2r(nt, &h_[static_cast<size_t>(ix) * grid_.harmonics()],
                 vals.data() + static_cast<size_t>(ix) * nt);
    return vals;
}

double LoopField::value_at(int ix, double theta) const {
    const int nh = grid_.harmonics();
    double v = coeff(ix, 0).real();
    for (int m = 1; m < nh; ++m) {
        Cplx ph{std::cos(m * theta), std::sin(m * theta)};
        v += 2.0 * (coeff(ix, m) * ph).real();
    }
    return v;
}

double linf(const LoopField& f) {
    std::vector<double> vals = f.values();
    double m = 0.0;
    for (double v : vals) m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(const LoopField& f) {
    for (const auto& c : f.data())
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

double loop_min(const LoopField& f, int* arg_ix, int* arg_j) {
    std::vector<double> vals = f.values();
    const int nt = f.grid().n_theta;
    double m = vals[0];
    size_t arg = 0;
    for (size_t k = 1; k < vals.size(); ++k)
        if (vals[k] < m) { m = vals[k]; arg = k; }
    if (arg_ix) *arg_ix = static_cast<int>(arg / nt);
    if (arg_j) *arg_j = static_cast<int>(arg % nt);
    return m;
}

double fluctuation_norm(const LoopField& f) {
    double m = 0.0;
    const int nh = f.grid().harmonics();
    for (int ix = 0; ix < f.grid().points(); ++ix)
        for (int h = 1; h < nh; ++h) m = std::max(m, std::abs(f.coeff(ix, h)));
    return m;
}

} // namespace wkbflow
