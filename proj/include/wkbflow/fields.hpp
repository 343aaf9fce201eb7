#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "wkbflow/grid.hpp"

namespace wkbflow {

/// Real scalar field sampled at the spatial collocation points of a TorusGrid
/// (row-major, axis 0 outermost). Operations return fresh fields; instances
/// are safe to share read-only across threads.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const TorusGrid& g, double fill = 0.0)
        : grid_(g), v_(g.points(), fill) {}

    static ScalarField sample(const TorusGrid& g,
                              const std::function<double(double, double)>& f) {
        ScalarField out(g);
        for (int i = 0; i < g.n[0]; ++i)
            for (int j = 0; j < g.n[1]; ++j)
                out.v_[g.index(i, j)] = f(g.x(0, i), g.dim == 2 ? g.x(1, j) : 0.0);
        return out;
    }

    const TorusGrid& grid() const { return grid_; }
    int size() const { return static_cast<int>(v_.size()); }
    double operator[](int k) const { return v_[k]; }
    double& operator[](int k) { return v_[k]; }
    double at(int i, int j = 0) const { return v_[grid_.index(i, j)]; }
    double& at(int i, int j = 0) { return v_[grid_.index(i, j)]; }
    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

    ScalarField& operator+=(const ScalarField& o) {
        for (int k = 0; k < size(); ++k) v_[k] += o.v_[k];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        for (int k = 0; k < size(); ++k) v_[k] -= o.v_[k];
        return *this;
    }
    ScalarField& operator*=(double s) {
        for (double& x : v_) x *= s;
        return *this;
    }

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }
    friend ScalarField operator*(ScalarField a, double s) { return a *= s; }

private:
    TorusGrid grid_;
    std::vector<double> v_;
};

/// One scalar component per spatial axis.
struct VectorField {
    std::vector<ScalarField> comp;

    VectorField() = default;
    explicit VectorField(const TorusGrid& g, double fill = 0.0) {
        comp.assign(g.dim, ScalarField(g, fill));
    }
    int dim() const { return static_cast<int>(comp.size()); }
    ScalarField& operator[](int a) { return comp[a]; }
    const ScalarField& operator[](int a) const { return comp[a]; }

    VectorField& operator+=(const VectorField& o) {
        for (int a = 0; a < dim(); ++a) comp[a] += o.comp[a];
        return *this;
    }
    VectorField& operator*=(double s) {
        for (auto& c : comp) c *= s;
        return *this;
    }
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator*(double s, VectorField a) { return a *= s; }
};

inline double linf(const ScalarField& f) {
    double m = 0.0;
    for (int k = 0; k < f.size(); ++k) m = std::max(m, std::abs(f[k]));
    return m;
}

inline double l2(const ScalarField& f) {
    double s = 0.0;
    for (int k = 0; k < f.size(); ++k) s += f[k] * f[k];
    return std::sqrt(s / f.size());
}

inline double field_min(const ScalarField& f, int* argmin = nullptr) {
    double m = f[0];
    int arg = 0;
    for (int k = 1; k < f.size(); ++k)
        if (f[k] < m) { m = f[k]; arg = k; }
    if (argmin) *argmin = arg;
    return m;
}

inline bool all_finite(const ScalarField& f) {
    for (int k = 0; k < f.size(); ++k)
        if (!std::isfinite(f[k])) return false;
    return true;
}

/// Mean times domain volume; exact quadrature for trigonometric interpolants.
inline double integral(const ScalarField& f) {
    double s = 0.0;
    for (int k = 0; k < f.size(); ++k) s += f[k];
    return s / f.size() * f.grid().volume();
}

} // namespace wkbflow
