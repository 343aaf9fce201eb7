#pragma once

#include <array>
#include <cmath>

#include "wkbflow/errors.hpp"

namespace wkbflow {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Default Courant factor for the explicit steppers.
inline constexpr double default_cfl = 0.4;

/// Discretization of the periodic spatial domain (S^1)^dim together with the
/// phase circle. Spatial axes are uniformly sampled; the phase angle carries
/// n_theta collocation points on [0, 2pi). Sample counts must be even and
/// >= 8 so the 2/3-rule truncation leaves usable bandwidth, and the Nyquist
/// mode can be pinned to zero for an unambiguous real-field representation.
struct TorusGrid {
    int dim = 1;
    std::array<double, 2> length{two_pi, two_pi};
    std::array<int, 2> n{8, 1}; // n[1] == 1 when dim == 1
    int n_theta = 8;

    static TorusGrid line(double length_x, int n_x, int n_theta_) {
        TorusGrid g;
        g.dim = 1;
        g.length = {length_x, two_pi};
        g.n = {n_x, 1};
        g.n_theta = n_theta_;
        g.check();
        return g;
    }

    static TorusGrid plane(double lx, double ly, int nx, int ny, int n_theta_) {
        TorusGrid g;
        g.dim = 2;
        g.length = {lx, ly};
        g.n = {nx, ny};
        g.n_theta = n_theta_;
        g.check();
        return g;
    }

    void check() const {
        if (dim != 1 && dim != 2)
            throw ConfigError("grid dim must be 1 or 2, got " + std::to_string(dim));
        for (int a = 0; a < dim; ++a) {
            if (!(length[a] > 0.0))
                throw ConfigError("grid length[" + std::to_string(a) + "] must be > 0");
            if (n[a] < 8 || n[a] % 2 != 0)
                throw ConfigError("grid n_x[" + std::to_string(a) +
                                  "] must be even and >= 8, got " + std::to_string(n[a]));
        }
        if (dim == 1 && n[1] != 1)
            throw ConfigError("1-d grid must have n[1] == 1");
        if (n_theta < 8 || n_theta % 2 != 0)
            throw ConfigError("grid n_theta must be even and >= 8, got " +
                              std::to_string(n_theta));
    }

    int points() const { return n[0] * n[1]; }
    int harmonics() const { return n_theta / 2 + 1; }
    double dx(int axis) const { return length[axis] / n[axis]; }
    double min_dx() const {
        double d = dx(0);
        if (dim == 2) d = std::min(d, dx(1));
        return d;
    }
    double d_theta() const { return two_pi / n_theta; }
    double cell_volume() const {
        double v = dx(0);
        if (dim == 2) v *= dx(1);
        return v;
    }
    double volume() const {
        double v = length[0];
        if (dim == 2) v *= length[1];
        return v;
    }
    double x(int axis, int i) const { return length[axis] * i / n[axis]; }
    double theta(int j) const { return two_pi * j / n_theta; }

    /// Row-major flat index, axis 0 outermost.
    int index(int i, int j = 0) const { return i * n[1] + j; }

    bool operator==(const TorusGrid& o) const {
        return dim == o.dim && n == o.n && n_theta == o.n_theta &&
               length[0] == o.length[0] && (dim == 1 || length[1] == o.length[1]);
    }
    bool operator!=(const TorusGrid& o) const { return !(*this == o); }
};

} // namespace wkbflow
