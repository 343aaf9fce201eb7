#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "wkbflow/fields.hpp"

namespace wkbflow {

/// Real field on (spatial torus) x (phase circle), stored as complex
/// phase-angle harmonics per spatial point: index m in [0, n_theta/2] with
/// the usual conjugate symmetry for negative m. The Nyquist harmonic
/// m = n_theta/2 is pinned to zero. Spatial dependence stays in collocation;
/// collocation values in the angle are materialized only for pointwise work.
class LoopField {
public:
    using Cplx = std::complex<double>;

    LoopField() = default;
    explicit LoopField(const TorusGrid& g)
        : grid_(g), h_(static_cast<size_t>(g.points()) * g.harmonics(), Cplx{0.0, 0.0}) {}

    static LoopField from_values(const TorusGrid& g, const std::vector<double>& vals);
    static LoopField from_scalar(const ScalarField& f);
    static LoopField sample(const TorusGrid& g,
                            const std::function<double(double, double, double)>& f);

    const TorusGrid& grid() const { return grid_; }
    int harmonics() const { return grid_.harmonics(); }

    Cplx coeff(int ix, int m) const { return h_[ix * grid_.harmonics() + m]; }
    Cplx& coeff(int ix, int m) { return h_[ix * grid_.harmonics() + m]; }
    const std::vector<Cplx>& data() const { return h_; }
    std::vector<Cplx>& data() { return h_; }

    /// Collocation values, theta innermost: vals[ix * n_theta + j].
    std::vector<double> values() const;

    /// Value of the trigonometric interpolant at arbitrary angle theta.
    double value_at(int ix, double theta) const;

    LoopField& operator+=(const LoopField& o) {
        for (size_t k = 0; k < h_.size(); ++k) h_[k] += o.h_[k];
        return *this;
    }
    LoopField& operator-=(const LoopField& o) {
        for (size_t k = 0; k < h_.size(); ++k) h_[k] -= o.h_[k];
        return *this;
    }
    LoopField& operator*=(double s) {
        for (auto& c : h_) c *= s;
        return *this;
    }
    friend LoopField operator+(LoopField a, const LoopField& b) { return a += b; }
    friend LoopField operator-(LoopField a, const LoopField& b) { return a -= b; }
    friend LoopField operator*(double s, LoopField a) { return a *= s; }

private:
    TorusGrid grid_;
    std::vector<Cplx> h_;
};

/// One loop component per spatial axis.
struct VectorLoopField {
    std::vector<LoopField> comp;

    VectorLoopField() = default;
    explicit VectorLoopField(const TorusGrid& g) { comp.assign(g.dim, LoopField(g)); }
    int dim() const { return static_cast<int>(comp.size()); }
    LoopField& operator[](int a) { return comp[a]; }
    const LoopField& operator[](int a) const { return comp[a]; }

    VectorLoopField& operator+=(const VectorLoopField& o) {
        for (int a = 0; a < dim(); ++a) comp[a] += o.comp[a];
        return *this;
    }
    VectorLoopField& operator*=(double s) {
        for (auto& c : comp) c *= s;
        return *this;
    }
    friend VectorLoopField operator+(VectorLoopField a, const VectorLoopField& b) {
        return a += b;
    }
    friend VectorLoopField operator*(double s, VectorLoopField a) { return a *= s; }
};

double linf(const LoopField& f);
bool all_finite(const LoopField& f);

/// Minimum of the collocation values over (x, theta); location reported as
/// (ix, j) when requested.
double loop_min(const LoopField& f, int* arg_ix = nullptr, int* arg_j = nullptr);

/// Max-norm of the non-constant harmonics; zero iff f is theta-independent.
double fluctuation_norm(const LoopField& f);

} // namespace wkbflow
