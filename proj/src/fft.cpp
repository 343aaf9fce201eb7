#include "wkbflow/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace wkbflow::fft {

namespace {

enum class Kind { R2C, C2R, R2C2, C2R2, C2C_F, C2C_B, C2C2_F, C2C2_B };

using PlanKey = std::tuple<Kind, int, int>;

std::mutex plan_mutex;

struct PlanCache {
    std::map<PlanKey, fftw_plan> plans;
    ~PlanCache() {
        for (auto& [key, plan] : plans) {
            (void)key;
            fftw_destroy_plan(plan);
        }
        fftw_cleanup();
    }
};

std::map<PlanKey, fftw_plan>& plan_cache() {
    static PlanCache cache;
    return cache.plans;
}

// Plans are created once per (kind, size) with FFTW_ESTIMATE | FFTW_UNALIGNED
// and executed through the new-array interface, so execution never depends on
// runtime measurement and any caller buffer is acceptable.
fftw_plan get_plan(Kind kind, int n0, int n1) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    PlanKey key{kind, n0, n1};
    auto it = plan_cache().find(key);
    if (it != plan_cache().end()) return it->second;

    const int nr = n0 * (n1 > 0 ? n1 : 1);
    const int nc0 = (n1 > 0) ? n0 * (n1 / 2 + 1) : n0 / 2 + 1;
    std::vector<double> rbuf(nr);
    std::vector<std::complex<double>> cbuf(std::max(nr, nc0));
    std::vector<std::complex<double>> cbuf2(std::max(nr, nc0));
    auto* r = rbuf.data();
    auto* c = reinterpret_cast<fftw_complex*>(cbuf.data());
    auto* c2 = reinterpret_cast<fftw_complex*>(cbuf2.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

    fftw_plan p = nullptr;
    switch (kind) {
        case Kind::R2C: p = fftw_plan_dft_r2c_1d(n0, r, c, flags); break;
        case Kind::C2R: p = fftw_plan_dft_c2r_1d(n0, c, r, flags); break;
        case Kind::R2C2: p = fftw_plan_dft_r2c_2d(n0, n1, r, c, flags); break;
        case Kind::C2R2: p = fftw_plan_dft_c2r_2d(n0, n1, c, r, flags); break;
        case Kind::C2C_F: p = fftw_plan_dft_1d(n0, c, c2, FFTW_FORWARD, flags); break;
        case Kind::C2C_B: p = fftw_plan_dft_1d(n0, c, c2, FFTW_BACKWARD, flags); break;
        case Kind::C2C2_F: p = fftw_plan_dft_2d(n0, n1, c, c2, FFTW_FORWARD, flags); break;
        case Kind::C2C2_B: p = fftw_plan_dft_2d(n0, n1, c, c2, FFTW_BACKWARD, flags); break;
    }
    plan_cache().emplace(key, p);
    return p;
}

} // namespace

void r2c(int n, const double* in, std::complex<double>* out) {
    fftw_plan p = get_plan(Kind::R2C, n, 0);
    std::vector<double> tmp(in, in + n);
    fftw_execute_dft_r2c(p, tmp.data(), reinterpret_cast<fftw_complex*>(out));
    const double s = 1.0 / n;
    for (int k = 0; k <= n / 2; ++k) out[k] *= s;
}

void c2r(int n, const std::complex<double>* in, double* out) {
    fftw_plan p = get_plan(Kind::C2R, n, 0);
    // c2r clobbers its input; work on a copy.
    std::vector<std::complex<double>> tmp(in, in + n / 2 + 1);
    fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(tmp.data()), out);
}

void r2c_2d(int n0, int n1, const double* in, std::complex<double>* out) {
    fftw_plan p = get_plan(Kind::R2C2, n0, n1);
    std::vector<double> tmp(in, in + n0 * n1);
    fftw_execute_dft_r2c(p, tmp.data(), reinterpret_cast<fftw_complex*>(out));
    const double s = 1.0 / (double(n0) * n1);
    const int nc = n0 * (n1 / 2 + 1);
    for (int k = 0; k < nc; ++k) out[k] *= s;
}

void c2r_2d(int n0, int n1, const std::complex<double>* in, double* out) {
    fftw_plan p = get_plan(Kind::C2R2, n0, n1);
    std::vector<std::complex<double>> tmp(in, in + n0 * (n1 / 2 + 1));
    fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(tmp.data()), out);
}

void c2c_fwd(int n, const std::complex<double>* in, std::complex<double>* out) {
    fftw_plan p = get_plan(Kind::C2C_F, n, 0);
    std::vector<std::complex<double>> tmp(in, in + n);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out));
    const double s = 1.0 / n;
    for (int k = 0; k < n; ++k) out[k] *= s;
}

void c2c_bwd(int n, const std::complex<double>* in, std::complex<double>* out) {
    fftw_plan p = get_plan(Kind::C2C_B, n, 0);
    std::vector<std::complex<double>> tmp(in, in + n);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out));
}

void c2c_fwd_2d(int n0, int n1, const std::complex<double>* in, std::complex<double>* out) {
    fftw_plan p = get_plan(Kind::C2C2_F, n0, n1);
    std::vector<std::complex<double>> tmp(in, in + n0 * n1);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out));
    const double s = 1.0 / (double(n0) * n1);
    for (int k = 0; k < n0 * n1; ++k) out[k] *= s;
}

void c2c_bwd_2d(int n0, int n1, const std::complex<double>* in, std::complex<double>* out) {
    fftw_plan p = get_plan(Kind::C2C2_B, n0, n1);
    std::vector<std::complex<double>> tmp(in, in + n0 * n1);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace wkbflow::fft
