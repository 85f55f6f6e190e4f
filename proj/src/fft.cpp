#include "choq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace choq {
namespace fft {

namespace {

std::mutex g_plan_mutex;

using Key = std::tuple<int, int, int, int, int>; // rank, n0, n1, n2, kind

fftw_plan get_c2c_plan(const std::array<int, 3>& n, int rank, int sign) {
    static std::map<Key, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    Key key{rank, n[0], n[1], n[2], sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // Plan on a scratch buffer; FFTW_UNALIGNED keeps the plan valid for
    // new-array execution on whatever the caller allocates.
    std::size_t tot = 1;
    for (int d = 0; d < rank; ++d) tot *= std::size_t(n[d]);
    fftw_complex* buf = fftw_alloc_complex(tot);
    fftw_plan p = fftw_plan_dft(rank, n.data(), buf, buf, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw std::runtime_error("fftw: c2c plan creation failed");
    cache.emplace(key, p);
    return p;
}

fftw_plan get_r2c_plan(const std::array<int, 3>& n, int rank) {
    static std::map<Key, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    Key key{rank, n[0], n[1], n[2], 0};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::size_t tot = 1;
    for (int d = 0; d < rank - 1; ++d) tot *= std::size_t(n[d]);
    std::size_t ctot = tot * std::size_t(n[rank - 1] / 2 + 1);
    double* rbuf = fftw_alloc_real(tot * std::size_t(n[rank - 1]));
    fftw_complex* cbuf = fftw_alloc_complex(ctot);
    fftw_plan p = fftw_plan_dft_r2c(rank, n.data(), rbuf, cbuf,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(rbuf);
    fftw_free(cbuf);
    if (!p) throw std::runtime_error("fftw: r2c plan creation failed");
    cache.emplace(key, p);
    return p;
}

fftw_plan get_c2r_plan(const std::array<int, 3>& n, int rank) {
    static std::map<Key, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    Key key{rank, n[0], n[1], n[2], 1};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::size_t tot = 1;
    for (int d = 0; d < rank - 1; ++d) tot *= std::size_t(n[d]);
    std::size_t ctot = tot * std::size_t(n[rank - 1] / 2 + 1);
    double* rbuf = fftw_alloc_real(tot * std::size_t(n[rank - 1]));
    fftw_complex* cbuf = fftw_alloc_complex(ctot);
    fftw_plan p = fftw_plan_dft_c2r(rank, n.data(), cbuf, rbuf,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(rbuf);
    fftw_free(cbuf);
    if (!p) throw std::runtime_error("fftw: c2r plan creation failed");
    cache.emplace(key, p);
    return p;
}

std::size_t total(const std::array<int, 3>& n, int rank) {
    std::size_t tot = 1;
    for (int d = 0; d < rank; ++d) tot *= std::size_t(n[d]);
    return tot;
}

} // namespace

void forward(std::complex<double>* data, const std::array<int, 3>& n, int rank) {
    fftw_plan p = get_c2c_plan(n, rank, FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

void inverse(std::complex<double>* data, const std::array<int, 3>& n, int rank) {
    fftw_plan p = get_c2c_plan(n, rank, FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
    const double scale = 1.0 / double(total(n, rank));
    const std::size_t tot = total(n, rank);
    for (std::size_t i = 0; i < tot; ++i) data[i] *= scale;
}

void forward_r2c(const double* in, std::complex<double>* out,
                 const std::array<int, 3>& n, int rank) {
    fftw_plan p = get_r2c_plan(n, rank);
    fftw_execute_dft_r2c(p, const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
}

void inverse_c2r(std::complex<double>* in, double* out,
                 const std::array<int, 3>& n, int rank) {
    fftw_plan p = get_c2r_plan(n, rank);
    fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(in), out);
    const double scale = 1.0 / double(total(n, rank));
    const std::size_t tot = total(n, rank);
    for (std::size_t i = 0; i < tot; ++i) out[i] *= scale;
}

double wavenumber(int k, int M, double box_length) {
    const double dk = 2.0 * std::numbers::pi / box_length;
    return dk * (k <= M / 2 ? k : k - M);
}

} // namespace fft
} // namespace choq
