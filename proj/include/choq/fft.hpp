#ifndef CHOQ_FFT_HPP
#define CHOQ_FFT_HPP

#include <array>
#include <complex>
#include <vector>

namespace choq {

/// Thin FFTW front end. Plans are cached per shape behind a mutex; execution
/// is re-entrant (new-array execute), so concurrent transforms on distinct
/// buffers are safe.
namespace fft {

/// In-place complex DFT, unnormalized forward.
void forward(std::complex<double>* data, const std::array<int, 3>& n, int rank);
/// In-place complex inverse DFT, scaled by 1/(n0*n1*...).
void inverse(std::complex<double>* data, const std::array<int, 3>& n, int rank);

/// Real-to-complex forward transform (out has last axis n/2+1).
void forward_r2c(const double* in, std::complex<double>* out,
                 const std::array<int, 3>& n, int rank);
/// Complex-to-real inverse, scaled by 1/(n0*n1*...). Clobbers `in`.
void inverse_c2r(std::complex<double>* in, double* out,
                 const std::array<int, 3>& n, int rank);

/// DFT angular frequency of index k on an M-point axis of physical length 2L.
double wavenumber(int k, int M, double box_length);

} // namespace fft

} // namespace choq

#endif
