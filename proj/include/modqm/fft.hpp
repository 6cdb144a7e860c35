#pragma once

// Radix-2 FFT with a Bluestein fallback for arbitrary (even) sizes.
// Forward transform uses the e^{-2*pi*i*j*k/n} kernel, inverse divides by n.
// Twiddle tables are cached per size; chirp angles are reduced mod 2n in
// integer arithmetic so large indices do not lose precision.

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace modqm {

using cplx = std::complex<double>;

namespace detail {

inline const double pi = 3.14159265358979323846264338327950288;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline const std::vector<cplx>& twiddle_table(std::size_t n) {
    static std::map<std::size_t, std::vector<cplx>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> w(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        double ang = -2.0 * pi * static_cast<double>(j) / static_cast<double>(n);
        w[j] = cplx(std::cos(ang), std::sin(ang));
    }
    return cache.emplace(n, std::move(w)).first->second;
}

inline void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    const auto& w = twiddle_table(n);
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx tw = w[k * stride];
                if (inverse) tw = std::conj(tw);
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * tw;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

// chirp e^{-i*pi*j^2/n}; j^2 reduced mod 2n keeps the angle argument small
inline const std::vector<cplx>& chirp_table(std::size_t n) {
    static std::map<std::size_t, std::vector<cplx>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> c(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t j2 = (static_cast<std::uint64_t>(j) * j) % (2 * n);
        double ang = -pi * static_cast<double>(j2) / static_cast<double>(n);
        c[j] = cplx(std::cos(ang), std::sin(ang));
    }
    return cache.emplace(n, std::move(c)).first->second;
}

inline void fft_bluestein(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    const auto& c = chirp_table(n);
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<cplx> x(m, cplx(0.0, 0.0));
    std::vector<cplx> y(m, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        cplx cj = inverse ? std::conj(c[j]) : c[j];
        x[j] = a[j] * cj;
        cplx inv = std::conj(cj);
        y[j] = inv;
        if (j != 0) y[m - j] = inv;
    }
    fft_pow2(x, false);
    fft_pow2(y, false);
    for (std::size_t j = 0; j < m; ++j) x[j] *= y[j];
    fft_pow2(x, true);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < n; ++j) {
        cplx cj = inverse ? std::conj(c[j]) : c[j];
        a[j] = x[j] * scale * cj;
    }
}

}  // namespace detail

inline void dft_inplace(std::vector<cplx>& a) {
    if (detail::is_pow2(a.size()))
        detail::fft_pow2(a, false);
    else
        detail::fft_bluestein(a, false);
}

inline void idft_inplace(std::vector<cplx>& a) {
    if (detail::is_pow2(a.size()))
        detail::fft_pow2(a, true);
    else
        detail::fft_bluestein(a, true);
    const double inv_n = 1.0 / static_cast<double>(a.size());
    for (auto& v : a) v *= inv_n;
}

inline std::vector<cplx> dft(std::vector<cplx> a) {
    dft_inplace(a);
    return a;
}

inline std::vector<cplx> idft(std::vector<cplx> a) {
    idft_inplace(a);
    return a;
}

}  // namespace modqm
