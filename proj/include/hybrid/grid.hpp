#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <fftw3.h>

namespace hybrid {

/// std::vector allocator backed by fftw_malloc so every state buffer carries
/// the alignment FFTW plans were created for.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) {}  // NOLINT(google-explicit-constructor)
  T* allocate(std::size_t n) { return static_cast<T*>(fftw_malloc(n * sizeof(T))); }
  void deallocate(T* p, std::size_t) { fftw_free(p); }
  friend bool operator==(const FftwAllocator&, const FftwAllocator&) { return true; }
};

using ComplexField = std::vector<std::complex<double>, FftwAllocator<std::complex<double>>>;

struct AxisSpec {
  int points = 0;        // power of two
  double half_width = 0;  // domain is [-half_width, half_width), periodic

  double length() const { return 2.0 * half_width; }
  double spacing() const { return length() / points; }
  double coord(int j) const { return -half_width + j * spacing(); }
  /// Discrete Fourier dual frequency of bin j (angular).
  double frequency(int j) const {
    constexpr double two_pi = 6.283185307179586476925286766559;
    int signed_j = (j < points / 2) ? j : j - points;
    return two_pi * signed_j / length();
  }
};

/// Discretization of the joint (x, q, p) space plus the time step. x is the
/// quantum coordinate; q and p are both coordinate axes of the classical
/// sector, with the lambda operators acting as frequency multiplications.
struct GridSpec {
  AxisSpec x, q, p;
  double dt = 0;
  long steps = 0;
  long record_every = 1;

  void validate() const;
  std::size_t size() const {
    return static_cast<std::size_t>(x.points) * q.points * p.points;
  }
  std::size_t index(int ix, int iq, int ip) const {
    return (static_cast<std::size_t>(ix) * q.points + iq) * p.points + ip;
  }
};

/// Joint amplitude over the grid. Plain value type; evolution happens through
/// the Simulator, one evolution owning its state exclusively.
struct HybridState {
  GridSpec grid;
  ComplexField psi;
  double time = 0;
};

}  // namespace hybrid
