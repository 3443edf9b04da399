#pragma once

#include <complex>
#include <cstddef>
#include <memory>

namespace qkinetic {

using Complex = std::complex<double>;

namespace detail {
struct FftwFree {
  void operator()(Complex* p) const;
};
struct FftwPlanDeleter {
  void operator()(void* plan) const;
};
}  // namespace detail

/// SIMD-aligned complex array allocated through FFTW.
class ComplexBuffer {
 public:
  ComplexBuffer() = default;
  explicit ComplexBuffer(std::size_t n);

  Complex* data() { return data_.get(); }
  const Complex* data() const { return data_.get(); }
  std::size_t size() const { return size_; }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  void fill(Complex value);

 private:
  std::unique_ptr<Complex[], detail::FftwFree> data_;
  std::size_t size_ = 0;
};

/// In-place 2-D DFTs on a P x P row-major array.
///
/// forward():  X_k = sum_j x_j exp(-2 pi i k.j / P)   (unnormalized)
/// backward(): x_j = sum_k X_k exp(+2 pi i k.j / P)
///
/// Plans are created with FFTW_ESTIMATE so results are reproducible from run
/// to run. Any buffer passed in must come from a
/// ComplexBuffer of at least P*P elements. Instances are not thread-safe;
/// give each worker its own.
class Fft2d {
 public:
  explicit Fft2d(int size);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;
  Fft2d(Fft2d&&) noexcept;
  Fft2d& operator=(Fft2d&&) noexcept;

  int size() const { return size_; }

  void forward(Complex* data) const;
  void backward(Complex* data) const;
  /// Out of place; `in` is left untouched. in and out must not alias.
  void backward(const Complex* in, Complex* out) const;

 private:
  struct Plans;
  int size_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace qkinetic
