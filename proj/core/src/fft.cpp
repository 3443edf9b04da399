#include "qkinetic/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <new>

#include "qkinetic/errors.hpp"

namespace qkinetic {

namespace detail {
void FftwFree::operator()(Complex* p) const { fftw_free(p); }
void FftwPlanDeleter::operator()(void* plan) const {
  if (plan) fftw_destroy_plan(static_cast<fftw_plan>(plan));
}
}  // namespace detail

namespace {

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

using PlanHandle = std::unique_ptr<std::remove_pointer_t<fftw_plan>,
                                   detail::FftwPlanDeleter>;

PlanHandle checked(fftw_plan plan) {
  if (!plan) throw Error("FFTW failed to create a plan");
  return PlanHandle(plan);
}

}  // namespace

ComplexBuffer::ComplexBuffer(std::size_t n)
    : data_(static_cast<Complex*>(fftw_malloc(sizeof(Complex) * n))), size_(n) {
  if (!data_ && n > 0) throw std::bad_alloc();
  fill(Complex(0.0, 0.0));
}

void ComplexBuffer::fill(Complex value) {
  std::fill(data_.get(), data_.get() + size_, value);
}

struct Fft2d::Plans {
  PlanHandle forward;
  PlanHandle backward;
  PlanHandle backward_oop;
};

Fft2d::Fft2d(int size) : size_(size) {
  if (size < 2) throw ConfigError("Fft2d: size must be >= 2");
  const int p = size_;
  ComplexBuffer scratch(static_cast<std::size_t>(p) * p);
  auto* buf = as_fftw(scratch.data());

  plans_ = std::make_unique<Plans>();
  plans_->forward =
      checked(fftw_plan_dft_2d(p, p, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE));
  plans_->backward =
      checked(fftw_plan_dft_2d(p, p, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE));
  ComplexBuffer other(static_cast<std::size_t>(p) * p);
  plans_->backward_oop = checked(fftw_plan_dft_2d(p, p, buf, as_fftw(other.data()),
                                                  FFTW_BACKWARD,
                                                  FFTW_ESTIMATE | FFTW_PRESERVE_INPUT));
}

Fft2d::~Fft2d() = default;
Fft2d::Fft2d(Fft2d&&) noexcept = default;
Fft2d& Fft2d::operator=(Fft2d&&) noexcept = default;

void Fft2d::forward(Complex* data) const {
  fftw_execute_dft(plans_->forward.get(), as_fftw(data), as_fftw(data));
}

void Fft2d::backward(Complex* data) const {
  fftw_execute_dft(plans_->backward.get(), as_fftw(data), as_fftw(data));
}

void Fft2d::backward(const Complex* in, Complex* out) const {
  // FFTW takes a non-const pointer but FFTW_PRESERVE_INPUT keeps it intact.
  fftw_execute_dft(plans_->backward_oop.get(), as_fftw(const_cast<Complex*>(in)),
                   as_fftw(out));
}

}  // namespace qkinetic
