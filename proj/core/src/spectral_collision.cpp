#include "qkinetic/spectral_collision.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "qkinetic/errors.hpp"
#include "qkinetic/log.hpp"

namespace qkinetic {

using std::numbers::pi;

const char* to_string(Statistics s) {
  switch (s) {
    case Statistics::Bose:
      return "bose";
    case Statistics::Fermi:
      return "fermi";
    case Statistics::Classical:
      return "classical";
  }
  return "?";
}

Statistics parse_statistics(std::string_view name) {
  if (name == "bose") return Statistics::Bose;
  if (name == "fermi") return Statistics::Fermi;
  if (name == "classical") return Statistics::Classical;
  throw ConfigError("unknown statistics '" + std::string(name) +
                    "' (expected bose|fermi|classical)");
}

double CollisionConfig::sign() const {
  switch (statistics) {
    case Statistics::Bose:
      return 1.0;
    case Statistics::Fermi:
      return -1.0;
    case Statistics::Classical:
      return 0.0;
  }
  return 0.0;
}

void CollisionConfig::validate() const {
  if (!std::isfinite(theta0) || theta0 < 0.0) {
    throw ConfigError("collision: theta0 must be finite and >= 0");
  }
  if (!std::isfinite(kernel_constant) || kernel_constant <= 0.0) {
    throw ConfigError("collision: kernel constant must be positive");
  }
}

double kernel_phi(double s, double half_width, double radius) {
  const double x = pi * radius * s / half_width;
  if (std::abs(x) < 1e-8) {
    // sin(x)/x = 1 - x^2/6 + O(x^4)
    return 2.0 * radius * (1.0 - x * x / 6.0);
  }
  return 2.0 * half_width / (pi * s) * std::sin(x);
}

double max_truncation_radius(const VelocityGrid& grid) {
  return 2.0 * grid.half_width() / (3.0 + std::numbers::sqrt2);
}

// ---------------------------------------------------------------------------

KernelTables::KernelTables(const VelocityGrid& grid, int angular_count, double radius)
    : grid_(grid), m_(angular_count), radius_(radius) {
  if (angular_count < 1) throw ConfigError("kernel tables: M must be >= 1");
  const double r_max = max_truncation_radius(grid);
  // Allow the bound itself up to rounding.
  if (!(radius > 0.0) || radius > r_max * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "kernel tables: truncation radius R=" << radius
        << " must lie in (0, " << r_max << "] to avoid aliasing";
    throw ConfigError(msg.str());
  }

  const int n = grid.n();
  const int e = 2 * n + 1;
  const double l_half = grid.half_width();
  alpha_.resize(static_cast<std::size_t>(m_) * e * e);
  alpha_prime_.resize(alpha_.size());
  for (int p = 0; p < m_; ++p) {
    const double theta = 0.5 * pi * p / m_;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (int lx = -n; lx <= n; ++lx) {
      for (int ly = -n; ly <= n; ++ly) {
        const std::size_t i = offset(p, lx, ly);
        alpha_[i] = kernel_phi(lx * c + ly * s, l_half, radius);
        alpha_prime_[i] = kernel_phi(-lx * s + ly * c, l_half, radius);
      }
    }
  }
}

double KernelTables::beta(int lx, int ly, int mx, int my) const {
  double sum = 0.0;
  for (int p = 0; p < m_; ++p) sum += alpha(p, lx, ly) * alpha_prime(p, mx, my);
  return pi / m_ * sum;
}

std::span<const double> KernelTables::alpha_row(int p) const {
  const std::size_t e = 2 * grid_.n() + 1;
  return {alpha_.data() + p * e * e, e * e};
}

std::span<const double> KernelTables::alpha_prime_row(int p) const {
  const std::size_t e = 2 * grid_.n() + 1;
  return {alpha_prime_.data() + p * e * e, e * e};
}

std::shared_ptr<const KernelTables> build_kernel_tables(const VelocityGrid& grid,
                                                        int angular_count,
                                                        std::optional<double> radius) {
  return std::make_shared<const KernelTables>(
      grid, angular_count, radius.value_or(max_truncation_radius(grid)));
}

// ---------------------------------------------------------------------------

SpectralField::SpectralField(const VelocityGrid& grid)
    : grid_(grid), coeffs_(grid.size(), Complex(0.0, 0.0)) {}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

namespace {

// Grid nodes start at -L, so the true coefficient of mode k differs from the
// plain DFT coefficient by (-1)^(kx+ky).
double node_phase(int kx, int ky) { return ((kx + ky) & 1) ? -1.0 : 1.0; }

int wrap(int k, int period) { return k < 0 ? k + period : k; }

}  // namespace

SpectralField forward_transform(std::span<const double> f, const VelocityGrid& grid) {
  const int n = grid.n();
  if (f.size() != grid.size()) throw ConfigError("forward_transform: size mismatch");
  Fft2d fft(n);
  ComplexBuffer buf(grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) buf[i] = f[i];
  fft.forward(buf.data());
  SpectralField out(grid);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  const int h = n / 2;
  for (int kx = -h; kx < h; ++kx) {
    for (int ky = -h; ky < h; ++ky) {
      out.at(kx, ky) =
          buf[wrap(kx, n) * n + wrap(ky, n)] * (scale * node_phase(kx, ky));
    }
  }
  return out;
}

std::vector<Complex> inverse_transform_complex(const SpectralField& field) {
  const VelocityGrid& grid = field.grid();
  const int n = grid.n();
  const int h = n / 2;
  Fft2d fft(n);
  ComplexBuffer buf(grid.size());
  for (int kx = -h; kx < h; ++kx) {
    for (int ky = -h; ky < h; ++ky) {
      buf[wrap(kx, n) * n + wrap(ky, n)] = field.at(kx, ky) * node_phase(kx, ky);
    }
  }
  fft.backward(buf.data());
  return {buf.data(), buf.data() + buf.size()};
}

std::vector<double> inverse_transform(const SpectralField& field) {
  const auto values = inverse_transform_complex(field);
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [](const Complex& c) { return c.real(); });
  return out;
}

// ---------------------------------------------------------------------------

struct CollisionOperator::Workspace {
  Workspace(const KernelTables& tables)
      : n(tables.grid().n()),
        half(n / 2),
        padded(2 * n),
        pad_fft(padded),
        grid_fft(n),
        coeffs(static_cast<std::size_t>(n) * n),
        result(static_cast<std::size_t>(n) * n),
        grid_buf(static_cast<std::size_t>(n) * n),
        f_phys(static_cast<std::size_t>(padded) * padded),
        a(f_phys.size()),
        b(f_phys.size()),
        a_modes(f_phys.size()),
        b_modes(f_phys.size()),
        c(f_phys.size()),
        acc(f_phys.size()),
        real_acc(f_phys.size()),
        loss_weight(static_cast<std::size_t>(n) * n) {
    for (int lx = -half; lx < half; ++lx) {
      for (int ly = -half; ly < half; ++ly) {
        double sum = 0.0;
        for (int p = 0; p < tables.angular_count(); ++p) {
          sum += tables.alpha(p, lx, ly) * tables.alpha_prime(p, lx, ly);
        }
        loss_weight[slot(lx, ly)] = sum;
      }
    }
  }

  std::size_t slot(int kx, int ky) const {
    return static_cast<std::size_t>(kx + half) * n + (ky + half);
  }
  std::size_t padded_index(int kx, int ky) const {
    return static_cast<std::size_t>(wrap(kx, padded)) * padded + wrap(ky, padded);
  }

  int n;
  int half;
  int padded;
  Fft2d pad_fft;
  Fft2d grid_fft;
  std::vector<Complex> coeffs;  // DFT-convention coefficients of f, centered
  std::vector<Complex> result;  // DFT-convention coefficients of the output
  ComplexBuffer grid_buf;
  ComplexBuffer f_phys;
  ComplexBuffer a;
  ComplexBuffer b;
  ComplexBuffer a_modes;  // sparse inputs of the Q_1 transforms
  ComplexBuffer b_modes;
  ComplexBuffer c;
  ComplexBuffer acc;
  std::vector<double> real_acc;
  std::vector<double> loss_weight;
  // Coefficients are those of a real field with the unpaired Nyquist modes
  // removed, so the Q_1 terms of n and -n are complex conjugates.
  bool hermitian = false;
};

CollisionOperator::CollisionOperator(std::shared_ptr<const KernelTables> tables)
    : tables_(std::move(tables)) {
  if (!tables_) throw ConfigError("CollisionOperator: null kernel tables");
  ws_ = std::make_unique<Workspace>(*tables_);
}

CollisionOperator::~CollisionOperator() = default;
CollisionOperator::CollisionOperator(CollisionOperator&&) noexcept = default;
CollisionOperator& CollisionOperator::operator=(CollisionOperator&&) noexcept = default;

void CollisionOperator::load_grid_values(std::span<const double> f) const {
  Workspace& w = *ws_;
  if (f.size() != static_cast<std::size_t>(w.n) * w.n) {
    throw ConfigError("CollisionOperator: field size does not match the grid");
  }
  for (std::size_t i = 0; i < f.size(); ++i) w.grid_buf[i] = f[i];
  w.grid_fft.forward(w.grid_buf.data());
  const double scale = 1.0 / (static_cast<double>(w.n) * w.n);
  for (int kx = -w.half; kx < w.half; ++kx) {
    for (int ky = -w.half; ky < w.half; ++ky) {
      const bool nyquist = kx == -w.half || ky == -w.half;
      w.coeffs[w.slot(kx, ky)] =
          nyquist ? Complex(0.0, 0.0)
                  : w.grid_buf[wrap(kx, w.n) * w.n + wrap(ky, w.n)] * scale;
    }
  }
  w.hermitian = true;
}

void CollisionOperator::load_spectral(const SpectralField& f) const {
  Workspace& w = *ws_;
  if (!(f.grid() == grid())) throw ConfigError("CollisionOperator: grid mismatch");
  for (int kx = -w.half; kx < w.half; ++kx) {
    for (int ky = -w.half; ky < w.half; ++ky) {
      w.coeffs[w.slot(kx, ky)] = f.at(kx, ky) * node_phase(kx, ky);
    }
  }
  w.hermitian = false;
}

void CollisionOperator::accumulate(const Weights& wt) const {
  Workspace& w = *ws_;
  const KernelTables& tab = *tables_;
  const int h = w.half;
  const int pp = w.padded;
  const std::size_t np = static_cast<std::size_t>(pp) * pp;
  const int ext = 2 * w.n + 1;  // row length of the extended kernel tables
  const double inv_np = 1.0 / static_cast<double>(np);

  auto scatter = [&](ComplexBuffer& dst, auto&& weight) {
    dst.fill(Complex(0.0, 0.0));
    for (int kx = -h; kx < h; ++kx) {
      for (int ky = -h; ky < h; ++ky) {
        dst[w.padded_index(kx, ky)] = weight(kx, ky) * w.coeffs[w.slot(kx, ky)];
      }
    }
  };
  // Multiplies the modes of a full padded array (support [-N, N-1]) by a
  // kernel factor taken from the extended tables.
  auto apply_extended = [&](ComplexBuffer& buf, std::span<const double> row) {
    for (int ix = 0; ix < pp; ++ix) {
      const int jx = ix < w.n ? ix : ix - pp;
      for (int iy = 0; iy < pp; ++iy) {
        const int jy = iy < w.n ? iy : iy - pp;
        buf[static_cast<std::size_t>(ix) * pp + iy] *=
            row[static_cast<std::size_t>(jx + w.n) * ext + (jy + w.n)] * inv_np;
      }
    }
  };

  w.acc.fill(Complex(0.0, 0.0));
  if (wt.q1 != 0.0 && w.hermitian) std::fill(w.real_acc.begin(), w.real_acc.end(), 0.0);
  scatter(w.f_phys, [](int, int) { return 1.0; });
  w.pad_fft.backward(w.f_phys.data());
  const Complex* fp = w.f_phys.data();
  Complex* acc = w.acc.data();

  if (wt.classical != 0.0) {
    scatter(w.c, [&](int kx, int ky) { return w.loss_weight[w.slot(kx, ky)]; });
    w.pad_fft.backward(w.c.data());
    for (std::size_t i = 0; i < np; ++i) acc[i] -= wt.classical * w.c[i] * fp[i];
  }

  const bool need_ab = wt.classical != 0.0 || wt.q2 != 0.0 || wt.q3 != 0.0 || wt.q4 != 0.0;
  for (int p = 0; p < tab.angular_count(); ++p) {
    const auto alpha = tab.alpha_row(p);
    const auto alpha_p = tab.alpha_prime_row(p);
    auto ext_at = [&](std::span<const double> row, int kx, int ky) {
      return row[static_cast<std::size_t>(kx + w.n) * ext + (ky + w.n)];
    };

    if (need_ab) {
      scatter(w.a, [&](int kx, int ky) { return ext_at(alpha, kx, ky); });
      scatter(w.b, [&](int kx, int ky) { return ext_at(alpha_p, kx, ky); });
      w.pad_fft.backward(w.a.data());
      w.pad_fft.backward(w.b.data());
      const Complex* ap = w.a.data();
      const Complex* bp = w.b.data();
      if (wt.classical != 0.0 || wt.q2 != 0.0) {
        for (std::size_t i = 0; i < np; ++i) {
          const Complex ab = ap[i] * bp[i];
          acc[i] += ab * (wt.classical + wt.q2 * fp[i]);
        }
      }
      // Q_3: weight alpha_p(l+m) on the modes of f * (alpha'_p f).
      if (wt.q3 != 0.0) {
        for (std::size_t i = 0; i < np; ++i) w.c[i] = fp[i] * bp[i];
        w.pad_fft.forward(w.c.data());
        apply_extended(w.c, alpha);
        w.pad_fft.backward(w.c.data());
        for (std::size_t i = 0; i < np; ++i) acc[i] += wt.q3 * w.c[i] * fp[i];
      }
      // Q_4: alpha and alpha' exchanged.
      if (wt.q4 != 0.0) {
        for (std::size_t i = 0; i < np; ++i) w.c[i] = fp[i] * ap[i];
        w.pad_fft.forward(w.c.data());
        apply_extended(w.c, alpha_p);
        w.pad_fft.backward(w.c.data());
        for (std::size_t i = 0; i < np; ++i) acc[i] += wt.q4 * w.c[i] * fp[i];
      }
    }

    if (wt.q1 != 0.0) accumulate_q1(wt.q1, alpha, alpha_p);
  }

  if (wt.q1 != 0.0 && w.hermitian) {
    const double* racc = w.real_acc.data();
    for (std::size_t i = 0; i < np; ++i) acc[i] += racc[i];
  }

  w.pad_fft.forward(acc);
  const double scale = pi / tab.angular_count() * inv_np;
  for (int kx = -h; kx < h; ++kx) {
    for (int ky = -h; ky < h; ++ky) {
      w.result[w.slot(kx, ky)] = acc[w.padded_index(kx, ky)] * scale;
    }
  }
}

// Q_1 needs the kernel factors at shifted modes l+n, m+n, so the inner
// convolution is rebuilt for every n. Placing f_n alpha_p(l+n) f_l at mode
// l+n folds the factor f_n exp(i n.v) into the first transform, leaving a
// single pointwise product per n.
void CollisionOperator::accumulate_q1(double weight, std::span<const double> alpha,
                                      std::span<const double> alpha_p) const {
  Workspace& w = *ws_;
  const int h = w.half;
  const int pp = w.padded;
  const std::size_t np = static_cast<std::size_t>(pp) * pp;
  const int ext = 2 * w.n + 1;

  // The mode arrays stay sparse between iterations: b_modes always occupies
  // the same N x N block, a_modes a block shifted by n that is cleared
  // before moving on.
  w.a_modes.fill(Complex(0.0, 0.0));
  w.b_modes.fill(Complex(0.0, 0.0));
  auto clear_block = [&](int sx, int sy) {
    for (int lx = -h; lx < h; ++lx) {
      Complex* row = w.a_modes.data() + static_cast<std::size_t>(wrap(lx + sx, pp)) * pp;
      for (int ly = -h; ly < h; ++ly) row[wrap(ly + sy, pp)] = 0.0;
    }
  };

  bool placed = false;
  int last_x = 0, last_y = 0;
  for (int nx = -h; nx < h; ++nx) {
    for (int ny = -h; ny < h; ++ny) {
      double pair = 1.0;
      if (w.hermitian) {
        if (nx < 0 || (nx == 0 && ny < 0) || nx == -h || ny == -h) continue;
        if (nx != 0 || ny != 0) pair = 2.0;
      }
      const Complex fn = pair * weight * w.coeffs[w.slot(nx, ny)];
      if (fn == Complex(0.0, 0.0)) continue;
      if (placed) clear_block(last_x, last_y);
      placed = true;
      last_x = nx;
      last_y = ny;
      for (int lx = -h; lx < h; ++lx) {
        const std::size_t trow = static_cast<std::size_t>(lx + nx + w.n) * ext + (ny + w.n);
        const double* arow = alpha.data() + trow;
        const double* brow = alpha_p.data() + trow;
        const Complex* crow = w.coeffs.data() + static_cast<std::size_t>(lx + h) * w.n + h;
        Complex* adst = w.a_modes.data() + static_cast<std::size_t>(wrap(lx + nx, pp)) * pp;
        Complex* bdst = w.b_modes.data() + static_cast<std::size_t>(wrap(lx, pp)) * pp;
        for (int ly = -h; ly < h; ++ly) {
          adst[wrap(ly + ny, pp)] = (fn * arow[ly]) * crow[ly];
          bdst[wrap(ly, pp)] = brow[ly] * crow[ly];
        }
      }
      w.pad_fft.backward(w.a_modes.data(), w.a.data());
      w.pad_fft.backward(w.b_modes.data(), w.b.data());
      const Complex* ap = w.a.data();
      const Complex* bp = w.b.data();
      if (w.hermitian) {
        double* racc = w.real_acc.data();
        for (std::size_t i = 0; i < np; ++i) {
          racc[i] += ap[i].real() * bp[i].real() - ap[i].imag() * bp[i].imag();
        }
      } else {
        Complex* acc = w.acc.data();
        for (std::size_t i = 0; i < np; ++i) acc[i] += ap[i] * bp[i];
      }
    }
  }
}

SpectralField CollisionOperator::result_spectral() const {
  const Workspace& w = *ws_;
  SpectralField out(grid());
  for (int kx = -w.half; kx < w.half; ++kx) {
    for (int ky = -w.half; ky < w.half; ++ky) {
      out.at(kx, ky) = w.result[w.slot(kx, ky)] * node_phase(kx, ky);
    }
  }
  return out;
}

SpectralField CollisionOperator::qc_hat(const SpectralField& f) const {
  load_spectral(f);
  accumulate({.classical = 1.0});
  return result_spectral();
}

SpectralField CollisionOperator::q1_hat(const SpectralField& f) const {
  load_spectral(f);
  accumulate({.q1 = 1.0});
  return result_spectral();
}

SpectralField CollisionOperator::q2_hat(const SpectralField& f) const {
  load_spectral(f);
  accumulate({.q2 = 1.0});
  return result_spectral();
}

SpectralField CollisionOperator::q3_hat(const SpectralField& f) const {
  load_spectral(f);
  accumulate({.q3 = 1.0});
  return result_spectral();
}

SpectralField CollisionOperator::q4_hat(const SpectralField& f) const {
  load_spectral(f);
  accumulate({.q4 = 1.0});
  return result_spectral();
}

std::vector<double> CollisionOperator::evaluate(std::span<const double> f,
                                                const CollisionConfig& config) const {
  std::vector<double> out(f.size());
  evaluate(f, config, out);
  return out;
}

void CollisionOperator::evaluate(std::span<const double> f, const CollisionConfig& config,
                                 std::span<double> out) const {
  config.validate();
  Workspace& w = *ws_;
  if (out.size() != f.size()) throw ConfigError("CollisionOperator: output size mismatch");

  if (config.statistics == Statistics::Fermi && config.theta0 > 0.0) {
    const double cap = 1.0 / config.theta0;
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
    if (*lo < -1e-8 * cap || *hi > cap * (1.0 + 1e-8)) {
      std::ostringstream msg;
      msg << "Fermi field outside [0, 1/theta0]: min " << *lo << ", max " << *hi
          << ", bound " << cap;
      log::warn(msg.str());
    }
  }

  load_grid_values(f);
  Weights wt{.classical = config.kernel_constant};
  const double cubic = config.cubic_weight() * config.kernel_constant;
  if (cubic != 0.0) {
    wt.q1 = cubic;
    wt.q2 = cubic;
    wt.q3 = -cubic;
    wt.q4 = -cubic;
  }
  accumulate(wt);

  w.grid_buf.fill(Complex(0.0, 0.0));
  for (int kx = -w.half; kx < w.half; ++kx) {
    for (int ky = -w.half; ky < w.half; ++ky) {
      if (kx == -w.half || ky == -w.half) continue;
      w.grid_buf[wrap(kx, w.n) * w.n + wrap(ky, w.n)] = w.result[w.slot(kx, ky)];
    }
  }
  w.grid_fft.backward(w.grid_buf.data());
  double max_re = 0.0;
  double max_im = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = w.grid_buf[i].real();
    max_re = std::max(max_re, std::abs(out[i]));
    max_im = std::max(max_im, std::abs(w.grid_buf[i].imag()));
  }
  // Compare against the size of the loss term, which does not vanish at
  // equilibrium the way Q itself does.
  double f_max = 0.0;
  for (double v : f) f_max = std::max(f_max, std::abs(v));
  const double loss_scale = w.loss_weight[w.slot(0, 0)] * std::abs(w.coeffs[w.slot(0, 0)]) *
                            f_max * pi / tables_->angular_count() *
                            config.kernel_constant * (1.0 + config.theta0 * f_max);
  if (max_im > 1e-10 * std::max(max_re, loss_scale) && max_im > 1e-300) {
    std::ostringstream msg;
    msg << "collision operator: imaginary residue " << max_im << " vs max |Q| " << max_re;
    log::warn(msg.str());
  }
}

}  // namespace qkinetic
