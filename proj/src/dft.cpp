#include "phasedr/dft.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "phasedr/errors.hpp"

namespace phasedr {

namespace {

// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const Complex* p) {
  return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p));
}

}  // namespace

struct GridDft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plans(const GridShape& grid) {
    std::vector<int> n(grid.dims().begin(), grid.dims().end());
    const auto len = static_cast<std::size_t>(grid.size());
    std::lock_guard lock(planner_mutex());
    fftw_complex* in = fftw_alloc_complex(len);
    fftw_complex* out = fftw_alloc_complex(len);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward = fftw_plan_dft(static_cast<int>(n.size()), n.data(), in, out, FFTW_FORWARD, flags);
    backward = fftw_plan_dft(static_cast<int>(n.size()), n.data(), in, out, FFTW_BACKWARD, flags);
    fftw_free(in);
    fftw_free(out);
    if (!forward || !backward) throw NumericalError("FFTW failed to create a plan");
  }

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

GridDft::GridDft(GridShape object, GridShape frequency)
    : object_(std::move(object)),
      frequency_(std::move(frequency)),
      positions_(embedding_positions(object_, frequency_)),
      plans_(std::make_shared<const Plans>(frequency_)) {}

CVec GridDft::forward_full(const CVec& z) const {
  if (z.size() != frequency_size()) {
    throw ConfigError("GridDft: expected " + std::to_string(frequency_size()) +
                      " frequency samples, got " + std::to_string(z.size()));
  }
  CVec out(z.size());
  fftw_execute_dft(plans_->forward, as_fftw(z.data()), as_fftw(out.data()));
  return out;
}

CVec GridDft::adjoint_full(const CVec& y) const {
  if (y.size() != frequency_size()) {
    throw ConfigError("GridDft: expected " + std::to_string(frequency_size()) +
                      " frequency samples, got " + std::to_string(y.size()));
  }
  CVec out(y.size());
  fftw_execute_dft(plans_->backward, as_fftw(y.data()), as_fftw(out.data()));
  return out;
}

CVec GridDft::forward(const CVec& x) const {
  if (x.size() != object_size()) {
    throw ConfigError("GridDft: expected " + std::to_string(object_size()) +
                      " object samples, got " + std::to_string(x.size()));
  }
  CVec padded = CVec::Zero(frequency_size());
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    padded[static_cast<Index>(positions_[i])] = x[static_cast<Index>(i)];
  }
  return forward_full(padded);
}

CVec GridDft::adjoint(const CVec& y) const {
  const CVec full = adjoint_full(y);
  CVec out(object_size());
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    out[static_cast<Index>(i)] = full[static_cast<Index>(positions_[i])];
  }
  return out;
}

namespace {

double scale_for(const GridShape& shape, DftScaling scaling) {
  return scaling == DftScaling::Isometric
             ? 1.0 / std::sqrt(static_cast<double>(shape.oversampled().size()))
             : 1.0;
}

}  // namespace

CVec dft_oversampled(const CVec& x, const GridShape& shape, DftScaling scaling) {
  if (x.size() != static_cast<Index>(shape.size())) {
    throw ConfigError("dft_oversampled: object length " + std::to_string(x.size()) +
                      " does not match shape " + shape.str());
  }
  GridDft dft(shape, shape.oversampled());
  return scale_for(shape, scaling) * dft.forward(x);
}

CVec idft_oversampled(const CVec& y, const GridShape& shape, DftScaling scaling) {
  const GridShape freq = shape.oversampled();
  if (y.size() != static_cast<Index>(freq.size())) {
    throw ConfigError("idft_oversampled: frequency length " + std::to_string(y.size()) +
                      " does not match " + freq.str());
  }
  GridDft dft(shape, freq);
  return scale_for(shape, scaling) * dft.adjoint(y);
}

}  // namespace phasedr
