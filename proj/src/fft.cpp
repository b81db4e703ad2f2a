#include "ibnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace ibnls::spectral::fft {

namespace {

// Plans are cached per (dim, M) and created on an internal buffer with
// FFTW_UNALIGNED so they can execute on any caller array.
class Plans {
 public:
  Plans(int dim, int m) {
    std::size_t n = 1;
    for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(m);
    buf_.resize(n);
    int dims[3] = {m, m, m};
    auto* p = reinterpret_cast<fftw_complex*>(buf_.data());
    fwd_ = fftw_plan_dft(dim, dims, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd_ = fftw_plan_dft(dim, dims, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
  }
  ~Plans() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;

  void run_forward(Complex* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(fwd_, p, p);
  }
  void run_backward(Complex* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(bwd_, p, p);
  }

 private:
  std::vector<Complex> buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

const Plans& plans_for(const Grid& grid) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Plans>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(grid.dim, grid.points_per_axis);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<Plans>(grid.dim, grid.points_per_axis)).first;
  return *it->second;
}

}  // namespace

void forward(const Grid& grid, std::vector<Complex>& data) {
  if (data.size() != grid.size()) throw std::invalid_argument("fft: size mismatch");
  plans_for(grid).run_forward(data.data());
}

void inverse(const Grid& grid, std::vector<Complex>& data) {
  if (data.size() != grid.size()) throw std::invalid_argument("fft: size mismatch");
  plans_for(grid).run_backward(data.data());
  const double scale = 1.0 / static_cast<double>(data.size());
  for (Complex& v : data) v *= scale;
}

}  // namespace ibnls::spectral::fft
