#include "nqw/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace nqw::fft {
namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Spinor> scratch(n);
    auto* data = reinterpret_cast<fftw_complex*>(scratch.data());
    const int len = static_cast<int>(n);
    // Two interleaved transforms (plus, minus), stride 2, in place.
    fftw_plan plan = fftw_plan_many_dft(1, &len, 2, data, nullptr, 2, 1, data, nullptr, 2, 1,
                                        sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void alternate_signs(std::span<Spinor> field, std::size_t offset, double scale) {
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double s = ((i + offset) % 2 == 0) ? scale : -scale;
    field[i].plus *= s;
    field[i].minus *= s;
  }
}

void execute(std::span<Spinor> field, int sign) {
  auto* data = reinterpret_cast<fftw_complex*>(field.data());
  fftw_execute_dft(cache().get(field.size(), sign), data, data);
}

}  // namespace

void position_to_momentum(std::span<Spinor> field) {
  const std::size_t m = field.size();
  alternate_signs(field, m / 2, 1.0);
  execute(field, FFTW_BACKWARD);
  alternate_signs(field, 0, 1.0);
}

void momentum_to_position(std::span<Spinor> field) {
  const std::size_t m = field.size();
  alternate_signs(field, 0, 1.0);
  execute(field, FFTW_FORWARD);
  alternate_signs(field, m / 2, 1.0 / static_cast<double>(m));
}

}  // namespace nqw::fft
