// Compares the OpenMP kernels against their serial reference implementations.
#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vibelab/fft.hpp"
#include "vibelab/monitor.hpp"
#include "vibelab/shaper.hpp"

using namespace vibelab;

namespace {

double time_ms(const std::function<void()>& fn) {
  double best = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.2f ms %12.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp enabled, max %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp not available: parallel kernels run serially\n");
#endif
  std::printf("%-28s %13s %15s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    const PlantParams plant{2.0 * 3.14159265358979323846 * 30.0, 0.03};
    const ImpulseSequence seq = design_shaper(ShaperKind::Zvdd, plant);
    const size_t points = 2000001;
    std::vector<SensitivityPoint> sink;
    const double serial_ms =
        time_ms([&] { sink = sensitivity_curve_serial(seq, plant, 0.5, 1.5, points); });
    const double parallel_ms =
        time_ms([&] { sink = sensitivity_curve(seq, plant, 0.5, 1.5, points); });
    report("sensitivity sweep", serial_ms, parallel_ms);
  }

  {
    std::mt19937 rng(1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::complex<double>> frame(16384);
    for (auto& v : frame) v = {gauss(rng), gauss(rng)};
    std::vector<std::complex<double>> sink;
    const double serial_ms = time_ms([&] { sink = dft_reference(frame); });
    const double parallel_ms = time_ms([&] { sink = fft(frame); });
    report("transform 16384 (dft/fft)", serial_ms, parallel_ms);
  }

  {
    std::mt19937 rng(2);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> samples(20000000);
    for (auto& v : samples) v = gauss(rng);
    std::vector<double> sink;
    const double serial_ms = time_ms([&] { sink = window_rms_batch_serial(samples, 500); });
    const double parallel_ms = time_ms([&] { sink = window_rms_batch(samples, 500); });
    report("window rms batch", serial_ms, parallel_ms);
  }
  return 0;
}
