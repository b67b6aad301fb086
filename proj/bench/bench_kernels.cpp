// Timing comparison between the OpenMP kernels and the serial reference
// implementations, at sizes where the parallel sweep pays off.

#include <cstdio>

#include "fockcalc/apdo.hpp"
#include "fockcalc/fourier.hpp"
#include "fockcalc/parallel.hpp"
#include "fockcalc/random_fields.hpp"
#include "fockcalc/reference.hpp"

using namespace fockcalc;

namespace {

template <class F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = wall_time();
    fn();
    best = std::min(best, wall_time() - t0);
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.4f s %10.4f s   x%.2f\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", hardware_threads());
  std::printf("%-28s %12s %12s %8s\n", "kernel", "serial", "openmp", "speedup");

  {
    std::mt19937_64 rng(1);
    const KernelCoeff c = random_kernel(1, 48, KernelInterp::symbol, rng, 0.4);
    const cplx t{1.0, 0.5};
    KernelCoeff sink(1, 48, KernelInterp::symbol);
    const double ts = time_best_of(3, [&] { sink = ref::t0t_transform(c, t); });
    const double tp = time_best_of(3, [&] { sink = t0t_transform(c, t); });
    row("lower-index transform N=48", ts, tp);
  }
  {
    std::mt19937_64 rng(2);
    const KernelCoeff K = random_kernel(2, 28, KernelInterp::kernel, rng, 0.4);
    const CoeffArray F = random_coeff(TruncationSpec(2, 28), BasisTag::fock, rng, 0.4);
    CoeffArray sink;
    const double ts = time_best_of(3, [&] { sink = ref::kernel_apply(K, F); });
    const double tp = time_best_of(3, [&] { sink = kernel_apply(K, F); });
    row("contraction d=2 N=28", ts, tp);
  }
  {
    const auto rule = QuadratureRule::gauss_hermite(40);
    const RealFn f = [](std::span<const double> y) {
      return cplx{std::exp(-0.5 * y[0] * y[0]) * y[0], 0.0};
    };
    GridField sink;
    const double ts = time_best_of(2, [&] { sink = ref::stft_gaussian(f, 1, 6.0, 0.125, rule); });
    const double tp = time_best_of(2, [&] { sink = stft_gaussian(f, 1, 6.0, 0.125, rule); });
    row("phase-space sweep 97x97", ts, tp);
  }
  {
    std::mt19937_64 rng(3);
    GridField g(1, 2, 6.0, 0.125);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = cplx{u(rng), u(rng)};
    GridField sink;
    const double ts = time_best_of(2, [&] { sink = ref::dft_full(g, false); });
    const double tp = time_best_of(2, [&] { sink = dft_full(g, false); });
    row("fourier 97x97 vs direct sum", ts, tp);
  }
  return 0;
}
