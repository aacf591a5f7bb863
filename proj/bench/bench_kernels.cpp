// Compares the OpenMP kernels against the serial reference implementations
// on the matrix shapes the library actually produces (sparse block matrices
// from group actions and hom complexes).

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eqha/linalg.hpp"
#include "eqha/rng.hpp"

using namespace eqha;

namespace {

template <class F>
Matrix<F> random_sparse(F f, Rng& rng, int nr, int nc, int per_row) {
  Matrix<F> m(f, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int k = 0; k < per_row; ++k)
      m.at(i, int(rng.uniform(0, nc - 1))) = f.from_int(rng.uniform(-2, 2));
  return m;
}

double now_ms() {
  using namespace std::chrono;
  return double(duration_cast<microseconds>(steady_clock::now().time_since_epoch()).count()) /
         1000.0;
}

template <class Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_ms();
    fn();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

template <class F>
void bench_field(const char* label, F f, uint64_t seed) {
  std::printf("== %s ==\n", label);
  for (int n : {40, 80, 160}) {
    Rng rng(seed + n);
    Matrix<F> A = random_sparse(f, rng, n, n, 4);
    Matrix<F> B = random_sparse(f, rng, n, n, 4);
    int sink = 0;

    double t_par = time_best_of(3, [&] {
      auto C = mul(A, B);
      sink += C.nnz();
    });
    double t_ser = time_best_of(3, [&] {
      auto C = serial::mul(A, B);
      sink += C.nnz();
    });
    std::printf("  mul   %4dx%-4d  kernels %8.2f ms   serial %8.2f ms   speedup %5.2fx\n", n, n,
                t_par, t_ser, t_ser / t_par);

    double r_par = time_best_of(3, [&] { sink += kernels::rref(A).rank; });
    double r_ser = time_best_of(3, [&] { sink += serial::rref(A).rank; });
    std::printf("  rref  %4dx%-4d  kernels %8.2f ms   serial %8.2f ms   speedup %5.2fx  (check %d)\n",
                n, n, r_par, r_ser, r_ser / r_par, sink % 2);
  }
}

}  // namespace

int main(int argc, char** argv) {
  uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 42;
#ifdef _OPENMP
  std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif
  bench_field("rationals", FieldQ{}, seed);
  bench_field("f5", FieldFp(5), seed);
  return 0;
}
