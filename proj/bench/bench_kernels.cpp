// Serial reference vs OpenMP kernels: batch decoding and the exhaustive
// oracles. Prints one line per kernel with both timings and whether the
// outputs matched exactly.

#include <chrono>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "vfk/decoder.hpp"
#include "vfk/generator.hpp"
#include "vfk/oracle.hpp"

namespace {

template <typename F>
double seconds(F&& f, int repeats = 3) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(stop - start).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-34s serial %10.6f s  omp %10.6f s  speedup %5.2fx  %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  bool allSame = true;

  for (int n : {16, 64}) {
    const vfk::SellingMatrix q = vfk::randomFirstKind(n, 1.0, 11).selling();
    vfk::Rng rng(5);
    std::vector<vfk::ExtendedCoordinates> targets(256);
    for (auto& t : targets) {
      t.z.resize(n + 1);
      for (int i = 0; i <= n; ++i) t.z(i) = rng.uniform(-8.0, 8.0);
    }
    std::vector<vfk::DecodeResult> a, b;
    const double ts = seconds([&] { a = vfk::serial::decodeBatch(q, targets); });
    const double tp = seconds([&] { b = vfk::decodeBatch(q, targets); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) {
      same = a[i].coefficients == b[i].coefficients && a[i].squaredDistance == b[i].squaredDistance;
    }
    char label[64];
    std::snprintf(label, sizeof label, "decodeBatch n=%d x%zu", n, targets.size());
    report(label, ts, tp, same);
    allSame = allSame && same;
  }

  {
    const vfk::SellingMatrix q = vfk::randomFirstKind(17, 1.0, 3).selling();
    vfk::Rng rng(9);
    Eigen::VectorXd p(q.size());
    for (int i = 0; i < q.size(); ++i) p(i) = rng.uniform(-2.0, 2.0);
    const vfk::BinaryQuadraticForm form(-2.0 * q.matrix() * p, q);
    vfk::BinaryMinimum a, b;
    const double ts = seconds([&] { a = vfk::serial::bruteBinaryMin(form); });
    const double tp = seconds([&] { b = vfk::bruteBinaryMin(form); });
    const bool same = a.t == b.t && a.value == b.value;
    report("bruteBinaryMin n=17", ts, tp, same);
    allSame = allSame && same;
  }

  {
    const vfk::SellingMatrix q = vfk::randomFirstKind(5, 1.0, 4).selling();
    vfk::ExtendedCoordinates z{Eigen::VectorXd::LinSpaced(6, -2.3, 3.7)};
    vfk::ClosestPoint a, b;
    const double ts = seconds([&] { a = vfk::serial::bruteClosest(q, z); });
    const double tp = seconds([&] { b = vfk::bruteClosest(q, z); });
    const bool same = a.w == b.w && a.squaredDistance == b.squaredDistance;
    report("bruteClosest n=5", ts, tp, same);
    allSame = allSame && same;
  }

  {
    const vfk::SellingMatrix q = vfk::randomFirstKind(16, 1.0, 8).selling();
    std::vector<vfk::RelevantVector> a, b;
    const double ts = seconds([&] { a = vfk::serial::relevantVectors(q); });
    const double tp = seconds([&] { b = vfk::relevantVectors(q); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) {
      same = a[i].subset == b[i].subset && a[i].norm2 == b[i].norm2;
    }
    report("relevantVectors n=16", ts, tp, same);
    allSame = allSame && same;
  }
  return allSame ? 0 : 1;
}
