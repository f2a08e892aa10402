// Benchmark comparing the OpenMP batch kernels against their serial
// reference implementations on generated corpora.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rokhlin/batch.hpp"
#include "rokhlin/gen.hpp"

using namespace rokhlin;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_ms(F&& f) {
  double t0 = now_ms();
  f();
  return now_ms() - t0;
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 400;
  std::mt19937_64 rng(20240915);

  gen::Options opt;
  opt.maxDepth = 4;
  opt.decidableFragment = true;

  std::vector<SurfaceDesc> surfaces;
  for (int i = 0; i < n; ++i) surfaces.push_back(gen::random_surface(rng, opt));

  std::vector<std::pair<Expr, Expr>> pairs;
  for (int i = 0; i < n; ++i)
    pairs.emplace_back(gen::random_expr(rng, opt), gen::random_expr(rng, opt));

#ifdef _OPENMP
  int threads = omp_get_max_threads();
#else
  int threads = 1;
#endif
  std::printf("rokhlin batch kernels, %d items, %d thread(s)\n", n, threads);
  std::printf("%-18s %12s %12s %9s\n", "kernel", "serial(ms)", "openmp(ms)", "speedup");

  batch::Options bopt;
  std::vector<classify::Verdict> vs, vp;
  double ts = time_ms([&] { vs = batch::classify_many_serial(surfaces); });
  double tp = time_ms([&] { vp = batch::classify_many(surfaces, bopt); });
  bool ok = vs.size() == vp.size();
  for (std::size_t i = 0; ok && i < vs.size(); ++i)
    ok = vs[i].rokhlin == vp[i].rokhlin && vs[i].reason == vp[i].reason;
  std::printf("%-18s %12.1f %12.1f %8.2fx %s\n", "classify", ts, tp, ts / tp,
              ok ? "" : "MISMATCH");

  std::vector<endspace::HomeoV> hs, hp;
  ts = time_ms([&] { hs = batch::homeo_many_serial(pairs); });
  tp = time_ms([&] { hp = batch::homeo_many(pairs, bopt); });
  std::printf("%-18s %12.1f %12.1f %8.2fx %s\n", "homeo", ts, tp, ts / tp,
              hs == hp ? "" : "MISMATCH");

  // one big order table over a structured expression
  std::vector<Expr> members;
  members.push_back(Expr::pt());
  members.push_back(Expr::omega({Expr::pt()}));
  members.push_back(Expr::omega({Expr::omega({Expr::pt()})}));
  Expr big = Expr::sum({Expr::omega(members), Expr::cantor(), Expr::cantor_of(Expr::pt())});
  batch::LeqTable lt1, lt2;
  ts = time_ms([&] {
    for (int r = 0; r < n / 10 + 1; ++r) lt1 = batch::leq_table_serial(big);
  });
  tp = time_ms([&] {
    for (int r = 0; r < n / 10 + 1; ++r) lt2 = batch::leq_table(big, bopt);
  });
  std::printf("%-18s %12.1f %12.1f %8.2fx %s\n", "leq-table", ts, tp, ts / tp,
              lt1.cells == lt2.cells ? "" : "MISMATCH");
  return 0;
}
