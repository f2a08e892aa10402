#include "rokhlin/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rokhlin::batch {

namespace {

void set_jobs(int jobs) {
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif
}

}  // namespace

std::vector<classify::Verdict> classify_many(const std::vector<SurfaceDesc>& xs,
                                             const Options& opt) {
  set_jobs(opt.jobs);
  std::vector<classify::Verdict> out(xs.size());
  const long n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        classify::classify(xs[static_cast<std::size_t>(i)], opt.depthBudget);
  return out;
}

std::vector<classify::Verdict> classify_many_serial(const std::vector<SurfaceDesc>& xs,
                                                    int depthBudget) {
  std::vector<classify::Verdict> out;
  out.reserve(xs.size());
  for (const SurfaceDesc& s : xs) out.push_back(classify::classify(s, depthBudget));
  return out;
}

std::vector<endspace::HomeoV> homeo_many(const std::vector<std::pair<Expr, Expr>>& pairs,
                                         const Options& opt) {
  set_jobs(opt.jobs);
  std::vector<endspace::HomeoV> out(pairs.size());
  const long n = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto& [a, b] = pairs[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = endspace::homeo_eq(a, b).v;
  }
  return out;
}

std::vector<endspace::HomeoV> homeo_many_serial(const std::vector<std::pair<Expr, Expr>>& pairs) {
  std::vector<endspace::HomeoV> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) out.push_back(endspace::homeo_eq(a, b).v);
  return out;
}

LeqTable leq_table(const Expr& e, const Options& opt) {
  set_jobs(opt.jobs);
  LeqTable t;
  t.classes = order::end_type_classes(e);
  const long n = static_cast<long>(t.classes.size());
  t.cells.assign(static_cast<std::size_t>(n ? n * n : 0), order::LeqV::Unknown);
#pragma omp parallel for schedule(dynamic) collapse(2)
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      t.cells[static_cast<std::size_t>(i * n + j)] =
          i == j ? order::LeqV::True
                 : order::leq(t.classes[static_cast<std::size_t>(i)].stable,
                              t.classes[static_cast<std::size_t>(j)].stable, opt.depthBudget)
                       .v;
  return t;
}

LeqTable leq_table_serial(const Expr& e, int depthBudget) {
  LeqTable t;
  t.classes = order::end_type_classes(e);
  const std::size_t n = t.classes.size();
  t.cells.assign(n * n, order::LeqV::Unknown);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.cells[i * n + j] =
          i == j ? order::LeqV::True
                 : order::leq(t.classes[i].stable, t.classes[j].stable, depthBudget).v;
  return t;
}

}  // namespace rokhlin::batch
