#pragma once

// Row data behind the CLI figure commands: the scaled median-vs-max sweep
// and the one-step MI sweep (Bernoulli alongside uniform).  Kept in the
// library so the reproduction fixtures can be checked without going through
// the CLI.

#include <cstdint>
#include <vector>

#include "ordstat/continuous.hpp"
#include "ordstat/discrete.hpp"

namespace ordstat {

struct Fig1Row {
  std::int64_t n = 0;
  double n_times_mi = 0.0;
  double limit = 0.5;
};

// n * I(X_(floor(n/2)); X_(n)) for n in [2, 100], with the 1/2 limit.
inline std::vector<Fig1Row> fig1_rows(const TSeqContext& ts = default_context()) {
  std::vector<Fig1Row> rows;
  rows.reserve(99);
  for (std::int64_t n = 2; n <= 100; ++n) {
    const double mi = mi_pair(n, n / 2, n, ts).value;
    rows.push_back({n, static_cast<double>(n) * mi, 0.5});
  }
  return rows;
}

struct Fig3Row {
  std::int64_t n = 0;
  double mi_bernoulli_step1 = 0.0;
  double mi_uniform_step1 = 0.0;
};

// One-step MI I(X_(n-1); X_(n)) for n in [1, 50]: Bernoulli(p) next to the
// distribution-free uniform value.  n = 1 has a single order statistic and
// both columns are 0 by convention.
inline std::vector<Fig3Row> fig3_rows(double p = 0.5,
                                      const TSeqContext& ts = default_context()) {
  std::vector<Fig3Row> rows;
  rows.reserve(50);
  rows.push_back({1, 0.0, 0.0});
  for (std::int64_t n = 2; n <= 50; ++n)
    rows.push_back({n, mi_bernoulli(n, p, n - 1, n), mi_pair(n, n - 1, n, ts).value});
  return rows;
}

}  // namespace ordstat
