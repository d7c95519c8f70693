#include <benchmark/benchmark.h>

#include <hmf/eisenstein.hpp>
#include <hmf/forms.hpp>
#include <hmf/lseries.hpp>
#include <hmf/specfun.hpp>

using namespace hmf;

namespace {

FormExpansion closed_form(int n_max) {
  FormExpansion F = FormExpansion::zero(-2, 1, trivial_character(1), n_max);
  F.c_minus_zero = 1.0 / 3.0;
  for (int n = 1; n <= n_max; ++n) {
    double s3 = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) s3 += double(d) * d * d;
    const double c = -240.0 * s3 / std::pow(4 * kPi * n, 3);
    F.c_minus[n - 1] = c;
    F.c_plus[n] = 2 * c;
  }
  return F;
}

void BM_w_nu(benchmark::State& st) {
  const cplx s(0.75, 2.0);
  for (auto _ : st) benchmark::DoNotOptimize(w_nu(static_cast<int>(st.range(0)), s));
}
BENCHMARK(BM_w_nu)->Arg(1)->Arg(3)->Arg(5);

void BM_evaluate(benchmark::State& st) {
  const FormExpansion F = closed_form(static_cast<int>(st.range(0)));
  const cplx tau(0.1, 0.9);
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_value(F, tau));
}
BENCHMARK(BM_evaluate)->Arg(10)->Arg(40)->Arg(160);

void BM_f_series(benchmark::State& st) {
  const CosetSum sum = make_coset_sum(1, trivial_character(1), -2, cusps(1)[0], static_cast<int>(st.range(0)));
  const cplx tau(0.1, 0.9);
  for (auto _ : st) benchmark::DoNotOptimize(f_series(sum, tau));
  st.counters["rows"] = static_cast<double>(sum.rows.size());
}
BENCHMARK(BM_f_series)->Arg(30)->Arg(60)->Arg(120);

void BM_continuation_build(benchmark::State& st) {
  const FormExpansion F = closed_form(40);
  const FrickePair p = make_fricke_pair(F, F);
  for (auto _ : st) {
    Continuation c(p);
    benchmark::DoNotOptimize(c.node_count());
  }
}
BENCHMARK(BM_continuation_build)->Unit(benchmark::kMillisecond);

void BM_continuation_lambda(benchmark::State& st) {
  const FormExpansion F = closed_form(40);
  const Continuation c(make_fricke_pair(F, F));
  const cplx s(-0.5, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(c.lambda(s));
}
BENCHMARK(BM_continuation_lambda);

} // namespace

BENCHMARK_MAIN();
