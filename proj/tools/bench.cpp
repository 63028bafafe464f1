// Timings for the OpenMP kernels against their serial references.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "indexdens/artin.hpp"
#include "indexdens/harness.hpp"
#include "indexdens/primes.hpp"

using namespace indexdens;

namespace {

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double timed(F&& f) {
  const double t0 = now();
  f();
  return now() - t0;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t nprimes = 200000;
  std::uint64_t x = 1000000;
  if (argc > 1) nprimes = std::stoull(argv[1]);
  if (argc > 2) x = std::stoull(argv[2]);
  const int maxt = omp_get_max_threads();

  std::printf("B_chi Euler product kernel, %zu primes, chi mod 5, r = 1, 128-bit\n", nprimes);
  const auto ps = first_n_primes(nprimes);
  CharacterGroup G(5);
  const auto& chi = G.all().at(1).is_principal() ? G.all().at(2) : G.all().at(1);

  Complex ref;
  const double t_ser = timed([&] { ref = accel_product_reference(chi, 1, ps, 128); });
  std::printf("  %-28s %8.3f s\n", "serial reference", t_ser);
  for (int t = 1; t <= maxt; t *= 2) {
    omp_set_num_threads(t);
    Complex got;
    const double dt = timed([&] { got = accel_product_blocked(chi, 1, ps, 128); });
    const bool same = got.re.to_double() == ref.re.to_double() &&
                      got.im.to_double() == ref.im.to_double();
    std::printf("  blocked, %2d thread%s          %8.3f s  speedup %5.2fx  midpoints %s\n", t,
                t == 1 ? " " : "s", dt, t_ser / dt, same ? "match" : "DIFFER");
  }

  std::printf("\nindex tally, Q(sqrt 5), golden ratio generator, norm <= %llu\n",
              static_cast<unsigned long long>(x));
  const QuadraticField K = QuadraticField::real_quadratic(5);
  GroupSpec grp;
  grp.gens.push_back(parse_element("(1+sqrt5)/2", K));
  CountOptions o;
  o.x = x;
  o.modulus = 5;

  CountReport cref;
  const double t_cser = timed([&] { cref = count_reference(K, grp, o); });
  std::printf("  %-28s %8.3f s\n", "serial reference", t_cser);
  for (int t = 1; t <= maxt; t *= 2) {
    o.threads = t;
    CountReport got;
    const double dt = timed([&] { got = count(K, grp, o); });
    std::printf("  blocked, %2d thread%s          %8.3f s  speedup %5.2fx  reports %s\n", t,
                t == 1 ? " " : "s", dt, t_cser / dt, got == cref ? "match" : "DIFFER");
  }
  return 0;
}
