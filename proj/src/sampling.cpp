#include "carrollian/sampling.hpp"

#include <stdexcept>

namespace carrollian {

namespace {
constexpr uint32_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
}

double halton(uint64_t index, uint32_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

std::vector<Point> sample_points(const SampleSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("sample spec needs n >= 1");
  if (spec.n + 1 > static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0])))
    throw std::invalid_argument("sample spec dimension too large");
  std::vector<double> lo = spec.lo, hi = spec.hi;
  if (lo.empty()) lo.assign(static_cast<size_t>(spec.n), -1.0);
  if (hi.empty()) hi.assign(static_cast<size_t>(spec.n), 1.0);
  if (static_cast<int>(lo.size()) != spec.n || static_cast<int>(hi.size()) != spec.n)
    throw std::invalid_argument("sample box does not match dimension");
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    uint64_t idx = spec.seed * 7919ULL + static_cast<uint64_t>(i) + 1ULL;
    std::vector<double> x(static_cast<size_t>(spec.n));
    for (int a = 0; a < spec.n; ++a)
      x[static_cast<size_t>(a)] = lo[static_cast<size_t>(a)] +
                                  (hi[static_cast<size_t>(a)] - lo[static_cast<size_t>(a)]) *
                                      halton(idx, kPrimes[static_cast<size_t>(a)]);
    double t = spec.t_min + (spec.t_max - spec.t_min) * halton(idx, kPrimes[static_cast<size_t>(spec.n)]);
    if (spec.both_signs && (i % 2 == 1)) t = -t;
    out.emplace_back(std::move(x), t);
  }
  return out;
}

}  // namespace carrollian
