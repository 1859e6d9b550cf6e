#pragma once

#include <cstdint>

namespace edaudit {

// Exact two-sided binomial test against p0 = 1/2: the probability, under a
// fair coin, of an outcome at least as far from n/2 as k. Exact tail sum via
// log-space terms; no normal approximation.
double exact_binomial_two_sided_p(std::uint64_t successes, std::uint64_t trials);

// One-sided upper tail P(X >= k) under p0 = 1/2.
double exact_binomial_upper_p(std::uint64_t successes, std::uint64_t trials);

}  // namespace edaudit
