#include "edaudit/binomial.hpp"

#include <cmath>

#include "edaudit/errors.hpp"

namespace edaudit {

namespace {

// log C(n, k) via lgamma; stable for the n <= 1e6 this toolkit meets.
double log_choose(std::uint64_t n, std::uint64_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

// P(X >= k) for X ~ Binomial(n, 1/2), summed from the smaller tail side for
// accuracy.
double upper_tail_half(std::uint64_t k, std::uint64_t n) {
    if (k == 0) return 1.0;
    if (k > n) return 0.0;
    const double log_half_n = -static_cast<double>(n) * std::log(2.0);
    double total = 0.0;
    // sum the k..n tail directly; by symmetry this is called with k >= n/2
    for (std::uint64_t j = n; j + 1 > k; --j) {
        total += std::exp(log_choose(n, j) + log_half_n);
    }
    return total < 1.0 ? total : 1.0;
}

}  // namespace

double exact_binomial_upper_p(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) fail(Errc::too_few_samples, "binomial test needs at least one trial");
    if (2 * successes >= trials) return upper_tail_half(successes, trials);
    // lower-half k: P(X >= k) = 1 - P(X >= n-k+1) by symmetry of p = 1/2
    return 1.0 - upper_tail_half(trials - successes + 1, trials);
}

double exact_binomial_two_sided_p(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) fail(Errc::too_few_samples, "binomial test needs at least one trial");
    if (successes > trials) fail(Errc::too_few_samples, "successes exceed trials");
    // Distance from the centre; both tails carry equal mass under p = 1/2.
    const std::uint64_t mirrored = trials - successes;
    const std::uint64_t hi = successes > mirrored ? successes : mirrored;
    if (2 * hi == trials) return 1.0;  // dead centre (even n, k = n/2)
    const double upper = upper_tail_half(hi, trials);
    const double two_sided = 2.0 * upper;
    return two_sided < 1.0 ? two_sided : 1.0;
}

}  // namespace edaudit
