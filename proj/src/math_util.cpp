#include "discorr/math_util.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace discorr {

namespace {

constexpr int kMaxFact = 170;   // largest n with n! finite in double
constexpr int kMaxLogFact = 512;

const std::array<double, kMaxFact + 1>& fact_table() {
    static const auto table = [] {
        std::array<double, kMaxFact + 1> t{};
        t[0] = 1.0;
        for (int i = 1; i <= kMaxFact; ++i) t[i] = t[i - 1] * static_cast<double>(i);
        return t;
    }();
    return table;
}

const std::array<double, kMaxLogFact + 1>& log_fact_table() {
    static const auto table = [] {
        std::array<double, kMaxLogFact + 1> t{};
        t[0] = 0.0;
        for (int i = 1; i <= kMaxLogFact; ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
        return t;
    }();
    return table;
}

} // namespace

double factorial(int n) {
    if (n < 0 || n > kMaxFact) throw std::out_of_range("factorial: n out of range");
    return fact_table()[static_cast<size_t>(n)];
}

double log_factorial(int n) {
    if (n < 0) throw std::out_of_range("log_factorial: negative n");
    if (n <= kMaxLogFact) return log_fact_table()[static_cast<size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n <= kMaxFact) return fact_table()[n] / (fact_table()[k] * fact_table()[n - k]);
    return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

double poisson_pmf(double mu, int n) {
    if (n < 0) return 0.0;
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-mu + n * std::log(mu) - log_factorial(n));
}

cplx power_over_sqrt_factorial(cplx z, int p, int n) {
    const double mag = std::abs(z);
    if (mag == 0.0) return p == 0 ? cplx(std::exp(-0.5 * log_factorial(n)), 0.0) : cplx(0.0, 0.0);
    const double logmag = p * std::log(mag) - 0.5 * log_factorial(n);
    const double phase = p * std::arg(z);
    return std::polar(std::exp(logmag), phase);
}

} // namespace discorr
