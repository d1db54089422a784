#include "jrc/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "jrc/rng.hpp"

namespace jrc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}
}  // namespace

double shannon_entropy(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("shannon_entropy: eps must be in [0, 1]");
    if (eps == 0.0 || eps == 1.0) return 0.0;
    return -eps * std::log2(eps) - (1.0 - eps) * std::log2(1.0 - eps);
}

double renyi_entropy(double u, double eps) {
    if (!(u > 0.0)) throw std::invalid_argument("renyi_entropy: u must be positive");
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("renyi_entropy: eps must be in [0, 1]");
    if (std::abs(u - 1.0) < 1e-6) return shannon_entropy(eps);
    if (eps == 0.0 || eps == 1.0) return 0.0;
    return std::log2(std::pow(eps, u) + std::pow(1.0 - eps, u)) / (1.0 - u);
}

double rate(double c, double eps) {
    if (!(c >= 0.0)) throw std::invalid_argument("rate: c must be >= 0");
    return 1.0 - renyi_entropy(1.0 / (1.0 + c), eps);
}

namespace {

double sum_rate_at_u(const std::vector<double>& eps, double u) {
    double s = 0.0;
    for (double e : eps) s += 1.0 - renyi_entropy(u, e);
    return s;
}

}  // namespace

ParetoResult solve_pareto_c(const std::vector<double>& eps, int block_bits) {
    for (double e : eps)
        if (!(e >= 0.0 && e <= 0.5))
            throw std::invalid_argument("solve_pareto_c: eps must be in [0, 0.5]");
    const double n = block_bits;
    int undamaged = 0;
    for (double e : eps)
        if (e == 0.0) ++undamaged;
    if (undamaged >= block_bits) return {ParetoRegime::undamaged_surplus, 0.0};

    auto excess = [&](double c) { // sum of rates minus N; decreasing in c
        double s = 0.0;
        for (double e : eps) s += rate(c, e);
        return s - n;
    };
    if (excess(0.0) < 0.0) return {ParetoRegime::below_shannon, 0.0};

    double lo = 0.0, hi = 64.0;
    while (excess(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 16777216.0) return {ParetoRegime::finite, hi};
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return {ParetoRegime::finite, 0.5 * (lo + hi)};
}

namespace {

// Bisection for sum_i (1 - h_p(eps_i)) = n over p in (0, 1), as a function of
// the given parametrization (h is decreasing in its order, so the sum is
// increasing in p).
double solve_order(const std::vector<double>& eps, double n, bool via_one_minus) {
    auto value = [&](double p) { return sum_rate_at_u(eps, via_one_minus ? 1.0 - p : p); };
    double lo = 1e-12, hi = 1.0 - 1e-12;
    // via direct u: sum increases with u; via v = 1-u it decreases with v.
    const bool increasing = !via_one_minus;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool above = value(mid) > n;
        if (above == increasing)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double solve_growth_exponent(const std::vector<double>& eps, double n) {
    return solve_order(eps, n, false);
}

double solve_decay_exponent(const std::vector<double>& eps, double n) {
    return solve_order(eps, n, true);
}

double straightforward_log2_prob(int block_bits, int m) {
    if (block_bits < 1 || m < 1)
        throw std::invalid_argument("straightforward_prob: N and M must be >= 1");
    if (m < block_bits) return -kInf;
    const double scale = std::exp2(-m);
    double lg = 0.0;
    const std::uint64_t count = std::uint64_t{1} << block_bits;
    for (std::uint64_t j = 1; j < count; ++j)
        lg += std::log2(1.0 - static_cast<double>(j) * scale);
    return lg;
}

double straightforward_prob(int block_bits, int m) {
    const double lg = straightforward_log2_prob(block_bits, m);
    return lg == -kInf ? 0.0 : std::exp2(lg);
}

double width_transition_prob(std::uint64_t i, std::uint64_t j, int block_bits, int m) {
    if (i < 1 || j < 1) throw std::invalid_argument("width_transition_prob: states start at 1");
    const double expansions = std::ldexp(static_cast<double>(i), block_bits) - 1.0;  // 2^N i - 1
    const double k = static_cast<double>(j - 1);
    if (k > expansions) return 0.0;
    const double lp = -static_cast<double>(m) * std::numbers::ln2;  // ln 2^-M
    const double l1p = std::log1p(-std::exp2(-m));
    double lg = std::lgamma(expansions + 1.0) - std::lgamma(k + 1.0) - std::lgamma(expansions - k + 1.0);
    lg += k * lp + (expansions - k) * l1p;
    return std::exp(lg);
}

StationaryDist stationary_width_dist(int block_bits, int m, StationaryMode mode, int states) {
    if (states < 2) throw std::invalid_argument("stationary_width_dist: need at least 2 states");
    if (mode == StationaryMode::exact && m < block_bits)
        throw std::invalid_argument("stationary_width_dist: M < N has no decaying distribution");

    const int k = states;
    std::vector<double> P(static_cast<std::size_t>(k) * k);
    for (int i = 1; i <= k; ++i) {
        double row_sum = 0.0;
        for (int j = 1; j <= k; ++j) {
            double p;
            if (mode == StationaryMode::exact) {
                p = width_transition_prob(i, j, block_bits, m);
            } else {
                // Poisson limit of the binomial: mean i 2^{N-M}.
                const double lambda = std::ldexp(static_cast<double>(i), block_bits - m);
                const double kk = j - 1;
                p = std::exp(-lambda + kk * std::log(lambda) - std::lgamma(kk + 1.0));
            }
            P[static_cast<std::size_t>(i - 1) * k + (j - 1)] = p;
            row_sum += p;
        }
        for (int j = 0; j < k; ++j) P[static_cast<std::size_t>(i - 1) * k + j] /= row_sum;
    }

    std::vector<double> p(k, 1.0 / k), q(k);
    StationaryDist out;
    constexpr int kMaxIter = 100000;
    for (int it = 0; it < kMaxIter; ++it) {
        std::fill(q.begin(), q.end(), 0.0);
        for (int i = 0; i < k; ++i) {
            if (p[i] == 0.0) continue;
            const double* row = &P[static_cast<std::size_t>(i) * k];
            for (int j = 0; j < k; ++j) q[j] += p[i] * row[j];
        }
        double norm = 0.0;
        for (double v : q) norm += v;
        for (double& v : q) v /= norm;
        double diff = 0.0;
        for (int j = 0; j < k; ++j) diff = std::max(diff, std::abs(q[j] - p[j]));
        p.swap(q);
        if (diff <= 1e-14) {
            out.converged = true;
            break;
        }
    }
    // Residual of the fixed point p = pP on the truncated, renormalized chain.
    std::fill(q.begin(), q.end(), 0.0);
    for (int i = 0; i < k; ++i) {
        const double* row = &P[static_cast<std::size_t>(i) * k];
        for (int j = 0; j < k; ++j) q[j] += p[i] * row[j];
    }
    for (int j = 0; j < k; ++j) out.residual = std::max(out.residual, std::abs(q[j] - p[j]));

    // Mass stuck at the truncation boundary means the untruncated distribution
    // does not decay (the M = N case).
    if (p.back() > 1e-6) out.converged = false;

    out.p = p;
    for (int j = 0; j < k; ++j) out.mean += (j + 1) * p[j];
    double second = 0.0;
    for (int j = 0; j < k; ++j) second += static_cast<double>(j + 1) * (j + 1) * p[j];
    out.stddev = std::sqrt(std::max(0.0, second - out.mean * out.mean));
    return out;
}

ParetoFit fit_pareto_tail(const std::vector<double>& sorted_widths, std::size_t censored) {
    ParetoFit fit;
    const std::size_t n = sorted_widths.size();
    if (n < 50 || censored >= n) return fit;

    const std::size_t usable = n - censored;
    const std::size_t first = (3 * n) / 4;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    double prev_x = -kInf;
    for (std::size_t i = first; i < usable; ++i) {
        const double survival = static_cast<double>(n - (i + 1)) / static_cast<double>(n);
        if (survival <= 0.0 || sorted_widths[i] <= 0.0) continue;
        // Equal widths share one ECDF point; keep the last (smallest survival).
        if (i + 1 < usable && sorted_widths[i + 1] == sorted_widths[i]) continue;
        const double x = std::log2(sorted_widths[i]);
        const double y = std::log2(survival);
        if (x == prev_x) continue;
        prev_x = x;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 3) return fit;
    const double det = count * sxx - sx * sx;
    if (det <= 0.0) return fit;
    const double slope = (count * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / count;
    fit.defined = true;
    fit.c_hat = -slope;
    fit.c_p = std::exp2(intercept);
    fit.points = count;
    return fit;
}

namespace {

// Adaptive Simpson quadrature; fine for the mildly singular eps lg eps edge.
double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double (*f)(double), double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(double (*f)(double), double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_simpson(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 60);
}

double info_content(double e) { return 1.0 - shannon_entropy(e); }
double info_content_sq_dev(double e) {
    const double d = info_content(e) - unl_mean_rate_quadrature();
    return d * d;
}

}  // namespace

double unl_mean_rate() { return 1.0 - 1.0 / std::log(4.0); }

double unl_mean_rate_quadrature() {
    static const double value = 2.0 * integrate(&info_content, 0.0, 0.5, 1e-12);
    return value;
}

double unl_sigma() {
    return std::sqrt(21.0 - 2.0 * std::numbers::pi * std::numbers::pi) / (6.0 * std::numbers::ln2);
}

double unl_sigma_quadrature() {
    static const double value = std::sqrt(2.0 * integrate(&info_content_sq_dev, 0.0, 0.5, 1e-12));
    return value;
}

FcFecOptimum unl_fcfec_optimum() {
    auto objective = [](double e) { return 2.0 * e * (1.0 - shannon_entropy(e)); };
    // Coarse grid, then golden-section refinement around the best cell.
    double best_e = 0.0, best_v = 0.0;
    for (int i = 1; i < 500; ++i) {
        const double e = 0.5 * i / 500.0;
        const double v = objective(e);
        if (v > best_v) {
            best_v = v;
            best_e = e;
        }
    }
    double lo = std::max(0.0, best_e - 2e-3), hi = std::min(0.5, best_e + 2e-3);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        }
    }
    const double e = 0.5 * (lo + hi);
    return {e, objective(e)};
}

std::vector<double> unl_pr_curve(int block_bits, int m_max, std::size_t samples, std::uint64_t seed,
                                 int threads) {
    if (block_bits < 1 || m_max < block_bits)
        throw std::invalid_argument("unl_pr_curve: need m_max >= N >= 1");
    const int nthreads = resolve_threads(threads);
    constexpr std::size_t kShard = 1 << 16;
    const std::size_t shards = (samples + kShard - 1) / kShard;

    // first_success[m] counts draws whose information first exceeds N at m
    // packets; sharded deterministically so the thread count cannot matter.
    std::vector<std::vector<std::uint64_t>> shard_counts(shards);
    std::atomic<std::size_t> next_shard{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t shard = next_shard.fetch_add(1);
            if (shard >= shards) return;
            const std::size_t count = std::min(kShard, samples - shard * kShard);
            std::vector<std::uint64_t> first(m_max + 2, 0);
            RngStream rng(seed, shard);
            for (std::size_t s = 0; s < count; ++s) {
                double sum = 0.0;
                int m = 0;
                while (m < m_max) {
                    ++m;
                    sum += 1.0 - shannon_entropy(0.5 * rng.next_double());
                    if (sum > block_bits) break;
                }
                if (sum > block_bits)
                    ++first[m];
                else
                    ++first[m_max + 1];
            }
            shard_counts[shard] = std::move(first);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<std::uint64_t> first(m_max + 2, 0);
    for (const auto& c : shard_counts)
        for (std::size_t m = 0; m < c.size(); ++m) first[m] += c[m];

    std::vector<double> pr(m_max + 1, 0.0);
    std::uint64_t cum = 0;
    for (int m = 1; m <= m_max; ++m) {
        cum += first[m];
        pr[m] = static_cast<double>(cum) / static_cast<double>(samples);
    }
    return pr;
}

MonteCarloProb unl_jrc_pr(int block_bits, int m, std::size_t samples, std::uint64_t seed,
                          int threads) {
    const auto pr = unl_pr_curve(block_bits, m, samples, seed, threads);
    const double p = pr[m];
    return {p, std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(samples)))};
}

FcJrcOptimum unl_fcjrc_optimize(int block_bits, std::size_t samples, std::uint64_t seed,
                                int threads) {
    const int m_max = 8 * block_bits;
    const auto pr = unl_pr_curve(block_bits, m_max, samples, seed, threads);
    FcJrcOptimum best;
    for (int m = block_bits; m <= m_max; ++m) {
        const double r = static_cast<double>(block_bits) / m * pr[m];
        if (r > best.rate) {
            best.rate = r;
            best.m = m;
            best.p_r = pr[m];
        }
    }
    return best;
}

}  // namespace jrc
