#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace jrc {

// Shannon entropy h(eps) in bits; h(0) = h(1) = 0 by continuity.
double shannon_entropy(double eps);

// Renyi entropy h_u(eps) = lg(eps^u + (1-eps)^u) / (1-u); falls back to the
// Shannon entropy within 1e-6 of u = 1.
double renyi_entropy(double u, double eps);

// Rate family R_c(eps) = 1 - h_{1/(1+c)}(eps). R_0 is the Shannon limit, R_1
// the sequential-decoding cutoff rate.
double rate(double c, double eps);

enum class ParetoRegime {
    below_shannon,      // sum of R_0 falls short of N: reconstruction impossible
    finite,             // a finite Pareto coefficient describes the search
    undamaged_surplus,  // N or more noiseless packets: no finite coefficient exists
};

struct ParetoResult {
    ParetoRegime regime = ParetoRegime::finite;
    double c = 0.0;  // meaningful in the finite regime
};

// Solves sum_i R_c(eps_i) = N for c by bisection (tolerance 1e-6).
ParetoResult solve_pareto_c(const std::vector<double>& eps, int block_bits);

// Exponents of the improper-subtree growth (u) and correct-path weight-drop
// decay (v): each solves sum_i (1 - h_p(eps_i)) = n with p = u and p = 1 - v
// respectively. n may be fractional. The two are duals: v = 1 - u.
double solve_growth_exponent(const std::vector<double>& eps, double n);
double solve_decay_exponent(const std::vector<double>& eps, double n);

// Probability that a uniformly random transition table admits straightforward
// decoding from M packets: all 2^N extracted patterns distinct.
double straightforward_log2_prob(int block_bits, int m);
double straightforward_prob(int block_bits, int m);

// Transition probability of the candidate-count Markov chain: from i
// candidates to j in the next position (i, j >= 1).
double width_transition_prob(std::uint64_t i, std::uint64_t j, int block_bits, int m);

enum class StationaryMode {
    exact,       // binomial transition probabilities for the given (N, M)
    asymptotic,  // Poisson limit, depends on M - N only
};

struct StationaryDist {
    std::vector<double> p;  // probabilities of 1, 2, ... candidates
    double mean = 0.0;
    double stddev = 0.0;
    double residual = 0.0;  // max |p - pP| at convergence
    bool converged = false;
};

// Stationary distribution of the candidate-count chain by power iteration over
// a truncated state space.
StationaryDist stationary_width_dist(int block_bits, int m, StationaryMode mode, int states = 64);

struct ParetoFit {
    bool defined = false;
    double c_hat = 0.0;  // tail exponent
    double c_p = 0.0;    // scale: survival ~ c_p * w^-c_hat
    std::size_t points = 0;
};

// Least-squares slope of lg(survival) against lg(width) over the upper
// quartile of the sorted sample. The trailing `censored` entries are treated
// as right-censored at their recorded value and excluded from the regression.
ParetoFit fit_pareto_tail(const std::vector<double>& sorted_widths, std::size_t censored = 0);

// Mean informational content of a bit whose flip probability is uniform on
// [0, 1/2]: 1 - 1/ln 4. The quadrature variant integrates numerically.
double unl_mean_rate();
double unl_mean_rate_quadrature();

// Standard deviation of the same quantity: sqrt(21 - 2 pi^2) / (6 ln 2).
double unl_sigma();
double unl_sigma_quadrature();

struct FcFecOptimum {
    double eps_bar = 0.0;
    double rate = 0.0;
};

// Best achievable rate of fountain codes over per-packet FEC tuned to a single
// repair threshold: max over eps of 2 eps (1 - h(eps)).
FcFecOptimum unl_fcfec_optimum();

struct MonteCarloProb {
    double p = 0.0;
    double std_error = 0.0;
};

// Probability that M packets with uniform eps in [0, 1/2) carry at least N
// bits of information per step, by Monte Carlo.
MonteCarloProb unl_jrc_pr(int block_bits, int m, std::size_t samples, std::uint64_t seed,
                          int threads = 0);

struct FcJrcOptimum {
    int m = 0;
    double p_r = 0.0;
    double rate = 0.0;
};

// Optimal packet count for the fountain-over-JRC concatenation:
// argmax over M in [N, 8N] of (N/M) p_r(M, N).
FcJrcOptimum unl_fcjrc_optimize(int block_bits, std::size_t samples, std::uint64_t seed,
                                int threads = 0);

// One Monte Carlo pass shared by the p_r consumers: success counts for every
// prefix length up to m_max, from `samples` draws.
std::vector<double> unl_pr_curve(int block_bits, int m_max, std::size_t samples, std::uint64_t seed,
                                 int threads = 0);

}  // namespace jrc
