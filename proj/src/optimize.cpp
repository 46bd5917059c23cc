#include "cvbell/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace cvbell {

namespace {

constexpr double k_simplex_tol = 1e-10;
constexpr long k_max_evals_per_start = 20000;

constexpr int k_halton_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

double halton(long index, int base) {
    double f = 1.0, r = 0.0;
    for (long i = index; i > 0; i /= base) {
        f /= base;
        r += f * static_cast<double>(i % base);
    }
    return r;
}

Eigen::VectorXd halton_point(long index, const ParameterBounds& b) {
    const Eigen::Index d = b.lo.size();
    Eigen::VectorXd p(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        p(k) = b.lo(k) + halton(index, k_halton_primes[k]) * (b.hi(k) - b.lo(k));
    }
    return p;
}

Eigen::VectorXd clamp(Eigen::VectorXd p, const ParameterBounds& b) {
    return p.cwiseMax(b.lo).cwiseMin(b.hi);
}

struct LocalResult {
    Eigen::VectorXd x;
    double fx = std::numeric_limits<double>::infinity();
    long n_evals = 0;
    bool converged = false;
};

// Standard Nelder-Mead on f (minimization) with box projection.
LocalResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                        const Eigen::VectorXd& x0, const ParameterBounds& b) {
    const Eigen::Index n = x0.size();
    std::vector<Eigen::VectorXd> xs;
    xs.reserve(n + 1);
    xs.push_back(clamp(x0, b));
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::VectorXd p = xs[0];
        const double step = 0.05 * (b.hi(k) - b.lo(k));
        p(k) += (p(k) + step <= b.hi(k)) ? step : -step;
        xs.push_back(clamp(std::move(p), b));
    }
    std::vector<double> fs(n + 1);
    LocalResult res;
    for (Eigen::Index j = 0; j <= n; ++j) fs[j] = f(xs[j]);
    res.n_evals = n + 1;

    std::vector<int> order(n + 1);
    while (res.n_evals < k_max_evals_per_start) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int c) { return fs[a] < fs[c]; });
        std::vector<Eigen::VectorXd> xs2(n + 1);
        std::vector<double> fs2(n + 1);
        for (Eigen::Index j = 0; j <= n; ++j) {
            xs2[j] = std::move(xs[order[j]]);
            fs2[j] = fs[order[j]];
        }
        xs.swap(xs2);
        fs.swap(fs2);

        double spread = 0.0;
        for (Eigen::Index j = 1; j <= n; ++j) {
            spread = std::max(spread, (xs[j] - xs[0]).cwiseAbs().maxCoeff());
        }
        const double fspread = fs[n] - fs[0];
        if (spread <= k_simplex_tol * (1.0 + xs[0].cwiseAbs().maxCoeff()) &&
            fspread <= k_simplex_tol * (1.0 + std::abs(fs[0]))) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (Eigen::Index j = 0; j < n; ++j) centroid += xs[j];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd xr = clamp(centroid + (centroid - xs[n]), b);
        const double fr = f(xr);
        ++res.n_evals;
        if (fr < fs[0]) {
            const Eigen::VectorXd xe = clamp(centroid + 2.0 * (xr - centroid), b);
            const double fe = f(xe);
            ++res.n_evals;
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            const bool outside = fr < fs[n];
            const Eigen::VectorXd xc =
                clamp(centroid + 0.5 * ((outside ? xr : xs[n]) - centroid), b);
            const double fc = f(xc);
            ++res.n_evals;
            if (fc < (outside ? fr : fs[n])) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (Eigen::Index j = 1; j <= n; ++j) {
                    xs[j] = xs[0] + 0.5 * (xs[j] - xs[0]);
                    fs[j] = f(xs[j]);
                    ++res.n_evals;
                }
            }
        }
    }

    int best = 0;
    for (Eigen::Index j = 1; j <= n; ++j) {
        if (fs[j] < fs[best]) best = static_cast<int>(j);
    }
    res.x = xs[best];
    res.fx = fs[best];
    return res;
}

}  // namespace

int parameter_count(Kind kind) { return kind == Kind::bell ? 10 : 15; }

ParameterBounds default_bounds(Kind kind) {
    const int n = parameter_count(kind);
    const int n_amp = kind == Kind::bell ? 4 : 6;
    ParameterBounds b{Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (int k = 0; k < n_amp; ++k) {
        b.lo(2 * k) = -0.1;
        b.hi(2 * k) = 0.1;
        b.lo(2 * k + 1) = -1.0;
        b.hi(2 * k + 1) = 1.0;
    }
    for (int k = 2 * n_amp; k < n; ++k) {
        b.lo(k) = 0.05;
        b.hi(k) = 60.0;
    }
    return b;
}

double evaluate_parameters(Kind kind, const Eigen::VectorXd& p) {
    if (p.size() != parameter_count(kind)) {
        throw std::invalid_argument("parameter vector has wrong length");
    }
    try {
        if (kind == Kind::bell) {
            const BellSettings s{{p(0), p(1)},
                                 {p(2), p(3)},
                                 {p(4), p(5)},
                                 {p(6), p(7)},
                                 make_bipartite(p(8), p(9))};
            return bell_chsh(s).value;
        }
        const MerminSettings s{{p(0), p(1)},
                               {p(2), p(3)},
                               {p(4), p(5)},
                               {p(6), p(7)},
                               {p(8), p(9)},
                               {p(10), p(11)},
                               make_tripartite(p(12), p(13), p(14))};
        return mermin3(s).value;
    } catch (const DegenerateState&) {
        return -std::numeric_limits<double>::infinity();
    }
}

OptimResult maximize(Kind kind, const ParameterBounds& bounds, int starts,
                     int rng_seed, const std::optional<Eigen::VectorXd>& warm_start,
                     int threads) {
    const int n = parameter_count(kind);
    if (bounds.lo.size() != n || bounds.hi.size() != n) {
        throw std::invalid_argument("bounds size does not match parameter count");
    }
    if ((bounds.lo.array() > bounds.hi.array()).any() ||
        !bounds.lo.allFinite() || !bounds.hi.allFinite()) {
        throw std::invalid_argument("bounds must be finite with lo <= hi");
    }
    if (starts < 1) throw std::invalid_argument("starts must be >= 1");
    if (threads < 1) threads = 1;

    const auto objective = [kind](const Eigen::VectorXd& p) {
        return -evaluate_parameters(kind, p);
    };

    const int total = starts + (warm_start ? 1 : 0);
    std::vector<LocalResult> locals(total);
    auto run_range = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const Eigen::VectorXd x0 =
                i < starts
                    ? halton_point(static_cast<long>(rng_seed) * starts + i + 1, bounds)
                    : clamp(*warm_start, bounds);
            locals[i] = nelder_mead(objective, x0, bounds);
        }
    };
    if (threads == 1 || total == 1) {
        run_range(0, total);
    } else {
        const int n_workers = std::min(threads, total);
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int t = 0; t < n_workers; ++t) {
            const int begin = static_cast<int>(static_cast<long>(total) * t / n_workers);
            const int end =
                static_cast<int>(static_cast<long>(total) * (t + 1) / n_workers);
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // Merge: best value, ties to the lowest start index.
    int best = 0;
    long evals = 0;
    for (int i = 0; i < total; ++i) {
        evals += locals[i].n_evals;
        if (locals[i].fx < locals[best].fx) best = i;
    }

    // One polish restart with a fresh simplex at the incumbent.
    LocalResult polish = nelder_mead(objective, locals[best].x, bounds);
    evals += polish.n_evals;
    const LocalResult& winner = polish.fx < locals[best].fx ? polish : locals[best];

    OptimResult result;
    result.best_params = winner.x;
    // Re-evaluate so the reported value matches the params bit-for-bit.
    result.best_value = evaluate_parameters(kind, winner.x);
    result.n_evaluations = evals;
    result.seed = rng_seed;
    result.converged = winner.converged;
    return result;
}

}  // namespace cvbell
