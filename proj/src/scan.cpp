#include "cvbell/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace cvbell {

namespace {

void validate_axis(const AxisRange& r, const char* name) {
    if (!(std::isfinite(r.lo) && std::isfinite(r.hi))) {
        throw std::invalid_argument(std::string(name) + " range must be finite");
    }
    if (r.count < 1) {
        throw std::invalid_argument(std::string(name) + " count must be >= 1");
    }
    if (r.count == 1) {
        if (r.lo != r.hi) {
            throw std::invalid_argument(std::string(name) +
                                        ": single-point axis requires lo == hi");
        }
    } else if (!(r.lo < r.hi)) {
        throw std::invalid_argument(std::string(name) + ": lo must be < hi");
    }
}

double cell_value(const ScanSpec& spec, Kind kind, double eta, double sigma) {
    if (kind == Kind::bell) {
        const BellSettings s{spec.z, spec.z_prime, spec.w, spec.w_prime,
                             make_bipartite(eta, sigma)};
        return bell_chsh(s).value;
    }
    const MerminSettings s{spec.z,    spec.z_prime,    spec.w, spec.w_prime,
                           spec.zeta, spec.zeta_prime,
                           make_tripartite(eta, sigma, spec.tau)};
    return mermin3(s).value;
}

}  // namespace

double axis_point(const AxisRange& r, int i) {
    if (r.count == 1) return r.lo;
    return r.lo + static_cast<double>(i) * (r.hi - r.lo) / (r.count - 1);
}

ScanResult scan(const ScanSpec& spec, Kind kind, int threads) {
    validate_axis(spec.eta_range, "eta");
    validate_axis(spec.sigma_range, "sigma");
    if (spec.eta_range.lo == 0.0 && spec.sigma_range.lo == 0.0 &&
        (kind == Kind::bell || spec.tau == 0.0)) {
        throw std::invalid_argument("grid contains the degenerate origin cell");
    }
    if (threads < 1) threads = 1;

    const int ne = spec.eta_range.count;
    const int ns = spec.sigma_range.count;
    ScanResult result;
    result.spec = spec;
    result.kind = kind;
    result.values.resize(ne, ns);
    result.violated.resize(ne, ns);

    const double classical =
        kind == Kind::bell ? bell_classical_bound : mermin_classical_bound;

    auto fill_rows = [&](int row_begin, int row_end) {
        for (int i = row_begin; i < row_end; ++i) {
            const double eta = axis_point(spec.eta_range, i);
            for (int j = 0; j < ns; ++j) {
                const double sigma = axis_point(spec.sigma_range, j);
                double v;
                try {
                    v = cell_value(spec, kind, eta, sigma);
                } catch (const DegenerateState&) {
                    v = std::numeric_limits<double>::quiet_NaN();
                }
                result.values(i, j) = v;
                result.violated(i, j) = std::abs(v) > classical + 1e-9;
            }
        }
    };

    if (threads == 1 || ne == 1) {
        fill_rows(0, ne);
    } else {
        const int n_workers = std::min(threads, ne);
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int t = 0; t < n_workers; ++t) {
            const int begin = static_cast<int>(static_cast<long>(ne) * t / n_workers);
            const int end = static_cast<int>(static_cast<long>(ne) * (t + 1) / n_workers);
            pool.emplace_back(fill_rows, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // Argmax in row-major order so ties resolve deterministically.
    for (int i = 0; i < ne; ++i) {
        for (int j = 0; j < ns; ++j) {
            const double v = result.values(i, j);
            if (std::isnan(v)) continue;
            if (!result.has_max || v > result.max_value) {
                result.has_max = true;
                result.max_value = v;
                result.argmax_eta = i;
                result.argmax_sigma = j;
            }
        }
    }
    return result;
}

}  // namespace cvbell
