#include "jalign/recovery_params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace jalign {

std::string to_string(AnchorMode m) {
    return m == AnchorMode::SingleAnchor ? "single-anchor" : "all-pairs";
}

AnchorMode anchor_mode_from_string(const std::string& s) {
    if (s == "single-anchor") return AnchorMode::SingleAnchor;
    if (s == "all-pairs") return AnchorMode::AllPairs;
    throw std::invalid_argument("unknown anchor mode: " + s);
}

RecoveryParams RecoveryParams::tuned(int L, double epsilon, int b1, int b, long long m,
                                     AnchorMode anchor) {
    if (L < 1) throw std::invalid_argument("RecoveryParams: L must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw std::invalid_argument("RecoveryParams: epsilon must lie in (0, 1/2)");
    if (b1 < 1 || b < 1) throw std::invalid_argument("RecoveryParams: branching factors must be >= 1");
    if (m < 1) throw std::invalid_argument("RecoveryParams: num_queries must be >= 1");
    RecoveryParams p;
    p.path_length_scale = L;
    p.epsilon = epsilon;
    p.first_level_branching = b1;
    p.branching = b;
    p.num_queries = m;
    p.anchor = anchor;
    p.mode = ParamMode::Tuned;
    return p;
}

RecoveryParams RecoveryParams::paper(int n, double delta, AnchorMode anchor) {
    if (n < 16) throw std::invalid_argument("RecoveryParams::paper: n too small (need ln ln n > 0)");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("RecoveryParams::paper: delta must lie in (0, 1)");
    const double ln_n = std::log(static_cast<double>(n));
    const double lnln_n = std::log(ln_n);
    const int L = static_cast<int>(std::llround(ln_n / lnln_n));
    const double epsilon = 1.0 / std::sqrt(lnln_n);
    const double amp = std::pow(delta, -static_cast<double>(L));
    const double b1_real = std::ceil(4.0 * ln_n * amp);
    const double m_real = std::ceil(20.0 * static_cast<double>(n) * ln_n * amp);
    const double max_pairs = static_cast<double>(n) * (n - 1) / 2.0;

    std::ostringstream err;
    if (b1_real > static_cast<double>(n - 1)) {
        err << "paper-mode parameters infeasible at n=" << n << ": first-level branching "
            << "ceil(4 ln n / delta^L) = " << b1_real << " exceeds n-1 = " << (n - 1);
        throw std::invalid_argument(err.str());
    }
    if (m_real > max_pairs) {
        err << "paper-mode parameters infeasible at n=" << n << ": query budget "
            << "ceil(20 n ln n / delta^L) = " << m_real << " exceeds n(n-1)/2 = " << max_pairs;
        throw std::invalid_argument(err.str());
    }
    if (epsilon >= 0.5) {
        err << "paper-mode parameters infeasible at n=" << n << ": epsilon = 1/sqrt(ln ln n) = "
            << epsilon << " is not below 1/2";
        throw std::invalid_argument(err.str());
    }

    RecoveryParams p;
    p.path_length_scale = L;
    p.epsilon = epsilon;
    p.first_level_branching = static_cast<int>(b1_real);
    p.branching = static_cast<int>(std::ceil(4.0 * ln_n));
    p.num_queries = static_cast<long long>(m_real);
    p.anchor = anchor;
    p.mode = ParamMode::Paper;
    return p;
}

int RecoveryParams::root_depth() const {
    return static_cast<int>(std::llround(epsilon * path_length_scale));
}

int RecoveryParams::total_depth() const {
    const int total = static_cast<int>(std::llround((0.5 + epsilon) * path_length_scale));
    return std::max(root_depth(), total);
}

double RecoveryParams::path_length_bound() const {
    return (1.0 + 2.0 * epsilon) * path_length_scale + 2.0;
}

}  // namespace jalign
