#include "jalign/noise_model.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "jalign/rng.hpp"

namespace jalign {

namespace {

struct ProbBuilder {
    int k;

    std::vector<double> operator()(const SimplePlusMinus& m) const {
        if (!(m.q >= 0.0 && m.q <= 0.5))
            throw std::invalid_argument("SimplePlusMinus: q must lie in [0, 1/2]");
        std::vector<double> p(static_cast<std::size_t>(k), 0.0);
        p[0] += 1.0 - m.q;
        p[static_cast<std::size_t>(1 % k)] += m.q / 2.0;   // +1 and -1 collapse when k=2
        p[static_cast<std::size_t>((k - 1) % k)] += m.q / 2.0;
        return p;
    }

    std::vector<double> operator()(const GeneralIID& m) const {
        if (static_cast<int>(m.q_vec.size()) != k)
            throw std::invalid_argument("GeneralIID: q_vec length must equal k");
        double sum = 0.0;
        for (double q : m.q_vec) {
            if (q < 0.0) throw std::invalid_argument("GeneralIID: negative entry in q_vec");
            sum += q;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("GeneralIID: q_vec must sum to 1 within 1e-12");
        return m.q_vec;
    }

    std::vector<double> operator()(const BiasedTowardZero& m) const {
        const double max_delta = 1.0 - 1.0 / k;
        if (!(m.delta > 0.0 && m.delta <= max_delta))
            throw std::invalid_argument("BiasedTowardZero: delta must lie in (0, 1-1/k]");
        std::vector<double> p(static_cast<std::size_t>(k), 1.0 / k - m.delta / (k - 1));
        p[0] = 1.0 / k + m.delta;
        return p;
    }
};

}  // namespace

std::vector<double> error_probs(const NoiseModel& model, int k) {
    if (k < 2) throw std::invalid_argument("error_probs: k must be >= 2");
    return std::visit(ProbBuilder{k}, model);
}

int sample_error(const NoiseModel& model, int k, Rng& rng) {
    return error_from_uniform(error_probs(model, k), rng.uniform_double());
}

int error_from_uniform(const std::vector<double>& probs, double u) {
    double acc = 0.0;
    const int k = static_cast<int>(probs.size());
    for (int j = 0; j < k; ++j) {
        acc += probs[static_cast<std::size_t>(j)];
        if (u < acc) return j;
    }
    return k - 1;  // u landed in the rounding slack at the top of the CDF
}

std::string describe(const NoiseModel& model) {
    char buf[64];
    if (const auto* s = std::get_if<SimplePlusMinus>(&model)) {
        std::snprintf(buf, sizeof buf, "simple:%.17g", s->q);
        return buf;
    }
    if (const auto* b = std::get_if<BiasedTowardZero>(&model)) {
        std::snprintf(buf, sizeof buf, "biased:%.17g", b->delta);
        return buf;
    }
    const auto& g = std::get<GeneralIID>(model);
    std::string out = "general:";
    for (std::size_t i = 0; i < g.q_vec.size(); ++i) {
        if (i > 0) out += '|';
        std::snprintf(buf, sizeof buf, "%.17g", g.q_vec[i]);
        out += buf;
    }
    return out;
}

}  // namespace jalign
