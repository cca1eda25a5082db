#include "jalign/walk.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace jalign {

namespace {

std::complex<double> cpow_int(std::complex<double> base, long long exp) {
    std::complex<double> result(1.0, 0.0);
    while (exp > 0) {
        if (exp & 1) result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b) {
    const int k = a.k;
    SquareMatrix c{k, std::vector<double>(static_cast<std::size_t>(k) * k, 0.0)};
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l) {
            const double x = a.at(i, l);
            if (x == 0.0) continue;
            for (int j = 0; j < k; ++j) c.at(i, j) += x * b.at(l, j);
        }
    return c;
}

}  // namespace

SquareMatrix transition_matrix(int k, const NoiseModel& model) {
    const std::vector<double> p = error_probs(model, k);
    SquareMatrix m{k, std::vector<double>(static_cast<std::size_t>(k) * k, 0.0)};
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m.at(i, j) = p[static_cast<std::size_t>(((j - i) % k + k) % k)];
    return m;
}

WalkSpectrum::WalkSpectrum(int k, const NoiseModel& model) : k_(k) {
    const std::vector<double> p = error_probs(model, k);
    eigenvalues_.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        std::complex<double> lambda(0.0, 0.0);
        for (int m = 0; m < k; ++m) {
            const double angle = 2.0 * std::numbers::pi * j * m / k;
            lambda += p[static_cast<std::size_t>(m)] * std::polar(1.0, angle);
        }
        eigenvalues_[static_cast<std::size_t>(j)] = lambda;
    }
}

std::vector<double> WalkSpectrum::t_step(long long t) const {
    if (t < 0) throw std::invalid_argument("t_step: t must be >= 0");
    std::vector<std::complex<double>> powers(static_cast<std::size_t>(k_));
    for (int m = 0; m < k_; ++m)
        powers[static_cast<std::size_t>(m)] = cpow_int(eigenvalues_[static_cast<std::size_t>(m)], t);

    std::vector<double> out(static_cast<std::size_t>(k_));
    for (int j = 0; j < k_; ++j) {
        std::complex<double> acc(0.0, 0.0);
        for (int m = 0; m < k_; ++m) {
            const double angle = -2.0 * std::numbers::pi * m * j / k_;
            acc += powers[static_cast<std::size_t>(m)] * std::polar(1.0, angle);
        }
        acc /= static_cast<double>(k_);
        if (std::abs(acc.imag()) > 1e-10)
            throw std::logic_error("t_step: imaginary residue above tolerance");
        double value = acc.real();
        if (value < 0.0 && value > -1e-12) value = 0.0;  // rounding of a true zero
        out[static_cast<std::size_t>(j)] = value;
    }
    return out;
}

std::vector<double> t_step_closed_form(int k, const NoiseModel& model, long long t) {
    return WalkSpectrum(k, model).t_step(t);
}

std::vector<double> t_step_matrix_power(int k, const NoiseModel& model, long long t) {
    if (t < 0) throw std::invalid_argument("t_step_matrix_power: t must be >= 0");
    SquareMatrix base = transition_matrix(k, model);
    SquareMatrix acc{k, std::vector<double>(static_cast<std::size_t>(k) * k, 0.0)};
    for (int i = 0; i < k; ++i) acc.at(i, i) = 1.0;
    while (t > 0) {
        if (t & 1) acc = multiply(acc, base);
        base = multiply(base, base);
        t >>= 1;
    }
    std::vector<double> row(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) row[static_cast<std::size_t>(j)] = acc.at(0, j);
    return row;
}

PluralityGap plurality_gap(int k, const NoiseModel& model, long long t) {
    if (t < 1) throw std::invalid_argument("plurality_gap: t must be >= 1");
    const std::vector<double> p = t_step_closed_form(k, model, t);
    double runner_up = -std::numeric_limits<double>::infinity();
    for (int j = 1; j < k; ++j) runner_up = std::max(runner_up, p[static_cast<std::size_t>(j)]);

    PluralityGap result;
    result.gap = p[0] - runner_up;
    result.bound = std::numeric_limits<double>::quiet_NaN();
    if (const auto* s = std::get_if<SimplePlusMinus>(&model)) {
        const double c = std::cos(2.0 * std::numbers::pi / k);
        result.bound = 2.0 * (1.0 - c) * std::pow(1.0 - s->q + s->q * c, static_cast<double>(t));
        if (s->q < 0.5 && !(result.gap > 0.0))
            throw std::logic_error("plurality_gap: gap must be positive for q < 1/2");
    }
    return result;
}

}  // namespace jalign
