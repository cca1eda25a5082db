#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jalign/rng.hpp"
#include "jalign/walk.hpp"

using namespace jalign;

namespace {

std::vector<double> random_prob_vector(int k, Rng& rng) {
    std::vector<double> p(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.uniform_double());
        sum += v;
    }
    for (auto& v : p) v /= sum;
    return p;
}

}  // namespace

TEST_CASE("transition matrix") {
    SUBCASE("k=3, q=0.3: rows are cyclic shifts of (0.7, 0.15, 0.15)") {
        const SquareMatrix m = transition_matrix(3, SimplePlusMinus{0.3});
        CHECK(m.at(0, 0) == doctest::Approx(0.7));
        CHECK(m.at(0, 1) == doctest::Approx(0.15));
        CHECK(m.at(0, 2) == doctest::Approx(0.15));
        CHECK(m.at(1, 1) == doctest::Approx(0.7));
        CHECK(m.at(1, 2) == doctest::Approx(0.15));
        CHECK(m.at(1, 0) == doctest::Approx(0.15));
        CHECK(m.at(2, 2) == doctest::Approx(0.7));
        CHECK(m.at(2, 0) == doctest::Approx(0.15));
        CHECK(m.at(2, 1) == doctest::Approx(0.15));
    }
    SUBCASE("q=0 is the identity") {
        const SquareMatrix m = transition_matrix(4, SimplePlusMinus{0.0});
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(m.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
    }
    SUBCASE("general iid: first row is the error vector") {
        const std::vector<double> q = {0.5, 0.3, 0.2};
        const SquareMatrix m = transition_matrix(3, GeneralIID{q});
        for (int j = 0; j < 3; ++j) CHECK(m.at(0, j) == doctest::Approx(q[static_cast<std::size_t>(j)]));
    }
}

TEST_CASE("spectrum of the simple model matches the cosine formula") {
    for (int k = 2; k <= 8; ++k) {
        for (double q : {0.0, 0.2, 0.5}) {
            const WalkSpectrum spec(k, SimplePlusMinus{q});
            for (int j = 0; j < k; ++j) {
                const double expected = 1.0 - q + q * std::cos(2.0 * std::numbers::pi * j / k);
                CHECK(spec.eigenvalues()[static_cast<std::size_t>(j)].real() ==
                      doctest::Approx(expected).epsilon(1e-12));
                CHECK(std::abs(spec.eigenvalues()[static_cast<std::size_t>(j)].imag()) < 1e-12);
            }
        }
    }
}

TEST_CASE("closed form t-step distribution") {
    SUBCASE("t=0 is the point mass at zero") {
        const auto p = t_step_closed_form(5, SimplePlusMinus{0.3}, 0);
        CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-12));
        for (int j = 1; j < 5; ++j) CHECK(p[static_cast<std::size_t>(j)] == doctest::Approx(0.0));
    }
    SUBCASE("k=3, q=0.3, t=2 matches both the printed formula and the matrix power") {
        const auto p = t_step_closed_form(3, SimplePlusMinus{0.3}, 2);
        const double lambda = 1.0 - 1.5 * 0.3;
        CHECK(p[0] == doctest::Approx(1.0 / 3.0 + 2.0 / 3.0 * lambda * lambda).epsilon(1e-12));
        CHECK(p[1] == doctest::Approx(1.0 / 3.0 - 1.0 / 3.0 * lambda * lambda).epsilon(1e-12));
        CHECK(p[2] == doctest::Approx(p[1]).epsilon(1e-14));
        // frozen values from the matrix-power route: [0.535, 0.2325, 0.2325]
        CHECK(p[0] == doctest::Approx(0.535).epsilon(1e-12));
        CHECK(p[1] == doctest::Approx(0.2325).epsilon(1e-12));
        const auto mp = t_step_matrix_power(3, SimplePlusMinus{0.3}, 2);
        for (int j = 0; j < 3; ++j)
            CHECK(p[static_cast<std::size_t>(j)] ==
                  doctest::Approx(mp[static_cast<std::size_t>(j)]).epsilon(1e-12));
    }
    SUBCASE("k=2 reduces to (1 + (1-2q)^t) / 2") {
        for (double q : {0.1, 0.25, 0.4}) {
            for (int t = 1; t <= 10; ++t) {
                const auto p = t_step_closed_form(2, SimplePlusMinus{q}, t);
                CHECK(p[0] ==
                      doctest::Approx((1.0 + std::pow(1.0 - 2.0 * q, t)) / 2.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("matrix power route") {
    SUBCASE("t=1 returns the first row of the transition matrix") {
        const auto p = t_step_matrix_power(4, SimplePlusMinus{0.4}, 1);
        const SquareMatrix m = transition_matrix(4, SimplePlusMinus{0.4});
        for (int j = 0; j < 4; ++j) CHECK(p[static_cast<std::size_t>(j)] == doctest::Approx(m.at(0, j)));
    }
    SUBCASE("k=3, q=0.5, t=1 is (0.5, 0.25, 0.25)") {
        const auto p = t_step_matrix_power(3, SimplePlusMinus{0.5}, 1);
        CHECK(p[0] == doctest::Approx(0.5));
        CHECK(p[1] == doctest::Approx(0.25));
        CHECK(p[2] == doctest::Approx(0.25));
    }
}

TEST_CASE("closed form agrees with matrix power across the grid") {
    for (int k = 2; k <= 8; ++k) {
        for (double q : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
            for (long long t : {0LL, 1LL, 2LL, 5LL, 17LL, 50LL}) {
                const auto a = t_step_closed_form(k, SimplePlusMinus{q}, t);
                const auto b = t_step_matrix_power(k, SimplePlusMinus{q}, t);
                for (int j = 0; j < k; ++j) {
                    CHECK(std::abs(a[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(j)]) <
                          1e-10);
                }
            }
        }
    }
}

TEST_CASE("t-step vectors are distributions with the expected shape") {
    Rng rng(404);
    for (int k = 2; k <= 6; ++k) {
        for (int rep = 0; rep < 5; ++rep) {
            const GeneralIID model{random_prob_vector(k, rng)};
            for (long long t : {0LL, 1LL, 3LL, 10LL}) {
                const auto p = t_step_closed_form(k, model, t);
                double sum = 0.0;
                for (double v : p) {
                    CHECK(v >= 0.0);
                    sum += v;
                }
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
    // symmetry of the simple model: p_0j = p_0,k-j
    for (int k = 3; k <= 8; ++k) {
        const auto p = t_step_closed_form(k, SimplePlusMinus{0.35}, 7);
        for (int j = 1; j < k; ++j)
            CHECK(p[static_cast<std::size_t>(j)] ==
                  doctest::Approx(p[static_cast<std::size_t>(k - j)]).epsilon(1e-12));
    }
    // p_00^t decays toward 1/k and never increases
    for (double q : {0.1, 0.3, 0.5}) {
        double prev = 1.0;
        for (int t = 1; t <= 40; ++t) {
            const double p00 = t_step_closed_form(5, SimplePlusMinus{q}, t)[0];
            CHECK(p00 <= prev + 1e-14);
            CHECK(p00 > 1.0 / 5.0 - 1e-12);
            prev = p00;
        }
    }
}

TEST_CASE("plurality gap") {
    SUBCASE("k=3, q=0.5, t=1: exact gap 0.25, printed bound 0.75 exceeds it") {
        const PluralityGap g = plurality_gap(3, SimplePlusMinus{0.5}, 1);
        CHECK(g.gap == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(g.bound == doctest::Approx(0.75).epsilon(1e-12));
    }
    SUBCASE("q=0 keeps the walk at zero: gap 1 for every t") {
        for (long long t : {1LL, 5LL, 20LL})
            CHECK(plurality_gap(4, SimplePlusMinus{0.0}, t).gap == doctest::Approx(1.0));
    }
    SUBCASE("k=3 gap is exactly (1 - 3q/2)^t") {
        for (double q : {0.1, 0.3}) {
            for (int t = 1; t <= 20; ++t) {
                const double expected = std::pow(1.0 - 1.5 * q, t);
                CHECK(plurality_gap(3, SimplePlusMinus{q}, t).gap ==
                      doctest::Approx(expected).epsilon(1e-12));
                const auto p = t_step_matrix_power(3, SimplePlusMinus{q}, t);
                CHECK(p[0] - std::max(p[1], p[2]) == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
    SUBCASE("runner-up lives at j=1 across the grid") {
        for (int k = 3; k <= 8; ++k) {
            for (double q : {0.1, 0.2, 0.3, 0.4, 0.5}) {
                for (long long t : {1LL, 2LL, 5LL, 10LL, 30LL}) {
                    const auto p = t_step_closed_form(k, SimplePlusMinus{q}, t);
                    double max_rest = 0.0;
                    for (int j = 1; j < k; ++j)
                        max_rest = std::max(max_rest, p[static_cast<std::size_t>(j)]);
                    CHECK(p[1] >= max_rest - 1e-14);
                }
            }
        }
    }
    SUBCASE("bound is NaN for models without a single q") {
        const PluralityGap g = plurality_gap(3, GeneralIID{{0.6, 0.2, 0.2}}, 2);
        CHECK(std::isnan(g.bound));
        CHECK(g.gap > 0.0);
    }
}

TEST_CASE("monte carlo consistency of the walk distribution") {
    // t-fold sum of iid model errors, compared to t_step at 4 sigma
    const int k = 4;
    const NoiseModel model = SimplePlusMinus{0.3};
    const long long samples = 100000;
    const int t = 5;
    Rng rng(2024);
    std::vector<long long> hist(static_cast<std::size_t>(k), 0);
    for (long long s = 0; s < samples; ++s) {
        int state = 0;
        for (int step = 0; step < t; ++step) state = (state + sample_error(model, k, rng)) % k;
        ++hist[static_cast<std::size_t>(state)];
    }
    const auto p = t_step_closed_form(k, model, t);
    for (int j = 0; j < k; ++j) {
        const double phat = static_cast<double>(hist[static_cast<std::size_t>(j)]) / samples;
        const double sigma = std::sqrt(p[static_cast<std::size_t>(j)] *
                                       (1.0 - p[static_cast<std::size_t>(j)]) / samples);
        CHECK(std::abs(phat - p[static_cast<std::size_t>(j)]) <= 4.0 * sigma);
    }
}
