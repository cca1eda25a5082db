#pragma once

#include <complex>
#include <vector>

#include "jalign/noise_model.hpp"

namespace jalign {

// Row-major k x k matrix, minimal on purpose: the walks here are circulants
// on Z/kZ with k small, nothing more general is needed.
struct SquareMatrix {
    int k = 0;
    std::vector<double> data;

    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * k + j]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(i) * k + j]; }
};

// Transition matrix of the accumulated-error walk: entry (i, j) is
// P(error = j - i mod k). Circulant; every row is a cyclic shift of the
// model's error-probability vector.
SquareMatrix transition_matrix(int k, const NoiseModel& model);

// Spectral view of the walk. Eigenvalue j is the DFT of the error vector at
// frequency j; for the simple +-1 model that reduces to 1 - q + q cos(2 pi j / k).
class WalkSpectrum {
public:
    WalkSpectrum(int k, const NoiseModel& model);

    int k() const { return k_; }
    const std::vector<std::complex<double>>& eigenvalues() const { return eigenvalues_; }

    // t-step distribution p_{0j}^t via the eigenvector expansion,
    // p_{0j}^t = (1/k) sum_m lambda_m^t w^{-mj}. The imaginary residue must
    // stay below 1e-10 or the call throws (a larger residue means the
    // expansion itself is wrong).
    std::vector<double> t_step(long long t) const;

private:
    int k_;
    std::vector<std::complex<double>> eigenvalues_;
};

std::vector<double> t_step_closed_form(int k, const NoiseModel& model, long long t);

// Independent route: first row of the t-th matrix power, by repeated squaring
// in real arithmetic. Exists to cross-check the closed form.
std::vector<double> t_step_matrix_power(int k, const NoiseModel& model, long long t);

struct PluralityGap {
    double gap = 0.0;    // p_00^t - max_{j != 0} p_0j^t
    double bound = 0.0;  // reference expression 2(1-cos(2pi/k))(1-q+q cos(2pi/k))^t;
                         // NaN for models without a single q. Reported, not asserted:
                         // it exceeds the exact gap on small cases (e.g. k=3, q=1/2, t=1).
};

// Exact gap of the vote distribution after t steps. For SimplePlusMinus with
// q < 1/2 the gap is provably positive and the function enforces that.
PluralityGap plurality_gap(int k, const NoiseModel& model, long long t);

}  // namespace jalign
