#pragma once

#include <string>
#include <variant>
#include <vector>

namespace jalign {

class Rng;

// Additive error that stays put with probability 1-q and steps +-1 mod k with
// probability q/2 each. For k=2 the two steps coincide, so the answer flips
// with total probability q.
struct SimplePlusMinus {
    double q = 0.0;
};

// Error value j drawn with probability q_vec[j], j in [0, k).
struct GeneralIID {
    std::vector<double> q_vec;
};

// P(error=0) = 1/k + delta, P(error=j!=0) = 1/k - delta/(k-1).
struct BiasedTowardZero {
    double delta = 0.0;
};

using NoiseModel = std::variant<SimplePlusMinus, GeneralIID, BiasedTowardZero>;

// Validates the model against k and returns the length-k vector of error
// probabilities: entry j is P(eta = j mod k). Throws std::invalid_argument
// when the model is malformed or incompatible with k.
std::vector<double> error_probs(const NoiseModel& model, int k);

// One draw of the additive error, via inverse-CDF walk over error_probs.
int sample_error(const NoiseModel& model, int k, Rng& rng);

// The same inverse-CDF walk, fed by a caller-supplied uniform draw in [0, 1);
// the hot path for bulk sampling with precomputed probabilities.
int error_from_uniform(const std::vector<double>& probs, double u);

// Compact description, e.g. "simple:0.2" or "general:0.5|0.3|0.2".
std::string describe(const NoiseModel& model);

}  // namespace jalign
