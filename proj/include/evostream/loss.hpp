#pragma once
#include <string_view>

namespace evostream {

enum class LossId { logistic, hinge };

struct LossValue {
    double value;
    double derivative;  // d loss / d score (a subgradient for hinge)
};

// Throws input_error unless y is -1 or +1.
LossValue prediction_loss(LossId loss, double score, int y);

// Throws config_error on unknown names. Accepts "logistic" and "hinge".
LossId parse_loss(std::string_view name);
const char* loss_name(LossId loss);

}  // namespace evostream
