#include "evostream/loss.hpp"

#include <cmath>
#include <string>

#include "evostream/errors.hpp"

namespace evostream {

LossValue prediction_loss(LossId loss, double score, int y) {
    if (y != 1 && y != -1) throw input_error("prediction_loss: label must be -1 or +1");
    const double yd = static_cast<double>(y);
    switch (loss) {
        case LossId::logistic: {
            // ln(1 + e^{-z}) with z = y*score, split by sign so the exponent
            // never overflows.
            const double z = yd * score;
            if (z > 0.0) {
                const double e = std::exp(-z);
                return {std::log1p(e), -yd * e / (1.0 + e)};
            }
            const double e = std::exp(z);
            return {-z + std::log1p(e), -yd / (1.0 + e)};
        }
        case LossId::hinge: {
            const double margin = 1.0 - yd * score;
            // Subgradient at the kink (margin exactly 0) is 0.
            if (margin > 0.0) return {margin, -yd};
            return {0.0, 0.0};
        }
    }
    throw config_error("prediction_loss: unknown loss id");
}

LossId parse_loss(std::string_view name) {
    if (name == "logistic") return LossId::logistic;
    if (name == "hinge") return LossId::hinge;
    throw config_error("unknown loss '" + std::string(name) + "' (expected logistic or hinge)");
}

const char* loss_name(LossId loss) {
    return loss == LossId::logistic ? "logistic" : "hinge";
}

}  // namespace evostream
