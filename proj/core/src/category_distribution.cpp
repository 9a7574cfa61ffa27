#include "ordagree/category_distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ordagree {

namespace {
constexpr double kSumTolerance = 1e-12;
}

CategoryDistribution::CategoryDistribution(std::vector<double> probabilities)
    : p_(std::move(probabilities)) {
    if (p_.size() < 2) {
        throw std::invalid_argument("CategoryDistribution: need at least 2 levels, got " +
                                    std::to_string(p_.size()));
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < p_.size(); ++k) {
        const double pk = p_[k];
        if (!(pk >= 0.0)) {
            throw std::invalid_argument("CategoryDistribution: p_" + std::to_string(k + 1) +
                                        " = " + std::to_string(pk) + " is negative");
        }
        sum += pk;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw std::invalid_argument("CategoryDistribution: probabilities sum to " +
                                    std::to_string(sum) + ", expected 1");
    }
    f_.resize(p_.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < p_.size(); ++k) {
        acc += p_[k];
        f_[k] = acc;
    }
    f_.back() = 1.0;
}

double CategoryDistribution::mean_score() const {
    double m = 0.0;
    for (std::size_t k = 0; k < p_.size(); ++k) m += static_cast<double>(k + 1) * p_[k];
    return m;
}

bool CategoryDistribution::is_point_mass() const {
    for (const double pk : p_) {
        if (pk == 1.0) return true;
    }
    return false;
}

}  // namespace ordagree
