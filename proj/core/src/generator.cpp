#include "drbsde/generator.hpp"

#include <algorithm>

namespace drbsde {

GeneratorSpec sum_with_decomposition(GeneratorSpec g1, GeneratorSpec g2) {
    auto left = std::make_shared<const GeneratorSpec>(std::move(g1));
    auto right = std::make_shared<const GeneratorSpec>(std::move(g2));

    GeneratorSpec sum;
    sum.name = left->name + "+" + right->name;
    sum.eval = [left, right](double t, double b, double y, double z) {
        return left->eval(t, b, y, z) + right->eval(t, b, y, z);
    };
    sum.a_norm = left->a_norm + right->a_norm;
    if (right->full_growth) sum.a_norm += right->full_growth->mu;
    sum.regularity = right->regularity == Regularity::continuous ? left->regularity
                                                                 : right->regularity;
    if (left->z_growth && right->full_growth) {
        const auto lf = left->z_growth->f;
        const auto rf = right->full_growth->f;
        sum.full_growth = FullGrowthMetadata{
            [lf, rf](double t, double b) { return lf(t, b) + rf(t, b); },
            left->z_growth->mu + right->full_growth->mu,
            left->z_growth->lambda + right->full_growth->lambda};
    }
    sum.decomposition = GeneratorDecomposition{left, right};
    sum.heavy = left->heavy || right->heavy;
    return sum;
}

}  // namespace drbsde
