#pragma once

#include "pairsum/linalg.hpp"
#include "pairsum/rational.hpp"

#include <cstdint>
#include <random>

namespace testsupport {

using pairsum::QVector;
using pairsum::Rational;

/// Random nonzero-denominator rational with numerator in [-bound, bound]
/// and denominator in [1, bound].
inline Rational random_rational(std::mt19937_64& rng, int bound = 60) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, bound);
    return Rational(num(rng), den(rng));
}

inline QVector random_vector(std::mt19937_64& rng, std::size_t d, int bound = 60) {
    QVector v(d);
    for (auto& c : v) c = random_rational(rng, bound);
    return v;
}

inline QVector random_nonzero_vector(std::mt19937_64& rng, std::size_t d, int bound = 60) {
    for (;;) {
        QVector v = random_vector(rng, d, bound);
        if (!pairsum::is_zero_vector(v)) return v;
    }
}

} // namespace testsupport
