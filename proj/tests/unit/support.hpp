#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "ultratree/filling.hpp"
#include "ultratree/generators.hpp"
#include "ultratree/metric_space.hpp"

namespace support {

using namespace ultratree;

inline const double e = std::exp(1.0);

// a, b, c finite, w remote; rho(a,b) = 1/e, rho(a,c) = rho(b,c) = 1.
inline ExtendedMetricSpace space_E() {
    const double inf = INFINITY;
    return ExtendedMetricSpace::from_distances({"a", "b", "c", "w"}, 3,
                                               {0, 1 / e, 1, inf,  //
                                                1 / e, 0, 1, inf,  //
                                                1, 1, 0, inf,      //
                                                inf, inf, inf, 0});
}

// Relative closeness that also accepts equal infinities.
inline bool close(double x, double y, double rel = 1e-9) {
    return x == y || std::abs(x - y) <= rel * std::max(1.0, std::abs(y));
}

inline FillingTree tree_E() { return FillingTree(space_E()); }

inline ExtendedMetricSpace finite_space(std::vector<std::string> labels, std::vector<double> full) {
    return ExtendedMetricSpace::from_distances(std::move(labels), std::nullopt, std::move(full));
}

// Runs `body` on `count` random dendrogram spaces with |Z| drawn from [lo, hi].
inline void for_random_spaces(std::uint64_t seed, int count, std::size_t lo, std::size_t hi,
                              const std::function<void(const ExtendedMetricSpace&, Rng&)>& body,
                              std::optional<double> grid = std::nullopt) {
    Rng rng(seed);
    for (int k = 0; k < count; ++k) {
        DendrogramOptions o;
        o.points = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
        o.grid = grid;
        body(random_dendrogram_space(rng, o), rng);
    }
}

}  // namespace support
