#pragma once

#include "toricq/exactlinalg.hpp"

#include <vector>

namespace toricq::detail {

struct DDResult {
    std::vector<IntVector> lineality;  ///< basis of the lineality space (not canonical)
    std::vector<IntVector> rays;       ///< extreme rays modulo lineality, primitive
};

/**
 * Motzkin double description: generators of {x in Q^dim : a.x >= 0 for all a}.
 * The rays returned are exactly the extreme rays of the cone modulo its
 * lineality space.
 */
DDResult double_description(const std::vector<IntVector>& inequalities, std::size_t dim);

}  // namespace toricq::detail
