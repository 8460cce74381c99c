#include "tcfbm/error.hpp"

#include <utility>

namespace tcfbm {

NumericalError::NumericalError(const std::string& what, std::vector<double> grid)
    : Error(what), grid_(std::move(grid)) {}

}  // namespace tcfbm
