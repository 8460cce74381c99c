#include "tcfbm/special.hpp"

#include <cmath>
#include <string>

#include "tcfbm/error.hpp"

namespace tcfbm {

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw ParameterError("gamma_fn is only used for x > 0, got " + std::to_string(x));
    }
    return std::tgamma(x);
}

}  // namespace tcfbm
