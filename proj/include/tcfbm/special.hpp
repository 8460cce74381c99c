#pragma once

namespace tcfbm {

// Gamma function for x > 0. Every closed form in the library goes through here.
double gamma_fn(double x);

}  // namespace tcfbm
