#pragma once

#include <optional>
#include <string>

#include "fibdiff/differentiate.hpp"

namespace fibdiff {

// First component: same-family identity from the real part (q = -1 families only).
Identity apply_real_part(const DerivedForm& df);

// Second component: sigma-power identity from the imaginary part (requires q < 0).
Identity apply_imag_part(const DerivedForm& df);

// The lexicographically smallest sigma exponent, projected onto the free indices.
Sub default_pivot(const Identity& sid);

// Multiplies through by sigma^(fresh - pivot).
Identity shift_normalize(const Identity& sid, const std::string& fresh,
                         const std::optional<Sub>& pivot = std::nullopt);

// tau <-> sigma and sqrtD -> -sqrtD.
Identity conjugate_swap(const Identity& sid);

// Replaces each c * sigma^h * R (c = a + b sqrtD) by (a Z[h] - b (Z[h+1] - q Z[h-1])) * R.
Identity binet_combine(const Identity& sid, const std::string& family);

// Multiplies sigma^d into every additive term of e.
Expr push_sigma(const Expr& e, const Sub& d);

// Rewrites nodes bottom-up; f returns a replacement or nullopt to keep the node.
Expr rewrite(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& f);

}  // namespace fibdiff
