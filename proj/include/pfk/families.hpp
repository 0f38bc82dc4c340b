#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "pfk/presentation.hpp"

namespace pfk::families {

/// < x1, y1, ..., xg, yg | [x1,y1] ... [xg,yg] >
Presentation orientable_surface(std::int64_t genus);
/// < x0, ..., xg | x0^2 x1^2 ... xg^2 >, genus >= 1.
Presentation nonorientable_surface(std::int64_t genus);
Presentation free(std::int64_t rank);

/// B(n, m) = < x, y | y x^n y^-1 = x^m > as the HNN extension of <x>.
Hnn baumslag_solitar(std::int64_t n, std::int64_t m);

/// G_{i,j} = < a, b, c | a = [c^i, a][c^j, b] >, i, j >= 1.
Presentation g_family(std::int64_t i, std::int64_t j);
/// H_{i,j} = < a, s, t | a = [a^i, t^j][s, t] >, i, j >= 1.
Presentation h_family(std::int64_t i, std::int64_t j);
/// K_{i,j}: < a, s > and < t > amalgamated along a^i [s, a] = t^j, gcd(i, j) = 1.
Amalgam k_family(std::int64_t i, std::int64_t j);
/// N_{p,q,r}: < a, b > and < c > amalgamated along a^p b^q = c^-r,
/// non-zero with gcd(p, q, r) = 1.
Amalgam n_family(std::int64_t p, std::int64_t q, std::int64_t r);

/// Dispatch by name: "free", "surface", "nonorientable", "B", "G", "H", "K",
/// "N". Throws InvalidArgument on unknown names or constraint violations.
GroupInput builtin(std::string_view name, std::span<const std::int64_t> params);

}  // namespace pfk::families
