#pragma once

#include <vector>

#include "zakharov/grid.hpp"

namespace zakharov::detail {

// Lattice coefficients <-> m^3 FFT-order array (m >= N). extract rescales by 1/m^3.
void embed_coefficients(const GridSpec& g, const std::vector<cplx>& c, int m, std::vector<cplx>& out);
void extract_coefficients(const GridSpec& g, const std::vector<cplx>& big, int m, std::vector<cplx>& c);
inline int padded_size(const GridSpec& g) { return 3 * g.points() / 2; }

}  // namespace zakharov::detail
