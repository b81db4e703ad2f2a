#pragma once

#include <vector>

#include "ibnls/grid.hpp"

namespace ibnls::spectral::fft {

// In-place unnormalized forward DFT over the grid's tensor layout.
void forward(const Grid& grid, std::vector<Complex>& data);

// In-place inverse DFT, normalized by 1/size.
void inverse(const Grid& grid, std::vector<Complex>& data);

}  // namespace ibnls::spectral::fft
