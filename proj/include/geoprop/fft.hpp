#pragma once

#include <vector>

#include "geoprop/util.hpp"

namespace geoprop {

/// In-place complex DFT, sum_j v_j e^{-2pi i jk/n} (no 1/n factor).
/// Any length; thread-safe (plan creation serialized internally).
void dft(std::vector<cplx>& v);

/// In-place inverse DFT, (1/n) sum_k v_k e^{+2pi i jk/n}.
void idft(std::vector<cplx>& v);

/// Signed DFT frequency index for bin k of an n-point transform:
/// 0,1,...,n/2, -(n/2-1),...,-1 style mapping (k <= n/2 ? k : k-n).
inline long dft_freq(int k, int n) { return (k <= n / 2) ? k : k - n; }

}  // namespace geoprop
