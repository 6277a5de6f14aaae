#include "lacuna/kernels/kernels.hpp"

// Non-x86 builds: the AVX2 backend reports itself unavailable and the
// dispatcher never routes here.

namespace lacuna::kernels::detail {

bool avx2_available() { return false; }

void accumulate_avx2(const DyadicSum&, const PhaseBlock&, std::span<double>) {
    throw NumericError("avx2 backend not built on this architecture");
}

void poly_batch_avx2(std::span<const double>, std::span<const double>, std::span<double>) {
    throw NumericError("avx2 backend not built on this architecture");
}

}  // namespace lacuna::kernels::detail
