#include "lacuna/kernels/kernels.hpp"
#include "lacuna/kernels/trig_core.hpp"

namespace lacuna::kernels::detail {

void accumulate_scalar(const DyadicSum& s, const PhaseBlock& pb, std::span<double> out) {
    const int T = static_cast<int>(s.amp.size());
    for (int i = 0; i < pb.npoints; ++i) {
        double sum = 0.0, comp = 0.0;
        for (int t = 0; t < T; ++t) {
            std::uint64_t w = pb.window(i, s.n0 + t);
            double trig = core::turn_cos_core(w, s.quad);
            core::neumaier_add(sum, comp, s.amp[t] * trig);
        }
        out[i] = sum + comp;
    }
}

void poly_batch_scalar(std::span<const double> coeffs, std::span<const double> t,
                       std::span<double> out) {
    const auto K = coeffs.size();
    for (size_t i = 0; i < t.size(); ++i) {
        double r = 0.0;
        for (size_t k = K; k-- > 0;) r = std::fma(r, t[i], coeffs[k]);
        out[i] = r;
    }
}

}  // namespace lacuna::kernels::detail
