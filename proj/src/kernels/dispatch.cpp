#include <atomic>

#include "lacuna/kernels/kernels.hpp"
#include "lacuna/kernels/trig_core.hpp"

namespace lacuna::kernels {

namespace {
std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{detail::avx2_available() ? Backend::avx2 : Backend::scalar};
    return slot;
}

void validate(const DyadicSum& s, const PhaseBlock& pb, std::span<double> out) {
    if (out.size() < static_cast<size_t>(pb.npoints))
        throw ConfigError("accumulate: output span shorter than the point block");
    if (s.amp.empty()) return;
    if (s.n0 < 0) throw ConfigError("accumulate: negative frequency exponent");
    const int top = s.n0 + static_cast<int>(s.amp.size()) - 1;
    if ((top >> 6) + 1 >= pb.nlimbs)
        throw ConfigError("accumulate: phase block too shallow for frequency bit " +
                          std::to_string(top));
}
}  // namespace

bool supported(Backend b) { return b == Backend::scalar || detail::avx2_available(); }

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (!supported(b)) throw ConfigError("kernel backend 'avx2' not available on this machine");
    backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) { return b == Backend::scalar ? "scalar" : "avx2"; }

void accumulate(const DyadicSum& s, const PhaseBlock& pb, std::span<double> out, Backend b) {
    validate(s, pb, out);
    if (s.amp.empty()) {
        for (int i = 0; i < pb.npoints; ++i) out[i] = 0.0;
        return;
    }
    if (b == Backend::avx2)
        detail::accumulate_avx2(s, pb, out);
    else
        detail::accumulate_scalar(s, pb, out);
}

double turn_cos(std::uint64_t w, std::uint32_t quad) {
    return core::turn_cos_core(w, quad & 3u);
}

void poly_batch(std::span<const double> coeffs, std::span<const double> t, std::span<double> out,
                Backend b) {
    if (out.size() < t.size()) throw ConfigError("poly_batch: output span too short");
    if (b == Backend::avx2)
        detail::poly_batch_avx2(coeffs, t, out);
    else
        detail::poly_batch_scalar(coeffs, t, out);
}

}  // namespace lacuna::kernels
