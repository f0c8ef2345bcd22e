#include "zygwave/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace zyg {
namespace {

// One immortal plan per (n, dim, sign, placement).  New-array execution in
// FFTW requires the executed arrays to match the planned arrays in
// placement (in-place vs out-of-place); FFTW_UNALIGNED lifts the alignment
// requirement so ordinary heap buffers are valid.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int n, int dim, int sign, bool in_place) {
        const std::tuple<int, int, int, int> key{n, dim, sign, in_place ? 1 : 0};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t total = 1;
        for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
        fftw_complex* buf = fftw_alloc_complex(total);
        fftw_complex* buf2 = in_place ? buf : fftw_alloc_complex(total);
        const unsigned flags = in_place
            ? FFTW_ESTIMATE | FFTW_UNALIGNED
            : FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT;
        fftw_plan plan = dim == 1
            ? fftw_plan_dft_1d(n, buf, buf2, sign, flags)
            : fftw_plan_dft_2d(n, n, buf, buf2, sign, flags);
        if (buf2 != buf) fftw_free(buf2);
        fftw_free(buf);
        plans_.emplace(key, plan);
        return plan;
    }

  private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

void execute(int n, int dim, int sign, const cplx* in, cplx* out) {
    fftw_plan plan = PlanCache::instance().get(n, dim, sign, in == out);
    // The out-of-place plans carry FFTW_PRESERVE_INPUT, so `in` really is
    // read-only there; in-place calls pass the same pointer twice.
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

std::size_t total_size(int n, int dim) {
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
    return total;
}

}  // namespace

void fft_analyze(int n, int dim, const cplx* in, cplx* out) {
    execute(n, dim, FFTW_FORWARD, in, out);
    const double scale = 1.0 / static_cast<double>(total_size(n, dim));
    const std::size_t total = total_size(n, dim);
    for (std::size_t i = 0; i < total; ++i) out[i] *= scale;
}

void fft_synthesize(int n, int dim, const cplx* in, cplx* out) {
    execute(n, dim, FFTW_BACKWARD, in, out);
}

void fft_analyze_many(int n, std::size_t ncols, cplx* data) {
    fftw_plan plan = PlanCache::instance().get(n, 1, FFTW_FORWARD, true);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t c = 0; c < ncols; ++c) {
        cplx* col = data + c * static_cast<std::size_t>(n);
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(col),
                         reinterpret_cast<fftw_complex*>(col));
        for (int i = 0; i < n; ++i) col[i] *= scale;
    }
}

void fft_synthesize_many(int n, std::size_t ncols, cplx* data) {
    fftw_plan plan = PlanCache::instance().get(n, 1, FFTW_BACKWARD, true);
    for (std::size_t c = 0; c < ncols; ++c) {
        cplx* col = data + c * static_cast<std::size_t>(n);
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(col),
                         reinterpret_cast<fftw_complex*>(col));
    }
}

}  // namespace zyg
