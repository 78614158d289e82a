#include "lpradon/fft.hpp"

#include <fftw3.h>

#include <atomic>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace lpr::fft {

namespace {

std::atomic<std::uint64_t> g_count_2d{0};

struct PlanKey {
    std::size_t rows, cols;
    int sign;
    int alignment;
    bool operator==(const PlanKey&) const = default;
};

struct PlanKeyHash {
    std::size_t operator()(const PlanKey& k) const {
        std::size_t h = k.rows;
        h = h * 1000003u + k.cols;
        h = h * 1000003u + std::size_t(k.sign + 2);
        h = h * 1000003u + std::size_t(k.alignment);
        return h;
    }
};

// Plans are reusable across equally shaped and aligned buffers; planning with
// FFTW_ESTIMATE leaves the caller's data untouched.
class PlanCache {
  public:
    fftw_plan get(std::size_t rows, std::size_t cols, int sign, fftw_complex* buf) {
        const PlanKey key{rows, cols, sign, fftw_alignment_of(reinterpret_cast<double*>(buf))};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        fftw_plan p = (cols == 0)
                          ? fftw_plan_dft_1d(int(rows), buf, buf, sign, FFTW_ESTIMATE)
                          : fftw_plan_dft_2d(int(rows), int(cols), buf, buf, sign, FFTW_ESTIMATE);
        if (!p) throw std::runtime_error("fft: plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }

  private:
    std::mutex mutex_;
    std::unordered_map<PlanKey, fftw_plan, PlanKeyHash> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void c2c_2d(std::complex<double>* data, std::size_t rows, std::size_t cols, int sign) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("fft: empty transform");
    if (sign != forward && sign != backward) throw std::invalid_argument("fft: bad sign");
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_plan p = cache().get(rows, cols, sign, buf);
    fftw_execute_dft(p, buf, buf);
    g_count_2d.fetch_add(1, std::memory_order_relaxed);
}

void c2c_1d(std::complex<double>* data, std::size_t n, int sign) {
    if (n == 0) throw std::invalid_argument("fft: empty transform");
    if (sign != forward && sign != backward) throw std::invalid_argument("fft: bad sign");
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_plan p = cache().get(n, 0, sign, buf);
    fftw_execute_dft(p, buf, buf);
}

std::uint64_t transform_count_2d() { return g_count_2d.load(std::memory_order_relaxed); }

void reset_transform_count_2d() { g_count_2d.store(0, std::memory_order_relaxed); }

}  // namespace lpr::fft
