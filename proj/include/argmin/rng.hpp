#pragma once

#include <cstdint>
#include <random>

namespace argmin {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Splittable counter scheme: replicate i of a run keyed by `master` gets
// derive_seed(master, i). Streams for distinct (master, i) do not overlap in
// practice and the mapping is independent of scheduling or worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 0x51ed2701ab0e2ad5ull));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    double uniform() { return uni_(eng_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal(double mean = 0.0, double sd = 1.0) {
        return mean + sd * std::normal_distribution<double>{}(eng_);
    }
    double exponential(double rate) {
        return std::exponential_distribution<double>{rate}(eng_);
    }
    std::uint64_t integer(std::uint64_t n) {  // uniform on {0, ..., n-1}
        return std::uniform_int_distribution<std::uint64_t>{0, n - 1}(eng_);
    }
    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
    std::uniform_real_distribution<double> uni_{0.0, 1.0};
};

}  // namespace argmin
