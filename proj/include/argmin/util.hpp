#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace argmin {

using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

inline Vec negate(const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Vec scaled(const Vec& a, double s) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

// Shortest round-trip decimal representation; used everywhere a double goes
// into a CSV so reruns are byte-identical.
inline std::string format_double(double x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

// FNV-1a, 64-bit.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

// Index-partitioned parallel loop. Each index is processed exactly once and
// results must be written by index, so output is identical at any worker count.
inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    int w = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(w);
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < w; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += static_cast<std::size_t>(w)) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace argmin
