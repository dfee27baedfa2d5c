#pragma once

#include <cmath>
#include <vector>

namespace curvkit {

template <class F>
QuadratureResult composite_simpson(F&& f, double a, double b, double rel_tol, int panels, int max_panels) {
    if (b <= a) return {};
    // Keep the sampled values so each doubling only evaluates new midpoints.
    std::vector<double> samples;
    int n = panels;
    samples.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) samples[static_cast<std::size_t>(i)] = f(a + (b - a) * i / n);

    auto simpson = [&](int m) {
        const double h = (b - a) / m;
        double s = samples.front() + samples.back();
        for (int i = 1; i < m; ++i) s += samples[static_cast<std::size_t>(i)] * (i % 2 ? 4.0 : 2.0);
        return s * h / 3.0;
    };

    double prev = simpson(n);
    double last_change = std::abs(prev);
    for (;;) {
        if (2 * n > max_panels) return {prev, last_change, n};
        std::vector<double> refined(static_cast<std::size_t>(2 * n) + 1);
        for (int i = 0; i <= n; ++i) refined[static_cast<std::size_t>(2 * i)] = samples[static_cast<std::size_t>(i)];
        for (int i = 0; i < n; ++i)
            refined[static_cast<std::size_t>(2 * i + 1)] = f(a + (b - a) * (2 * i + 1) / (2.0 * n));
        samples = std::move(refined);
        n *= 2;
        const double cur = simpson(n);
        const double change = std::abs(cur - prev);
        if (change <= rel_tol * std::abs(cur)) return {cur, change, n};
        prev = cur;
        last_change = change;
    }
}

}  // namespace curvkit
