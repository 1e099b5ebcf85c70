#pragma once

// Attraction-basin renderer over a rectangular complex grid.
//
// Every pixel is classified independently (pure function of its center), so
// the image is bitwise reproducible for any pixel order or thread count.
// Colors: converged pixels take hue root_index/root_count at full saturation
// with value fading from 1 toward 0.3 as the iteration count approaches the
// cap; diverged pixels are black.  Output is binary PPM (P6).

#include "convergence.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

namespace mzeros {

struct GridSpec {
    double re_min = -3.0, re_max = 3.0;
    double im_min = -3.0, im_max = 3.0;
    int width = 256, height = 256;
};

struct BasinOptions {
    int max_iters = 100;
    double tol = 1e-3;      // convergence radius around each root
    int threads = 1;
};

// center of pixel column i, row j (row 0 is the top of the image)
inline std::complex<double> pixel_center(const GridSpec& g, int i, int j) {
    double dre = (g.re_max - g.re_min) / g.width;
    double dim = (g.im_max - g.im_min) / g.height;
    return {g.re_min + (i + 0.5) * dre, g.im_max - (j + 0.5) * dim};
}

struct PixelOutcome {
    int root_index = -1;    // -1 = diverged
    int iters = 0;

    bool converged() const { return root_index >= 0; }
    bool operator==(const PixelOutcome&) const = default;
};

// Runs the iteration from z0 until some root is within tol (checked before
// the first step, so a pixel starting on a root converges in 0 iterations),
// a step fails, or the cap is reached.
template <class C>
PixelOutcome classify_orbit(const Problem<C>& p, const MethodSpec& spec, C z,
                            const BasinOptions& opt) {
    using R = real_of<C>;
    R tol(opt.tol);
    for (int n = 0;; ++n) {
        if (finite(z))
            for (std::size_t k = 0; k < p.roots.size(); ++k)
                if (mag(z - p.roots[k]) <= tol)
                    return {static_cast<int>(k), n};
        if (n == opt.max_iters) return {};
        StepOutcome<C> out = step(p, spec, z);
        if (!out.ok()) return {};
        z = out.next;
    }
}

struct BasinImage {
    int width = 0, height = 0;
    std::vector<PixelOutcome> pixels;   // row-major from the top-left

    const PixelOutcome& at(int i, int j) const { return pixels[std::size_t(j) * width + i]; }
};

template <class C>
BasinImage render(const Problem<C>& p, const MethodSpec& spec, const GridSpec& g,
                  const BasinOptions& opt) {
    BasinImage img;
    img.width = g.width;
    img.height = g.height;
    img.pixels.resize(std::size_t(g.width) * g.height);
    auto rows = [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j)
            for (int i = 0; i < g.width; ++i) {
                std::complex<double> c0 = pixel_center(g, i, j);
                img.pixels[std::size_t(j) * g.width + i] =
                    classify_orbit(p, spec, C(c0.real(), c0.imag()), opt);
            }
    };
    int nt = std::max(1, opt.threads);
    if (nt == 1) {
        rows(0, g.height);
    } else {
        std::vector<std::thread> pool;
        int chunk = (g.height + nt - 1) / nt;
        for (int t = 0; t < nt; ++t) {
            int j0 = std::min(g.height, t * chunk);
            int j1 = std::min(g.height, j0 + chunk);
            if (j0 < j1) pool.emplace_back(rows, j0, j1);
        }
        for (auto& th : pool) th.join();
    }
    return img;
}

// hexcone HSV -> RGB, h,s,v in [0,1], channels rounded half-up
inline std::array<std::uint8_t, 3> hsv_to_rgb(double h, double s, double v) {
    double hh = (h - std::floor(h)) * 6.0;
    int sector = static_cast<int>(hh) % 6;
    double f = hh - std::floor(hh);
    double p = v * (1 - s);
    double q = v * (1 - s * f);
    double t = v * (1 - s * (1 - f));
    double r, g, b;
    switch (sector) {
        case 0:  r = v; g = t; b = p; break;
        case 1:  r = q; g = v; b = p; break;
        case 2:  r = p; g = v; b = t; break;
        case 3:  r = p; g = q; b = v; break;
        case 4:  r = t; g = p; b = v; break;
        default: r = v; g = p; b = q; break;
    }
    auto ch = [](double x) { return static_cast<std::uint8_t>(std::floor(x * 255.0 + 0.5)); };
    return {ch(r), ch(g), ch(b)};
}

inline std::array<std::uint8_t, 3> pixel_color(const PixelOutcome& px, int root_count,
                                               int max_iters) {
    if (!px.converged()) return {0, 0, 0};
    double h = double(px.root_index) / root_count;
    double fade = 1.0 - double(px.iters) / max_iters;
    double v = 0.3 + 0.7 * std::max(0.0, fade);
    return hsv_to_rgb(h, 1.0, v);
}

inline std::string encode_ppm(const BasinImage& img, int root_count, int max_iters) {
    std::string out = "P6\n" + std::to_string(img.width) + " " +
                      std::to_string(img.height) + "\n255\n";
    out.reserve(out.size() + img.pixels.size() * 3);
    for (const auto& px : img.pixels) {
        auto rgb = pixel_color(px, root_count, max_iters);
        out.push_back(static_cast<char>(rgb[0]));
        out.push_back(static_cast<char>(rgb[1]));
        out.push_back(static_cast<char>(rgb[2]));
    }
    return out;
}

} // namespace mzeros
