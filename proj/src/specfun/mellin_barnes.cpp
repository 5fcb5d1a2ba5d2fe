#include "hstcn/specfun.hpp"

#include <cmath>
#include <numbers>

namespace hstcn::specfun {

namespace {

// Trapezoid sum of g over t in [-L, L] with nodes offset + j*h.
template <class G>
cplx line_sum(const G& g, double L, double h, double offset) {
    cplx acc = 0.0;
    for (double t = offset; t <= L + 1e-12; t += h) {
        acc += g(t);
        if (t != 0.0) acc += g(-t);
    }
    return acc;
}

}  // namespace

MBResult mellin_barnes(const std::function<cplx(cplx)>& f, double c, const TruncationPolicy& policy) {
    const double L = policy.contour_im_halfwidth;
    double h = 1.0 / policy.contour_nodes_per_unit;
    auto g = [&](double t) { return f(cplx(c, t)); };
    // The 1/(2 pi i) and ds = i dt combine into 1/(2 pi).
    cplx s_h = line_sum(g, L, h, 0.0);
    cplx T = h * s_h / (2.0 * std::numbers::pi);
    int nodes = static_cast<int>(2 * L / h) + 1;
    double err = 0.0;
    for (int level = 0; level < 4; ++level) {
        cplx s_mid = line_sum(g, L, h, 0.5 * h);
        // line_sum at offset h/2 counts +t and -t for every node already.
        cplx T2 = 0.5 * h * (s_h + s_mid) / (2.0 * std::numbers::pi);
        err = std::abs(T2 - T);
        T = T2;
        s_h += s_mid;
        h *= 0.5;
        nodes *= 2;
        if (err <= policy.contour_rel_tol * std::abs(T)) break;
    }
    err += L * (std::abs(g(L)) + std::abs(g(-L))) / (2.0 * std::numbers::pi);
    return {T.real(), err, T.imag(), nodes};
}

MBResult double_mellin_barnes(const MBKernel2& kernel, const TruncationPolicy& policy) {
    const double L = policy.contour_im_halfwidth;
    auto run = [&](double h) {
        const int n = static_cast<int>(std::floor(L / h + 1e-9));
        cplx acc = 0.0;
        for (int i = -n; i <= n; ++i) {
            cplx s(kernel.cs, i * h);
            for (int j = -n; j <= n; ++j) acc += kernel.f(s, cplx(kernel.cw, j * h));
        }
        // (1/2 pi i)^2 ds dw = (i dt)(i du) / (-4 pi^2) = dt du / (4 pi^2).
        return acc * h * h / (4.0 * std::numbers::pi * std::numbers::pi);
    };
    double h = 1.0 / policy.contour_nodes_per_unit;
    cplx coarse = run(2.0 * h);
    cplx fine = run(h);
    double err = std::abs(fine - coarse);
    if (std::abs(fine.imag()) > 1e-6 * std::abs(fine.real()) + 1e-300)
        throw SpecfunError(SpecfunError::Kind::non_convergence,
                           "double_mellin_barnes: imaginary part exceeds 1e-6 of the result");
    int n = static_cast<int>(std::floor(L / h + 1e-9));
    return {fine.real(), err, fine.imag(), (2 * n + 1) * (2 * n + 1)};
}

}  // namespace hstcn::specfun
