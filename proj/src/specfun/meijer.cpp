#include "hstcn/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hstcn::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kCoincide = 1e-9;

bool near_nonpositive_integer(cplx z, double tol) {
    if (std::abs(z.imag()) > tol) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

// One gamma factor Gamma(sign*s + c, y) in log form.
struct Factor {
    double c;
    double sign;  // +1 for Gamma(c+s), -1 for Gamma(c-s)
    double y;     // incomplete argument, 0 for complete
};

struct Layout {
    std::vector<Factor> num, den;
};

Layout layout(const MeijerGSpec& g) {
    Layout l;
    for (int j = 0; j < g.q; ++j) {
        const auto& b = g.bottom[j];
        if (j < g.m) l.num.push_back({b.a, 1.0, b.x});
        else l.den.push_back({1.0 - b.a, -1.0, 0.0});
    }
    for (int j = 0; j < g.p; ++j) {
        const auto& a = g.top[j];
        if (j < g.n) l.num.push_back({1.0 - a.a, -1.0, a.x});
        else l.den.push_back({a.a, 1.0, 0.0});
    }
    // Identical complete factors above and below the line cancel.
    for (auto it = l.num.begin(); it != l.num.end();) {
        auto same = [&](const Factor& d) { return it->y == 0.0 && d.sign == it->sign && d.c == it->c; };
        auto hit = std::find_if(l.den.begin(), l.den.end(), same);
        if (hit != l.den.end()) {
            l.den.erase(hit);
            it = l.num.erase(it);
        } else {
            ++it;
        }
    }
    return l;
}

cplx log_factor(const Factor& f, cplx s) {
    cplx z = f.c + f.sign * s;
    if (f.y > 0.0) return std::log(upper_incomplete_gamma(z, f.y));
    return log_gamma(z);
}

// Log of the integrand. Denominator factors at their poles give -inf (zero).
cplx log_integrand(const Layout& l, cplx s) {
    cplx acc = 0.0;
    for (const auto& f : l.num) acc += log_factor(f, s);
    for (const auto& f : l.den) {
        cplx z = f.c + f.sign * s;
        if (near_nonpositive_integer(z, 0.0)) return {-std::numeric_limits<double>::infinity(), 0.0};
        acc -= log_gamma(z);
    }
    return acc;
}

cplx integrand(const Layout& l, cplx s) {
    cplx lg = log_integrand(l, s);
    if (std::isinf(lg.real()) && lg.real() < 0) return 0.0;
    return std::exp(lg);
}

double rightmost_left_pole(const Layout& l) {
    double r = -std::numeric_limits<double>::infinity();
    for (const auto& f : l.num)
        if (f.sign > 0 && f.y == 0.0) r = std::max(r, -f.c);
    return r;
}

double leftmost_right_pole(const Layout& l) {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& f : l.num)
        if (f.sign < 0 && f.y == 0.0) r = std::min(r, f.c);
    return r;
}

// Minimiser of log|F(c)| - c log x over (lo, hi) by golden section, with
// infinite ends replaced by a finite search window.
double saddle(const Layout& l, double x, double lo, double hi) {
    const double lx = std::log(x);
    auto phi = [&](double c) {
        cplx v = log_integrand(l, cplx(c, 0.0));
        return v.real() - c * lx;
    };
    if (!std::isfinite(lo)) lo = (std::isfinite(hi) ? hi : 0.0) - 60.0;
    if (!std::isfinite(hi)) hi = lo + 60.0;
    double a = lo + 0.05, b = hi - 0.05;
    if (a >= b) return 0.5 * (lo + hi);
    // Coarse scan first, since phi may not be unimodal near excluded poles.
    const int n = 240;
    double best = a, fbest = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        double c = a + (b - a) * i / n;
        double v;
        try {
            v = phi(c);
        } catch (const SpecfunError&) {
            continue;
        }
        if (v < fbest) fbest = v, best = c;
    }
    double step = (b - a) / n;
    double u = std::max(a, best - step), w = std::min(b, best + step);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 40; ++it) {
        double c1 = w - gr * (w - u), c2 = u + gr * (w - u);
        if (phi(c1) < phi(c2)) w = c2;
        else u = c1;
    }
    return 0.5 * (u + w);
}

// (1/pi) Re int_0^L F(c+it) x^{-c-it} dt, using the conjugate symmetry of
// real-parameter integrands.
struct ContourOut {
    double value, error;
};

ContourOut contour(const Layout& l, double x, double c, const TruncationPolicy& pol) {
    const double lx = std::log(x);
    auto f = [&](double t) {
        cplx s(c, t);
        cplx lg = log_integrand(l, s);
        if (std::isinf(lg.real()) && lg.real() < 0) return 0.0;
        return std::exp(lg - s * lx).real();
    };
    double L = pol.contour_im_halfwidth;
    double h = 1.0 / pol.contour_nodes_per_unit;
    const double tol = std::max(pol.contour_rel_tol, pol.rel_tol);

    // Modulus of the integrand; f itself oscillates and can vanish anywhere.
    auto amp = [&](double t) {
        cplx s(c, t);
        return std::exp((log_integrand(l, s) - s * lx).real());
    };
    // Halve the window while the tail stays negligible, else extend it.
    const double small = 1e-3 * tol * std::max(amp(0.0), 1e-300);
    while (L > 4.0 && amp(0.5 * L) <= small) L *= 0.5;
    for (int grow = 0; grow < 3; ++grow) {
        if (amp(L) <= small) break;
        L *= 2.0;
    }

    auto sum_nodes = [&](double hh, double offset) {
        double acc = 0.0;
        for (double t = offset; t <= L + 1e-12; t += hh) acc += f(t);
        return acc;
    };
    // Trapezoid on [0, L] with half weight at t = 0.
    double s_h = 0.5 * f(0.0) + sum_nodes(h, h);
    double T = h * s_h / std::numbers::pi;
    double err = std::numeric_limits<double>::infinity();
    for (int level = 0; level < 5; ++level) {
        double s_mid = sum_nodes(h, 0.5 * h);
        double T2 = 0.5 * h * (s_h + s_mid) / std::numbers::pi;
        err = std::abs(T2 - T);
        T = T2;
        s_h += s_mid;
        h *= 0.5;
        if (err <= tol * std::abs(T) + 1e-300) break;
    }
    err += L * std::abs(f(L)) / std::numbers::pi;
    return {T, err};
}

struct ResidueOut {
    double value, error;
    int terms;
    bool ok;
};

// Residue of F(s) x^{-s} at a simple pole s0 whose order has been reduced by
// coinciding zeros: average eps * F(s0 + eps) over four rotations of eps.
cplx limit_residue(const Layout& l, cplx s0, double x) {
    const double r = 1e-4;
    const cplx dirs[4] = {{r, 0}, {0, r}, {-r, 0}, {0, -r}};
    cplx acc = 0.0;
    for (const cplx& e : dirs) acc += e * integrand(l, s0 + e) * std::exp(-(s0 + e) * std::log(x));
    return acc / 4.0;
}

ResidueOut residues(const Layout& l, double x, const TruncationPolicy& pol) {
    // Candidate left poles: s = -c - k for each complete Gamma(c + s) factor.
    std::vector<double> generators;
    for (const auto& f : l.num)
        if (f.sign > 0 && f.y == 0.0) generators.push_back(f.c);
    if (generators.empty()) return {0.0, 0.0, 0, true};

    // Each generator gives a descending run; merge the runs.
    std::vector<double> poles;
    poles.reserve(generators.size() * pol.max_terms);
    for (double c : generators) {
        auto mid = poles.end() - poles.begin();
        for (int k = 0; k < pol.max_terms; ++k) poles.push_back(-c - k);
        std::inplace_merge(poles.begin(), poles.begin() + mid, poles.end(), std::greater<>());
    }

    const double lx = std::log(x);
    double sum = 0.0, comp = 0.0, maxterm = 0.0;
    int small_run = 0, terms = 0;
    double last_terms = 0.0;
    std::size_t i = 0;
    while (i < poles.size() && terms < pol.max_terms) {
        double s0 = poles[i];
        std::size_t j = i + 1;
        bool exact = true;
        while (j < poles.size() && std::abs(poles[j] - s0) <= kCoincide) {
            if (std::abs(poles[j] - s0) > 1e-12 * std::max(1.0, std::abs(s0))) exact = false;
            ++j;
        }
        int singular_num = 0, singular_den = 0;
        for (const auto& f : l.num)
            if (f.y == 0.0 && near_nonpositive_integer(cplx(f.c + f.sign * s0), 1e-12)) ++singular_num;
        for (const auto& f : l.den)
            if (near_nonpositive_integer(cplx(f.c + f.sign * s0), 1e-12)) ++singular_den;
        int order = singular_num - singular_den;
        if (!exact || order > 1)
            throw SpecfunError(SpecfunError::Kind::degenerate_poles,
                               "meijer_g: coincident left poles; perturb the parameters");
        i = j;
        if (order <= 0) continue;

        double term;
        if (singular_num == 1 && singular_den == 0) {
            // Gamma(c + s) near s0 = -c - k has residue (-1)^k / k!.
            int k = 0;
            cplx rest = 0.0;
            bool found = false;
            for (const auto& f : l.num) {
                if (!found && f.sign > 0 && f.y == 0.0 &&
                    near_nonpositive_integer(cplx(f.c + s0), 1e-12)) {
                    found = true;
                    k = static_cast<int>(std::lround(-(f.c + s0)));
                    continue;
                }
                rest += log_factor(f, cplx(s0));
            }
            for (const auto& f : l.den) rest -= log_gamma(cplx(f.c + f.sign * s0));
            double lr = rest.real() - std::lgamma(k + 1.0) - s0 * lx;
            double sign = (k % 2 == 0) ? 1.0 : -1.0;
            // Sign of the real remaining product comes through the imaginary part.
            term = sign * std::exp(lr) * std::cos(rest.imag());
        } else {
            term = limit_residue(l, cplx(s0), x).real();
        }
        ++terms;
        // Kahan summation.
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        maxterm = std::max(maxterm, std::abs(term));
        if (std::abs(term) < pol.rel_tol * std::abs(sum)) {
            if (++small_run >= pol.consecutive_small_terms) {
                last_terms = std::abs(term);
                break;
            }
        } else {
            small_run = 0;
        }
        last_terms = std::abs(term);
    }
    // Running out of candidates before the cap means every later pole was
    // cancelled and the series is finite.
    bool converged = small_run >= pol.consecutive_small_terms ||
                     (i >= poles.size() && terms < pol.max_terms);
    double cond = maxterm / std::max(std::abs(sum), 1e-300);
    double err = last_terms + 8.0 * cond * kEps * std::abs(sum);
    bool ok = converged && err <= pol.rel_tol * std::abs(sum) + 1e-300;
    return {sum, err, terms, ok};
}

}  // namespace

void MeijerGSpec::validate() const {
    auto bad = [](const std::string& m) { throw SpecfunError(SpecfunError::Kind::invalid_argument, "meijer_g: " + m); };
    if (m < 0 || n < 0 || p < 0 || q < 0) bad("negative order");
    if (m > q || n > p) bad("need m <= q and n <= p");
    if (static_cast<int>(top.size()) != p || static_cast<int>(bottom.size()) != q)
        bad("parameter list length does not match p, q");
    for (int j = 0; j < p; ++j) {
        if (top[j].x < 0.0) bad("negative incomplete argument");
        if (top[j].x > 0.0 && j >= n) bad("incomplete factor outside the numerator");
    }
    for (int j = 0; j < q; ++j) {
        if (bottom[j].x < 0.0) bad("negative incomplete argument");
        if (bottom[j].x > 0.0 && j >= m) bad("incomplete factor outside the numerator");
    }
    for (int l = 0; l < n; ++l) {
        if (top[l].x > 0.0) continue;
        for (int k = 0; k < m; ++k) {
            if (bottom[k].x > 0.0) continue;
            double d = top[l].a - bottom[k].a;
            double r = std::round(d);
            if (r >= 1.0 && std::abs(d - r) < kCoincide) bad("left and right poles overlap");
        }
    }
}

cplx meijer_integrand(const MeijerGSpec& spec, cplx s) {
    return integrand(layout(spec), s);
}

double meijer_contour_abscissa(const MeijerGSpec& spec, double x) {
    Layout l = layout(spec);
    double lo = rightmost_left_pole(l), hi = leftmost_right_pole(l);
    if (std::isfinite(lo) && std::isfinite(hi)) {
        if (hi - lo < 1e-3)
            throw SpecfunError(SpecfunError::Kind::degenerate_poles, "meijer_g: pole gap below 1e-3");
        return 0.5 * (lo + hi);
    }
    return saddle(l, x, lo, hi);
}

MeijerGResult meijer_g(const MeijerGSpec& spec, double x, const TruncationPolicy& policy,
                       MeijerMethod method) {
    spec.validate();
    if (!(x > 0.0)) throw SpecfunError(SpecfunError::Kind::invalid_argument, "meijer_g: x must be > 0");
    Layout l = layout(spec);

    if (method != MeijerMethod::contour) {
        try {
            ResidueOut r = residues(l, x, policy);
            if (r.ok || method == MeijerMethod::residue) {
                if (!r.ok)
                    throw SpecfunError(SpecfunError::Kind::non_convergence,
                                       "meijer_g: residue series did not meet tolerance");
                return {r.value, r.error, MeijerMethod::residue, r.terms};
            }
        } catch (const SpecfunError& e) {
            if (method == MeijerMethod::residue || e.kind() == SpecfunError::Kind::degenerate_poles) throw;
        }
    }
    double c = meijer_contour_abscissa(spec, x);
    ContourOut co = contour(l, x, c, policy);
    double tol = std::max(policy.contour_rel_tol, policy.rel_tol);
    if (co.error > tol * std::abs(co.value) + 1e-300 && co.error > 1e-14)
        throw SpecfunError(SpecfunError::Kind::non_convergence, "meijer_g: contour quadrature did not meet tolerance");
    return {co.value, co.error, MeijerMethod::contour, 0};
}

}  // namespace hstcn::specfun
