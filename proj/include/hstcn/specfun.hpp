#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hstcn::specfun {

using cplx = std::complex<double>;

class SpecfunError : public std::runtime_error {
public:
    enum class Kind { pole, degenerate_poles, non_convergence, invalid_argument };

    SpecfunError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Log-gamma continued analytically from the positive real axis, with the
/// branch cut on the negative real axis (same convention as scipy's loggamma).
cplx log_gamma(cplx z);

/// Reference log-gamma from the Stirling series plus upward recurrence.
/// Independent of the Lanczos path; used for cross-checks.
cplx log_gamma_stirling(cplx z);

inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

/// gamma(n, x) for integer n >= 1, from the finite sum.
double lower_incomplete_gamma(int n, double x);

/// Upper incomplete gamma Gamma(s, x) for complex s and real x >= 0.
cplx upper_incomplete_gamma(cplx s, double x);

/// 1F1(m; 1; x) for integer m >= 1 through the finite polynomial
/// 1F1(m;1;x) = e^x * sum_n C(m-1,n) x^n / n!.
double kummer_1f1_finite(int m, double x);

/// One gamma factor of a Meijer G integrand. A nonzero `x` turns the factor
/// into an upper incomplete gamma (allowed only in numerator positions).
struct GammaPair {
    double a = 0.0;
    double x = 0.0;
};

struct MeijerGSpec {
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<GammaPair> top;     // a_1..a_p
    std::vector<GammaPair> bottom;  // b_1..b_q

    /// Throws SpecfunError(invalid_argument) if the orders or lists are
    /// inconsistent or a left pole sits on or right of a right pole.
    void validate() const;
};

struct TruncationPolicy {
    double rel_tol = 1e-9;
    int max_terms = 200;
    double contour_im_halfwidth = 40.0;
    int contour_nodes_per_unit = 8;
    int consecutive_small_terms = 3;
    double contour_rel_tol = 1e-6;
};

enum class MeijerMethod { automatic, residue, contour };

struct MeijerGResult {
    double value = 0.0;
    double error = 0.0;
    MeijerMethod method = MeijerMethod::automatic;
    int terms = 0;
};

/// Meijer G (possibly with upper-incomplete gamma factors) at real x > 0.
/// `automatic` tries the left-pole residue series and falls back to
/// trapezoid quadrature on a vertical contour.
MeijerGResult meijer_g(const MeijerGSpec& spec, double x,
                       const TruncationPolicy& policy = {},
                       MeijerMethod method = MeijerMethod::automatic);

/// Mellin-Barnes integrand of `spec` at s (without the x^{-s} factor).
cplx meijer_integrand(const MeijerGSpec& spec, cplx s);

/// Position of the vertical contour used for `spec` at argument x.
double meijer_contour_abscissa(const MeijerGSpec& spec, double x);

struct MBResult {
    double value = 0.0;
    double error = 0.0;
    double imag = 0.0;
    int nodes = 0;
};

/// (1/2 pi i) * integral of f(s) over Re s = c.
/// Trapezoid rule with step 1/nodes_per_unit, step-halving error estimate.
MBResult mellin_barnes(const std::function<cplx(cplx)>& f, double c,
                       const TruncationPolicy& policy = {});

struct MBKernel2 {
    std::function<cplx(cplx, cplx)> f;  // integrand in (s, w)
    double cs = 0.0;                    // Re s on the s-line
    double cw = 0.0;                    // Re w on the w-line
};

/// (1/2 pi i)^2 double integral over two vertical lines by a tensor-product
/// trapezoid rule. Throws if the imaginary part exceeds 1e-6 |result|.
MBResult double_mellin_barnes(const MBKernel2& kernel,
                              const TruncationPolicy& policy = {});

}  // namespace hstcn::specfun
