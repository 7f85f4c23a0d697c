#pragma once

// Quadrature rules, interpolation panels, compensated accumulation and the
// deterministic worker pool used by the Matsubara sums.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace casimir::quad {

/// Error-free double-double accumulator.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    void add(double x);
    void add(const DoubleDouble& other);
    double value() const { return hi + lo; }
};

DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b);
DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b);
/// Product with a double, exact to double-double precision.
DoubleDouble operator*(const DoubleDouble& a, double f);

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre on [-1, 1].
Rule gauss_legendre(int n);

/// Composite rule with embedded Gauss 7 / Kronrod 15 weights on every panel.
struct EmbeddedRule {
    std::vector<double> nodes;
    std::vector<double> w_kronrod;
    std::vector<double> w_gauss;  // zero on Kronrod-only nodes
    std::size_t panels = 0;
};

/// Panels given by consecutive breakpoints.
EmbeddedRule gauss_kronrod_composite(const std::vector<double>& breakpoints);

/// Breakpoints 0, lo, 2 lo, 4 lo, ... up to `mid`, then steps of `width` up to `hi`,
/// each interval split into 2^refine pieces.
std::vector<double> graded_breakpoints(double lo, double mid, double width, double hi, int refine = 0);

inline constexpr std::size_t max_components = 8;
using Components = std::array<double, max_components>;
using VectorFn = std::function<Components(double)>;

struct AdaptiveResult {
    Components value{};
    Components error{};
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod 15 on [a, b] for the first `ncomp` components; bisects the
/// interval with the largest error until every component meets max(abs_tol, rel_tol |I|).
AdaptiveResult integrate_adaptive(const VectorFn& f, std::size_t ncomp, double a, double b, double rel_tol,
                                  double abs_tol, std::size_t max_evaluations);

/// Scalar convenience wrapper.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                                  double abs_tol, std::size_t max_evaluations);

/// Chebyshev-Lobatto interpolant of a vector function on [a, b].
class ChebyshevPanel {
public:
    ChebyshevPanel() = default;
    /// Nodes x_j = mid + half cos(j pi / n), j = 0..n, in that order.
    static std::vector<double> nodes(double a, double b, int n);

    ChebyshevPanel(double a, double b, int n, std::size_t ncomp, std::vector<Components> values);

    double a() const { return a_; }
    double b() const { return b_; }
    Components operator()(double x) const;
    /// Integral of the interpolant over the whole panel (Clenshaw-Curtis).
    const Components& integral() const { return integral_; }
    /// Max deviation from the function at panel midpoints checked by the caller.
    double spread() const { return spread_; }
    void set_spread(double s) { spread_ = s; }

private:
    double a_ = 0.0, b_ = 0.0;
    int n_ = 0;
    std::size_t ncomp_ = 0;
    std::vector<double> x_;
    std::vector<double> bary_;
    std::vector<Components> f_;
    Components integral_{};
    double spread_ = 0.0;
};

/// Worker count from LIFSHITZ_THREADS (default: hardware concurrency).
unsigned worker_count();

/// Runs body(i) for i in [0, n) on the worker pool. Each index is handled exactly once;
/// callers write to index-owned slots so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace casimir::quad
