#include "casimir/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>
#include <thread>

#include "casimir/errors.hpp"

namespace casimir::quad {

namespace {

inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

inline void fast_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
}

// QUADPACK 15-point Kronrod abscissae (descending) and weights; Gauss 7 weights on odd slots
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double a, b;
    Components value, error;
    double worst;
    bool operator<(const Segment& o) const { return worst < o.worst; }
};

Segment gk15(const VectorFn& f, std::size_t ncomp, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Components k{}, g{};
    auto accumulate = [&](const Components& v, double wk, double wgauss) {
        for (std::size_t i = 0; i < ncomp; ++i) {
            k[i] += wk * v[i];
            g[i] += wgauss * v[i];
        }
    };
    accumulate(f(c), wgk[7], wg[3]);
    for (int j = 0; j < 7; ++j) {
        const double wgauss = (j % 2 == 1) ? wg[j / 2] : 0.0;
        accumulate(f(c - h * xgk[j]), wgk[j], wgauss);
        accumulate(f(c + h * xgk[j]), wgk[j], wgauss);
    }
    Segment s{a, b, {}, {}, 0.0};
    for (std::size_t i = 0; i < ncomp; ++i) {
        s.value[i] = h * k[i];
        s.error[i] = std::abs(h * (k[i] - g[i]));
    }
    return s;
}

}  // namespace

void DoubleDouble::add(double x) {
    double s, e;
    two_sum(hi, x, s, e);
    e += lo;
    fast_two_sum(s, e, hi, lo);
}

void DoubleDouble::add(const DoubleDouble& other) {
    double s, e;
    two_sum(hi, other.hi, s, e);
    e += lo + other.lo;
    fast_two_sum(s, e, hi, lo);
}

DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble r = a;
    r.add(b);
    return r;
}

DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble r = a;
    r.add(DoubleDouble{-b.hi, -b.lo});
    return r;
}

DoubleDouble operator*(const DoubleDouble& a, double f) {
    const double p = a.hi * f;
    double e = std::fma(a.hi, f, -p);
    e += a.lo * f;
    DoubleDouble r;
    fast_two_sum(p, e, r.hi, r.lo);
    return r;
}

Rule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // refresh the derivative at the converged root
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

EmbeddedRule gauss_kronrod_composite(const std::vector<double>& breakpoints) {
    if (breakpoints.size() < 2) throw DomainError("gauss_kronrod_composite: need two breakpoints");
    EmbeddedRule r;
    for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
        const double a = breakpoints[p], b = breakpoints[p + 1];
        if (!(b > a)) throw DomainError("gauss_kronrod_composite: breakpoints must increase");
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int j = 0; j < 7; ++j) {
            const double wgauss = (j % 2 == 1) ? wg[j / 2] : 0.0;
            r.nodes.push_back(c - h * xgk[j]);
            r.w_kronrod.push_back(h * wgk[j]);
            r.w_gauss.push_back(h * wgauss);
        }
        r.nodes.push_back(c);
        r.w_kronrod.push_back(h * wgk[7]);
        r.w_gauss.push_back(h * wg[3]);
        for (int j = 6; j >= 0; --j) {
            const double wgauss = (j % 2 == 1) ? wg[j / 2] : 0.0;
            r.nodes.push_back(c + h * xgk[j]);
            r.w_kronrod.push_back(h * wgk[j]);
            r.w_gauss.push_back(h * wgauss);
        }
        ++r.panels;
    }
    return r;
}

std::vector<double> graded_breakpoints(double lo, double mid, double width, double hi, int refine) {
    if (!(lo > 0.0) || !(mid >= lo) || !(width > 0.0) || !(hi > mid))
        throw DomainError("graded_breakpoints: requires 0 < lo <= mid < hi, width > 0");
    std::vector<double> coarse = {0.0};
    for (double p = lo; p < mid; p *= 2.0) coarse.push_back(p);
    coarse.push_back(mid);
    for (double p = mid + width; p < hi - 1e-12 * hi; p += width) coarse.push_back(p);
    coarse.push_back(hi);

    const int pieces = 1 << std::max(refine, 0);
    std::vector<double> out = {0.0};
    for (std::size_t i = 0; i + 1 < coarse.size(); ++i)
        for (int k = 1; k <= pieces; ++k)
            out.push_back(k == pieces ? coarse[i + 1]
                                      : coarse[i] + (coarse[i + 1] - coarse[i]) * k / pieces);
    return out;
}

AdaptiveResult integrate_adaptive(const VectorFn& f, std::size_t ncomp, double a, double b, double rel_tol,
                                  double abs_tol, std::size_t max_evaluations) {
    AdaptiveResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    auto rank = [ncomp](Segment& s) {
        s.worst = 0.0;
        for (std::size_t i = 0; i < ncomp; ++i) s.worst = std::max(s.worst, s.error[i]);
    };
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, ncomp, a, b);
    rank(first);
    res.evaluations = 15;
    Components total = first.value, err = first.error;
    heap.push(first);

    auto done = [&] {
        for (std::size_t i = 0; i < ncomp; ++i)
            if (err[i] > std::max(abs_tol, rel_tol * std::abs(total[i]))) return false;
        return true;
    };

    while (!done()) {
        if (res.evaluations + 30 > max_evaluations) break;
        Segment s = heap.top();
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        if (!(m > s.a) || !(m < s.b)) {
            heap.push(s);
            break;
        }
        Segment l = gk15(f, ncomp, s.a, m), r = gk15(f, ncomp, m, s.b);
        res.evaluations += 30;
        rank(l);
        rank(r);
        for (std::size_t i = 0; i < ncomp; ++i) {
            total[i] += l.value[i] + r.value[i] - s.value[i];
            err[i] += l.error[i] + r.error[i] - s.error[i];
        }
        heap.push(l);
        heap.push(r);
    }

    // resum to avoid drift from the incremental updates
    Components v{}, e{};
    while (!heap.empty()) {
        const Segment& s = heap.top();
        for (std::size_t i = 0; i < ncomp; ++i) {
            v[i] += s.value[i];
            e[i] += s.error[i];
        }
        heap.pop();
    }
    res.value = v;
    res.error = e;
    res.converged = true;
    for (std::size_t i = 0; i < ncomp; ++i)
        if (e[i] > std::max(abs_tol, rel_tol * std::abs(v[i]))) res.converged = false;
    return res;
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                                  double abs_tol, std::size_t max_evaluations) {
    return integrate_adaptive([&f](double x) { return Components{f(x)}; }, 1, a, b, rel_tol, abs_tol,
                              max_evaluations);
}

std::vector<double> ChebyshevPanel::nodes(double a, double b, int n) {
    std::vector<double> x(n + 1);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int j = 0; j <= n; ++j) x[j] = mid + half * std::cos(std::numbers::pi * j / n);
    x[0] = b;
    x[n] = a;
    return x;
}

ChebyshevPanel::ChebyshevPanel(double a, double b, int n, std::size_t ncomp, std::vector<Components> values)
    : a_(a), b_(b), n_(n), ncomp_(ncomp), x_(nodes(a, b, n)), bary_(n + 1), f_(std::move(values)) {
    if (static_cast<int>(f_.size()) != n + 1) throw DomainError("ChebyshevPanel: wrong number of values");
    for (int j = 0; j <= n; ++j) bary_[j] = ((j % 2) ? -1.0 : 1.0) * ((j == 0 || j == n) ? 0.5 : 1.0);

    // Clenshaw-Curtis weights on the Lobatto points
    const double half = 0.5 * (b - a);
    for (int j = 0; j <= n; ++j) {
        const double theta = std::numbers::pi * j / n;
        double s = 0.0;
        for (int k = 1; k <= n / 2; ++k) {
            const double bk = (2 * k == n) ? 1.0 : 2.0;
            s += bk * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
        }
        const double cj = (j == 0 || j == n) ? 1.0 : 2.0;
        const double w = half * cj / n * (1.0 - s);
        for (std::size_t c = 0; c < ncomp_; ++c) integral_[c] += w * f_[j][c];
    }
}

Components ChebyshevPanel::operator()(double x) const {
    Components num{};
    double den = 0.0;
    for (int j = 0; j <= n_; ++j) {
        const double d = x - x_[j];
        if (d == 0.0) return f_[j];
        const double t = bary_[j] / d;
        den += t;
        for (std::size_t c = 0; c < ncomp_; ++c) num[c] += t * f_[j][c];
    }
    for (std::size_t c = 0; c < ncomp_; ++c) num[c] /= den;
    return num;
}

unsigned worker_count() {
    if (const char* env = std::getenv("LIFSHITZ_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace casimir::quad
