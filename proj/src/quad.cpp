#include "mmlink/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace mmlink {

namespace {

// 15-point Kronrod nodes on [-1, 1] (nonnegative half) and weights, with the embedded
// 7-point Gauss rule on the odd-indexed nodes.
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double value;
    double error;
};

struct SegmentOrder {
    bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

Segment evaluate_segment(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = 0.0;
    double gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = kKronrodNodes[i];
        double fsum;
        if (i == 7) {
            fsum = f(center);
        } else {
            fsum = f(center - half * x) + f(center + half * x);
        }
        if (!std::isfinite(fsum))
            throw DomainError("integrate: integrand evaluated to a non-finite value");
        kronrod += kKronrodWeights[i] * fsum;
        // Gauss nodes sit at the odd Kronrod indices (1,3,5) plus the center (7).
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    Segment s;
    s.a = a;
    s.b = b;
    s.value = kronrod * half;
    s.error = std::abs(kronrod - gauss) * half;
    return s;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(a) || !std::isfinite(b))
        throw DomainError("integrate: non-finite integration limits");
    if (a > b) throw DomainError("integrate: requires a <= b");
    if (a == b) return 0.0;

    std::priority_queue<Segment, std::vector<Segment>, SegmentOrder> queue;
    queue.push(evaluate_segment(f, a, b));
    double total_value = queue.top().value;
    double total_error = queue.top().error;
    int used = 1;

    while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total_value))) {
        if (used >= spec.max_subdivisions) {
            throw QuadratureError("integrate: subdivision limit reached before convergence",
                                  total_value, total_error);
        }
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval has collapsed to machine precision; accept its estimate as-is.
            total_error -= worst.error;
            worst.error = 0.0;
            queue.push(worst);
            continue;
        }
        Segment left = evaluate_segment(f, worst.a, mid);
        Segment right = evaluate_segment(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++used;
    }
    return total_value;
}

} // namespace mmlink
