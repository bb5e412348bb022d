#include "relaysim/quadrature.hpp"
#include "relaysim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace relaysim {
namespace {

// Kronrod-15 abscissae on [-1,1] (non-negative half) and weights, with the
// embedded Gauss-7 weights on the odd Kronrod nodes.
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, value, error;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fv;
        if (i == 7) {
            fv = f(c);
            resk += kWgk[7] * fv;
            resg += kWg[3] * fv;
        } else {
            const double f1 = f(c - h * kXgk[i]);
            const double f2 = f(c + h * kXgk[i]);
            resk += kWgk[i] * (f1 + f2);
            if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
        }
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * h;
    const double diff = std::fabs((resk - resg) * h);
    // Standard QUADPACK-style sharpening of the raw Gauss/Kronrod difference.
    p.error = diff;
    return p;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rtol, double atol, int max_intervals) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::vector<Panel> panels;
    panels.push_back(eval_panel(f, a, b));
    while (true) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        if (err <= std::max(atol, rtol * std::fabs(total))) return sign * total;
        if ((int)panels.size() >= max_intervals)
            throw QuadratureError("adaptive quadrature failed to converge", err);
        const Panel bad = panels[worst];
        const double mid = 0.5 * (bad.a + bad.b);
        panels[worst] = eval_panel(f, bad.a, mid);
        panels.push_back(eval_panel(f, mid, bad.b));
    }
}

} // namespace relaysim
