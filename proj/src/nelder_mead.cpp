#include "crane/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace crane {

namespace {

double diameter(const std::vector<std::vector<double>>& pts) {
    double dia = 0.0;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            double dist = 0.0;
            for (std::size_t k = 0; k < pts[a].size(); ++k)
                dist = std::max(dist, std::abs(pts[a][k] - pts[b][k]));
            dia = std::max(dia, dist);
        }
    return dia;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const std::vector<double>& step,
                             const NelderMeadOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0) return {x0, f(x0), 0, true};
    if (step.size() != n) throw std::invalid_argument("nelder_mead: step size mismatch");

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += (step[i] != 0.0 ? step[i] : 1.0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    std::vector<std::size_t> order(n + 1);
    NelderMeadResult res;
    res.converged = false;

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];
        res.iterations = iter;

        double scale = 1.0;
        for (double c : pts[best]) scale = std::max(scale, std::abs(c));
        if (fv[best] < opts.f_tol || diameter(pts) < opts.x_tol * scale) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;
        }
        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (std::size_t k = 0; k < n; ++k)
                p[k] = centroid[k] + coef * (pts[worst][k] - centroid[k]);
            return p;
        };

        const std::vector<double> refl = blend(-1.0);
        const double f_refl = f(refl);
        if (f_refl < fv[best]) {
            const std::vector<double> expa = blend(-2.0);
            const double f_expa = f(expa);
            if (f_expa < f_refl) {
                pts[worst] = expa;
                fv[worst] = f_expa;
            } else {
                pts[worst] = refl;
                fv[worst] = f_refl;
            }
            continue;
        }
        if (f_refl < fv[second_worst]) {
            pts[worst] = refl;
            fv[worst] = f_refl;
            continue;
        }
        const bool outside = f_refl < fv[worst];
        const std::vector<double> contr = blend(outside ? -0.5 : 0.5);
        const double f_contr = f(contr);
        if (f_contr < std::min(f_refl, fv[worst])) {
            pts[worst] = contr;
            fv[worst] = f_contr;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {  // shrink toward the best vertex
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k)
                pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
            fv[i] = f(pts[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    res.x = pts[best];
    res.fval = fv[best];
    return res;
}

}  // namespace crane
