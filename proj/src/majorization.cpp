#include "ncfa/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ncfa {

bool hl_submajorize(const StepFunction& y, const StepFunction& x, double rel_tol) {
    std::vector<double> ts = y.breakpoints();
    const std::vector<double> bx = x.breakpoints();
    ts.insert(ts.end(), bx.begin(), bx.end());
    ts.push_back(std::max(y.total_length(), x.total_length()));
    for (double t : ts) {
        const double xi = x.partial_integral(t);
        if (y.partial_integral(t) > xi + rel_tol * (1.0 + xi)) return false;
    }
    return true;
}

bool uniform_submajorize_at(const StepFunction& y, const StepFunction& x, int lambda, double rel_tol) {
    if (lambda < 1) throw std::invalid_argument("uniform_submajorize_at: lambda must be >= 1");
    const double lam = static_cast<double>(lambda);
    const std::vector<double> bx = x.breakpoints();
    const std::vector<double> by = y.breakpoints();
    const double bmax = std::max(x.total_length(), y.total_length());

    // The gap is separable, g(a,b) = [X(b) - Y(b)] + [Y(lam a) - X(a)], so
    // its minimum sits at breakpoint crossings or on the boundary b = lam a;
    // along the boundary the kinks pull in breaks(x)/lam and breaks(y)/lam^2.
    std::vector<double> as = {0.0};
    for (double c : bx) {
        as.push_back(c);
        as.push_back(c / lam);
    }
    for (double c : by) {
        as.push_back(c / lam);
        as.push_back(c / (lam * lam));
    }
    const double amax = std::max(x.total_length(), y.total_length() / lam);
    as.push_back(amax);
    std::sort(as.begin(), as.end());
    as.erase(std::unique(as.begin(), as.end()), as.end());

    std::vector<double> bs = bx;
    bs.insert(bs.end(), by.begin(), by.end());
    bs.push_back(bmax);
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());

    for (double a : as) {
        if (a > amax) continue;
        const double xa = x.partial_integral(a);
        const double yla = y.partial_integral(lam * a);
        auto check = [&](double b) {
            const double rhs = x.partial_integral(b) - xa;
            const double lhs = y.partial_integral(b) - yla;
            return lhs <= rhs + rel_tol * (1.0 + std::abs(rhs));
        };
        if (!check(lam * a)) return false;  // boundary b = lambda a
        for (double b : bs) {
            if (b < lam * a) continue;
            if (!check(b)) return false;
        }
    }
    return true;
}

std::optional<int> uniform_submajorize(const StepFunction& y, const StepFunction& x, int lambda_max, double rel_tol) {
    if (lambda_max < 1) throw std::invalid_argument("uniform_submajorize: lambda_max must be >= 1");
    for (int lambda = 1; lambda <= lambda_max; ++lambda)
        if (uniform_submajorize_at(y, x, lambda, rel_tol)) return lambda;
    return std::nullopt;
}

}  // namespace ncfa
