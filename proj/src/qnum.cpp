#include "qgauss/qnum.hpp"

#include <cmath>

namespace qgauss {

std::vector<double> hermite_zeros(int n) {
    std::vector<double> zeros;
    if (n <= 0) return zeros;
    // All zeros of H_n lie inside |s| < sqrt(2n + 1).
    const double bound = std::sqrt(2.0 * n + 1.0) + 0.5;
    const double step = 1e-3;
    double a = -bound;
    double fa = hermite(n, a);
    for (double b = a + step; b <= bound + step; b += step) {
        const double fb = hermite(n, b);
        if (fa == 0.0) {
            zeros.push_back(a);
        } else if (fa * fb < 0.0) {
            double lo = a, hi = b, flo = fa;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = hermite(n, mid);
                if (flo * fm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    return zeros;
}

}  // namespace qgauss
