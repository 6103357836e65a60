#pragma once

#include "gsoliton/polytope.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace gsoliton {

/// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

/// High-order quadrature over the polytope (exact to ~1e-15 for entire integrands):
/// 1-D Gauss on the interval, 2-D tensor Gauss on the Duffy transform of the
/// fan triangulation.
class PolytopeQuadrature {
public:
    explicit PolytopeQuadrature(const Polytope& P, int order = 24) {
        std::vector<double> gx, gw;
        gauss_legendre(order, gx, gw);
        auto verts = P.vertices_d();
        if (P.dim() == 1) {
            double a = verts.front()[0], b = verts.back()[0];
            for (int i = 0; i < order; ++i) {
                pts_.push_back({0.5 * (a + b) + 0.5 * (b - a) * gx[i], 0.0});
                wts_.push_back(0.5 * (b - a) * gw[i]);
            }
            return;
        }
        for (size_t t = 1; t + 1 < verts.size(); ++t) {
            const DVec& p = verts[0];
            const DVec& q = verts[t];
            const DVec& r = verts[t + 1];
            double det = std::abs((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]));
            for (int i = 0; i < order; ++i) {
                double u = 0.5 * (gx[i] + 1.0), wu = 0.5 * gw[i];
                for (int j = 0; j < order; ++j) {
                    double v = 0.5 * (gx[j] + 1.0), wv = 0.5 * gw[j];
                    DVec y = {p[0] + u * (q[0] - p[0]) + u * v * (r[0] - q[0]),
                              p[1] + u * (q[1] - p[1]) + u * v * (r[1] - q[1])};
                    pts_.push_back(y);
                    wts_.push_back(det * u * wu * wv);
                }
            }
        }
    }

    double integrate(const std::function<double(const DVec&)>& f) const {
        double s = 0.0;
        for (size_t i = 0; i < pts_.size(); ++i) s += wts_[i] * f(pts_[i]);
        return s;
    }

    const std::vector<DVec>& points() const { return pts_; }
    const std::vector<double>& weights() const { return wts_; }

private:
    std::vector<DVec> pts_;
    std::vector<double> wts_;
};

} // namespace gsoliton
