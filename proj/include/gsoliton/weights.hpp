#pragma once

#include "gsoliton/polytope.hpp"
#include "gsoliton/quadrature.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsoliton {

enum class WeightKind { Constant, Affine, Exponential, Tabulated };

struct LogConcavityReport {
    bool ok = true;
    double worst_margin = 0.0; // largest positive second difference found
    DVec location{0, 0};
};

/// The weight g on P. Always normalized so that the integral of (g-1) over P
/// vanishes. Affine weights are centered at the barycenter, so that
/// normalization is exact by construction; the exponential (Kahler-Ricci)
/// weight is normalized through its partition function.
class WeightFunction {
public:
    static WeightFunction make_constant(std::shared_ptr<const Polytope> P) {
        WeightFunction g;
        g.kind_ = WeightKind::Constant;
        g.P_ = std::move(P);
        g.spec_ = "ke";
        return g;
    }

    /// g(y) = 1 - <c, y - b>, b the barycenter. Throws if positivity fails at a vertex.
    static WeightFunction make_affine(std::shared_ptr<const Polytope> P, const DVec& c) {
        WeightFunction g;
        g.kind_ = WeightKind::Affine;
        g.P_ = P;
        g.cov_ = c;
        auto b = P->barycenter_d();
        g.bary_ = b;
        for (auto& v : P->vertices_d()) {
            double val = 1.0 - (c[0] * (v[0] - b[0]) + c[1] * (v[1] - b[1]));
            if (val <= 0.0) {
                std::ostringstream os;
                os << "affine weight not positive at vertex (" << v[0] << "," << v[1]
                   << "): g = " << val << " (Mabuchi constant >= 1)";
                throw std::domain_error(os.str());
            }
        }
        std::ostringstream os;
        os << "affine:" << c[0] << "," << c[1];
        g.spec_ = os.str();
        return g;
    }

    /// Kahler-Ricci soliton weight: g = vol(P) e^{<xi,y>} / Z(xi) at the unique
    /// critical point of xi -> integral of e^{<xi,y>} over P.
    static WeightFunction make_kr(std::shared_ptr<const Polytope> P, double tol = 1e-12,
                                  int max_iter = 100) {
        PolytopeQuadrature quad(*P);
        DVec xi = {0.0, 0.0};
        int n = P->dim();
        for (int it = 0; it < max_iter; ++it) {
            double Z = 0, g0 = 0, g1 = 0, h00 = 0, h01 = 0, h11 = 0;
            for (size_t k = 0; k < quad.points().size(); ++k) {
                const DVec& y = quad.points()[k];
                double e = quad.weights()[k] * std::exp(xi[0] * y[0] + xi[1] * y[1]);
                Z += e;
                g0 += e * y[0];
                g1 += e * y[1];
                h00 += e * y[0] * y[0];
                h01 += e * y[0] * y[1];
                h11 += e * y[1] * y[1];
            }
            double gn = std::sqrt(g0 * g0 + g1 * g1);
            if (gn <= tol * Z) {
                WeightFunction g;
                g.kind_ = WeightKind::Exponential;
                g.P_ = P;
                g.cov_ = xi;
                g.lognorm_ = std::log(P->volume_d() / Z);
                g.spec_ = "kr";
                return g;
            }
            if (n == 1) {
                xi[0] -= g0 / h00;
            } else {
                double det = h00 * h11 - h01 * h01;
                xi[0] -= (h11 * g0 - h01 * g1) / det;
                xi[1] -= (-h01 * g0 + h00 * g1) / det;
            }
        }
        throw std::runtime_error("make_kr: Newton on the soliton field did not converge");
    }

    /// Tabulated weight from a text file (see README for the format); values are
    /// interpolated multilinearly and rescaled so the normalization holds.
    static WeightFunction load_tabulated(std::shared_ptr<const Polytope> P,
                                         const std::string& path) {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("cannot open weight file: " + path);
        return parse_tabulated(std::move(P), is, "file:" + path);
    }

    static WeightFunction parse_tabulated(std::shared_ptr<const Polytope> P, std::istream& is,
                                          const std::string& spec) {
        WeightFunction g;
        g.kind_ = WeightKind::Tabulated;
        g.P_ = P;
        g.spec_ = spec;
        std::string tag;
        int ver = 0, dim = 0;
        is >> tag >> ver >> tag >> dim;
        if (dim != P->dim()) throw std::runtime_error("weight file dimension mismatch");
        if (dim == 1) {
            is >> tag >> g.tab_n0_ >> tag >> g.tab_lo0_ >> tag >> g.tab_hi0_;
            g.tab_n1_ = 1;
        } else {
            is >> tag >> g.tab_n0_ >> tag >> g.tab_lo0_ >> tag >> g.tab_hi0_;
            is >> tag >> g.tab_n1_ >> tag >> g.tab_lo1_ >> tag >> g.tab_hi1_;
        }
        g.tab_.resize(size_t(g.tab_n0_) * g.tab_n1_);
        for (auto& v : g.tab_) {
            if (!(is >> v)) throw std::runtime_error("weight file truncated");
            if (v <= 0) throw std::runtime_error("tabulated weight has a non-positive sample");
        }
        // rescale to the normalization: integral of g over P equals vol(P)
        PolytopeQuadrature quad(*P);
        double I = quad.integrate([&g](const DVec& y) { return g.eval_raw(y); });
        g.tab_scale_ = P->volume_d() / I;
        return g;
    }

    WeightKind kind() const { return kind_; }
    const std::string& spec() const { return spec_; }
    const Polytope& polytope() const { return *P_; }

    double operator()(const DVec& y) const {
        switch (kind_) {
        case WeightKind::Constant: return 1.0;
        case WeightKind::Affine:
            return 1.0 - (cov_[0] * (y[0] - bary_[0]) + cov_[1] * (y[1] - bary_[1]));
        case WeightKind::Exponential:
            return std::exp(cov_[0] * y[0] + cov_[1] * y[1] + lognorm_);
        case WeightKind::Tabulated: return tab_scale_ * eval_raw(y);
        }
        return 1.0;
    }

    /// gradient of log g in moment coordinates
    DVec grad_log(const DVec& y) const {
        switch (kind_) {
        case WeightKind::Constant: return {0.0, 0.0};
        case WeightKind::Affine: {
            double g = (*this)(y);
            return {-cov_[0] / g, -cov_[1] / g};
        }
        case WeightKind::Exponential: return cov_;
        case WeightKind::Tabulated: {
            double d0 = 1e-5 * (tab_hi0_ - tab_lo0_);
            double v = 1e-5 * (kind_ == WeightKind::Tabulated && tab_n1_ > 1 ? (tab_hi1_ - tab_lo1_) : 1.0);
            double gp = std::log((*this)({y[0] + d0, y[1]})) - std::log((*this)({y[0] - d0, y[1]}));
            double gq = tab_n1_ > 1
                            ? std::log((*this)({y[0], y[1] + v})) - std::log((*this)({y[0], y[1] - v}))
                            : 0.0;
            return {gp / (2 * d0), tab_n1_ > 1 ? gq / (2 * v) : 0.0};
        }
        }
        return {0.0, 0.0};
    }

    DVec field() const { return cov_; } // affine covector / soliton field

    /// exact for constant/affine/exponential (extremes at vertices), sampled otherwise
    double inf_on_P() const { return extreme_on_P(false); }
    double sup_on_P() const { return extreme_on_P(true); }

    /// quadrature value of (1/vol) integral of (g - 1) over P; ~1e-14 for the
    /// analytic kinds, exact by rescaling for tabulated ones
    double normalization_defect() const {
        PolytopeQuadrature quad(*P_);
        double I = quad.integrate([this](const DVec& y) { return (*this)(y) - 1.0; });
        return I / P_->volume_d();
    }

    /// Sampled second differences of log g along axis directions; the paper's
    /// footnote makes log-concavity a regularity-only assumption, so a failure
    /// is reported, never enforced.
    LogConcavityReport check_log_concavity(int samples_per_axis = 64) const {
        LogConcavityReport rep;
        rep.worst_margin = -1e300;
        auto verts = P_->vertices_d();
        double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
        for (auto& v : verts) {
            lo0 = std::min(lo0, v[0]); hi0 = std::max(hi0, v[0]);
            lo1 = std::min(lo1, v[1]); hi1 = std::max(hi1, v[1]);
        }
        int n = P_->dim();
        int m = std::max(2, samples_per_axis);
        double s0 = (hi0 - lo0) / (m - 1);
        double s1 = n == 2 ? (hi1 - lo1) / (m - 1) : 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < (n == 2 ? m : 1); ++j) {
                DVec y = {lo0 + i * s0, n == 2 ? lo1 + j * s1 : 0.0};
                for (int axis = 0; axis < n; ++axis) {
                    double h = axis == 0 ? s0 : s1;
                    DVec yp = y, ym = y;
                    (axis == 0 ? yp[0] : yp[1]) += h;
                    (axis == 0 ? ym[0] : ym[1]) -= h;
                    if (!P_->contains(y, 1e-12) || !P_->contains(yp, 1e-12) ||
                        !P_->contains(ym, 1e-12))
                        continue;
                    double dd = std::log((*this)(yp)) - 2.0 * std::log((*this)(y)) +
                                std::log((*this)(ym));
                    if (dd > rep.worst_margin) {
                        rep.worst_margin = dd;
                        rep.location = y;
                    }
                }
            }
        rep.ok = rep.worst_margin <= 1e-10;
        return rep;
    }

private:
    double eval_raw(const DVec& y) const {
        // multilinear interpolation on the tabulated bounding-box grid, clamped
        auto clamp = [](double t, double lo, double hi) { return std::min(hi, std::max(lo, t)); };
        double u = (clamp(y[0], tab_lo0_, tab_hi0_) - tab_lo0_) / (tab_hi0_ - tab_lo0_) * (tab_n0_ - 1);
        int i0 = std::min<int>(tab_n0_ - 2, (int)u);
        double fu = u - i0;
        if (tab_n1_ == 1) {
            return tab_[i0] * (1 - fu) + tab_[i0 + 1] * fu;
        }
        double v = (clamp(y[1], tab_lo1_, tab_hi1_) - tab_lo1_) / (tab_hi1_ - tab_lo1_) * (tab_n1_ - 1);
        int j0 = std::min<int>(tab_n1_ - 2, (int)v);
        double fv = v - j0;
        auto at = [this](int i, int j) { return tab_[size_t(i) * tab_n1_ + j]; };
        return at(i0, j0) * (1 - fu) * (1 - fv) + at(i0 + 1, j0) * fu * (1 - fv) +
               at(i0, j0 + 1) * (1 - fu) * fv + at(i0 + 1, j0 + 1) * fu * fv;
    }

    double extreme_on_P(bool want_max) const {
        if (kind_ == WeightKind::Constant) return 1.0;
        if (kind_ == WeightKind::Affine || kind_ == WeightKind::Exponential) {
            double best = want_max ? -1e300 : 1e300;
            for (auto& v : P_->vertices_d()) {
                double g = (*this)(v);
                best = want_max ? std::max(best, g) : std::min(best, g);
            }
            return best;
        }
        PolytopeQuadrature quad(*P_);
        double best = want_max ? -1e300 : 1e300;
        for (auto& y : quad.points()) {
            double g = (*this)(y);
            best = want_max ? std::max(best, g) : std::min(best, g);
        }
        for (auto& v : P_->vertices_d()) {
            double g = (*this)(v);
            best = want_max ? std::max(best, g) : std::min(best, g);
        }
        return best;
    }

    WeightKind kind_ = WeightKind::Constant;
    std::shared_ptr<const Polytope> P_;
    std::string spec_ = "ke";
    DVec cov_{0, 0};
    DVec bary_{0, 0};
    double lognorm_ = 0.0;
    // tabulated data
    int tab_n0_ = 0, tab_n1_ = 1;
    double tab_lo0_ = 0, tab_hi0_ = 0, tab_lo1_ = 0, tab_hi1_ = 0;
    double tab_scale_ = 1.0;
    std::vector<double> tab_;
};

} // namespace gsoliton
