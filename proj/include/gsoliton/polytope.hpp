#pragma once

#include "gsoliton/rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gsoliton {

using RVec = std::array<Rational, 2>;
using DVec = std::array<double, 2>;

struct Facet {
    std::array<long long, 2> normal; // primitive integer inward normal
    long long offset;                // P = { y : <y,normal> >= offset }; reflexive means -1
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> diagnostics;
    void fail(const std::string& msg) { ok = false; diagnostics.push_back(msg); }
};

/// Reflexive moment polytope of a toric Fano, dimension 1 or 2.
/// Vertices are kept in counterclockwise order (2-D) or increasing (1-D).
/// All combinatorial quantities (volume, barycenter, moments) are exact rationals.
class Polytope {
public:
    static Polytope from_vertices(int n, std::vector<RVec> verts) {
        Polytope P;
        P.n_ = n;
        P.vertices_ = std::move(verts);
        P.order_vertices();
        P.build_facets();
        P.compute_moments();
        return P;
    }

    /// Named catalog: p1, p2, p1xp1, bl1p2, bl2p2, bl3p2 (standard fan conventions).
    static Polytope example(const std::string& name) {
        auto V = [](long long a, long long b) { return RVec{Rational(a), Rational(b)}; };
        if (name == "p1")
            return from_vertices(1, {V(-1, 0), V(1, 0)});
        if (name == "p2")
            return from_vertices(2, {V(-1, -1), V(2, -1), V(-1, 2)});
        if (name == "p1xp1")
            return from_vertices(2, {V(-1, -1), V(1, -1), V(1, 1), V(-1, 1)});
        if (name == "bl1p2")
            return from_vertices(2, {V(-1, 0), V(0, -1), V(2, -1), V(-1, 2)});
        if (name == "bl2p2")
            return from_vertices(2, {V(-1, 0), V(0, -1), V(2, -1), V(0, 1), V(-1, 1)});
        if (name == "bl3p2")
            return from_vertices(2, {V(-1, 0), V(0, -1), V(1, -1), V(1, 0), V(0, 1), V(-1, 1)});
        throw std::invalid_argument("unknown example polytope: " + name);
    }

    static std::vector<std::string> example_names() {
        return {"p1", "p2", "p1xp1", "bl1p2", "bl2p2", "bl3p2"};
    }

    int dim() const { return n_; }
    const std::vector<RVec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    Rational volume() const { return volume_; }
    RVec barycenter() const { return {first_[0] / volume_, first_[1] / volume_}; }
    DVec barycenter_d() const {
        auto b = barycenter();
        return {b[0].to_double(), b[1].to_double()};
    }
    double volume_d() const { return volume_.to_double(); }

    /// Exact moments over P: integral of 1, y_a, y_a y_b.
    Rational moment0() const { return volume_; }
    Rational moment1(int a) const { return first_[a]; }
    Rational moment2(int a, int b) const { return second_[a][b]; }

    std::vector<DVec> vertices_d() const {
        std::vector<DVec> out;
        out.reserve(vertices_.size());
        for (auto& v : vertices_) out.push_back({v[0].to_double(), v[1].to_double()});
        return out;
    }

    /// max over vertices of <v,x>
    double support(const DVec& x) const {
        double s = -1e300;
        for (auto& v : vertices_)
            s = std::max(s, v[0].to_double() * x[0] + v[1].to_double() * x[1]);
        return s;
    }

    /// min over facets of <y, normal> + 1; nonnegative iff y in P (reflexive offsets)
    double facet_margin(const DVec& y) const {
        double m = 1e300;
        for (auto& f : facets_)
            m = std::min(m, y[0] * f.normal[0] + y[1] * f.normal[1] - double(f.offset));
        return m;
    }

    bool contains(const DVec& y, double tol = 0.0) const { return facet_margin(y) >= -tol; }

    /// Lattice points of P (used for the Bergman-type solver seed).
    std::vector<std::array<long long, 2>> lattice_points() const {
        long long lo0 = 1e9, hi0 = -1e9, lo1 = 1e9, hi1 = -1e9;
        for (auto& v : vertices_) {
            double a = v[0].to_double(), b = v[1].to_double();
            lo0 = std::min<long long>(lo0, (long long)std::floor(a));
            hi0 = std::max<long long>(hi0, (long long)std::ceil(a));
            lo1 = std::min<long long>(lo1, (long long)std::floor(b));
            hi1 = std::max<long long>(hi1, (long long)std::ceil(b));
        }
        if (n_ == 1) { lo1 = hi1 = 0; }
        std::vector<std::array<long long, 2>> pts;
        for (long long a = lo0; a <= hi0; ++a)
            for (long long b = lo1; b <= hi1; ++b) {
                bool in = true;
                for (auto& f : facets_)
                    if (a * f.normal[0] + b * f.normal[1] < f.offset) { in = false; break; }
                if (in) pts.push_back({a, b});
            }
        return pts;
    }

    ValidationReport validate_reflexive() const {
        ValidationReport rep;
        if (n_ != 1 && n_ != 2) rep.fail("dimension must be 1 or 2");
        if (volume_ <= Rational(0)) rep.fail("volume not positive");
        for (auto& f : facets_) {
            if (f.offset != -1) rep.fail("facet offset is not -1 (not anticanonically normalized)");
            long long g = std::gcd(std::abs(f.normal[0]), std::abs(f.normal[1]));
            if (g != 1) rep.fail("facet normal not primitive");
        }
        // 0 strictly inside <=> 0 > offset for every facet, i.e. 0 >= -1 strictly
        for (auto& f : facets_)
            if (0 < f.offset) rep.fail("origin outside P");
        if (!contains({0.0, 0.0}, -1e-12)) rep.fail("origin not strictly interior");
        auto b = barycenter_d();
        if (!contains(b, -1e-12)) rep.fail("barycenter not interior");
        // vertices are exactly the extreme points: each vertex saturates >= n facets,
        // and every vertex satisfies all inequalities
        for (auto& v : vertices_) {
            int sat = 0;
            for (auto& f : facets_) {
                Rational s = v[0] * Rational(f.normal[0]) + v[1] * Rational(f.normal[1]);
                if (s < Rational(f.offset)) rep.fail("vertex violates a facet inequality");
                if (s == Rational(f.offset)) ++sat;
            }
            if (sat < n_) rep.fail("listed vertex is not an extreme point");
        }
        return rep;
    }

    /// FNV-1a hash of the exact combinatorial data; stamps field snapshots.
    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&h](long long v) {
            for (int k = 0; k < 8; ++k) {
                h ^= (std::uint64_t)(v >> (8 * k)) & 0xff;
                h *= 1099511628211ULL;
            }
        };
        mix(n_);
        for (auto& v : vertices_) { mix(v[0].num()); mix(v[0].den()); mix(v[1].num()); mix(v[1].den()); }
        for (auto& f : facets_) { mix(f.normal[0]); mix(f.normal[1]); mix(f.offset); }
        return h;
    }

    void save(std::ostream& os) const {
        os << "gsoliton-polytope 1\n";
        os << "dim " << n_ << "\n";
        os << "vertices " << vertices_.size() << "\n";
        for (auto& v : vertices_) os << v[0].str() << " " << v[1].str() << "\n";
        os << "facets " << facets_.size() << "\n";
        for (auto& f : facets_) os << f.normal[0] << " " << f.normal[1] << " " << f.offset << "\n";
    }

    static Polytope load(std::istream& is) {
        std::string tag; int ver = 0;
        is >> tag >> ver;
        if (tag != "gsoliton-polytope" || ver != 1)
            throw std::runtime_error("not a gsoliton polytope file");
        std::string key; int n = 0; size_t nv = 0, nf = 0;
        is >> key >> n;
        if (key != "dim") throw std::runtime_error("polytope file: expected 'dim'");
        is >> key >> nv;
        if (key != "vertices") throw std::runtime_error("polytope file: expected 'vertices'");
        std::vector<RVec> verts(nv);
        for (auto& v : verts) { v[0] = parse_rational(is); v[1] = parse_rational(is); }
        is >> key >> nf;
        if (key != "facets") throw std::runtime_error("polytope file: expected 'facets'");
        // facets are re-derived from vertices; the listed ones are cross-checked
        Polytope P = from_vertices(n, verts);
        for (size_t i = 0; i < nf; ++i) {
            long long a, b, c;
            is >> a >> b >> c;
            bool found = false;
            for (auto& f : P.facets_)
                found = found || (f.normal[0] == a && f.normal[1] == b && f.offset == c);
            if (!found) throw std::runtime_error("polytope file: facet list inconsistent with vertices");
        }
        return P;
    }

private:
    static Rational parse_rational(std::istream& is) {
        std::string tok;
        is >> tok;
        auto slash = tok.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(tok));
        return Rational(std::stoll(tok.substr(0, slash)), std::stoll(tok.substr(slash + 1)));
    }

    void order_vertices() {
        if (n_ == 1) {
            std::sort(vertices_.begin(), vertices_.end(),
                      [](const RVec& a, const RVec& b) { return a[0] < b[0]; });
            return;
        }
        // sort CCW around the centroid-ish mean
        double cx = 0, cy = 0;
        for (auto& v : vertices_) { cx += v[0].to_double(); cy += v[1].to_double(); }
        cx /= vertices_.size(); cy /= vertices_.size();
        std::sort(vertices_.begin(), vertices_.end(), [&](const RVec& a, const RVec& b) {
            return std::atan2(a[1].to_double() - cy, a[0].to_double() - cx)
                 < std::atan2(b[1].to_double() - cy, b[0].to_double() - cx);
        });
    }

    void build_facets() {
        facets_.clear();
        if (n_ == 1) {
            // [a,b]: y >= a is <y,1> >= a ; y <= b is <y,-1> >= -b
            long long a_num = vertices_.front()[0].num(), a_den = vertices_.front()[0].den();
            long long b_num = vertices_.back()[0].num(), b_den = vertices_.back()[0].den();
            if (a_den != 1 || b_den != 1)
                throw std::invalid_argument("1-D reflexive polytope must have integer endpoints");
            facets_.push_back({{1, 0}, a_num});
            facets_.push_back({{-1, 0}, -b_num});
            return;
        }
        size_t m = vertices_.size();
        for (size_t i = 0; i < m; ++i) {
            const RVec& a = vertices_[i];
            const RVec& b = vertices_[(i + 1) % m];
            Rational dx = b[0] - a[0], dy = b[1] - a[1];
            // inward normal of a CCW edge
            Rational nx = -dy, ny = dx;
            if (nx.den() != 1 || ny.den() != 1) {
                // scale to integers
                long long L = std::lcm(nx.den(), ny.den());
                nx = nx * Rational(L);
                ny = ny * Rational(L);
            }
            long long gx = std::gcd(std::abs(nx.num()), std::abs(ny.num()));
            if (gx == 0) throw std::invalid_argument("degenerate edge");
            long long fn0 = nx.num() / gx, fn1 = ny.num() / gx;
            Rational off = a[0] * Rational(fn0) + a[1] * Rational(fn1);
            if (off.den() != 1)
                throw std::invalid_argument("facet offset is not an integer");
            facets_.push_back({{fn0, fn1}, off.num()});
        }
    }

    void compute_moments() {
        volume_ = Rational(0);
        first_ = {Rational(0), Rational(0)};
        second_ = {{{Rational(0), Rational(0)}, {Rational(0), Rational(0)}}};
        if (n_ == 1) {
            Rational a = vertices_.front()[0], b = vertices_.back()[0];
            volume_ = b - a;
            first_[0] = (b * b - a * a) / Rational(2);
            second_[0][0] = (b * b * b - a * a * a) / Rational(3);
            return;
        }
        // triangulate the CCW polygon as a fan from vertex 0
        for (size_t i = 1; i + 1 < vertices_.size(); ++i) {
            const RVec& p = vertices_[0];
            const RVec& q = vertices_[i];
            const RVec& r = vertices_[i + 1];
            Rational det = (q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]);
            Rational A = det / Rational(2);
            volume_ += A;
            RVec S = {p[0] + q[0] + r[0], p[1] + q[1] + r[1]};
            first_[0] += A * S[0] / Rational(3);
            first_[1] += A * S[1] / Rational(3);
            // int_T y_a y_b = A/12 * ( sum_i v_ia v_ib + S_a S_b )
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    Rational vv = p[a] * p[b] + q[a] * q[b] + r[a] * r[b];
                    second_[a][b] += A * (vv + S[a] * S[b]) / Rational(12);
                }
        }
    }

    int n_ = 0;
    std::vector<RVec> vertices_;
    std::vector<Facet> facets_;
    Rational volume_;
    RVec first_{Rational(0), Rational(0)};
    std::array<std::array<Rational, 2>, 2> second_{};
};

} // namespace gsoliton
