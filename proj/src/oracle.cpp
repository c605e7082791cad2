#include "crnms/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "crnms/errors.hpp"

namespace crnms {

namespace {

bool eval_plain(const OracleScan& s, double z, double& out) {
    double sum = 0;
    for (std::size_t k = 0; k < s.alphas.size(); ++k) {
        const double x = static_cast<double>(s.gammas[k]) * z + s.offsets[k];
        if (!(x > 0)) return false;
        if (s.alphas[k] != 0) sum += static_cast<double>(s.alphas[k]) * std::log(x);
    }
    out = sum;
    return std::isfinite(sum);
}

}  // namespace

OracleScan oracle_scan(const GProblem& gp, int points) {
    OracleScan s;
    s.alphas = gp.alphas;
    s.gammas = gp.gammas;
    const double inf = std::numeric_limits<double>::infinity();
    s.lower = -inf;
    s.upper = inf;
    double scale = 1;
    for (std::size_t k = 0; k < gp.size(); ++k) {
        s.offsets.push_back(static_cast<double>(gp.offsets[k]));
        if (gp.gammas[k] > 0) s.lower = std::max(s.lower, -s.offsets[k] / static_cast<double>(gp.gammas[k]));
        if (gp.gammas[k] < 0) s.upper = std::min(s.upper, -s.offsets[k] / static_cast<double>(gp.gammas[k]));
    }
    for (std::size_t k = 0; k < gp.size(); ++k)
        if (gp.gammas[k] != 0) {
            const double p = -s.offsets[k] / static_cast<double>(gp.gammas[k]);
            const double ref = std::isfinite(s.lower) ? s.lower : s.upper;
            scale = std::max(scale, std::fabs(p - ref));
        }

    const bool lf = std::isfinite(s.lower), uf = std::isfinite(s.upper);
    const double pi = std::numbers::pi;
    std::vector<double> zs;
    zs.reserve(static_cast<std::size_t>(points) + 4000);
    for (int i = 0; i < points; ++i) {
        const double u = (i + 1.0) / (points + 1.0);
        double z;
        if (lf && uf)
            z = s.lower + (s.upper - s.lower) * u;
        else if (lf)
            z = s.lower + scale * std::tan(pi * u / 2);
        else if (uf)
            z = s.upper - scale * std::tan(pi * (1 - u) / 2);
        else
            z = scale * std::tan(pi * (u - 0.5));
        zs.push_back(z);
    }
    // Geometric samples toward finite ends and far out toward infinite ones.
    const double width = lf && uf ? s.upper - s.lower : scale;
    for (int j = 1; j <= 1100; ++j) {
        const double e = std::ldexp(width, -j);
        const double far = std::ldexp(scale, j);
        if (lf) zs.push_back(s.lower + e);
        else if (std::isfinite(far)) zs.push_back((uf ? s.upper : 0) - far);
        if (uf) zs.push_back(s.upper - e);
        else if (std::isfinite(far)) zs.push_back((lf ? s.lower : 0) + far);
    }
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    for (double z : zs) {
        if (!(z > s.lower && z < s.upper)) continue;
        double v;
        if (!eval_plain(s, z, v)) continue;
        s.z.push_back(z);
        s.g.push_back(v);
    }
    if (!s.g.empty()) {
        const auto [mn, mx] = std::minmax_element(s.g.begin(), s.g.end());
        if (*mx - *mn <= 1e-12 * (1 + std::fabs(*mn))) throw Error(ErrorCode::ConstantG, "g is constant on its interval");
    }
    return s;
}

int oracle_count(const OracleScan& s, double level) {
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < s.z.size(); ++i) {
        const double a = s.g[i] - level, b = s.g[i + 1] - level;
        if (a == 0) {
            roots.push_back(s.z[i]);
            continue;
        }
        if (!((a < 0 && b > 0) || (a > 0 && b < 0))) continue;
        double lo = s.z[i], hi = s.z[i + 1], flo = a;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            double v;
            if (!eval_plain(s, mid, v)) break;
            v -= level;
            if ((v < 0) == (flo < 0)) {
                lo = mid;
                flo = v;
            } else {
                hi = mid;
            }
        }
        roots.push_back(0.5 * (lo + hi));
    }
    std::sort(roots.begin(), roots.end());
    int count = 0;
    double last = 0;
    for (double r : roots) {
        if (count > 0 && std::fabs(r - last) <= 1e-9 * std::max(1.0, std::fabs(r))) continue;
        last = r;
        ++count;
    }
    return count;
}

int oracle_count(const GProblem& gp, Real level) {
    return oracle_count(oracle_scan(gp), static_cast<double>(level));
}

std::vector<double> oracle_turning_values(const OracleScan& s) {
    std::vector<double> t;
    if (s.g.empty()) return t;
    // Reversals smaller than the rounding floor of the scan are ignored.
    double scale = 1;
    for (double v : s.g) scale = std::max(scale, std::fabs(v));
    const double tol = 1e-12 * scale;
    t.push_back(s.g.front());
    int dir = 0;
    double ext = s.g.front();
    for (std::size_t i = 1; i < s.g.size(); ++i) {
        const double v = s.g[i];
        if (dir == 0) {
            if (v > ext + tol) dir = 1;
            else if (v < ext - tol) dir = -1;
            if (dir != 0) ext = v;
        } else if (dir > 0) {
            if (v > ext) ext = v;
            else if (v < ext - tol) {
                t.push_back(ext);
                ext = v;
                dir = -1;
            }
        } else {
            if (v < ext) ext = v;
            else if (v > ext + tol) {
                t.push_back(ext);
                ext = v;
                dir = 1;
            }
        }
    }
    t.push_back(dir == 0 ? s.g.back() : ext);
    return t;
}

int count_level_crossings(const std::vector<double>& t, double level) {
    int n = 0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double a = t[i] - level, b = t[i + 1] - level;
        if ((a < 0 && b > 0) || (a > 0 && b < 0)) ++n;
    }
    return n;
}

}  // namespace crnms
