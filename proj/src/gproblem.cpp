#include "crnms/gproblem.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

namespace crnms {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

struct Neumaier {
    Real sum = 0, comp = 0;
    void add(Real v) {
        Real t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    Real value() const { return sum + comp; }
};

Real pole_of(const GProblem& gp, std::size_t k) { return -gp.offsets[k] / static_cast<Real>(gp.gammas[k]); }

bool same_pole(Real p, Real q) {
    return std::fabs(p - q) <= 64 * LDBL_EPSILON * std::max<Real>(1, std::max(std::fabs(p), std::fabs(q)));
}

int sgn(Real v) { return (v > 0) - (v < 0); }

}  // namespace

GProblem make_g_problem(std::vector<long long> alphas, std::vector<long long> gammas, std::vector<Real> offsets) {
    if (alphas.size() != gammas.size() || alphas.size() != offsets.size())
        throw Error(ErrorCode::DimensionMismatch, "alpha, gamma and offset lengths differ");
    GProblem gp{std::move(alphas), std::move(gammas), std::move(offsets), -kInf, kInf};
    for (std::size_t k = 0; k < gp.size(); ++k) {
        if (!std::isfinite(gp.offsets[k])) throw Error(ErrorCode::InvalidArgument, "non-finite offset");
        if (gp.gammas[k] == 0) {
            if (gp.offsets[k] <= 0)
                throw Error(ErrorCode::EmptyInterval, "species with zero gamma needs a positive offset");
        } else if (gp.gammas[k] > 0) {
            gp.lower = std::max(gp.lower, pole_of(gp, k));
        } else {
            gp.upper = std::min(gp.upper, pole_of(gp, k));
        }
    }
    if (!(gp.lower < gp.upper)) throw Error(ErrorCode::EmptyInterval, "the interval of positivity is empty");
    return gp;
}

GProblem g_problem(const BiReactionProfile& p, std::vector<Real> offsets) {
    return make_g_problem(p.alphas, p.gammas, std::move(offsets));
}

bool is_constant(const GProblem& gp) {
    std::vector<bool> used(gp.size(), false);
    for (std::size_t k = 0; k < gp.size(); ++k) {
        if (used[k] || gp.gammas[k] == 0 || gp.alphas[k] == 0) continue;
        long long a = 0;
        for (std::size_t i = k; i < gp.size(); ++i) {
            if (used[i] || gp.gammas[i] == 0 || (gp.gammas[i] > 0) != (gp.gammas[k] > 0)) continue;
            if (!same_pole(pole_of(gp, i), pole_of(gp, k))) continue;
            used[i] = true;
            a += gp.alphas[i];
        }
        if (a != 0) return false;
    }
    return true;
}

GValue eval_g(const GProblem& gp, Real z) {
    if (!gp.contains(z)) throw Error(ErrorCode::OutOfDomain, "z outside the interval");
    Neumaier g, g1, g2;
    for (std::size_t k = 0; k < gp.size(); ++k) {
        const Real x = std::fma(static_cast<Real>(gp.gammas[k]), z, gp.offsets[k]);
        if (!(x > 0)) throw Error(ErrorCode::OutOfDomain, "nonpositive coordinate");
        if (gp.alphas[k] == 0) continue;
        const Real a = static_cast<Real>(gp.alphas[k]);
        const Real r = static_cast<Real>(gp.gammas[k]) / x;
        g.add(a * std::log(x));
        g1.add(a * r);
        g2.add(-a * r * r);
    }
    return {g.value(), g1.value(), g2.value()};
}

Real boundary_limit(const GProblem& gp, Side side) {
    const bool lowerSide = side == Side::Lower;
    const Real bound = lowerSide ? gp.lower : gp.upper;
    // Species whose pole sits on this end (for an infinite end: those that grow there).
    auto on_end = [&](std::size_t k) {
        if (gp.gammas[k] == 0) return false;
        const bool pointsHere = lowerSide ? gp.gammas[k] > 0 : gp.gammas[k] < 0;
        if (std::isinf(bound)) return !pointsHere;
        return pointsHere && same_pole(pole_of(gp, k), bound);
    };
    long long a = 0;
    for (std::size_t k = 0; k < gp.size(); ++k)
        if (on_end(k)) a += gp.alphas[k];
    if (a != 0) {
        if (std::isinf(bound)) return a > 0 ? kInf : -kInf;
        return a > 0 ? -kInf : kInf;
    }
    Neumaier v;
    for (std::size_t k = 0; k < gp.size(); ++k) {
        if (gp.alphas[k] == 0) continue;
        const Real alpha = static_cast<Real>(gp.alphas[k]);
        if (on_end(k)) {
            v.add(alpha * std::log(std::fabs(static_cast<Real>(gp.gammas[k]))));
        } else if (std::isinf(bound) && gp.gammas[k] != 0) {
            // Cannot happen: a species not growing at an infinite end bounds the interval there.
            return std::numeric_limits<Real>::quiet_NaN();
        } else {
            v.add(alpha * std::log(std::fma(static_cast<Real>(gp.gammas[k]), std::isinf(bound) ? 0 : bound,
                                            gp.offsets[k])));
        }
    }
    return v.value();
}

Real pole_scale(const GProblem& gp) {
    const Real ref = std::isfinite(gp.lower) ? gp.lower : std::isfinite(gp.upper) ? gp.upper : 0;
    Real L = 1;
    for (std::size_t k = 0; k < gp.size(); ++k)
        if (gp.gammas[k] != 0) L = std::max(L, std::fabs(pole_of(gp, k) - ref));
    return L;
}

std::vector<Real> scan_grid(Real lower, Real upper, Real scale, std::size_t n) {
    std::vector<Real> us;
    for (std::size_t i = 1; i < n; ++i) us.push_back(static_cast<Real>(i) / static_cast<Real>(n));
    for (int j = 1; j <= 90; ++j) {
        const Real e = std::ldexp(static_cast<Real>(1) / static_cast<Real>(n), -j);
        us.push_back(e);
        us.push_back(1 - e);
    }
    const bool lf = std::isfinite(lower), uf = std::isfinite(upper);
    std::vector<Real> zs;
    zs.reserve(us.size());
    for (Real u : us) {
        if (!(u > 0 && u < 1)) continue;
        Real z;
        if (lf && uf)
            z = u < 0.5L ? lower + (upper - lower) * u : upper - (upper - lower) * (1 - u);
        else if (lf)
            z = lower + scale * u / (1 - u);
        else if (uf)
            z = upper - scale * (1 - u) / u;
        else
            z = scale * (u - 0.5L) / (u * (1 - u));
        if (std::isfinite(z) && z > lower && z < upper) zs.push_back(z);
    }
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    return zs;
}

Real bisect(const std::function<Real(Real)>& f, Real lo, Real hi, int maxIter) {
    Real flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if (sgn(flo) == sgn(fhi)) throw Error(ErrorCode::BisectionStalled, "no sign change in bracket");
    for (int it = 0; it < maxIter; ++it) {
        const Real mid = lo + (hi - lo) / 2;
        if (!(mid > lo && mid < hi)) break;
        const Real fm = f(mid);
        if (fm == 0) return mid;
        if (sgn(fm) == sgn(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return std::fabs(flo) <= std::fabs(fhi) ? lo : hi;
}

namespace {

struct Sample {
    Real z, d1, d2;
};

std::vector<Sample> derivative_samples(const GProblem& gp) {
    std::vector<Sample> out;
    for (Real z : scan_grid(gp.lower, gp.upper, pole_scale(gp), 4096)) {
        try {
            GValue v = eval_g(gp, z);
            out.push_back({z, v.first, v.second});
        } catch (const Error&) {
        }
    }
    return out;
}

}  // namespace

std::vector<Real> critical_points(const GProblem& gp) {
    if (is_constant(gp)) throw Error(ErrorCode::ConstantG, "g is constant on its interval");
    auto d1 = [&](Real z) { return eval_g(gp, z).first; };
    auto d2 = [&](Real z) { return eval_g(gp, z).second; };
    const std::vector<Sample> s = derivative_samples(gp);
    std::vector<Real> crit;

    auto scan_cell = [&](Real a, Real fa, Real b, Real fb) {
        if (fa == 0) crit.push_back(a);
        if (sgn(fa) * sgn(fb) < 0) crit.push_back(bisect(d1, a, b));
    };
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const Sample &p = s[i], &q = s[i + 1];
        if (sgn(p.d2) * sgn(q.d2) < 0) {
            // g' has an extremum inside; look on both sides of it.
            const Real w = bisect(d2, p.z, q.z);
            const Real fw = d1(w);
            scan_cell(p.z, p.d1, w, fw);
            scan_cell(w, fw, q.z, q.d1);
        } else {
            scan_cell(p.z, p.d1, q.z, q.d1);
        }
    }
    if (!s.empty() && s.back().d1 == 0) crit.push_back(s.back().z);
    std::sort(crit.begin(), crit.end());
    std::vector<Real> out;
    for (Real c : crit)
        if (out.empty() || std::fabs(c - out.back()) > 1e-15L * std::max<Real>(1, std::fabs(c))) out.push_back(c);
    return out;
}

namespace {

// Walks from `anchor` toward an end of the interval until f takes sign `want`.
bool walk_to_end(const GProblem& gp, const std::function<Real(Real)>& f, Real anchor, Side side, int want, Real& out) {
    const Real bound = side == Side::Lower ? gp.lower : gp.upper;
    const Real L = pole_scale(gp);
    for (int j = 1; j < 4000; ++j) {
        Real z;
        if (std::isfinite(bound))
            z = bound + (anchor - bound) * std::ldexp(static_cast<Real>(1), -j);
        else
            z = anchor + (side == Side::Lower ? -1 : 1) * L * std::ldexp(static_cast<Real>(1), j);
        if (!std::isfinite(z) || !gp.contains(z)) return false;
        Real v;
        try {
            v = f(z);
        } catch (const Error&) {
            return false;
        }
        if (sgn(v) == want) {
            out = z;
            return true;
        }
    }
    return false;
}

Real mid_point(const GProblem& gp) {
    const bool lf = std::isfinite(gp.lower), uf = std::isfinite(gp.upper);
    const Real L = pole_scale(gp);
    if (lf && uf) return gp.lower + (gp.upper - gp.lower) / 2;
    if (lf) return gp.lower + L;
    if (uf) return gp.upper - L;
    return 0;
}

}  // namespace

RootSet find_roots(const GProblem& gp, Real level) {
    const std::vector<Real> crit = critical_points(gp);
    auto f = [&](Real z) { return eval_g(gp, z).value - level; };

    std::vector<Real> pts;  // interior breakpoints
    std::vector<Real> vals;
    vals.push_back(boundary_limit(gp, Side::Lower) - level);
    for (Real c : crit) {
        pts.push_back(c);
        vals.push_back(f(c));
    }
    vals.push_back(boundary_limit(gp, Side::Upper) - level);

    RootSet rs;
    for (std::size_t i = 0; i < crit.size(); ++i)
        if (std::fabs(vals[i + 1]) <= 1e-12L * (1 + std::fabs(level))) rs.suspectedDegenerate.push_back(crit[i]);

    for (std::size_t piece = 0; piece + 1 < vals.size(); ++piece) {
        const Real fl = vals[piece], fr = vals[piece + 1];
        if (!(sgn(fl) * sgn(fr) < 0)) continue;
        const bool leftIsEnd = piece == 0, rightIsEnd = piece + 1 == vals.size() - 1;
        Real zl = 0, zr = 0;
        bool okL = !leftIsEnd, okR = !rightIsEnd;
        if (!leftIsEnd) zl = pts[piece - 1];
        if (!rightIsEnd) zr = pts[piece];
        if (leftIsEnd && rightIsEnd) {
            const Real a = mid_point(gp);
            const Real fa = f(a);
            if (fa == 0) {
                zl = zr = a;
                okL = okR = true;
            } else if (sgn(fa) == sgn(fl)) {
                zl = a;
                okL = true;
                okR = walk_to_end(gp, f, a, Side::Upper, sgn(fr), zr);
            } else {
                zr = a;
                okR = true;
                okL = walk_to_end(gp, f, a, Side::Lower, sgn(fl), zl);
            }
        } else if (leftIsEnd) {
            okL = walk_to_end(gp, f, zr, Side::Lower, sgn(fl), zl);
        } else if (rightIsEnd) {
            okR = walk_to_end(gp, f, zl, Side::Upper, sgn(fr), zr);
        }
        if (!okL || !okR) continue;
        const Real root = zl == zr ? zl : bisect(f, zl, zr);
        rs.roots.push_back(root);
        rs.brackets.emplace_back(zl, zr);
        rs.residuals.push_back(std::fabs(f(root)));
    }
    return rs;
}

LevelChoice best_level(const GProblem& gp) {
    const std::vector<Real> crit = critical_points(gp);
    std::vector<Real> values;
    bool infinite = false;
    for (Side side : {Side::Lower, Side::Upper}) {
        const Real v = boundary_limit(gp, side);
        if (std::isfinite(v))
            values.push_back(v);
        else
            infinite = true;
    }
    for (Real c : crit) values.push_back(eval_g(gp, c).value);
    std::sort(values.begin(), values.end());
    std::vector<std::pair<Real, Real>> candidates;  // (level, gap)
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (values[i + 1] > values[i])
            candidates.emplace_back(values[i] + (values[i + 1] - values[i]) / 2, values[i + 1] - values[i]);
    if (!values.empty() && (infinite || candidates.empty())) {
        candidates.emplace_back(values.front() - 1, 0);
        candidates.emplace_back(values.back() + 1, 0);
    }
    LevelChoice best;
    Real bestGap = -1;
    for (const auto& [level, gap] : candidates) {
        const std::size_t n = find_roots(gp, level).roots.size();
        if (n > best.count || (n == best.count && gap > bestGap)) {
            best = {level, n};
            bestGap = gap;
        }
    }
    return best;
}

Real transversality(const GProblem& gp, Real z) {
    const GValue v = eval_g(gp, z);
    Real rho = kInf;
    for (std::size_t k = 0; k < gp.size(); ++k)
        if (gp.gammas[k] != 0)
            rho = std::min(rho, std::fma(static_cast<Real>(gp.gammas[k]), z, gp.offsets[k]) /
                                    std::fabs(static_cast<Real>(gp.gammas[k])));
    if (!std::isfinite(rho)) return 0;
    return std::fabs(v.first) * rho;
}

}  // namespace crnms
