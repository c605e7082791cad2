#include "crnms/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crnms/gproblem.hpp"

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

Real log_sum_exp(const std::vector<Real>& ls) {
    if (ls.empty()) return -kInf;
    const Real m = *std::max_element(ls.begin(), ls.end());
    Neumaier acc;
    for (Real l : ls) acc.add(std::exp(l - m));
    return m + std::log(acc.value());
}

}  // namespace

LineSystem make_line_system(const ReactionNetwork& net, const OneDimStructure& s, const std::vector<Real>& kappa,
                            const std::vector<Real>& offsets) {
    if (kappa.size() != net.num_reactions() || offsets.size() != net.num_species())
        throw Error(ErrorCode::DimensionMismatch, "rate or offset vector has the wrong length");
    LineSystem ls;
    ls.lower = -kInf;
    ls.upper = kInf;
    for (std::size_t j = 0; j < net.num_reactions(); ++j) {
        ls.exponents.push_back(net.reactions[j].reactant);
        ls.lambdaSign.push_back(sgn(s.lambdaByOriginal[j]));
        ls.weights.push_back(std::fabs(to_real(s.lambdaByOriginal[j])) * kappa[j]);
    }
    for (std::size_t k = 0; k < net.num_species(); ++k) {
        const Real g = static_cast<Real>(s.gammaByOriginal[k]);
        ls.direction.push_back(g);
        ls.offsets.push_back(offsets[k]);
        if (g > 0) ls.lower = std::max(ls.lower, -offsets[k] / g);
        if (g < 0) ls.upper = std::min(ls.upper, -offsets[k] / g);
        if (g == 0 && offsets[k] <= 0) throw Error(ErrorCode::EmptyInterval, "species fixed at a nonpositive value");
    }
    if (!(ls.lower < ls.upper)) throw Error(ErrorCode::EmptyInterval, "the line misses the positive orthant");
    return ls;
}

namespace {

void line_logs(const LineSystem& ls, Real z, std::vector<Real>& logx, std::vector<Real>& inv) {
    logx.resize(ls.offsets.size());
    inv.resize(ls.offsets.size());
    for (std::size_t k = 0; k < ls.offsets.size(); ++k) {
        const Real x = std::fma(ls.direction[k], z, ls.offsets[k]);
        if (!(x > 0)) throw Error(ErrorCode::OutOfDomain, "nonpositive coordinate on the line");
        logx[k] = std::log(x);
        inv[k] = ls.direction[k] / x;
    }
}

}  // namespace

Real line_balance(const LineSystem& ls, Real z) {
    std::vector<Real> logx, inv, pos, neg;
    line_logs(ls, z, logx, inv);
    for (std::size_t j = 0; j < ls.weights.size(); ++j) {
        if (!(ls.weights[j] > 0)) continue;
        Neumaier l;
        l.add(std::log(ls.weights[j]));
        for (std::size_t k = 0; k < logx.size(); ++k)
            if (ls.exponents[j][k] != 0) l.add(ls.exponents[j][k] * logx[k]);
        (ls.lambdaSign[j] > 0 ? pos : neg).push_back(l.value());
    }
    return log_sum_exp(pos) - log_sum_exp(neg);
}

Real line_balance_slope(const LineSystem& ls, Real z) {
    std::vector<Real> logx, inv;
    line_logs(ls, z, logx, inv);
    std::vector<Real> lp, sp, ln, sn;
    for (std::size_t j = 0; j < ls.weights.size(); ++j) {
        if (!(ls.weights[j] > 0)) continue;
        Neumaier l, d;
        l.add(std::log(ls.weights[j]));
        for (std::size_t k = 0; k < logx.size(); ++k)
            if (ls.exponents[j][k] != 0) {
                l.add(ls.exponents[j][k] * logx[k]);
                d.add(ls.exponents[j][k] * inv[k]);
            }
        if (ls.lambdaSign[j] > 0) {
            lp.push_back(l.value());
            sp.push_back(d.value());
        } else {
            ln.push_back(l.value());
            sn.push_back(d.value());
        }
    }
    auto weighted = [](const std::vector<Real>& l, const std::vector<Real>& d) {
        if (l.empty()) return static_cast<Real>(0);
        const Real lse = log_sum_exp(l);
        Neumaier acc;
        for (std::size_t i = 0; i < l.size(); ++i) acc.add(std::exp(l[i] - lse) * d[i]);
        return acc.value();
    };
    return weighted(lp, sp) - weighted(ln, sn);
}

std::vector<Real> line_roots(const LineSystem& ls) {
    Real scale = 1;
    const Real ref = std::isfinite(ls.lower) ? ls.lower : std::isfinite(ls.upper) ? ls.upper : 0;
    for (std::size_t k = 0; k < ls.direction.size(); ++k)
        if (ls.direction[k] != 0) scale = std::max(scale, std::fabs(-ls.offsets[k] / ls.direction[k] - ref));
    std::vector<std::pair<Real, Real>> samples;
    for (Real z : scan_grid(ls.lower, ls.upper, scale, 20000)) {
        try {
            const Real v = line_balance(ls, z);
            if (std::isfinite(v)) samples.emplace_back(z, v);
        } catch (const Error&) {
        }
    }
    auto f = [&](Real z) { return line_balance(ls, z); };
    std::vector<Real> roots;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const Real a = samples[i].second, b = samples[i + 1].second;
        if (a == 0) roots.push_back(samples[i].first);
        else if ((a < 0 && b > 0) || (a > 0 && b < 0)) roots.push_back(bisect(f, samples[i].first, samples[i + 1].first));
    }
    return roots;
}

Real balance_residual(const ReactionNetwork& net, const OneDimStructure& s, const std::vector<Real>& kappa,
                      const std::vector<Real>& x) {
    Neumaier total, absTotal;
    for (std::size_t j = 0; j < net.num_reactions(); ++j) {
        Real term = to_real(s.lambdaByOriginal[j]) * kappa[j];
        for (std::size_t k = 0; k < net.num_species(); ++k)
            if (net.alpha(k, j) != 0) term *= std::pow(x[k], static_cast<Real>(net.alpha(k, j)));
        total.add(term);
        absTotal.add(std::fabs(term));
    }
    if (absTotal.value() == 0) return 0;
    return std::fabs(total.value()) / absTotal.value();
}

Real balance_transversality(const ReactionNetwork& net, const OneDimStructure& s, const std::vector<Real>& kappa,
                            const std::vector<Real>& x) {
    std::vector<Real> offsets(x.begin(), x.end());
    try {
        const LineSystem ls = make_line_system(net, s, kappa, offsets);
        Real rho = kInf;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (s.gammaByOriginal[k] != 0) rho = std::min(rho, x[k] / std::fabs(static_cast<Real>(s.gammaByOriginal[k])));
        if (!std::isfinite(rho)) return 0;
        return std::fabs(line_balance_slope(ls, 0)) * rho;
    } catch (const Error&) {
        return 0;
    }
}

VerificationReport verify_witness(const ReactionNetwork& net, const Witness& w, Real tolerance) {
    const OneDimStructure s = one_dim_structure(net);
    const std::size_t n = net.num_species(), m = net.num_reactions();
    if (w.kappa.size() != m)
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(m) + " rate constants, got " + std::to_string(w.kappa.size()));
    if (w.c.size() != n - 1)
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n - 1) +
                                                      " conservation constants, got " + std::to_string(w.c.size()));
    for (const auto& x : w.states)
        if (x.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "a state has " + std::to_string(x.size()) + " coordinates");
    for (const Rational& k : w.kappa)
        if (k <= 0) throw Error(ErrorCode::InvalidArgument, "rate constants must be positive");

    std::vector<Real> kappa;
    for (const Rational& k : w.kappa) kappa.push_back(to_real(k));
    const std::size_t b = s.base_species();
    const Rational gb(static_cast<long>(s.gammaByOriginal[b]));

    VerificationReport rep;
    rep.tolerance = tolerance;
    for (const auto& xs : w.states) {
        StateCheck chk;
        std::vector<Real> x;
        chk.positive = true;
        for (const Rational& v : xs) {
            x.push_back(to_real(v));
            if (v <= 0) chk.positive = false;
        }
        chk.residuals.push_back(balance_residual(net, s, kappa, x));
        for (std::size_t i = 1; i < n; ++i) {
            const std::size_t k = s.speciesPerm[i];
            const Rational gi(static_cast<long>(s.gammaByOriginal[k]));
            const Rational h = gi * xs[b] - gb * xs[k] - w.c[i - 1];
            const Rational scale = abs(gi * xs[b]) + abs(gb * xs[k]) + abs(w.c[i - 1]);
            chk.residuals.push_back(scale == 0 ? 0 : to_real(Rational(abs(h) / scale)));
        }
        chk.maxResidual = *std::max_element(chk.residuals.begin(), chk.residuals.end());
        if (chk.positive) {
            chk.transversality = balance_transversality(net, s, kappa, x);
            chk.nondegenerate = chk.transversality > kNondegeneracyThreshold;
        }
        chk.pass = chk.positive && chk.maxResidual <= tolerance;
        rep.states.push_back(chk);
    }
    rep.distinct = true;
    for (std::size_t a = 0; a < w.states.size(); ++a)
        for (std::size_t c = a + 1; c < w.states.size(); ++c)
            if (w.states[a] == w.states[c]) rep.distinct = false;
    rep.pass = !rep.states.empty() && rep.distinct &&
               std::all_of(rep.states.begin(), rep.states.end(), [](const StateCheck& c) { return c.pass; });
    return rep;
}

}  // namespace crnms
