#include "crnms/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace crnms {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

bool core_recipe_applies(const BiReactionProfile& q) {
    using enum SignClass;
    if (!q.has(S1) || !q.has(S4) || !(q.sum(S4) > q.min(S1))) return false;
    if (q.has(S2)) return true;
    return !q.has(S3) && q.sum(S1) > q.sum(S4);
}

// Offsets for species that do not enter g: fixed ones at 1, moving ones
// with their pole far beyond the others.
void place_inert(const std::vector<long long>& gammas, std::vector<Real>& d, const std::vector<bool>& assigned) {
    Real reach = 1;
    for (std::size_t k = 0; k < d.size(); ++k)
        if (assigned[k] && gammas[k] != 0) reach = std::max(reach, std::fabs(d[k] / static_cast<Real>(gammas[k])));
    const Real R = std::ldexp(reach, 20);
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (assigned[k]) continue;
        d[k] = gammas[k] == 0 ? 1 : std::fabs(static_cast<Real>(gammas[k])) * R;
    }
}

}  // namespace

DChoice choose_d_three(const BiReactionProfile& p, int startHalvings) {
    if (!(p.lambda2 < 0) || capacity_class_bi(p).tag != CapacityTag::FiniteAtLeastThree)
        throw Error(ErrorCode::PreconditionViolated, "profile is not classified as having three or more steady states");

    struct Transform {
        const char* name;
        int sa, sg;
    };
    const Transform transforms[] = {{"identity", 1, 1}, {"negate-alpha", -1, 1}, {"negate-gamma", 1, -1},
                                    {"negate-both", -1, -1}};
    const std::size_t n = p.alphas.size();
    for (const Transform& t : transforms) {
        std::vector<long long> a(n), g(n);
        for (std::size_t k = 0; k < n; ++k) {
            a[k] = t.sa * p.alphas[k];
            g[k] = t.sg * p.gammas[k];
        }
        const BiReactionProfile q = make_profile(a, g, p.lambda2);
        if (!core_recipe_applies(q)) continue;

        using enum SignClass;
        std::size_t pivot = n;
        for (std::size_t k = 0; k < n; ++k)
            if (q.classes[k] == S1 && std::llabs(q.alphas[k]) == q.min(S1)) {
                pivot = k;
                break;
            }
        const Real aPivot = static_cast<Real>(std::llabs(q.alphas[pivot]));
        const Real rest12 = static_cast<Real>(q.sum(S1) + q.sum(S2)) - aPivot;
        for (int h = startHalvings; h < startHalvings + 40; ++h) {
            const Real eps1 = std::ldexp(static_cast<Real>(1), -(4 + h));
            const Real eps2 = eps1 / 2;
            const Real Y = (aPivot + rest12 * eps1 - static_cast<Real>(q.sum(S3)) * eps2) / static_cast<Real>(q.sum(S4));
            if (!(Y > 0)) continue;
            std::vector<Real> d(n, 0);
            std::vector<bool> assigned(n, false);
            for (std::size_t k = 0; k < n; ++k) {
                Real w = 0;
                if (k == pivot) w = 1;
                else if (q.classes[k] == S1 || q.classes[k] == S2) w = eps1;
                else if (q.classes[k] == S3) w = eps2;
                else if (q.classes[k] == S4) w = Y;
                if (w > 0) {
                    d[k] = std::fabs(static_cast<Real>(q.gammas[k])) / w;
                    assigned[k] = true;
                }
            }
            place_inert(q.gammas, d, assigned);
            GProblem gq;
            try {
                gq = make_g_problem(q.alphas, q.gammas, d);
            } catch (const Error&) {
                continue;
            }
            if (!gq.contains(0)) continue;
            const GValue v = eval_g(gq, 0);
            Real scale = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (q.gammas[k] != 0)
                    scale += std::fabs(static_cast<Real>(q.alphas[k] * q.gammas[k]) / d[k]);
            if (!(v.second < 0)) continue;
            if (std::fabs(v.first) > 1e-12L * std::max<Real>(scale, 1)) continue;
            if (boundary_limit(gq, Side::Lower) != -kInf) continue;
            if (!(boundary_limit(gq, Side::Upper) > v.value)) continue;

            DChoice out;
            out.offsets = d;
            out.transform = t.name;
            out.pivot = pivot;
            out.epsilon = eps1;
            out.halvings = h;
            const GValue orig = eval_g(g_problem(p, d), 0);
            out.slope = orig.first;
            out.curvature = orig.second;
            return out;
        }
        throw Error(ErrorCode::RecipeFailed, "no epsilon produced a valid critical point at z = 0");
    }
    throw Error(ErrorCode::RecipeFailed, "no symmetry of the profile matches the construction");
}

KChoice choose_K_three(const GProblem& gp) {
    const std::vector<Real> crit = critical_points(gp);
    if (crit.empty()) throw Error(ErrorCode::PreconditionViolated, "g is monotone; no critical point");
    KChoice out;
    {
        std::size_t star = 0;
        for (std::size_t i = 1; i < crit.size(); ++i)
            if (std::fabs(crit[i]) < std::fabs(crit[star])) star = i;
        out.zStar = crit[star];
        const GValue v = eval_g(gp, out.zStar);
        if (v.second == 0) throw Error(ErrorCode::PreconditionViolated, "critical point of g is degenerate");
        const Real wanted = v.second < 0 ? kInf : -kInf;
        std::optional<std::size_t> next;
        if (boundary_limit(gp, Side::Upper) == wanted && star + 1 < crit.size()) next = star + 1;
        else if (boundary_limit(gp, Side::Lower) == wanted && star > 0) next = star - 1;
        if (next) {
            out.zStarStar = crit[*next];
            out.level = (v.value + eval_g(gp, crit[*next]).value) / 2;
            out.rule = "midpoint";
            out.roots = find_roots(gp, out.level).roots.size();
            if (out.roots >= 3) return out;
        }
    }
    const LevelChoice lc = best_level(gp);
    out.level = lc.level;
    out.roots = lc.count;
    out.rule = "best-level";
    return out;
}

Witness assemble_witness(const ReactionNetwork& net, const OneDimStructure& s, const std::vector<Real>& offsets,
                         Real level, const std::vector<Real>& roots) {
    if (net.num_reactions() != 2) throw Error(ErrorCode::NotBiReaction, "expected two reactions");
    if (offsets.size() != net.num_species()) throw Error(ErrorCode::DimensionMismatch, "offset length");
    Witness w;
    const Real lambda2 = to_real(s.lambdaByOriginal[1]);
    w.kappa = {Rational(1), exact_rational(std::exp(level) / -lambda2)};
    for (Real d : offsets) w.offsets.push_back(exact_rational(d));
    for (Real z : roots) {
        const Rational zq = exact_rational(z);
        std::vector<Rational> x;
        for (std::size_t k = 0; k < net.num_species(); ++k) {
            Rational v = Rational(static_cast<long>(s.gammaByOriginal[k])) * zq + w.offsets[k];
            if (v <= 0) throw Error(ErrorCode::RootOutsideInterval, "root leaves the positive orthant");
            x.push_back(v);
        }
        w.states.push_back(std::move(x));
        w.z.push_back(z);
    }
    w.c = conservation_constants(s, w.offsets);
    w.level = level;
    return w;
}

namespace {

void finish(const ReactionNetwork& net, Witness& w) {
    const VerificationReport rep = verify_witness(net, w);
    w.nondegenerate.clear();
    for (const auto& st : rep.states) w.nondegenerate.push_back(st.nondegenerate);
}

}  // namespace

Witness witness_three(const ReactionNetwork& net) {
    const OneDimStructure s = one_dim_structure(net);
    if (net.num_reactions() != 2)
        throw Error(ErrorCode::GoalUnattainable, "three-state witnesses are built for two-reaction networks only");
    const BiReactionProfile p = bi_profile(net, s);
    const CapacityClass cls = capacity_class_bi(p);
    if (cls.tag != CapacityTag::FiniteAtLeastThree)
        throw Error(ErrorCode::GoalUnattainable,
                    "classified " + to_string(cls.tag) + " (" + cls.rule + "): " + cls.explanation);
    int start = 0;
    while (start < 60) {
        const DChoice dc = choose_d_three(p, start);
        const GProblem gp = g_problem(p, dc.offsets);
        const KChoice kc = choose_K_three(gp);
        if (kc.roots >= 3) {
            const RootSet rs = find_roots(gp, kc.level);
            Witness w = assemble_witness(net, s, dc.offsets, kc.level, rs.roots);
            w.route = "g-problem";
            if (verify_witness(net, w).pass) {
                finish(net, w);
                return w;
            }
        }
        start = dc.halvings + 1;
    }
    throw Error(ErrorCode::RecipeFailed, "could not place three verified roots");
}

namespace {

bool mixed(const BiReactionProfile& p) {
    bool pos = false, neg = false;
    for (std::size_t k = 0; k < p.alphas.size(); ++k) {
        const long long v = p.alphas[k] * p.gammas[k];
        pos |= v > 0;
        neg |= v < 0;
    }
    return pos && neg;
}

int product_sign(const BiReactionProfile& p) {
    for (std::size_t k = 0; k < p.alphas.size(); ++k) {
        const long long v = p.alphas[k] * p.gammas[k];
        if (v != 0) return v > 0 ? 1 : -1;
    }
    return 0;
}

Real log_monomial(const ReactionNetwork& net, std::size_t j, const std::vector<Real>& x) {
    Real l = 0;
    for (std::size_t k = 0; k < net.num_species(); ++k)
        if (net.alpha(k, j) != 0) l += net.alpha(k, j) * std::log(x[k]);
    return l;
}

// Offsets giving the pair's g a nondegenerate critical point at z = 0.
std::vector<Real> pair_offsets(const BiReactionProfile& pp, int variant) {
    const std::size_t n = pp.alphas.size();
    Real sumP = 0, sumN = 0;
    std::vector<Real> v(n, 1);
    bool first = true;
    for (std::size_t k = 0; k < n; ++k) {
        const long long prod = pp.alphas[k] * pp.gammas[k];
        if (prod > 0 && first) {
            static const Real factors[] = {1, 2, 3, 0.5L, 5};
            v[k] = factors[variant % 5];
            first = false;
        }
        if (prod > 0) sumP += std::llabs(pp.alphas[k]) * v[k];
        if (prod < 0) sumN += std::llabs(pp.alphas[k]) * v[k];
    }
    std::vector<Real> d(n, 0);
    std::vector<bool> assigned(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        const long long prod = pp.alphas[k] * pp.gammas[k];
        if (prod == 0) continue;
        const Real w = v[k] / (prod > 0 ? sumP : sumN);
        d[k] = std::fabs(static_cast<Real>(pp.gammas[k])) / w;
        assigned[k] = true;
    }
    place_inert(pp.gammas, d, assigned);
    return d;
}

std::optional<Witness> pair_lift(const ReactionNetwork& net, const OneDimStructure& s, std::size_t i, std::size_t j) {
    const BiReactionProfile pp = pair_profile(net, s, i, j);
    for (int variant = 0; variant < 5; ++variant) {
        const std::vector<Real> d = pair_offsets(pp, variant);
        GProblem gp;
        try {
            gp = g_problem(pp, d);
            if (is_constant(gp)) continue;
            const GValue v0 = eval_g(gp, 0);
            if (std::fabs(v0.second) < 1e-9L) continue;
        } catch (const Error&) {
            continue;
        }
        const LevelChoice lc = best_level(gp);
        if (lc.count < 2) continue;
        const RootSet rs = find_roots(gp, lc.level);
        std::vector<Real> zs(rs.roots.begin(), rs.roots.begin() + 2);

        const Real li = to_real(s.lambdaByOriginal[i]), lj = to_real(s.lambdaByOriginal[j]);
        std::vector<Real> kappa(net.num_reactions(), 0);
        kappa[i] = 1;
        kappa[j] = std::exp(lc.level) * li / -lj;

        std::vector<Real> x0;
        for (std::size_t k = 0; k < net.num_species(); ++k)
            x0.push_back(std::fma(static_cast<Real>(s.gammaByOriginal[k]), zs[0], d[k]));
        const Real logTi = std::log(li * kappa[i]) + log_monomial(net, i, x0);

        // Half-widths of local brackets around the pair roots.
        std::vector<Real> marks = critical_points(gp);
        marks.push_back(gp.lower);
        marks.push_back(gp.upper);
        std::vector<Real> half;
        for (std::size_t r = 0; r < zs.size(); ++r) {
            Real h = kInf;
            for (Real mk : marks) h = std::min(h, std::fabs(mk - zs[r]));
            h = std::min(h, std::fabs(zs[0] - zs[1]));
            half.push_back(h / 4);
        }

        const std::size_t others = net.num_reactions() - 2;
        for (int e = 4; e < (others == 0 ? 5 : 64); ++e) {
            const Real eps = std::ldexp(static_cast<Real>(1), -e);
            for (std::size_t r = 0; r < net.num_reactions(); ++r) {
                if (r == i || r == j) continue;
                const Real lr = std::fabs(to_real(s.lambdaByOriginal[r]));
                kappa[r] = std::exp(std::log(eps) + logTi - std::log(lr) - log_monomial(net, r, x0));
            }
            std::vector<Rational> kq;
            for (Real k : kappa) kq.push_back(exact_rational(k));
            std::vector<Real> kr;
            for (const Rational& k : kq) kr.push_back(to_real(k));
            LineSystem ls;
            try {
                ls = make_line_system(net, s, kr, d);
            } catch (const Error&) {
                break;
            }
            auto f = [&](Real z) { return line_balance(ls, z); };
            std::vector<Real> found;
            for (std::size_t r = 0; r < zs.size(); ++r) {
                if (others == 0) {
                    found.push_back(zs[r]);
                    continue;
                }
                const Real a = zs[r] - half[r], b = zs[r] + half[r];
                try {
                    const Real fa = f(a), fb = f(b);
                    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) found.push_back(bisect(f, a, b));
                } catch (const Error&) {
                }
            }
            if (found.size() != 2) continue;
            Witness w;
            w.kappa = kq;
            for (Real dk : d) w.offsets.push_back(exact_rational(dk));
            bool ok = true;
            for (Real z : found) {
                const Rational zq = exact_rational(z);
                std::vector<Rational> x;
                for (std::size_t k = 0; k < net.num_species(); ++k) {
                    x.push_back(Rational(static_cast<long>(s.gammaByOriginal[k])) * zq + w.offsets[k]);
                    if (x.back() <= 0) ok = false;
                }
                w.states.push_back(std::move(x));
                w.z.push_back(z);
            }
            if (!ok) continue;
            w.c = conservation_constants(s, w.offsets);
            w.level = lc.level;
            w.route = "pair-lift";
            if (verify_witness(net, w).pass) {
                finish(net, w);
                return w;
            }
        }
    }
    return std::nullopt;
}

Witness homotopy(const ReactionNetwork& net, const OneDimStructure& s, std::pair<std::size_t, std::size_t> p1,
                 std::pair<std::size_t, std::size_t> p2, int sigma) {
    const std::size_t n = net.num_species(), m = net.num_reactions();
    const BiReactionProfile q2 = pair_profile(net, s, p2.first, p2.second);
    std::optional<std::size_t> special;
    {
        bool hasSigma = false;
        for (std::size_t k = 0; k < n; ++k)
            if (q2.alphas[k] * q2.gammas[k] * sigma > 0) hasSigma = true;
        if (hasSigma)
            for (std::size_t k = 0; k < n; ++k)
                if (q2.alphas[k] * q2.gammas[k] * sigma < 0) {
                    special = k;
                    break;
                }
    }
    // Line x(u) = o + u*gamma; z at u = 0 and y at u = 1.
    std::vector<Rational> zq(n), yq(n);
    for (std::size_t k = 0; k < n; ++k) {
        const long long g = s.gammaByOriginal[k];
        const Rational ag(static_cast<long>(std::llabs(g)));
        Rational r;
        if (g > 0) r = (special && *special == k) ? Rational(1, 2) : Rational(2);
        else if (g < 0) r = (special && *special == k) ? Rational(5, 4) : Rational(3);
        zq[k] = g == 0 ? Rational(1) : Rational(ag * r);
        yq[k] = zq[k] + Rational(static_cast<long>(g));
    }
    std::vector<Real> zr, yr;
    for (std::size_t k = 0; k < n; ++k) {
        zr.push_back(to_real(zq[k]));
        yr.push_back(to_real(yq[k]));
    }
    std::vector<Real> logRho(m), logNu(m);
    std::vector<int> sg(m);
    for (std::size_t r = 0; r < m; ++r) {
        logRho[r] = log_monomial(net, r, yr) - log_monomial(net, r, zr);
        logNu[r] = -std::log(std::fabs(to_real(s.lambdaByOriginal[r]))) - log_monomial(net, r, zr);
        sg[r] = sgn(s.lambdaByOriginal[r]);
    }
    auto weights = [&](Real theta, Real eps) {
        std::vector<Real> a(m);
        for (std::size_t r = 0; r < m; ++r) {
            const Real e1 = (r == p1.first || r == p1.second) ? 1 : eps;
            const Real e2 = (r == p2.first || r == p2.second) ? 1 : eps;
            a[r] = (1 - theta) * e1 + theta * e2;
        }
        return a;
    };
    auto balance = [&](const std::vector<Real>& a) {
        Real pn = 0, pd = 0, nn = 0, nd = 0;
        for (std::size_t r = 0; r < m; ++r) {
            const Real t = a[r] * std::exp(logRho[r]);
            if (sg[r] > 0) {
                pn += t;
                pd += a[r];
            } else {
                nn += t;
                nd += a[r];
            }
        }
        return std::log(pn / pd) - std::log(nn / nd);
    };

    Real eps = 0;
    for (int e = 4; e < 64; ++e) {
        const Real cand = std::ldexp(static_cast<Real>(1), -e);
        const Real d0 = balance(weights(0, cand)), d1 = balance(weights(1, cand));
        if (d0 * sigma > 0 && d1 * sigma < 0) {
            eps = cand;
            break;
        }
    }
    if (eps == 0) throw Error(ErrorCode::ClaimEndpointFailed, "endpoint balances do not have opposite signs");

    Real lo = 0, hi = 1;
    Real flo = balance(weights(lo, eps));
    for (int it = 0; it < 200; ++it) {
        const Real mid = lo + (hi - lo) / 2;
        if (!(mid > lo && mid < hi)) break;
        const Real fm = balance(weights(mid, eps));
        if (fm == 0) {
            lo = hi = mid;
            break;
        }
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const Real fl = balance(weights(lo, eps)), fh = balance(weights(hi, eps));
    const Real theta = std::fabs(fl) <= std::fabs(fh) ? lo : hi;
    if (std::fabs(std::min(std::fabs(fl), std::fabs(fh))) > 1e-12L)
        throw Error(ErrorCode::BisectionStalled, "rate interpolation did not balance");
    const std::vector<Real> a = weights(theta, eps);
    Real B = 0, C = 0;
    for (std::size_t r = 0; r < m; ++r) (sg[r] > 0 ? B : C) += a[r];

    Witness w;
    for (std::size_t r = 0; r < m; ++r)
        w.kappa.push_back(exact_rational(a[r] * std::exp(logNu[r]) / (sg[r] > 0 ? B : C)));
    w.states = {zq, yq};
    w.z = {0, 1};
    w.offsets = zq;
    w.c = conservation_constants(s, zq);
    w.route = "homotopy";
    finish(net, w);
    return w;
}

}  // namespace

Witness witness_two_general(const ReactionNetwork& net) {
    const OneDimStructure s = one_dim_structure(net);
    if (s.t == net.num_reactions())
        throw Error(ErrorCode::GoalUnattainable, "all reactions move the same way; no positive steady state exists");
    const SufficientTwoResult suff = sufficient_two_test(net, s);
    if (!suff.satisfied)
        throw Error(ErrorCode::GoalUnattainable,
                    suff.certificate ? "the necessary pair of arrow diagrams is missing"
                                     : "no opposed reaction pair has finitely many steady states");
    const auto cert = *suff.certificate;
    const BiReactionProfile p1 = pair_profile(net, s, cert.first, cert.second);
    if (mixed(p1))
        if (auto w = pair_lift(net, s, cert.first, cert.second)) return *w;

    const int sigma = product_sign(p1);
    std::optional<std::pair<std::size_t, std::size_t>> partner;
    for (std::size_t a = 0; a < s.t; ++a)
        for (std::size_t b = s.t; b < s.reactionPerm.size(); ++b) {
            const std::size_t i = s.reactionPerm[a], j = s.reactionPerm[b];
            const BiReactionProfile q = pair_profile(net, s, i, j);
            bool opposite = false;
            for (std::size_t k = 0; k < q.alphas.size(); ++k)
                if (q.alphas[k] * q.gammas[k] * sigma < 0) opposite = true;
            if (!opposite) continue;
            if (!partner) partner = std::make_pair(i, j);
            if (two_nondeg_profile(q).nondegenerate)
                if (auto w = pair_lift(net, s, i, j)) return *w;
        }
    if (!partner) throw Error(ErrorCode::GoalUnattainable, "no reaction pair with the opposite diagram");
    return homotopy(net, s, cert, *partner, sigma);
}

RecoveredStates states_from_parameters(const ReactionNetwork& net, const std::vector<Rational>& kappa,
                                       const std::vector<Rational>& c) {
    const OneDimStructure s = one_dim_structure(net);
    if (net.num_reactions() != 2) throw Error(ErrorCode::NotBiReaction, "expected two reactions");
    if (kappa.size() != 2 || c.size() + 1 != net.num_species())
        throw Error(ErrorCode::DimensionMismatch, "rate or conservation vector has the wrong length");
    const BiReactionProfile p = bi_profile(net, s);
    if (!(p.lambda2 < 0)) throw Error(ErrorCode::LambdaNotOpposed, "the two reactions are not opposed");
    const std::size_t b = s.base_species();
    std::vector<Rational> dq(net.num_species(), Rational(0));
    const Rational gb(static_cast<long>(s.gammaByOriginal[b]));
    for (std::size_t i = 1; i < net.num_species(); ++i) dq[s.speciesPerm[i]] = -c[i - 1] / gb;
    std::vector<Real> d;
    for (const Rational& v : dq) d.push_back(to_real(v));
    RecoveredStates out;
    out.problem = g_problem(p, d);
    out.level = std::log(to_real(Rational(-p.lambda2 * kappa[1] / kappa[0])));
    out.roots = find_roots(out.problem, out.level);
    for (Real z : out.roots.roots) {
        const Rational zq = exact_rational(z);
        std::vector<Rational> x;
        for (std::size_t k = 0; k < net.num_species(); ++k)
            x.push_back(Rational(static_cast<long>(s.gammaByOriginal[k])) * zq + dq[k]);
        out.states.push_back(std::move(x));
    }
    return out;
}

}  // namespace crnms
