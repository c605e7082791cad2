#include "crnms/enumerate.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <thread>

namespace crnms {

namespace {

using Vec = std::vector<int>;

bool next_vector(Vec& v, int maxCoeff) {
    for (std::size_t i = v.size(); i-- > 0;) {
        if (v[i] < maxCoeff) {
            ++v[i];
            return true;
        }
        v[i] = 0;
    }
    return false;
}

std::vector<int> encode(const Vec& a1, const Vec& b1, const Vec& a2, const Vec& b2, const std::vector<std::size_t>& perm) {
    std::vector<int> key;
    key.reserve(4 * perm.size());
    for (const Vec* v : {&a1, &b1, &a2, &b2})
        for (std::size_t k : perm) key.push_back((*v)[k]);
    return key;
}

bool canonical(const Vec& a1, const Vec& b1, const Vec& a2, const Vec& b2) {
    std::vector<std::size_t> perm(a1.size());
    std::iota(perm.begin(), perm.end(), 0);
    const std::vector<int> self = encode(a1, b1, a2, b2, perm);
    do {
        if (encode(a1, b1, a2, b2, perm) < self) return false;
        if (encode(a2, b2, a1, b1, perm) < self) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

long long gcd_abs(const Vec& v) {
    long long g = 0;
    for (int x : v) g = std::gcd(g, static_cast<long long>(std::abs(x)));
    return g;
}

// Every canonical network whose first reactant complex is the a1-th vector.
std::vector<ReactionNetwork> networks_for_first(const Vec& a1, int maxCoeff) {
    const std::size_t n = a1.size();
    std::vector<ReactionNetwork> out;
    Vec b1(n, 0);
    do {
        if (b1 == a1) continue;
        Vec u(n);
        for (std::size_t k = 0; k < n; ++k) u[k] = b1[k] - a1[k];
        const long long g = gcd_abs(u);
        for (int& x : u) x = static_cast<int>(x / g);
        Vec a2(n, 0);
        do {
            for (int mu = -maxCoeff; mu <= maxCoeff; ++mu) {
                if (mu == 0) continue;
                Vec b2(n);
                bool inRange = true;
                for (std::size_t k = 0; k < n; ++k) {
                    b2[k] = a2[k] + mu * u[k];
                    if (b2[k] < 0 || b2[k] > maxCoeff) inRange = false;
                }
                if (!inRange) continue;
                if (a2 == a1 && b2 == b1) continue;
                bool allOccur = true;
                for (std::size_t k = 0; k < n; ++k)
                    if (a1[k] == 0 && b1[k] == 0 && a2[k] == 0 && b2[k] == 0) allOccur = false;
                if (!allOccur) continue;
                if (!canonical(a1, b1, a2, b2)) continue;
                out.push_back(make_network({{a1, b1}, {a2, b2}}));
            }
        } while (next_vector(a2, maxCoeff));
    } while (next_vector(b1, maxCoeff));
    return out;
}

}  // namespace

bool is_canonical_pair(const ReactionNetwork& net) {
    if (net.num_reactions() != 2) return false;
    return canonical(net.reactions[0].reactant, net.reactions[0].product, net.reactions[1].reactant,
                     net.reactions[1].product);
}

EnumerateSummary enumerate_networks(const EnumerateOptions& opt,
                                    const std::function<void(const ClassificationReport&)>& sink) {
    if (opt.species < 1 || opt.species > 4)
        throw Error(ErrorCode::InvalidArgument, "species count must be between 1 and 4");
    if (opt.maxCoeff < 1 || opt.maxCoeff > 4)
        throw Error(ErrorCode::InvalidArgument, "maximum coefficient must be between 1 and 4");

    std::vector<Vec> firsts;
    Vec a1(static_cast<std::size_t>(opt.species), 0);
    do firsts.push_back(a1);
    while (next_vector(a1, opt.maxCoeff));

    auto work = [&](const Vec& first) {
        std::vector<ClassificationReport> reports;
        for (const ReactionNetwork& net : networks_for_first(first, opt.maxCoeff)) reports.push_back(classify(net));
        return reports;
    };

    EnumerateSummary summary;
    auto consume = [&](std::vector<ClassificationReport> batch) {
        for (const ClassificationReport& r : batch) {
            ++summary.networks;
            ++summary.byTag[to_string(r.capacity.tag)];
            ++summary.byRule[r.capacity.rule];
            sink(r);
        }
    };
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers == 1) {
        for (const Vec& f : firsts) consume(work(f));
        return summary;
    }
    std::vector<std::future<std::vector<ClassificationReport>>> window;
    std::size_t next = 0;
    while (next < firsts.size() || !window.empty()) {
        while (next < firsts.size() && window.size() < 2 * workers)
            window.push_back(std::async(std::launch::async, work, firsts[next++]));
        consume(window.front().get());
        window.erase(window.begin());
    }
    return summary;
}

}  // namespace crnms
