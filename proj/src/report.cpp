#include "crnms/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crnms {

json tagged(const Rational& q) {
    return {{"exactness", "rational"}, {"value", to_string(q)}, {"decimal", static_cast<double>(to_real(q))}};
}

json tagged(Real v) {
    json j = {{"exactness", "float64"}};
    if (std::isfinite(v))
        j["value"] = static_cast<double>(v);
    else
        j["value"] = v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    return j;
}

namespace {

json species_ref(const ReactionNetwork& net, std::size_t k) {
    return {{"index", k + 1}, {"name", net.species[k]}};
}

json reaction_ref(const ReactionNetwork& net, std::size_t j) {
    json r = {{"index", j + 1}, {"text", format_reaction(net, j)}};
    if (!net.reactions[j].label.empty()) r["label"] = net.reactions[j].label;
    return r;
}

json int_list(const std::vector<long long>& v) {
    json a = json::array();
    for (long long x : v) a.push_back(std::to_string(x));
    return {{"exactness", "rational"}, {"values", a}};
}

json index_list(const std::vector<std::size_t>& v) {
    json a = json::array();
    for (std::size_t x : v) a.push_back(x + 1);
    return a;
}

json bi_arrow(const ReactionNetwork& net, const BiArrow& a) {
    return {{"species", a.species + 1},
            {"speciesName", net.species[a.species]},
            {"positiveReaction", a.positive + 1},
            {"negativeReaction", a.negative + 1},
            {"product", std::to_string(a.product)}};
}

}  // namespace

json to_json(const ReactionNetwork& net) {
    json reactions = json::array();
    for (std::size_t j = 0; j < net.num_reactions(); ++j) reactions.push_back(reaction_ref(net, j));
    return {{"species", net.species}, {"reactions", reactions}};
}

json to_json(const ReactionNetwork& net, const OneDimStructure& s) {
    json lambda = json::array();
    for (const Rational& l : s.lambdaByOriginal) lambda.push_back(tagged(l));
    json sp = json::array(), rp = json::array();
    for (std::size_t k : s.speciesPerm) sp.push_back(k + 1);
    for (std::size_t j : s.reactionPerm) rp.push_back(j + 1);
    return {{"baseSpecies", species_ref(net, s.base_species())},
            {"baseReaction", 1},
            {"gamma", int_list(s.gammaByOriginal)},
            {"lambda", lambda},
            {"speciesOrder", sp},
            {"reactionOrder", rp},
            {"positiveReactions", s.t}};
}

json to_json(const ReactionNetwork& net, const EssentialSets& e) {
    auto names = [&](const std::vector<std::size_t>& v) {
        json a = json::array();
        for (std::size_t k : v) a.push_back(net.species[k]);
        return a;
    };
    return {{"E", index_list(e.E)}, {"H", index_list(e.H)}, {"EandH", index_list(e.both)},
            {"EandHNames", names(e.both)}};
}

json to_json(const ReactionNetwork& net, const PairWitnesses& w) {
    json rl = json::array(), lr = json::array();
    for (const auto& a : w.rightLeft) rl.push_back(bi_arrow(net, a));
    for (const auto& a : w.leftRight) lr.push_back(bi_arrow(net, a));
    return {{"rightLeft", rl}, {"leftRight", lr}};
}

json to_json(const ReactionNetwork& net, const AdReport& ad) {
    json per = json::array();
    for (std::size_t k = 0; k < ad.perSpecies.size(); ++k)
        per.push_back({{"species", k + 1}, {"name", net.species[k]}, {"count", ad.perSpecies[k]}});
    json triples = json::array();
    for (const auto& a : ad.triples) triples.push_back(bi_arrow(net, a));
    return {{"total", ad.total}, {"perSpecies", per}, {"triples", triples}};
}

json to_json(const ArrowDiagram& d) {
    json entries = json::array();
    for (std::size_t i = 0; i < d.glyphs.size(); ++i)
        entries.push_back({{"reactant", d.reactantValues[i]}, {"glyph", glyph_text(d.glyphs[i])}});
    return entries;
}

json to_json(const CapacityClass& c) {
    json ineq = json::array();
    for (const auto& q : c.inequalities)
        ineq.push_back({{"lhs", q.lhs},
                        {"rhs", q.rhs},
                        {"lhsValue", std::to_string(q.lhsValue)},
                        {"rhsValue", std::to_string(q.rhsValue)},
                        {"holds", q.holds()}});
    json j = {{"tag", to_string(c.tag)}, {"rule", c.rule}, {"explanation", c.explanation}, {"inequalities", ineq}};
    if (c.tag == CapacityTag::FiniteAtMostTwo || c.tag == CapacityTag::FiniteAtLeastThree)
        j["note"] = "finite capacities count nondegenerate steady states";
    if (c.lowerBound) j["lowerBound"] = *c.lowerBound;
    if (c.upperBoundIfFinite) j["upperBoundIfFinite"] = *c.upperBoundIfFinite;
    return j;
}

json to_json(const BiReactionProfile& p, const ReactionNetwork& net) {
    json classes = json::array();
    for (std::size_t k = 0; k < p.classes.size(); ++k)
        classes.push_back({{"species", k + 1}, {"name", net.species[k]}, {"class", to_string(p.classes[k])}});
    json sums = json::object(), mins = json::object();
    for (int i = 0; i < 4; ++i) {
        const std::string key = "S" + std::to_string(i + 1);
        sums[key] = std::to_string(p.sums[i]);
        mins[key] = p.counts[i] ? json(std::to_string(p.mins[i])) : json(nullptr);
    }
    return {{"alphas", int_list(p.alphas)},
            {"gammas", int_list(p.gammas)},
            {"lambda2", tagged(p.lambda2)},
            {"classes", classes},
            {"sums", sums},
            {"mins", mins}};
}

json to_json(const ClassificationReport& r) {
    const ReactionNetwork& net = r.network;
    json j;
    j["structure"] = to_json(net, r.structure);
    j["essential"] = to_json(net, r.essential);
    if (r.reduction) {
        json red = {{"network", to_json(r.reduction->network)},
                    {"keptSpecies", index_list(r.reduction->keptSpecies)},
                    {"droppedReactions", index_list(r.reduction->droppedReactions)},
                    {"note", r.reductionNote}};
        if (r.reducedCapacity) red["capacity"] = to_json(*r.reducedCapacity);
        j["reduction"] = red;
    } else if (!r.reductionNote.empty()) {
        j["reduction"] = {{"note", r.reductionNote}};
    }
    j["pairWitnesses"] = to_json(net, r.pairs);
    j["ad"] = to_json(net, r.ad);
    if (r.diagram) j["arrowDiagram"] = to_json(*r.diagram);
    json tests;
    tests["necessaryPair"] = {{"passes", r.necessaryPair.passes}, {"note", r.necessaryPair.note}};
    json suff = {{"satisfied", r.sufficientTwo.satisfied}, {"pairTestPasses", r.sufficientTwo.pairTestPasses}};
    if (r.sufficientTwo.certificate)
        suff["certificate"] = {r.sufficientTwo.certificate->first + 1, r.sufficientTwo.certificate->second + 1};
    else
        suff["certificate"] = nullptr;
    json inf = json::array();
    for (const auto& [a, b] : r.sufficientTwo.infinitePairs) inf.push_back({a + 1, b + 1});
    suff["infiniteCapacityPairs"] = inf;
    tests["sufficientTwo"] = suff;
    tests["necessaryThree"] = {{"passes", r.necessaryThree.passes}, {"ad", r.necessaryThree.ad},
                               {"note", r.necessaryThree.note}};
    if (r.twoNondeg)
        tests["twoReactionNondegenerate"] = {{"nondegenerate", r.twoNondeg->nondegenerate},
                                             {"reason", r.twoNondeg->reason}};
    j["tests"] = tests;
    if (r.profile) j["profile"] = to_json(*r.profile, net);
    j["capacity"] = to_json(r.capacity);
    json warns = json::array();
    for (const auto& w : r.warnings) warns.push_back({{"code", w.code}, {"message", w.message}});
    j["warnings"] = warns;
    return j;
}

json to_json(const ReactionNetwork& net, const OneDimStructure& s, const Witness& w) {
    json kappa = json::array(), c = json::array(), cs = json::array(), states = json::array();
    for (const Rational& k : w.kappa) kappa.push_back(tagged(k));
    for (std::size_t i = 0; i < w.c.size(); ++i) {
        c.push_back(tagged(w.c[i]));
        cs.push_back(net.species[s.speciesPerm[i + 1]]);
    }
    for (const auto& x : w.states) {
        json row = json::array();
        for (const Rational& v : x) row.push_back(tagged(v));
        states.push_back(row);
    }
    json j = {{"route", w.route},
              {"species", net.species},
              {"baseSpecies", net.species[s.base_species()]},
              {"kappa", kappa},
              {"c", c},
              {"cSpecies", cs},
              {"states", states}};
    if (!w.z.empty()) {
        json z = json::array();
        for (Real v : w.z) z.push_back(tagged(v));
        j["z"] = z;
    }
    if (w.level) j["K"] = tagged(*w.level);
    if (!w.offsets.empty()) {
        json d = json::array();
        for (const Rational& v : w.offsets) d.push_back(tagged(v));
        j["offsets"] = d;
    }
    if (!w.nondegenerate.empty()) j["nondegenerate"] = w.nondegenerate;
    return j;
}

json to_json(const VerificationReport& v) {
    json states = json::array();
    for (const auto& s : v.states) {
        json res = json::array();
        for (Real r : s.residuals) res.push_back(static_cast<double>(r));
        states.push_back({{"residuals", {{"exactness", "float64"}, {"values", res}}},
                          {"maxResidual", tagged(s.maxResidual)},
                          {"positive", s.positive},
                          {"nondegenerate", s.nondegenerate},
                          {"transversality", tagged(s.transversality)},
                          {"pass", s.pass}});
    }
    return {{"tolerance", tagged(v.tolerance)}, {"distinct", v.distinct}, {"pass", v.pass}, {"states", states}};
}

namespace {

Rational read_number(const json& j) {
    if (j.is_object()) {
        if (j.contains("value")) return read_number(j.at("value"));
        throw Error(ErrorCode::InvalidArgument, "numeric object without a value");
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return exact_rational(static_cast<Real>(j.get<double>()));
    throw Error(ErrorCode::InvalidArgument, "expected a number");
}

std::vector<Rational> read_list(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw Error(ErrorCode::InvalidArgument, std::string("witness needs an array '") + key + "'");
    std::vector<Rational> out;
    for (const json& e : j.at(key)) out.push_back(read_number(e));
    return out;
}

}  // namespace

Witness witness_from_json(const json& in, const ReactionNetwork& net) {
    const json& j = in.contains("witness") ? in.at("witness") : in;
    Witness w;
    w.kappa = read_list(j, "kappa");
    w.c = read_list(j, "c");
    if (!j.contains("states") || !j.at("states").is_array())
        throw Error(ErrorCode::InvalidArgument, "witness needs an array 'states'");
    for (const json& row : j.at("states")) {
        if (!row.is_array()) throw Error(ErrorCode::InvalidArgument, "each state must be an array");
        std::vector<Rational> x;
        for (const json& e : row) x.push_back(read_number(e));
        w.states.push_back(std::move(x));
    }
    // Reorder c when the file names its species.
    if (j.contains("cSpecies")) {
        const OneDimStructure s = one_dim_structure(net);
        std::vector<std::string> names = j.at("cSpecies").get<std::vector<std::string>>();
        if (names.size() != w.c.size()) throw Error(ErrorCode::DimensionMismatch, "cSpecies length differs from c");
        std::vector<Rational> ordered(w.c.size());
        for (std::size_t i = 1; i < s.speciesPerm.size(); ++i) {
            const std::string& want = net.species[s.speciesPerm[i]];
            auto it = std::find(names.begin(), names.end(), want);
            if (it == names.end()) throw Error(ErrorCode::InvalidArgument, "cSpecies lacks " + want);
            ordered[i - 1] = w.c[static_cast<std::size_t>(it - names.begin())];
        }
        w.c = ordered;
    }
    if (j.contains("route") && j.at("route").is_string()) w.route = j.at("route").get<std::string>();
    return w;
}

namespace {

std::string value_text(const json& v) {
    if (v.is_object() && v.contains("exactness")) {
        if (v.at("exactness") == "rational") return v.at("value").get<std::string>();
        std::ostringstream os;
        os.precision(12);
        if (v.at("value").is_number())
            os << v.at("value").get<double>();
        else
            os << v.at("value").get<std::string>();
        return os.str();
    }
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string decimal_text(const json& v) {
    if (v.is_object() && v.contains("decimal")) {
        std::ostringstream os;
        os.precision(12);
        os << v.at("decimal").get<double>();
        return os.str();
    }
    return value_text(v);
}

}  // namespace

std::string pretty(const json& r) {
    std::ostringstream out;
    if (r.contains("command")) out << "command: " << r.at("command").get<std::string>() << "\n";
    if (r.contains("network")) {
        out << "network:\n";
        for (const auto& rx : r.at("network").at("reactions"))
            out << "  r" << rx.at("index").get<std::size_t>() << ": " << rx.at("text").get<std::string>() << "\n";
    }
    if (r.contains("structure")) {
        const json& s = r.at("structure");
        out << "base species: " << s.at("baseSpecies").at("name").get<std::string>() << "\n";
        out << "gamma:";
        for (const auto& g : s.at("gamma").at("values")) out << " " << g.get<std::string>();
        out << "\nlambda:";
        for (const auto& l : s.at("lambda")) out << " " << value_text(l);
        out << "\n";
    }
    if (r.contains("ad")) {
        out << "bi-arrow diagrams: " << r.at("ad").at("total").get<std::size_t>() << " (per species:";
        for (const auto& p : r.at("ad").at("perSpecies"))
            out << " " << p.at("name").get<std::string>() << "=" << p.at("count").get<std::size_t>();
        out << ")\n";
    }
    if (r.contains("arrowDiagram")) {
        out << "arrow diagram:";
        for (const auto& e : r.at("arrowDiagram")) out << " " << e.at("reactant") << ":" << e.at("glyph").get<std::string>();
        out << "\n";
    }
    if (r.contains("tests")) {
        const json& t = r.at("tests");
        out << "necessary pair test: " << (t.at("necessaryPair").at("passes").get<bool>() ? "passes" : "fails") << "\n";
        out << "sufficient two-state test: "
            << (t.at("sufficientTwo").at("satisfied").get<bool>() ? "satisfied" : "not satisfied") << "\n";
        out << "Ad >= 3 test: " << (t.at("necessaryThree").at("passes").get<bool>() ? "passes" : "fails") << "\n";
    }
    if (r.contains("capacity")) {
        const json& c = r.at("capacity");
        out << "capacity: " << c.at("tag").get<std::string>() << " [" << c.at("rule").get<std::string>() << "] "
            << c.at("explanation").get<std::string>() << "\n";
    }
    if (r.contains("witness")) {
        const json& w = r.at("witness");
        out << "witness (" << w.at("route").get<std::string>() << "):\n  kappa:";
        for (const auto& k : w.at("kappa")) out << " " << value_text(k);
        out << "\n  c:";
        for (const auto& c : w.at("c")) out << " " << value_text(c);
        out << "\n";
        for (std::size_t i = 0; i < w.at("states").size(); ++i) {
            out << "  state " << i + 1 << ":";
            for (const auto& x : w.at("states")[i]) out << " " << decimal_text(x);
            out << "\n";
        }
    }
    if (r.contains("verification")) {
        const json& v = r.at("verification");
        out << "verification: " << (v.at("pass").get<bool>() ? "pass" : "FAIL") << "\n";
        for (std::size_t i = 0; i < v.at("states").size(); ++i) {
            const json& s = v.at("states")[i];
            out << "  state " << i + 1 << ": max residual " << value_text(s.at("maxResidual"))
                << (s.at("positive").get<bool>() ? "" : ", not positive")
                << (s.at("nondegenerate").get<bool>() ? ", nondegenerate" : ", degenerate") << "\n";
        }
    }
    if (r.contains("warnings"))
        for (const auto& w : r.at("warnings"))
            out << "warning [" << w.at("code").get<std::string>() << "]: " << w.at("message").get<std::string>() << "\n";
    if (r.contains("error"))
        out << "error [" << r.at("error").at("code").get<std::string>() << "]: "
            << r.at("error").at("message").get<std::string>() << "\n";
    return out.str();
}

}  // namespace crnms
