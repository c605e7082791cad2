#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crnms/enumerate.hpp"
#include "crnms/report.hpp"
#include "crnms/witness.hpp"

using namespace crnms;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kNotOneDim = 3, kUnattainable = 4, kEngine = 5, kRejected = 6 };

bool g_pretty = false;

void emit(const json& report) {
    if (g_pretty)
        std::cout << pretty(report);
    else
        std::cout << report.dump(2) << "\n";
}

json header(const std::string& command) { return {{"schemaVersion", kSchemaVersion}, {"command", command}}; }

int exit_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::Parse: return kParse;
        case ErrorCode::NotOneDimensional:
        case ErrorCode::ZeroBaseDirection: return kNotOneDim;
        case ErrorCode::GoalUnattainable: return kUnattainable;
        case ErrorCode::InvalidArgument:
        case ErrorCode::DimensionMismatch: return kUsage;
        default: return kEngine;
    }
}

int fail(const std::string& command, const Error& e) {
    json r = header(command);
    r["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        r["error"]["line"] = pe->line();
        r["error"]["column"] = pe->column();
    }
    emit(r);
    std::cerr << "crnms " << command << ": " << e.what() << "\n";
    return exit_for(e.code());
}

json base_report(const std::string& command, const ClassificationReport& c, bool full) {
    json r = header(command);
    r["network"] = to_json(c.network);
    json body = to_json(c);
    if (!full) {
        for (const char* key : {"tests", "profile", "capacity", "reduction"}) body.erase(key);
        json warns = json::array();
        for (const auto& w : c.warnings)
            if (w.code != "opposed-pair-with-continuum") warns.push_back({{"code", w.code}, {"message", w.message}});
        body["warnings"] = warns;
    }
    r.update(body);
    return r;
}

void dump_g(const std::string& path, const ReactionNetwork& net, const Witness& w) {
    if (net.num_reactions() != 2 || w.offsets.empty() || w.route == "homotopy") {
        std::cerr << "crnms witness: --dump-g needs a g-problem witness; nothing written\n";
        return;
    }
    const OneDimStructure s = one_dim_structure(net);
    BiReactionProfile p = bi_profile(net, s);
    std::vector<Real> d;
    for (const Rational& q : w.offsets) d.push_back(to_real(q));
    const GProblem gp = g_problem(p, d);
    std::ofstream out(path);
    out << "z,g\n";
    out.precision(17);
    const std::vector<Real> grid = scan_grid(gp.lower, gp.upper, pole_scale(gp), 2000);
    for (Real z : grid) {
        try {
            out << static_cast<double>(z) << "," << static_cast<double>(eval_g(gp, z).value) << "\n";
        } catch (const Error&) {
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multistationarity analysis of mass-action networks with one-dimensional stoichiometric subspace"};
    app.require_subcommand(1);
    bool jsonOut = false, seedless = false;
    app.add_flag("--pretty", g_pretty, "Human-readable output instead of JSON");
    app.add_flag("--json", jsonOut, "JSON output (default)");
    app.add_flag("--seedless", seedless, "Accepted for compatibility; nothing here is random");

    std::string path, goal = "three", witnessPath, outPath, dumpPath;
    double tol = 1e-9;
    int species = 0, maxCoeff = 0;

    auto* analyze = app.add_subcommand("analyze", "Structure, essential species and bi-arrow diagrams");
    analyze->add_option("network", path, "Network file")->required();
    auto* classifyCmd = app.add_subcommand("classify", "Capacity classification with rule trace");
    classifyCmd->add_option("network", path, "Network file")->required();
    auto* witnessCmd = app.add_subcommand("witness", "Construct and verify rates with several steady states");
    witnessCmd->add_option("network", path, "Network file")->required();
    witnessCmd->add_option("--goal", goal, "two or three")->check(CLI::IsMember({"two", "three"}));
    witnessCmd->add_option("--dump-g", dumpPath, "Write samples of g(z) as CSV");
    auto* verifyCmd = app.add_subcommand("verify", "Check a witness file against a network");
    verifyCmd->add_option("network", path, "Network file")->required();
    verifyCmd->add_option("--witness", witnessPath, "Witness JSON file")->required();
    verifyCmd->add_option("--tol", tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
    auto* enumerateCmd = app.add_subcommand("enumerate", "Classify all small two-reaction networks");
    enumerateCmd->add_option("--species", species, "Number of species (1-4)")->required()->check(CLI::Range(1, 4));
    enumerateCmd->add_option("--max-coeff", maxCoeff, "Largest coefficient (1-4)")->required()->check(CLI::Range(1, 4));
    enumerateCmd->add_option("--out", outPath, "JSON-lines output file (default: standard output)");
    for (auto* sub : {analyze, classifyCmd, witnessCmd, verifyCmd, enumerateCmd}) {
        sub->add_flag("--pretty", g_pretty, "Human-readable output instead of JSON");
        sub->add_flag("--json", jsonOut, "JSON output (default)");
        sub->add_flag("--seedless", seedless, "Accepted for compatibility; nothing here is random");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    if (jsonOut) g_pretty = false;

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "enumerate") {
            std::ofstream file;
            if (!outPath.empty()) {
                file.open(outPath);
                if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + outPath + "'");
            }
            std::ostream& lines = outPath.empty() ? std::cout : file;
            const EnumerateSummary sum = enumerate_networks({species, maxCoeff}, [&](const ClassificationReport& r) {
                json line = {{"network", print_network(r.network)},
                             {"capacity", to_string(r.capacity.tag)},
                             {"rule", r.capacity.rule},
                             {"ad", r.ad.total}};
                lines << line.dump() << "\n";
            });
            json r = header(command);
            r["species"] = species;
            r["maxCoeff"] = maxCoeff;
            r["networks"] = sum.networks;
            r["byTag"] = sum.byTag;
            r["byRule"] = sum.byRule;
            if (outPath.empty())
                std::cerr << r.dump() << "\n";
            else
                emit(r);
            return kOk;
        }

        const ReactionNetwork net = load_network(path);
        const ClassificationReport cls = classify(net);
        if (command == "analyze") {
            emit(base_report(command, cls, false));
            return kOk;
        }
        if (command == "classify") {
            emit(base_report(command, cls, true));
            return kOk;
        }
        if (command == "witness") {
            json r = base_report(command, cls, true);
            r["goal"] = goal;
            Witness w;
            try {
                w = goal == "three" ? witness_three(net) : witness_two_general(net);
            } catch (const Error& e) {
                r["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
                emit(r);
                std::cerr << "crnms witness: " << e.what() << "\n";
                return exit_for(e.code());
            }
            const VerificationReport v = verify_witness(net, w);
            r["witness"] = to_json(net, cls.structure, w);
            r["verification"] = to_json(v);
            if (!dumpPath.empty()) dump_g(dumpPath, net, w);
            emit(r);
            return v.pass ? kOk : kEngine;
        }
        if (command == "verify") {
            std::ifstream in(witnessPath);
            if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + witnessPath + "'");
            json wj;
            try {
                wj = json::parse(in);
            } catch (const json::exception& e) {
                throw Error(ErrorCode::InvalidArgument, std::string("witness file is not valid JSON: ") + e.what());
            }
            const Witness w = witness_from_json(wj, net);
            const VerificationReport v = verify_witness(net, w, static_cast<Real>(tol));
            json r = header(command);
            r["network"] = to_json(net);
            r["witness"] = to_json(net, cls.structure, w);
            r["verification"] = to_json(v);
            json warns = json::array();
            for (const auto& x : known_network_notes(net)) warns.push_back({{"code", x.code}, {"message", x.message}});
            r["warnings"] = warns;
            emit(r);
            return v.pass ? kOk : kRejected;
        }
    } catch (const Error& e) {
        return fail(command, e);
    } catch (const std::exception& e) {
        std::cerr << "crnms " << command << ": " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
