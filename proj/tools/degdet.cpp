#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "degdet/certify.hpp"
#include "degdet/driver.hpp"
#include "degdet/generate.hpp"
#include "degdet/instance.hpp"
#include "degdet/oracle.hpp"

using namespace degdet;
using nlohmann::json;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitCoherence = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Instance load_instance(const std::string& path) {
    try {
        return parse_instance(read_file(path));
    } catch (const InstanceError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const FieldError& e) {
        throw InputError(path + ": " + e.what());
    }
}

bool trace_from_env() {
    const char* t = std::getenv("DEGDET_TRACE");
    return t && std::string(t) == "1";
}

int cmd_solve(const std::string& path, bool certificates, bool oracle_check, bool trace) {
    Instance inst = load_instance(path);
    SolveOptions opt;
    opt.trace = trace ? &std::cerr : nullptr;
    Solution sol;
    try {
        sol = solve(inst, opt);
    } catch (const CoherenceError& e) {
        std::cerr << "coherence failure: " << e.what() << "\n";
        return kExitCoherence;
    }
    std::cout << solution_json(sol, certificates) << "\n";
    if (oracle_check) {
        if (2 * std::min(inst.mu(), inst.nu()) > kOracleMaxOrder) {
            std::cerr << "oracle check skipped: instance exceeds the oracle size guard\n";
            return 0;
        }
        DeltaSeq o = oracle_sequence(inst);
        if (o != sol.deltas) {
            std::cerr << "oracle mismatch: solver " << seq_str(sol.deltas) << " oracle " << seq_str(o) << "\n";
            return kExitMismatch;
        }
    }
    return 0;
}

int cmd_gen(const GenParams& g) {
    try {
        std::cout << serialize_instance(generate(g));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return 0;
}

// Reports one certificate; returns false on rejection.
bool verify_one(const Instance& inst, const Certificate& c, json& out) {
    Verdict p = verify_primal(inst, c);
    Verdict d = verify_dual(inst, c);
    out = {{"k", c.k}};
    for (const auto& [name, v] : {std::pair{"primal", &p}, std::pair{"dual", &d}}) {
        if (v->ok)
            out[name] = v->value;
        else
            out[name] = {{"violation", v->violation}, {"detail", v->detail}};
    }
    if (!p.ok || !d.ok) {
        const Verdict& bad = p.ok ? d : p;
        std::cerr << "k=" << c.k << " rejected: " << bad.violation << " (" << bad.detail << ")\n";
        return false;
    }
    out["optimal"] = p.value == d.value;
    return true;
}

int cmd_verify(const std::string& inst_path, const std::string& cert_path) {
    Instance inst = load_instance(inst_path);
    std::string bytes = read_file(cert_path);
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        throw InputError(cert_path + ": " + e.what());
    }
    // A single certificate, or a solution document carrying several.
    std::vector<std::string> certs;
    if (doc.contains("certificates")) {
        for (const auto& c : doc.at("certificates")) certs.push_back(c.dump());
    } else {
        certs.push_back(bytes);
    }
    json report = json::array();
    bool all = true;
    for (const auto& b : certs) {
        Certificate c;
        try {
            c = parse_certificate(inst, b);
        } catch (const InstanceError& e) {
            std::cerr << "rejected: format (" << e.what() << ")\n";
            return kExitMismatch;
        }
        json r;
        all = verify_one(inst, c, r) && all;
        report.push_back(r);
    }
    std::cout << report.dump() << "\n";
    return all ? 0 : kExitMismatch;
}

int cmd_oracle(const std::string& path, int k, const OracleOptions& opt) {
    Instance inst = load_instance(path);
    try {
        if (k >= 0) {
            Delta d = oracle_delta(inst, k, opt);
            json doc = {{"k", k}};
            if (d)
                doc["delta"] = *d;
            else
                doc["delta"] = "-inf";
            std::cout << doc.dump() << "\n";
        } else {
            std::cout << sequence_json(oracle_sequence(inst, opt)) << "\n";
        }
    } catch (const OracleError& e) {
        throw InputError(e.what());
    } catch (const std::out_of_range& e) {
        throw InputError(e.what());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degree of determinants of (2x2)-type generic partitioned polynomial matrices"};
    app.require_subcommand(1);

    std::string path, cert_path;
    bool certificates = false, oracle_check = false, trace = false;
    auto* solve_cmd = app.add_subcommand("solve", "compute the full delta sequence");
    solve_cmd->add_option("instance", path, "instance JSON")->required();
    solve_cmd->add_flag("--certificates", certificates, "include per-k certificates");
    solve_cmd->add_flag("--oracle-check", oracle_check, "cross-check against the brute-force oracle");
    solve_cmd->add_flag("--trace", trace, "engine trace on stderr");

    GenParams g;
    auto* gen_cmd = app.add_subcommand("gen", "generate a seeded random instance");
    gen_cmd->add_option("rows", g.rows)->required();
    gen_cmd->add_option("cols", g.cols)->required();
    gen_cmd->add_option("density", g.density)->required();
    gen_cmd->add_option("dmax", g.dmax)->required();
    gen_cmd->add_option("rank1_prob", g.rank1_prob)->required();
    gen_cmd->add_option("seed", g.seed)->required();
    gen_cmd->add_option("--entry-max", g.entry_max, "block entries are drawn from [-m, m]");

    auto* verify_cmd = app.add_subcommand("verify", "check primal and dual certificates");
    verify_cmd->add_option("instance", path, "instance JSON")->required();
    verify_cmd->add_option("certificate", cert_path, "certificate or solution JSON")->required();

    int k = -1;
    OracleOptions oo;
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force delta via random substitution");
    oracle_cmd->add_option("instance", path, "instance JSON")->required();
    oracle_cmd->add_option("k", k, "single order; all orders when omitted");
    oracle_cmd->add_option("--trials", oo.trials, "independent substitutions")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--seed", oo.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    }

    try {
        if (*solve_cmd) return cmd_solve(path, certificates, oracle_check, trace || trace_from_env());
        if (*gen_cmd) return cmd_gen(g);
        if (*verify_cmd) return cmd_verify(path, cert_path);
        if (*oracle_cmd) return cmd_oracle(path, k, oo);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CoherenceError& e) {
        std::cerr << "coherence failure: " << e.what() << "\n";
        return kExitCoherence;
    }
    return 0;
}
