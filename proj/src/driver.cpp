#include "degdet/driver.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "degdet/augmentation.hpp"

namespace degdet {

using nlohmann::json;

namespace {

void record(const Instance& inst, Solution& sol, const MatchingState& s, const Labeling& v, const PotentialState& ps) {
    int k = static_cast<int>(s.size());
    if (k != static_cast<int>(sol.certificates.size())) throw CoherenceError("size did not grow by exactly one");
    std::int64_t w = weight(inst, s);
    if (w != dual_value(v, ps, k)) throw CoherenceError("primal and dual values differ at k = " + std::to_string(k));
    sol.deltas[k] = w;
    sol.certificates.push_back({k, s, v, ps, w});
}

}  // namespace

Solution solve(const Instance& inst, const SolveOptions& opt) {
    int kmax = 2 * std::min(inst.mu(), inst.nu());
    Solution sol;
    sol.deltas.assign(kmax + 1, std::nullopt);
    MatchingState s(inst.mu(), inst.nu());
    Labeling v = Labeling::canonical(inst.field(), inst.mu(), inst.nu());
    PotentialState ps(inst.mu(), inst.nu(), inst.max_weight().value_or(0));
    record(inst, sol, s, v, ps);
    SearchOptions so;
    so.checks = opt.checks;
    so.trace = opt.trace;
    so.ledger = opt.ledger;
    AugmentOptions ao{opt.checks, opt.trace, opt.ledger};
    while (static_cast<int>(s.size()) < kmax) {
        if (auto rc = find_rearrangeable(inst, s, v, ps)) {
            rearrange(inst, s, *rc);
            ++sol.stats.rearrangements;
            record(inst, sol, s, v, ps);
            continue;
        }
        SearchOutcome out = search(inst, s, v, ps, so);
        sol.stats.max_phases = std::max(sol.stats.max_phases, out.stats.phases);
        sol.stats.total_phases += out.stats.phases;
        if (out.kind == SearchOutcome::Kind::Infeasible) break;
        if (out.kind == SearchOutcome::Kind::Rearranged) {
            ++sol.stats.rearrangements;
        } else {
            AugmentStats as = augment(inst, s, v, ps, out.path, ao);
            ++sol.stats.augmentations;
            sol.stats.max_iterations = std::max(sol.stats.max_iterations, as.iterations);
            sol.stats.total_iterations += as.iterations;
            sol.stats.fallbacks += as.fallbacks;
            sol.stats.researches += as.researches;
        }
        record(inst, sol, s, v, ps);
    }
    return sol;
}

Delta delta_k(const Instance& inst, int k) {
    int kmax = 2 * std::min(inst.mu(), inst.nu());
    if (k < 0 || k > kmax) throw std::out_of_range("k out of range");
    return solve(inst).deltas[k];
}

Certificate to_certificate(const KCertificate& kc) {
    Certificate c;
    c.k = kc.k;
    for (const auto& e : kc.s.m.edges())
        c.edges.push_back({e.id.alpha, e.id.beta, e.sign, kc.s.in_i(e.id.alpha, e.id.beta)});
    for (const auto& p : kc.v.u) c.u.push_back({p[0].dir(), p[1].dir()});
    for (const auto& p : kc.v.v) c.v.push_back({p[0].dir(), p[1].dir()});
    c.c = kc.ps.c;
    c.pr = kc.ps.pr;
    c.pc = kc.ps.pc;
    return c;
}

namespace {
json deltas_json(const DeltaSeq& d) {
    json arr = json::array();
    for (const auto& x : d) {
        if (x)
            arr.push_back(*x);
        else
            arr.push_back("-inf");
    }
    return arr;
}
}  // namespace

std::string sequence_json(const DeltaSeq& deltas) {
    json doc;
    doc["deltas"] = deltas_json(deltas);
    return doc.dump();
}

std::string solution_json(const Solution& sol, bool with_certificates) {
    json doc;
    doc["deltas"] = deltas_json(sol.deltas);
    if (with_certificates) {
        doc["certificates"] = json::array();
        for (const auto& kc : sol.certificates)
            doc["certificates"].push_back(json::parse(serialize_certificate(to_certificate(kc))));
    }
    return doc.dump();
}

}  // namespace degdet
