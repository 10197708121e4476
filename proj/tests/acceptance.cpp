#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "degdet/certify.hpp"
#include "degdet/driver.hpp"
#include "degdet/generate.hpp"
#include "degdet/oracle.hpp"
#include "reference.hpp"

using namespace degdet;

namespace {

// Pinned thresholds.
constexpr int kCorpusSize = 200;
constexpr int kWideCorpusSize = 50;
constexpr int kOracleTrials = 5;
constexpr std::uint64_t kOracleSeed = 7;
constexpr double kCorpusSeconds = 60.0;
constexpr double kLargeSeconds = 5.0;
constexpr int kTamperings = 20;
constexpr int kEgervaryGraphs = 30;
constexpr int kEgervaryMaxSide = 6;
constexpr int kEgervaryOracleSide = 3;
constexpr int kPhaseFactor = 8;      // search phases per size increase <= 8 min
constexpr int kIterationFactor = 8;  // engine iterations per augmentation <= 8 min^2

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Row {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

struct CorpusRun {
    Instance inst;
    DeltaSeq oracle;
    Solution sol;
    std::string error;
};

OracleOptions oracle_options() {
    OracleOptions o;
    o.trials = kOracleTrials;
    o.seed = kOracleSeed;
    return o;
}

std::vector<CorpusRun> run_corpus(int n, GenParams (*params)(int), InvariantLedger* ledger, double& elapsed) {
    std::vector<CorpusRun> out;
    auto t0 = Clock::now();
    for (int i = 0; i < n; ++i) {
        CorpusRun r{generate(params(i)), {}, {}, {}};
        r.oracle = oracle_sequence(r.inst, oracle_options());
        try {
            SolveOptions so;
            so.checks = ledger != nullptr;
            so.ledger = ledger;
            r.sol = solve(r.inst, so);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        out.push_back(std::move(r));
    }
    elapsed = seconds_since(t0);
    return out;
}

Row equivalence(int id, const std::string& name, const std::vector<CorpusRun>& runs, double elapsed, double limit) {
    int match = 0;
    std::string first_bad;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& r = runs[i];
        if (r.error.empty() && r.sol.deltas == r.oracle) {
            ++match;
        } else if (first_bad.empty()) {
            first_bad = "; first mismatch #" + std::to_string(i) + " " +
                        (r.error.empty() ? seq_str(r.sol.deltas) + " vs " + seq_str(r.oracle) : r.error);
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/%zu exact, %.1f s (limit %.0f s)", match, runs.size(), elapsed, limit);
    return {id, name, match == static_cast<int>(runs.size()) && elapsed < limit, buf + first_bad};
}

Row strong_duality(const std::vector<CorpusRun>& runs) {
    int checked = 0, bad = 0;
    std::string first;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (const auto& kc : runs[i].sol.certificates) {
            ++checked;
            Certificate c = to_certificate(kc);
            Verdict p = verify_primal(runs[i].inst, c), d = verify_dual(runs[i].inst, c);
            Delta want = runs[i].sol.deltas[kc.k];
            if (!p.ok || !d.ok || !want || p.value != *want || d.value != *want) {
                if (!bad++) first = "; first failure #" + std::to_string(i) + " k=" + std::to_string(kc.k);
            }
        }
    }
    return {2, "strong duality", bad == 0 && checked > 0,
            std::to_string(checked - bad) + "/" + std::to_string(checked) + " finite k with primal = dual = delta" + first};
}

struct Tamper {
    std::string kind;
    Instance inst;
    Certificate cert;
    bool dual;             // which verifier must reject
    std::string expected;  // named violation
    std::string detail_has;
};

int degree_of(const Certificate& c, bool col, int idx) {
    int d = 0;
    for (const auto& e : c.edges) d += col ? e.beta == idx : e.alpha == idx;
    return d;
}

std::vector<Tamper> tamperings(const std::vector<CorpusRun>& runs) {
    std::mt19937_64 rng(31337);
    struct Ref {
        std::size_t run;
        std::size_t cert;
        int a = 0, b = 0;
        std::size_t edge = 0;
    };
    std::vector<Ref> flip, lower, deg3;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t j = 0; j < runs[i].sol.certificates.size(); ++j) {
            Certificate c = to_certificate(runs[i].sol.certificates[j]);
            if (c.k >= 1) lower.push_back({i, j});
            for (std::size_t e = 0; e < c.edges.size(); ++e) {
                const auto& ed = c.edges[e];
                if (degree_of(c, false, ed.alpha) == 2 || degree_of(c, true, ed.beta) == 2) flip.push_back({i, j, 0, 0, e});
            }
            const Instance& inst = runs[i].inst;
            for (int a = 0; a < inst.mu(); ++a) {
                if (degree_of(c, false, a) != 2) continue;
                for (int b = 0; b < inst.nu(); ++b) {
                    bool used = false;
                    for (const auto& ed : c.edges) used |= ed.alpha == a && ed.beta == b;
                    if (inst.has(a, b) && !used) deg3.push_back({i, j, a, b});
                }
            }
        }
    }
    auto pick = [&](const std::vector<Ref>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
    std::vector<Tamper> out;
    int per_kind = kTamperings / 4;
    for (int t = 0; t < per_kind && !flip.empty(); ++t) {
        Ref r = pick(flip);
        Certificate c = to_certificate(runs[r.run].sol.certificates[r.cert]);
        c.edges[r.edge].sign ^= 1;
        out.push_back({"sign flip", runs[r.run].inst, c, false, "Deg", "same sign"});
    }
    for (int t = 0; t < per_kind && !lower.empty(); ++t) {
        Ref r = pick(lower);
        Certificate c = to_certificate(runs[r.run].sol.certificates[r.cert]);
        c.c -= 1;
        out.push_back({"c-1", runs[r.run].inst, c, true, "potential", ""});
    }
    for (int t = 0; t < per_kind && !deg3.empty(); ++t) {
        Ref r = pick(deg3);
        Certificate c = to_certificate(runs[r.run].sol.certificates[r.cert]);
        c.edges.push_back({r.a, r.b, 0, false});
        out.push_back({"degree-3 edge", runs[r.run].inst, c, false, "Deg", "degree 3"});
    }
    for (int t = 0; t < per_kind; ++t) {
        GenParams g;
        g.rows = 2 + t % 2;
        g.cols = 2 + t / 2 % 2;
        g.density = 1.0;
        g.dmax = 10;
        g.rank1_prob = 0.0;
        g.seed = 424242 + static_cast<std::uint64_t>(t);
        Instance inst = generate(g);
        Solution sol = solve(inst);
        Certificate c = to_certificate(sol.certificates.front());
        c.edges = {{0, 0, 0, false}, {0, 1, 1, false}, {1, 1, 0, false}, {1, 0, 1, false}};
        c.k = 4;
        out.push_back({"rank-2 cycle", inst, c, false, "Cycle", ""});
    }
    return out;
}

Row round_trip(const std::vector<CorpusRun>& runs) {
    int total = 0, accepted = 0;
    for (const auto& r : runs)
        for (const auto& kc : r.sol.certificates) {
            ++total;
            std::string bytes = serialize_certificate(to_certificate(kc));
            try {
                Certificate c = parse_certificate(r.inst, bytes);
                Verdict p = verify_primal(r.inst, c), d = verify_dual(r.inst, c);
                accepted += p.ok && d.ok && p.value == kc.weight && d.value == kc.weight;
            } catch (const std::exception&) {
            }
        }
    std::vector<Tamper> ts = tamperings(runs);
    int rejected = 0;
    std::string first;
    for (const auto& t : ts) {
        Certificate c = parse_certificate(t.inst, serialize_certificate(t.cert));
        Verdict v = t.dual ? verify_dual(t.inst, c) : verify_primal(t.inst, c);
        bool ok = !v.ok && v.violation == t.expected && v.detail.find(t.detail_has) != std::string::npos;
        rejected += ok;
        if (!ok && first.empty()) first = "; " + t.kind + " gave '" + v.violation + "'";
    }
    bool pass = total > 0 && accepted == total && static_cast<int>(ts.size()) == kTamperings && rejected == kTamperings;
    return {3, "certificate round trip",
            pass, std::to_string(accepted) + "/" + std::to_string(total) + " accepted from bytes, " + std::to_string(rejected) +
                      "/" + std::to_string(ts.size()) + " tamperings rejected with the named violation" + first};
}

Row invariants(const InvariantLedger& lg, const std::vector<CorpusRun>& runs) {
    int errors = 0;
    for (const auto& r : runs) errors += !r.error.empty();
    std::string detail = std::to_string(lg.checks) + " phase checks; violations: aux-edge " +
                         std::to_string(lg.eq5_violations) + ", cardinality " + std::to_string(lg.cardinality_violations) +
                         ", forest " + std::to_string(lg.forest_violations) + ", epsilon " +
                         std::to_string(lg.epsilon_violations) + ", theta/phi " + std::to_string(lg.ledger_violations) +
                         "; aborted solves " + std::to_string(errors);
    return {4, "structural invariants", lg.total_violations() == 0 && errors == 0 && lg.checks > 0, detail};
}

Row complexity() {
    bool pass = true;
    std::string detail;
    for (int n : {10, 20, 30}) {
        int worst_aug = 0, worst_phase = 0, worst_iter = 0;
        double worst_time = 0;
        for (int i = 0; i < 3; ++i) {
            Instance inst = generate(ref::dense_rank2_params(n, i));
            auto t0 = Clock::now();
            Solution sol;
            try {
                sol = solve(inst);
            } catch (const std::exception& e) {
                pass = false;
                detail += " n=" + std::to_string(n) + " failed: " + e.what();
                continue;
            }
            double t = seconds_since(t0);
            worst_time = std::max(worst_time, t);
            int incr = sol.stats.augmentations + sol.stats.rearrangements;
            worst_aug = std::max(worst_aug, incr);
            worst_phase = std::max(worst_phase, sol.stats.max_phases);
            worst_iter = std::max(worst_iter, sol.stats.max_iterations);
            Certificate last = to_certificate(sol.certificates.back());
            Verdict p = verify_primal(inst, last), d = verify_dual(inst, last);
            if (!p.ok || !d.ok || p.value != d.value) pass = false;
        }
        pass = pass && worst_aug <= 2 * n && worst_phase <= kPhaseFactor * n && worst_iter <= kIterationFactor * n * n;
        if (n == 30) pass = pass && worst_time < kLargeSeconds;
        char buf[200];
        std::snprintf(buf, sizeof buf, "%sn=%d: size steps %d<=%d, phases %d<=%d, iterations %d<=%d, %.2f s", detail.empty() ? "" : "; ",
                      n, worst_aug, 2 * n, worst_phase, kPhaseFactor * n, worst_iter, kIterationFactor * n * n, worst_time);
        detail += buf;
    }
    return {5, "complexity counters", pass, detail + " (limit 5 s at n=30)"};
}

DeltaSeq doubled_even(const DeltaSeq& full) {
    DeltaSeq out;
    for (std::size_t k = 0; k < full.size(); k += 2) out.push_back(full[k]);
    return out;
}

DeltaSeq doubled(const DeltaSeq& h) {
    DeltaSeq out;
    for (const auto& x : h) out.push_back(x ? Delta(2 * *x) : std::nullopt);
    return out;
}

Row egervary() {
    int validated = 0, small = 0, agree = 0;
    for (int i = 0; i < kEgervaryGraphs; ++i) {
        ref::WeightedGraph g = ref::random_graph(600 + static_cast<std::uint64_t>(i), kEgervaryMaxSide);
        Instance inst = ref::scalar_block_instance(g, 900 + static_cast<std::uint64_t>(i));
        DeltaSeq want = doubled(ref::hungarian_by_size(g));
        if (g.rows <= kEgervaryOracleSide && g.cols <= kEgervaryOracleSide) {
            ++small;
            validated += doubled_even(oracle_sequence(inst, oracle_options())) == want;
        }
        try {
            agree += doubled_even(solve(inst).deltas) == want;
        } catch (const std::exception&) {
        }
    }
    bool pass = small > 0 && validated == small && agree == kEgervaryGraphs;
    return {6, "Egervary scalar blocks", pass,
            "doubling identity vs oracle " + std::to_string(validated) + "/" + std::to_string(small) +
                ", delta_2k = 2 * Hungarian " + std::to_string(agree) + "/" + std::to_string(kEgervaryGraphs)};
}

}  // namespace

int main() {
    std::vector<Row> rows;
    double t_corpus = 0;
    InvariantLedger ledger;
    std::vector<CorpusRun> corpus = run_corpus(kCorpusSize, ref::oracle_corpus_params, &ledger, t_corpus);
    rows.push_back(equivalence(1, "oracle equivalence", corpus, t_corpus, kCorpusSeconds));
    rows.push_back(strong_duality(corpus));
    rows.push_back(round_trip(corpus));
    rows.push_back(invariants(ledger, corpus));
    rows.push_back(complexity());
    rows.push_back(egervary());
    double t_wide = 0;
    std::vector<CorpusRun> wide = run_corpus(kWideCorpusSize, ref::wide_weight_corpus_params, nullptr, t_wide);
    rows.push_back(equivalence(7, "wide weights", wide, t_wide, kCorpusSeconds));

    bool all = true;
    for (const auto& r : rows) {
        std::printf("%s [%d] %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
