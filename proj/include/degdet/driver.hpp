#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "degdet/certify.hpp"
#include "degdet/instance.hpp"
#include "degdet/matching.hpp"
#include "degdet/pathsearch.hpp"
#include "degdet/potential.hpp"
#include "degdet/sequence.hpp"

namespace degdet {

struct KCertificate {
    int k = 0;
    MatchingState s;
    Labeling v;
    PotentialState ps;
    std::int64_t weight = 0;
};

struct SolveStats {
    int augmentations = 0;
    int rearrangements = 0;
    int max_phases = 0;      // search phases for a single size increase
    int max_iterations = 0;  // engine iterations for a single augmentation
    std::int64_t total_phases = 0;
    std::int64_t total_iterations = 0;
    int fallbacks = 0;   // augmentations finished by rearranging at the exempt side
    int researches = 0;  // rebuilt paths replaced by a restricted search
};

struct Solution {
    DeltaSeq deltas;
    std::vector<KCertificate> certificates;  // one per finite k, in order
    SolveStats stats;
};

struct SolveOptions {
    bool checks = false;
    std::ostream* trace = nullptr;
    InvariantLedger* ledger = nullptr;
};

Solution solve(const Instance& inst, const SolveOptions& opt = {});
Delta delta_k(const Instance& inst, int k);

Certificate to_certificate(const KCertificate& kc);
std::string solution_json(const Solution& sol, bool with_certificates);
std::string sequence_json(const DeltaSeq& deltas);

}  // namespace degdet
