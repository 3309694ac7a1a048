#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "geninv/block.hpp"

namespace geninv {

enum class TheoremId {
    jacobson,
    corner,
    along_equivalence,   // wire name "mary-equivalence"
    product_criterion,   // wire name "pmq-theorem"
    lt_regularity,
    block_220,
    block_general,
    green_agreement,
    uniqueness,
};

std::string_view theorem_name(TheoremId id);
std::optional<TheoremId> theorem_from_name(std::string_view name);
const std::vector<TheoremId>& all_theorems();

struct SampledMode {
    std::uint64_t seed = 0;
    std::uint64_t count = 0;
};

// A counterexample (or, for the search command, an observation): the inputs
// as CLI-ready element literals plus both sides of the violated equation.
struct Transcript {
    std::vector<std::pair<std::string, std::string>> inputs;
    std::string equation;
    std::string lhs, rhs;
};

struct VerificationReport {
    std::string check;  // theorem wire name, or "search-question"
    std::string ring_spec;
    std::optional<SampledMode> sampled;  // nullopt = exhaustive
    std::uint64_t cases_total = 0;
    std::uint64_t cases_checked = 0;
    std::uint64_t cases_hypothesis_failed = 0;
    std::vector<Transcript> failures;
    std::vector<Transcript> findings;  // search-question only
    bool is_search = false;
    std::chrono::milliseconds elapsed{0};

    bool pass() const { return failures.empty(); }
};

// Runs one registered theorem check over the ring. Exhaustive mode covers the
// full tuple space of the theorem's quantifiers (gated by the ring's
// enumeration bound applied to the tuple-space size); sampled mode draws
// seeded tuples until `count` of them pass the hypotheses. Tuples failing a
// theorem's hypotheses are counted separately, never as passes.
VerificationReport run_check(TheoremId id, const RingPtr& ring,
                             std::optional<SampledMode> mode = std::nullopt);

// Enumerates (A, D) in the 2x2 matrix ring over `base` with D regular; for
// the regular pairs compares definitional existence of the inverse of A along
// D with applicability of the closed-form routes, and records as findings the
// pairs where the inverse exists but neither route's hypotheses hold. Decides
// nothing: findings are observations, not failures.
VerificationReport search_question(const RingPtr& base,
                                   std::optional<SampledMode> mode = std::nullopt);

// Line-oriented serialization, one key=value per line. Golden-tested.
std::string serialize_report(const VerificationReport& report);

}  // namespace geninv
