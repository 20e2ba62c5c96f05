#pragma once

#include "gla/amalgam.hpp"

namespace gla {

// One unit of work for the builder: adjoin a free point, solve a divisor
// problem, or amalgamate a registered strong template pair onto the chain.
struct ExtensionTask {
    enum class Kind { free_point, divisor, template_pair };
    Kind kind = Kind::free_point;

    int degree = 1;  // free_point

    // divisor: concrete elements of the algebra being extended; when absent
    // the first unsolved problem over the current basis is serviced
    std::optional<LieElement> div_b, div_e;

    // template_pair: B ≤ A with A a class member; base_in_current may pin the
    // attachment point, otherwise a deterministic search finds one
    AlgebraPtr tmpl_base, tmpl_ext;
    std::optional<GradedHom> tmpl_b_in_ext;
    std::optional<GradedHom> base_in_current;

    static ExtensionTask free_point(int degree);
    static ExtensionTask divisor();  // first unsolved problem, if any
    static ExtensionTask divisor(LieElement b, LieElement e);
    static ExtensionTask template_pair(AlgebraPtr base, AlgebraPtr ext,
                                       GradedHom base_in_ext,
                                       std::optional<GradedHom> base_in_current =
                                           std::nullopt);
};

struct ChainStep {
    ExtensionTask task;
    GradedHom embedding;    // previous algebra -> new algebra
    DeltaProfile profile;   // of the new algebra
    bool strong_exact = true;  // how the chain strongness was verified
    std::size_t bound_k = 0;   // search radius when not exact
};

struct BuilderState {
    AlgebraPtr current;
    std::vector<ChainStep> chain_log;
    std::uint64_t seed = 0;
};

BuilderState initial_state(PrimeField field, int class_c, std::uint64_t seed);

// Exact strongness of the base inside the template extension plus class
// membership of the extension; throws on failure.
void verify_template(const ExtensionTask& task, std::uint64_t cap = 200000);

// Service one task: free points and divisor problems extend the chain
// directly, template pairs are attached by strong amalgamation with the
// bounded-strongness level n. Every new algebra is membership-checked and
// the chain embedding is strongness-verified (exact within cap, bounded at
// radius n otherwise; recorded in the log). A solvable divisor task is a
// no-op. Deterministic in (state, task).
BuilderState richness_step(const BuilderState& state, const ExtensionTask& task,
                           std::size_t n = 3, std::uint64_t cap = 200000);

// Scan (b, e) over pairs of basis elements in canonical order and service up
// to budget unsolved divisor problems.
BuilderState divisor_saturate(const BuilderState& state, std::size_t budget,
                              std::size_t n = 3, std::uint64_t cap = 200000);

// Seeded round-robin over the catalog starting from ⟨0⟩: each round applies
// the catalog in an order shuffled by the seed, until `steps` tasks have been
// serviced. Catalog templates are verified up front.
BuilderState build_generic(PrimeField field, std::uint64_t seed,
                           const std::vector<ExtensionTask>& catalog,
                           std::size_t steps, std::size_t n = 3,
                           std::uint64_t cap = 200000);

// Re-verify a completed log: embeddings line up, every algebra passes the
// membership check, and M_i is strong in M_j for all logged i < j (exact
// within cap, bounded otherwise).
bool verify_chain(const BuilderState& state, std::uint64_t cap = 200000);

}  // namespace gla
