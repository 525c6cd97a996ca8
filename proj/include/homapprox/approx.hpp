#pragma once

#include "homapprox/torsion.hpp"

namespace homapprox {

// A verified short exact sequence recorded while climbing the ladder.
struct LadderSquare {
    std::string name;
    ShortExactSequence ses;
    SESCheck check;
};

struct LadderStep {
    int k = 0;
    std::vector<LadderSquare> squares;
    bool square_commutes = false; // the defining pushout square
};

struct BuildOptions {
    std::uint64_t seed = 1;
    int iso_trials = kDefaultIsoTrials;
    std::int64_t hilbert_window = kDefaultHilbertWindow;
};

// The product of the construction: the sequence 0 -> Y -> X -> M -> 0 with
// every intermediate pushout square, the add-C filtration of Y, Ext-vanishing
// evidence for X, and the right-approximation obligation Ext^1(X, Y) = 0.
struct ApproximationCertificate {
    std::string kind; // "spherical" | "auslander-bridger" | "cohen-macaulay"
    FPModule m, c;
    int n = 0;
    std::uint64_t seed = 1;
    HypothesisRecord hypotheses;
    PredicateVerdict syzygy_torsionfree; // Omega^n M is n-C-torsionfree
    ShortExactSequence seq;              // i : Y -> X, p : X -> M
    SESCheck seq_check;
    std::vector<Clause> x_spherical;
    AddCFiltration y_filtration;
    std::vector<LadderStep> ladder;
    bool ext1_xy_zero = false;
    std::vector<Clause> extra_checks; // specialization post-conditions

    const FPModule& x_module() const { return seq.p.source(); }
    const FPModule& y_module() const { return seq.i.source(); }
    bool ok() const;
};

// The ladder construction. Preconditions (reported via PreconditionError):
// the dualizer hypotheses (full n-semidualizing, or the weakened variants for
// n in {1,2}, recorded in the certificate) and Omega^n M n-C-torsionfree.
// Internal exactness failures raise TheoremViolation.
ApproximationCertificate build_spherical_approximation(const FPModule& m, const FPModule& c,
                                                       int n, const BuildOptions& opt = {});

struct VerifyReport {
    std::vector<Clause> clauses;
    bool accepted = false;
    bool theorem_violation = false;
    std::string message;
};

// Re-checks a sequence from scratch: exactness, X n-C-spherical, Cdim Y < n
// (from the supplied filtration or by computing one), Ext^1(X, Y) = 0, and
// the converse direction (the syzygy predicate must hold for an accepted
// sequence; a mismatch is flagged as a theorem violation).
VerifyReport verify_approximation(const ShortExactSequence& seq, const FPModule& c, int n,
                                  const AddCFiltration* supplied_filtration = nullptr,
                                  const BuildOptions& opt = {});

// Cohen-Macaulay specialization: dualizer = canonical module, n = dim R;
// dimension zero returns the identity sequence. Post-checks: depth X = dim R
// and finite-injective-dimension surrogate for every filtration layer.
ApproximationCertificate cm_approximation(const FPModule& m, const BuildOptions& opt = {});

// C = R specialization; the free filtration of Y certifies pd Y < n.
ApproximationCertificate ab_approximation(const FPModule& m, int n,
                                          const BuildOptions& opt = {});

struct DescentVerdict {
    PredicateVerdict top;                // Omega^n M n-C-torsionfree
    std::vector<PredicateVerdict> lower; // Omega^i M i-C-torsionfree, i = 1..n
    bool all_lower = false;
    bool consistent = false; // equivalence verified (else TheoremViolation)
};

// Both sides of the descent equivalence, asserted to agree.
DescentVerdict check_descent(const FPModule& m, const FPModule& c, int n);

struct CorpusEntryReport {
    std::string name;
    bool torsionfree = false; // Omega^n M is n-C-torsionfree
};

struct CorpusReport {
    int n = 0;
    PredicateVerdict standing; // R n-C-torsionfree (hypothesis)
    InjDimReport surrogate;
    std::vector<CorpusEntryReport> entries;
    bool all_torsionfree = false;
    bool conclusive = false;
    bool consistent = false;
};

// Samples the "every n-th syzygy is n-C-torsionfree" condition over a corpus
// and compares with the graded injective-dimension surrogate. Entries
// evaluate concurrently in isolated context clones when jobs > 1.
CorpusReport run_theorem_cond_corpus(const RingContext& ctx, const FPModule& c, int n,
                                     const std::vector<std::pair<std::string, FPModule>>& corpus,
                                     int jobs = 1);

} // namespace homapprox
