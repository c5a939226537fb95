#ifndef MTT_HARNESS_HPP
#define MTT_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtt/check.hpp"
#include "mtt/modeth.hpp"
#include "mtt/nbe.hpp"
#include "mtt/normal.hpp"
#include "mtt/syntax.hpp"

namespace mtt {

/// Relative weights of the generator's choices. Zero disables a choice.
struct GenWeights {
    unsigned intro = 4;   // introduction form at the goal's head
    unsigned elim = 3;    // elimination spine out of a context variable
    unsigned redex = 3;   // a β-redex whose contractum has the goal type
    unsigned modal = 2;   // modal types and modalities other than the identity
    unsigned codes = 1;   // Uni and Dec
};

struct GenConfig {
    std::uint64_t seed = 1;
    std::size_t max_size = 24;
    GenWeights weights;
    std::string theory = "trivial";
};

/// No inhabitant could be built within the budget.
class GenExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Seeded type-directed generator. All output passes `check`.
class Generator {
  public:
    Generator(const ModeTheory& mt, GenConfig cfg);

    const ModeTheory& theory() const { return *mt_; }
    std::mt19937_64& rng() { return rng_; }
    std::size_t pick(std::size_t n);
    bool coin(unsigned num, unsigned den);

    /// A modality ending at `tgt` (identity with positive probability).
    Modality modality(ModeId tgt, std::size_t max_len = 2);
    /// A type at the context's mode.
    Term type(const CheckCtx& ctx, std::size_t size);
    /// A term of type `goal`. Throws GenExhausted.
    Term term(const CheckCtx& ctx, const TypeValue& goal, std::size_t size);
    /// A telescope at `base` with about `vars` variables and occasional locks.
    Telescope telescope(ModeId base, std::size_t vars);

  private:
    Term intro(const CheckCtx& ctx, const TypeValue& goal, std::size_t size);
    std::optional<Term> elim(const CheckCtx& ctx, const TypeValue& goal, std::size_t size);
    std::optional<Term> redex(const CheckCtx& ctx, const TypeValue& goal, std::size_t size);

    const ModeTheory* mt_;
    GenConfig cfg_;
    std::mt19937_64 rng_;
};

Term gen_type(const GenConfig& cfg, const CheckCtx& ctx);
Term gen_typed_term(const GenConfig& cfg, const CheckCtx& ctx, const TypeValue& type);

/// A 2-cell `from => to` built from whiskered generators by breadth-first
/// search over at most `max_steps` rewriting steps; the search order is
/// shuffled when `rng` is given.
std::optional<Cell2> find_cell(const ModeTheory& mt, const Modality& from, const Modality& to,
                               std::mt19937_64* rng = nullptr, std::size_t max_steps = 3);

/// The type as a term in `ctx` (via read-back).
Term quote_type(const CheckCtx& ctx, const TypeValue& t);

/// Substitutes `arg` for variable 0 of `body`, whose binder is annotated so
/// that every occurrence must carry an identity cell. Returns nothing when an
/// occurrence goes through a non-identity key.
std::optional<Term> subst_top(const ModeTheory& mt, const Term& body, const Term& arg);

// ---------------------------------------------------------------------------
// Small-step oracle for the Bool fragment of the trivial theory

enum class OracleVerdict { True, False, OutOfFuel, Stuck };
struct OracleResult {
    OracleVerdict verdict;
    std::size_t steps;
};
/// Leftmost-outermost β/ι reduction with its own substitution.
OracleResult oracle_eval_bool(const Term& t, std::size_t fuel);
std::string verdict_name(OracleVerdict v);

// ---------------------------------------------------------------------------
// Definitional-equality tables

enum class Connective { PiBeta, PiEta, SigBeta, SigEta, BoolBeta, ModalBeta, DecIsoCancel };
std::vector<Connective> all_connectives();
std::string connective_name(Connective c);

struct EqPair {
    Term lhs;
    Term rhs;
    Telescope theta{0};
    Term type;
    std::shared_ptr<const ModeTheory> theory;
    std::string label;
};

/// Hand-written instances followed by `generated` seeded instances.
std::vector<EqPair> beta_eta_pairs(Connective c, std::size_t generated = 0, std::uint64_t seed = 1);

/// Normal forms differ at their first non-binding constructor or neutral head.
std::string head_signature(const Nf& u);

// ---------------------------------------------------------------------------
// η-longness audit

struct EtaAudit {
    std::size_t forms = 0;
    std::size_t injections = 0;
    std::size_t violations = 0;
    std::vector<std::string> examples;
};
/// Walks a normal form of type `type` in `ctx` and counts neutral injections
/// at a Π or Σ type.
void audit_eta(const CheckCtx& ctx, const TypeValue& type, const Nf& u, EtaAudit& out);

// ---------------------------------------------------------------------------
// Renaming equation instances

enum class RenEquation { Identity, WeakenLocks, ExtHere, ExtThere, Key, Composite, LockCompose };
std::vector<RenEquation> all_ren_equations();
std::string ren_equation_name(RenEquation e);

struct RenInstance {
    Form actual;
    Form expected;
};
/// A generated instance: the renaming's action and the value the equation
/// prescribes. Throws GenExhausted when the draw has no accessible variable.
RenInstance gen_ren_instance(Generator& g, RenEquation e);

/// A well-scoped neutral over the given skeleton (no typing).
Ne gen_scoped_ne(Generator& g, const TeleShape& shape, std::size_t size);
/// A renaming into `tgt`.
Renaming gen_renaming(Generator& g, const TeleShape& tgt, std::size_t depth);

// ---------------------------------------------------------------------------
// Acceptance criteria

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

struct AcceptanceConfig {
    std::uint64_t seed = 20240601;
    std::size_t stability_terms = 1000;
    std::size_t non_pairs = 500;
    std::size_t generated_pairs = 40;
    std::size_t oracle_terms = 2000;
    std::size_t oracle_fuel = 10000;
    std::size_t ren_instances = 500;
    std::size_t pi_pairs = 200;
    std::string corpus_dir;
    double corpus_budget_seconds = 10.0;
};

CriterionResult criterion_stability(const AcceptanceConfig& cfg, EtaAudit& audit);
CriterionResult criterion_conversion(const AcceptanceConfig& cfg, EtaAudit& audit);
CriterionResult criterion_oracle(const AcceptanceConfig& cfg, EtaAudit& audit);
CriterionResult criterion_eta(const EtaAudit& audit);
CriterionResult criterion_renaming(const AcceptanceConfig& cfg);
CriterionResult criterion_pi_injectivity(const AcceptanceConfig& cfg);
CriterionResult criterion_weak_tarski();
CriterionResult criterion_corpus(const AcceptanceConfig& cfg);

}  // namespace mtt

#endif  // MTT_HARNESS_HPP
