#ifndef MTT_MODETH_HPP
#define MTT_MODETH_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mtt {

using ModeId = int;
using GenId = int;

class ModeTheory;

/// Raised when a modality or 2-cell is assembled from pieces whose boundaries
/// do not line up, or when a mode theory presentation is rejected.
class ModeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A 1-cell μ : src → tgt written as a word of generators, innermost first.
///
/// The composite μ∘ν (ν applied first) has word `ν.word ++ μ.word`. The empty
/// word is the identity and then src == tgt.
struct Modality {
    ModeId src = 0;
    ModeId tgt = 0;
    std::vector<GenId> word;

    static Modality identity(ModeId m) { return Modality{m, m, {}}; }
    bool is_identity() const { return word.empty(); }

    friend bool operator==(const Modality&, const Modality&) = default;
};

/// μ∘ν where `inner` is applied first. Requires inner.tgt == outer.src.
Modality compose_mod(const Modality& outer, const Modality& inner);

/// Composite of a list of modalities, the first element outermost:
/// compose_all([a, b, c]) = a∘b∘c. An empty list yields the identity at `mode`.
Modality compose_all(const std::vector<Modality>& mods, ModeId mode);

/// A 2-cell expression. Cells are immutable trees; boundaries are computed at
/// construction so every live Cell2 is well-formed.
class Cell2 {
  public:
    enum class Kind { Identity, Generator, Vertical, WhiskerLeft, WhiskerRight };

    Cell2() = default;

    Kind kind() const { return node_->kind; }
    const Modality& src() const { return node_->src; }
    const Modality& tgt() const { return node_->tgt; }

    // Valid for Generator.
    GenId generator() const { return node_->gen; }
    // Valid for WhiskerLeft / WhiskerRight.
    const Modality& whisker() const { return node_->whisker; }
    // Vertical: first = later, second = earlier. Whiskers: first = the cell.
    const Cell2& first() const { return node_->children[0]; }
    const Cell2& second() const { return node_->children[1]; }

    bool valid() const { return node_ != nullptr; }

    /// Syntactically an identity cell (after dropping nested identities).
    bool is_identity() const;

  private:
    struct Node {
        Kind kind;
        Modality src;
        Modality tgt;
        GenId gen = -1;
        Modality whisker;
        std::vector<Cell2> children;
    };
    explicit Cell2(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend Cell2 id_cell(const Modality&);
    friend Cell2 gen_cell(const ModeTheory&, GenId);
    friend Cell2 vcomp(const ModeTheory&, const Cell2&, const Cell2&);
    friend Cell2 whisker_left(const Modality&, const Cell2&);
    friend Cell2 whisker_right(const Cell2&, const Modality&);
};

Cell2 id_cell(const Modality& mu);
/// The generating 2-cell with index `g` of the theory.
Cell2 gen_cell(const ModeTheory& mt, GenId g);
/// Vertical composite `later · earlier`; earlier.tgt must equal later.src under mt.
Cell2 vcomp(const ModeTheory& mt, const Cell2& later, const Cell2& earlier);
/// ν∘α: boundary (ν∘α.src, ν∘α.tgt).
Cell2 whisker_left(const Modality& nu, const Cell2& alpha);
/// α∘ν: boundary (α.src∘ν, α.tgt∘ν).
Cell2 whisker_right(const Cell2& alpha, const Modality& nu);
/// Horizontal composite α⋆β : α.src∘β.src ⇒ α.tgt∘β.tgt.
Cell2 hcomp(const ModeTheory& mt, const Cell2& alpha, const Cell2& beta);

/// One whiskered generator inside a vertical chain: generator `gen` applied at
/// position `offset` of the current word (innermost-first indexing).
struct CellStep {
    std::size_t offset = 0;
    GenId gen = -1;
    friend auto operator<=>(const CellStep&, const CellStep&) = default;
};

enum class DeciderKind {
    Free,     ///< words compared structurally; cells by interchange normal form
    Table,    ///< finite multiplication table of modality classes; thin 2-cells
    Rewrite,  ///< shortlex-decreasing confluent rewrite system; thin 2-cells
};

struct ModalityGen {
    std::string name;
    ModeId src;
    ModeId tgt;
};

struct CellGen {
    std::string name;
    Modality src;
    Modality tgt;
};

struct RewriteRule {
    std::vector<GenId> lhs;
    std::vector<GenId> rhs;
};

/// A finitely presented strict 2-category together with a total decider for
/// equality of its 1-cells and 2-cells. Immutable after construction.
class ModeTheory {
  public:
    struct Presentation {
        std::string name;
        std::vector<std::string> modes;
        std::vector<ModalityGen> modalities;
        std::vector<CellGen> cells;
        std::vector<RewriteRule> rules;
        DeciderKind decider = DeciderKind::Free;
        bool thin = false;
    };

    /// Validates the presentation and builds its decider. Throws ModeError if a
    /// boundary is ill-formed or the decider cannot be made total (rules that
    /// are not shortlex-decreasing, non-confluent rules, infinite table).
    explicit ModeTheory(Presentation p);

    const std::string& name() const { return p_.name; }
    const Presentation& presentation() const { return p_; }
    DeciderKind decider() const { return p_.decider; }
    bool thin() const { return p_.thin; }

    std::size_t mode_count() const { return p_.modes.size(); }
    const std::string& mode_name(ModeId m) const { return p_.modes.at(m); }
    std::optional<ModeId> find_mode(const std::string& name) const;
    std::optional<GenId> find_modality(const std::string& name) const;
    std::optional<GenId> find_cell(const std::string& name) const;
    const ModalityGen& modality_gen(GenId g) const { return p_.modalities.at(g); }
    const CellGen& cell_gen(GenId g) const { return p_.cells.at(g); }

    /// Single-generator modality.
    Modality gen(GenId g) const;
    /// True iff the word's generators compose and match the endpoints.
    bool well_formed(const Modality& mu) const;

    /// Canonical representative of the modality's word under the decider.
    std::vector<GenId> normal_word(const Modality& mu) const;
    bool eq_mod(const Modality& mu, const Modality& nu) const;
    bool eq_cell(const Cell2& a, const Cell2& b) const;

    /// Interchange normal form of a cell in a free theory: the lexicographically
    /// least chain of whiskered generators equal to it.
    std::vector<CellStep> canonical_steps(const Cell2& a) const;

    /// Table decider only: index of the class of `mu`, computed by folding its
    /// word through the multiplication table.
    std::size_t table_class(const Modality& mu) const;
    std::size_t table_size() const { return table_words_.size(); }

    std::string show(const Modality& mu) const;
    std::string show(const Cell2& a) const;
    /// Canonical printed form used by the normal-form printer.
    std::string show_canonical(const Cell2& a) const;

  private:
    std::vector<GenId> rewrite(std::vector<GenId> w) const;
    void check_rules() const;
    void build_table();
    std::vector<CellStep> flatten(const Cell2& a) const;

    Presentation p_;
    // Table decider data: canonical words, per-class mode, transition on a generator.
    std::vector<std::vector<GenId>> table_words_;
    std::vector<ModeId> table_mode_;
    std::vector<std::vector<int>> table_next_;
    std::vector<int> table_identity_;
};

/// The four theories shipped with the kernel: "trivial", "walking",
/// "adjoint", "pointed".
std::shared_ptr<const ModeTheory> shipped_theory(const std::string& name);
std::vector<std::string> shipped_theory_names();

}  // namespace mtt

#endif  // MTT_MODETH_HPP
