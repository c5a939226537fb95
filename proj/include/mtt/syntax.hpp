#ifndef MTT_SYNTAX_HPP
#define MTT_SYNTAX_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "mtt/modeth.hpp"

namespace mtt {

enum class Tag {
    Var,
    // types
    Pi, Sig, Bool, Uni, Mod, Dec,
    // terms
    Lam, App, Pair, Fst, Snd, True, False, If, MkBox, LetMod,
    // universe codes
    PiCode, SigCode, BoolCode, ModCode, DecIso, DecIsoInv,
    // type ascription (t : A)
    Ann,
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

/// Core syntax node. De Bruijn indices count variable entries only; locks are
/// transparent to indexing.
///
/// Children by tag:
///   Pi(mu)[dom, cod]  Sig[dom, cod]  Mod(mu)[A]  Dec[code]
///   Lam(mu)[body]  App(mu)[fn, arg]  Pair[a, b]  Fst[p]  Snd[p]
///   If[motive, then, else, scrut]  MkBox(mu)[body]
///   LetMod(mu, nu)[motive, scrut, branch]
///   PiCode(mu)[a, b]  SigCode[a, b]  ModCode(mu)[a]  DecIso[t]  DecIsoInv[t]
///   Ann[t, A]
/// `cod`, `b`, `motive` and `branch` bind one variable. Lam and App carry the
/// modality of the function type's domain.
struct TermNode {
    Tag tag;
    std::size_t index = 0;
    Cell2 cell;
    Modality mu;
    Modality nu;
    std::vector<Term> kids;

    const Term& kid(std::size_t i) const { return kids.at(i); }
};

namespace tm {
Term var(std::size_t k, Cell2 alpha);
Term pi(Modality mu, Term dom, Term cod);
Term sig(Term dom, Term cod);
Term boolean();
Term uni();
Term mod(Modality mu, Term a);
Term dec(Term code);
Term lam(Modality mu, Term body);
Term app(Modality mu, Term fn, Term arg);
Term pair(Term a, Term b);
Term fst(Term p);
Term snd(Term p);
Term tt();
Term ff();
Term ite(Term motive, Term t, Term f, Term scrut);
Term mkbox(Modality mu, Term body);
Term letmod(Modality mu, Modality nu, Term motive, Term scrut, Term branch);
Term picode(Modality mu, Term a, Term b);
Term sigcode(Term a, Term b);
Term boolcode();
Term modcode(Modality mu, Term a);
Term deciso(Term t);
Term deciso_inv(Term t);
Term ann(Term t, Term type);
}  // namespace tm

/// Number of variables bound by child `i` of a node with tag `t` (0 or 1).
std::size_t binds(Tag t, std::size_t i);

/// A context entry: a lock 🔒μ or a variable (μ | A).
struct Entry {
    bool is_lock = false;
    Modality mu;
    Term type;  // null for locks

    static Entry lock(Modality m) { return Entry{true, std::move(m), nullptr}; }
    static Entry var(Modality m, Term a) { return Entry{false, std::move(m), std::move(a)}; }
};

/// A context Γ at mode `base` extended by entries, oldest first. Each lock
/// 🔒μ with μ : n → m moves the current mode from m to n.
class Context {
  public:
    explicit Context(ModeId base) : base_(base), mode_(base) {}

    ModeId base() const { return base_; }
    ModeId mode() const { return mode_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t var_count() const { return vars_; }

    /// Position in entries() of the variable with de Bruijn index k, or npos.
    std::size_t position_of(std::size_t k) const;
    const Entry& var_entry(std::size_t k) const { return entries_.at(position_of(k)); }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    friend Context ctx_lock(const Context&, const Modality&);
    friend Context ctx_extend(const Context&, const Modality&, Term);
    ModeId base_;
    ModeId mode_;
    std::size_t vars_ = 0;
    std::vector<Entry> entries_;
};

/// Γ.🔒μ; requires μ.tgt == Γ.mode(). Throws ModeError otherwise.
Context ctx_lock(const Context& ctx, const Modality& mu);
/// Γ.(μ | A); requires μ.tgt == Γ.mode().
Context ctx_extend(const Context& ctx, const Modality& mu, Term a);

/// The lock modalities strictly after variable k, nearest first.
std::vector<Modality> locks_after(const Context& ctx, std::size_t k);
/// Composite of the locks after variable k (nearest lock outermost).
Modality locks_of(const Context& ctx, std::size_t k);

/// Lock-skeleton of a context: the data renamings and lock bookkeeping need.
struct ShapeEntry {
    bool is_lock = false;
    Modality mu;
};
using Shape = std::vector<ShapeEntry>;
Shape shape_of(const Context& ctx);
std::size_t shape_var_count(const Shape& s);
std::vector<Modality> locks_after(const Shape& s, std::size_t k);
Modality locks_of(const Shape& s, std::size_t k);

/// Every variable resolves and binders are consistent. Does not check types.
bool scope_check(const Context& ctx, const Term& t);
bool scope_check(std::size_t vars_in_scope, const Term& t);

/// Structural equality with modalities and cells compared by the decider.
bool term_equal(const ModeTheory& mt, const Term& a, const Term& b);

/// Context equality modulo the lock equations (identity locks erased,
/// composite locks split into generator locks).
bool ctx_equal(const ModeTheory& mt, const Context& a, const Context& b);

/// Shifts free variables >= cutoff by `by`.
Term shift(const Term& t, std::ptrdiff_t by, std::size_t cutoff = 0);
/// Rebuilds `t` with new children, keeping its tag and annotations.
Term with_kids(const Term& t, std::vector<Term> kids);

std::string tag_name(Tag t);

}  // namespace mtt

#endif  // MTT_SYNTAX_HPP
