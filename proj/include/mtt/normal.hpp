#ifndef MTT_NORMAL_HPP
#define MTT_NORMAL_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "mtt/modeth.hpp"
#include "mtt/syntax.hpp"

namespace mtt {

/// A telescope is a context whose entries are read as the binders of normal
/// forms. Its erasure to a Context is the identity.
using Telescope = Context;

/// Normal types, neutrals and normals share one node type; `sort_of` tells
/// them apart. Every constructor corresponds to exactly one grammar rule.
enum class NfKind {
    // normal types
    TyBool, TyUni, TyFn, TyProd, TyModify, TyDec,
    // neutrals
    Var, App, Proj1, Proj2, BoolRec, LetMod, DecIso,
    // normals
    Lam, Pair, True, False, MkBox, Inj, FnCode, ProdCode, BoolCode, ModifyCode, DecIsoInv,
};

enum class Sort { Type, Neutral, Normal };
Sort sort_of(NfKind k);

struct NfNode;
using Form = std::shared_ptr<const NfNode>;
using Nf = Form;
using Ne = Form;
using NfTy = Form;

/// Children by kind:
///   TyFn(mu)[dom, cod]  TyProd[fst, snd]  TyModify(mu)[A]  TyDec[code]
///   Var(index, cell)  App(mu)[fn, arg]  Proj1[e]  Proj2[e]
///   BoolRec[motive, scrut, then, else]  LetMod(mu, nu)[motive, scrut, branch]
///   DecIso[e]
///   Lam(mu)[body]  Pair[a, b]  MkBox(mu)[u]  Inj[e]  FnCode(mu)[a, b]
///   ProdCode[a, b]  ModifyCode(mu)[a]  DecIsoInv[u]
/// Binding structure mirrors the core terms: see `binder_steps`.
struct NfNode {
    NfKind kind;
    std::size_t index = 0;
    Cell2 cell;
    Modality mu;
    Modality nu;
    std::vector<Form> kids;

    const Form& kid(std::size_t i) const { return kids.at(i); }
};

namespace nf {
NfTy ty_bool();
NfTy ty_uni();
NfTy ty_fn(Modality mu, NfTy dom, NfTy cod);
NfTy ty_prod(NfTy fst, NfTy snd);
NfTy ty_modify(Modality mu, NfTy a);
NfTy ty_dec(Nf code);

Ne var(std::size_t k, Cell2 alpha);
Ne app(Modality mu, Ne fn, Nf arg);
Ne proj1(Ne e);
Ne proj2(Ne e);
Ne boolrec(NfTy motive, Ne scrut, Nf t, Nf f);
Ne letmod(Modality mu, Modality nu, NfTy motive, Ne scrut, Nf branch);
Ne deciso(Ne e);

Nf lam(Modality mu, Nf body);
Nf pair(Nf a, Nf b);
Nf tt();
Nf ff();
Nf mkbox(Modality mu, Nf u);
Nf inj(Ne e);
Nf fn_code(Modality mu, Nf a, Nf b);
Nf prod_code(Nf a, Nf b);
Nf bool_code();
Nf modify_code(Modality mu, Nf a);
Nf deciso_inv(Nf u);
}  // namespace nf

/// What child `i` of a node sits under, outermost first: a lock 🔒μ or a
/// bound variable (μ | -). `mode` is the mode of the node itself.
struct BinderStep {
    bool is_lock = false;
    Modality mu;
};
std::vector<BinderStep> binder_steps(const NfNode& n, std::size_t i, ModeId mode);

/// The lock/annotation skeleton of a telescope with its base mode.
struct TeleShape {
    ModeId base = 0;
    Shape entries;

    ModeId mode() const;
    std::size_t var_count() const { return shape_var_count(entries); }
    TeleShape lock(const Modality& mu) const;
    TeleShape extend(const Modality& mu) const;
};
TeleShape tele_shape(const Telescope& t);
bool same_shape(const ModeTheory& mt, const TeleShape& a, const TeleShape& b);

/// locks_of(Θ, k) read on the skeleton.
Modality locks_of(const TeleShape& t, std::size_t k);
const Modality& var_annotation(const TeleShape& t, std::size_t k);

/// A renaming ψ : Θ → Ψ acts on forms over Ψ and yields forms over Θ.
/// Trees are kept unevaluated; only their action is ever compared.
class Renaming {
  public:
    enum class Kind { Empty, Weaken, Identity, Compose, Lock, Key, Ext };

    Kind kind() const { return node_->kind; }
    const TeleShape& src() const { return node_->src; }
    const TeleShape& tgt() const { return node_->tgt; }
    const Modality& mu() const { return node_->mu; }
    const Cell2& cell() const { return node_->cell; }
    std::size_t var_index() const { return node_->j; }
    /// Compose: first acts first. Lock / Ext: first is the inner renaming.
    const Renaming& first() const { return node_->kids.at(0); }
    const Renaming& second() const { return node_->kids.at(1); }

  private:
    struct Node {
        Kind kind;
        TeleShape src;
        TeleShape tgt;
        Modality mu;
        Cell2 cell;
        std::size_t j = 0;
        std::vector<Renaming> kids;
    };
    explicit Renaming(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend struct RenamingBuilder;
};

namespace ren {
/// Θ → ∅ at Θ's base mode.
Renaming empty(const TeleShape& theta);
/// Θ.(ρ | A) → Θ.
Renaming weaken(const TeleShape& theta, const Modality& rho);
Renaming identity(const TeleShape& theta);
/// `r` acts first, then `s`: rename(compose(r, s), x) = rename(s, rename(r, x)).
/// Requires r.src == s.tgt.
Renaming compose(const ModeTheory& mt, const Renaming& r, const Renaming& s);
/// r : Θ → Ψ gives Θ.🔒μ → Ψ.🔒μ.
Renaming lock(const Modality& mu, const Renaming& r);
/// α : ν ⇒ μ gives Θ.🔒μ → Θ.🔒ν.
Renaming key(const ModeTheory& mt, const TeleShape& theta, const Cell2& alpha);
/// r : Θ → Ψ and a variable j of Θ.🔒ρ with cell β give Θ → Ψ.(ρ | A).
Renaming ext(const ModeTheory& mt, const Renaming& r, const Modality& rho, std::size_t j, const Cell2& beta);
/// r : Θ → Ψ lifted under a binder: Θ.(ρ | A[r]) → Ψ.(ρ | A).
Renaming lift(const ModeTheory& mt, const Renaming& r, const Modality& rho);
}  // namespace ren

/// Action of a renaming on a variable (index, cell) of the target telescope.
struct VarRef {
    std::size_t index;
    Cell2 cell;
};
VarRef rename_var(const ModeTheory& mt, const Renaming& r, std::size_t k, const Cell2& alpha);

Ne rename_ne(const ModeTheory& mt, const Renaming& r, const Ne& e);
Nf rename_nf(const ModeTheory& mt, const Renaming& r, const Nf& u);
NfTy rename_nfty(const ModeTheory& mt, const Renaming& r, const NfTy& t);

/// True iff the two renamings act identically on `x`.
bool ren_respects_equations(const ModeTheory& mt, const Renaming& r1, const Renaming& r2, const Form& x);

Term decode_nf(const Nf& u);
Term decode_ne(const Ne& e);
Term decode_nfty(const NfTy& t);

bool eq_form(const ModeTheory& mt, const Form& a, const Form& b);
inline bool eq_nf(const ModeTheory& mt, const Nf& a, const Nf& b) { return eq_form(mt, a, b); }
inline bool eq_ne(const ModeTheory& mt, const Ne& a, const Ne& b) { return eq_form(mt, a, b); }
inline bool eq_nfty(const ModeTheory& mt, const NfTy& a, const NfTy& b) { return eq_form(mt, a, b); }

/// S-expression rendering. Neutrals embedded as normals print without an
/// `inj` marker; modalities and cells print canonically.
std::string show_form(const ModeTheory& mt, const Form& f);

std::size_t form_size(const Form& f);

}  // namespace mtt

#endif  // MTT_NORMAL_HPP
