#ifndef MTT_NBE_HPP
#define MTT_NBE_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mtt/modeth.hpp"
#include "mtt/normal.hpp"
#include "mtt/syntax.hpp"

namespace mtt {

/// Evaluation hit a value of the wrong shape. Impossible on checked terms.
class DomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ValNode;
struct NeNode;
struct EnvCell;
using Value = std::shared_ptr<const ValNode>;
using TypeValue = Value;
using Neutral = std::shared_ptr<const NeNode>;
using Env = std::shared_ptr<const EnvCell>;

/// A term with one free variable closed over an environment. `tail` is the
/// number of trailing lock entries that values bound here carry (0, 1 or 2,
/// see `Slot`).
struct Closure {
    Env env;
    Term body;
    std::size_t tail = 1;
};

enum class VKind {
    Lam, Pair, True, False, Box, Neu, PiCode, SigCode, BoolCode, ModCode,
    // types
    Pi, Sig, Bool, Uni, Mod, Dec,
};

/// Values and type values share one node. Fields by kind:
///   Lam(mu, cl)  Pair(a, b)  Box(mu, a)  Neu(a = type, ne)
///   PiCode(mu, a, cl)  SigCode(a, cl)  ModCode(mu, a)
///   Pi(mu, a, cl)  Sig(a, cl)  Mod(mu, a)  Dec(a = code)
/// `a` under Box, ModCode, Mod and the domain of Pi/PiCode lives under the
/// lock 🔒mu.
struct ValNode {
    VKind kind;
    Modality mu;
    Value a;
    Value b;
    Closure cl;
    Neutral ne;
};

enum class NKind { Head, App, Fst, Snd, If, LetMod, DecIso };

/// Neutral spines. The head is a variable at absolute `level` together with
/// the locks between its binder and the neutral's home (nearest first) and a
/// cell from the variable's annotation to their composite.
///   App(ne, arg, dom, mu): arg and dom live under 🔒mu.
///   If(ne, motive, t, f)   LetMod(ne under 🔒mu, mu, nu, motive, branch, dom = A)
struct NeNode {
    NKind kind;
    std::size_t level = 0;
    Cell2 cell;
    std::vector<Modality> locks;
    Neutral ne;
    Value arg;
    Value dom;
    Value t;
    Value f;
    Modality mu;
    Modality nu;
    Closure motive;
    Closure branch;
};

/// Environment entries, oldest first.
///   Var: a value bound by a binder whose annotation is the composite of the
///        last `tail` lock entries in the value's head lists.
///   Lock: 🔒mu.
///   Key: a pending transport recorded on a closure; replaces the `tail` lock
///        entries `depth` from the end by `fresh`, composing `cell`.
struct Slot {
    enum class Kind { Var, Lock, Key } kind;
    Value value;
    std::size_t tail = 0;
    Modality mu;
    std::size_t depth = 0;
    Cell2 cell;
    std::vector<Modality> fresh;
};

struct EnvCell {
    Slot slot;
    Env prev;
    std::size_t vars = 0;
};

Env env_push(const Env& env, Slot s);
Env env_var(const Env& env, Value v, std::size_t tail);
Env env_lock(const Env& env, const Modality& mu);
std::size_t env_vars(const Env& env);

namespace val {
Value lam(Modality mu, Closure cl);
Value pair(Value a, Value b);
Value tt();
Value ff();
Value box(Modality mu, Value a);
Value neu(TypeValue type, Neutral ne);
Value pi_code(Modality mu, Value a, Closure cl);
Value sig_code(Value a, Closure cl);
Value bool_code();
Value mod_code(Modality mu, Value a);
TypeValue pi(Modality mu, TypeValue a, Closure cl);
TypeValue sig(TypeValue a, Closure cl);
TypeValue boolean();
TypeValue uni();
TypeValue mod(Modality mu, TypeValue a);
TypeValue dec(Value code);
}  // namespace val

Neutral ne_head(std::size_t level, Cell2 cell, std::vector<Modality> locks);

/// Transport of a value along a change of its lock prefix: the `tail` lock
/// entries `depth` from the end of every head list are replaced by `fresh`,
/// and the head cells are whiskered by `beta`.
Value rekey(const ModeTheory& mt, const Value& v, std::size_t depth, std::size_t tail, const Cell2& beta,
            const std::vector<Modality>& fresh);

Value eval(const ModeTheory& mt, const Env& env, const Term& t);
inline TypeValue eval_ty(const ModeTheory& mt, const Env& env, const Term& a) { return eval(mt, env, a); }
Value instantiate(const ModeTheory& mt, const Closure& cl, const Value& v);

Value do_app(const ModeTheory& mt, const Value& f, const Value& a);
Value do_fst(const ModeTheory& mt, const Value& p);
Value do_snd(const ModeTheory& mt, const Value& p);
Value do_if(const ModeTheory& mt, const Closure& motive, const Value& t, const Value& f, const Value& b);
Value do_letmod(const ModeTheory& mt, const Modality& mu, const Modality& nu, const Closure& motive,
                const Value& scrut, const Closure& branch);

/// The type a code of canonical shape decodes to: Dec(code-pi μ a b) unfolds
/// to Pi(μ | Dec a) -> Dec b, and so on. Returns null for neutral codes.
TypeValue unfold(const Value& code);

Value reflect(const TypeValue& type, const Neutral& ne);

Nf reify(const ModeTheory& mt, std::size_t depth, ModeId mode, const TypeValue& type, const Value& v);
NfTy reify_ty(const ModeTheory& mt, std::size_t depth, ModeId mode, const TypeValue& type);
Ne reify_ne(const ModeTheory& mt, std::size_t depth, ModeId mode, const Neutral& ne);

/// Environment of reflected variables for a telescope, with the type value of
/// each variable entry (oldest first). Each type lives under the entry's lock
/// (tail 1).
struct Atoms {
    Env env;
    std::vector<TypeValue> types;
};
Atoms atoms_env(const ModeTheory& mt, const Telescope& theta);

Nf normalize(const ModeTheory& mt, const Telescope& theta, const Term& type, const Term& t);
NfTy normalize_ty(const ModeTheory& mt, const Telescope& theta, const Term& type);

}  // namespace mtt

#endif  // MTT_NBE_HPP
