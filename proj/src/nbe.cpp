#include "mtt/nbe.hpp"

#include <algorithm>
#include <string>

namespace mtt {

// ---------------------------------------------------------------------------
// Environments

Env env_push(const Env& env, Slot s) {
    auto c = std::make_shared<EnvCell>();
    c->vars = env_vars(env) + (s.kind == Slot::Kind::Var ? 1 : 0);
    c->slot = std::move(s);
    c->prev = env;
    return c;
}

Env env_var(const Env& env, Value v, std::size_t tail) {
    Slot s{Slot::Kind::Var, std::move(v), tail, {}, 0, {}, {}};
    return env_push(env, std::move(s));
}

Env env_lock(const Env& env, const Modality& mu) {
    Slot s{Slot::Kind::Lock, nullptr, 0, mu, 0, {}, {}};
    return env_push(env, std::move(s));
}

std::size_t env_vars(const Env& env) { return env ? env->vars : 0; }

// ---------------------------------------------------------------------------
// Constructors

namespace {
Value vnode(VKind k, Modality mu = {}, Value a = nullptr, Value b = nullptr, Closure cl = {}, Neutral ne = nullptr) {
    auto n = std::make_shared<ValNode>();
    n->kind = k;
    n->mu = std::move(mu);
    n->a = std::move(a);
    n->b = std::move(b);
    n->cl = std::move(cl);
    n->ne = std::move(ne);
    return n;
}
}  // namespace

namespace val {
Value lam(Modality mu, Closure cl) { return vnode(VKind::Lam, std::move(mu), nullptr, nullptr, std::move(cl)); }
Value pair(Value a, Value b) { return vnode(VKind::Pair, {}, std::move(a), std::move(b)); }
Value tt() { return vnode(VKind::True); }
Value ff() { return vnode(VKind::False); }
Value box(Modality mu, Value a) { return vnode(VKind::Box, std::move(mu), std::move(a)); }
Value neu(TypeValue type, Neutral ne) { return vnode(VKind::Neu, {}, std::move(type), nullptr, {}, std::move(ne)); }
Value pi_code(Modality mu, Value a, Closure cl) { return vnode(VKind::PiCode, std::move(mu), std::move(a), nullptr, std::move(cl)); }
Value sig_code(Value a, Closure cl) { return vnode(VKind::SigCode, {}, std::move(a), nullptr, std::move(cl)); }
Value bool_code() { return vnode(VKind::BoolCode); }
Value mod_code(Modality mu, Value a) { return vnode(VKind::ModCode, std::move(mu), std::move(a)); }
TypeValue pi(Modality mu, TypeValue a, Closure cl) { return vnode(VKind::Pi, std::move(mu), std::move(a), nullptr, std::move(cl)); }
TypeValue sig(TypeValue a, Closure cl) { return vnode(VKind::Sig, {}, std::move(a), nullptr, std::move(cl)); }
TypeValue boolean() { return vnode(VKind::Bool); }
TypeValue uni() { return vnode(VKind::Uni); }
TypeValue mod(Modality mu, TypeValue a) { return vnode(VKind::Mod, std::move(mu), std::move(a)); }
TypeValue dec(Value code) { return vnode(VKind::Dec, {}, std::move(code)); }
}  // namespace val

Neutral ne_head(std::size_t level, Cell2 cell, std::vector<Modality> locks) {
    auto n = std::make_shared<NeNode>();
    n->kind = NKind::Head;
    n->level = level;
    n->cell = std::move(cell);
    n->locks = std::move(locks);
    return n;
}

namespace {
std::shared_ptr<NeNode> ne_node(NKind k) {
    auto n = std::make_shared<NeNode>();
    n->kind = k;
    return n;
}
}  // namespace

// ---------------------------------------------------------------------------
// Transport along lock changes

namespace {

struct Rekey {
    const ModeTheory& mt;
    const Cell2& beta;
    const std::vector<Modality>& fresh;
    std::size_t tail;

    Neutral head(const NeNode& h, std::size_t depth) const {
        std::size_t len = h.locks.size();
        if (len < depth + tail) return std::make_shared<NeNode>(h);
        std::size_t start = len - depth - tail;
        std::vector<Modality> p(h.locks.begin(), h.locks.begin() + static_cast<std::ptrdiff_t>(start));
        std::vector<Modality> q(h.locks.end() - static_cast<std::ptrdiff_t>(depth), h.locks.end());
        auto n = std::make_shared<NeNode>(h);
        n->locks = p;
        n->locks.insert(n->locks.end(), fresh.begin(), fresh.end());
        n->locks.insert(n->locks.end(), q.begin(), q.end());
        // An identity cell means the old and new windows compose to the same
        // word, so the head's cell already has the right boundary.
        if (!beta.is_identity()) {
            Modality pm = compose_all(p, beta.src().tgt);
            Cell2 mid = whisker_left(pm, beta);
            Cell2 moved = whisker_right(mid, compose_all(q, mid.src().src));
            n->cell = vcomp(mt, moved, h.cell);
        }
        return n;
    }

    Closure closure(const Closure& cl, std::size_t depth) const {
        Slot s{Slot::Kind::Key, nullptr, tail, {}, depth, beta, fresh};
        return Closure{env_push(cl.env, std::move(s)), cl.body, cl.tail};
    }

    Neutral ne(const Neutral& e, std::size_t depth) const {
        if (e->kind == NKind::Head) return head(*e, depth);
        auto n = std::make_shared<NeNode>(*e);
        switch (e->kind) {
            case NKind::App:
                n->ne = ne(e->ne, depth);
                n->arg = value(e->arg, depth + 1);
                n->dom = value(e->dom, depth + 1);
                break;
            case NKind::Fst:
            case NKind::Snd:
            case NKind::DecIso:
                n->ne = ne(e->ne, depth);
                break;
            case NKind::If:
                n->ne = ne(e->ne, depth);
                n->motive = closure(e->motive, depth);
                n->t = value(e->t, depth);
                n->f = value(e->f, depth);
                break;
            case NKind::LetMod:
                n->ne = ne(e->ne, depth + 1);
                n->motive = closure(e->motive, depth);
                n->branch = closure(e->branch, depth);
                n->dom = value(e->dom, depth + 2);
                break;
            case NKind::Head:
                break;
        }
        return n;
    }

    Value value(const Value& v, std::size_t depth) const {
        switch (v->kind) {
            case VKind::True:
            case VKind::False:
            case VKind::BoolCode:
            case VKind::Bool:
            case VKind::Uni:
                return v;
            default:
                break;
        }
        auto n = std::make_shared<ValNode>(*v);
        switch (v->kind) {
            case VKind::Lam:
                n->cl = closure(v->cl, depth);
                break;
            case VKind::Pair:
                n->a = value(v->a, depth);
                n->b = value(v->b, depth);
                break;
            case VKind::Box:
            case VKind::ModCode:
            case VKind::Mod:
                n->a = value(v->a, depth + 1);
                break;
            case VKind::Neu:
                n->a = value(v->a, depth);
                n->ne = ne(v->ne, depth);
                break;
            case VKind::PiCode:
            case VKind::Pi:
                n->a = value(v->a, depth + 1);
                n->cl = closure(v->cl, depth);
                break;
            case VKind::SigCode:
            case VKind::Sig:
                n->a = value(v->a, depth);
                n->cl = closure(v->cl, depth);
                break;
            case VKind::Dec:
                n->a = value(v->a, depth);
                break;
            default:
                break;
        }
        return n;
    }
};

}  // namespace

Value rekey(const ModeTheory& mt, const Value& v, std::size_t depth, std::size_t tail, const Cell2& beta,
            const std::vector<Modality>& fresh) {
    return Rekey{mt, beta, fresh, tail}.value(v, depth);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Value lookup(const ModeTheory& mt, const Env& env, std::size_t j, const Cell2& gamma) {
    std::vector<const Slot*> after;
    const EnvCell* c = env.get();
    std::size_t seen = 0;
    while (c) {
        if (c->slot.kind == Slot::Kind::Var) {
            if (seen == j) break;
            ++seen;
        }
        after.push_back(&c->slot);
        c = c->prev.get();
    }
    if (!c) throw DomainError("unbound variable " + std::to_string(j));
    std::reverse(after.begin(), after.end());

    std::vector<Modality> delta;
    std::vector<std::size_t> tags;
    for (std::size_t i = 0; i < after.size(); ++i) {
        if (after[i]->kind == Slot::Kind::Lock) {
            delta.push_back(after[i]->mu);
            tags.push_back(i);
        }
    }
    Value v = rekey(mt, c->slot.value, 0, c->slot.tail, gamma, delta);

    // Pending keys apply in binding order; each one is positioned relative to
    // the lock entries that were in scope when it was recorded.
    for (std::size_t i = 0; i < after.size(); ++i) {
        const Slot& k = *after[i];
        if (k.kind != Slot::Kind::Key) continue;
        std::size_t later = static_cast<std::size_t>(std::count_if(tags.begin(), tags.end(), [&](std::size_t t) { return t > i; }));
        std::size_t depth = k.depth + later;
        v = rekey(mt, v, depth, k.tail, k.cell, k.fresh);
        std::size_t len = tags.size();
        std::size_t end = len >= depth ? len - depth : 0;
        std::size_t start = end >= k.tail ? end - k.tail : 0;
        tags.erase(tags.begin() + static_cast<std::ptrdiff_t>(start), tags.begin() + static_cast<std::ptrdiff_t>(end));
        tags.insert(tags.begin() + static_cast<std::ptrdiff_t>(start), k.fresh.size(), i);
    }
    return v;
}

[[noreturn]] void domain(const char* what) { throw DomainError(what); }

}  // namespace

Value instantiate(const ModeTheory& mt, const Closure& cl, const Value& v) {
    return eval(mt, env_var(cl.env, v, cl.tail), cl.body);
}

Value eval(const ModeTheory& mt, const Env& env, const Term& t) {
    auto ev = [&](std::size_t i) { return eval(mt, env, t->kids[i]); };
    auto locked = [&](std::size_t i) { return eval(mt, env_lock(env, t->mu), t->kids[i]); };
    switch (t->tag) {
        case Tag::Var:
            return lookup(mt, env, t->index, t->cell);
        case Tag::Pi:
            return val::pi(t->mu, locked(0), Closure{env, t->kids[1], 1});
        case Tag::Sig:
            return val::sig(ev(0), Closure{env, t->kids[1], 0});
        case Tag::Bool:
            return val::boolean();
        case Tag::Uni:
            return val::uni();
        case Tag::Mod:
            return val::mod(t->mu, locked(0));
        case Tag::Dec:
            return val::dec(ev(0));
        case Tag::Lam:
            return val::lam(t->mu, Closure{env, t->kids[0], 1});
        case Tag::App:
            return do_app(mt, ev(0), locked(1));
        case Tag::Pair:
            return val::pair(ev(0), ev(1));
        case Tag::Fst:
            return do_fst(mt, ev(0));
        case Tag::Snd:
            return do_snd(mt, ev(0));
        case Tag::True:
            return val::tt();
        case Tag::False:
            return val::ff();
        case Tag::If:
            return do_if(mt, Closure{env, t->kids[0], 0}, ev(1), ev(2), ev(3));
        case Tag::MkBox:
            return val::box(t->mu, locked(0));
        case Tag::LetMod:
            return do_letmod(mt, t->mu, t->nu, Closure{env, t->kids[0], 1}, locked(1), Closure{env, t->kids[2], 2});
        case Tag::PiCode:
            return val::pi_code(t->mu, locked(0), Closure{env, t->kids[1], 1});
        case Tag::SigCode:
            return val::sig_code(ev(0), Closure{env, t->kids[1], 0});
        case Tag::BoolCode:
            return val::bool_code();
        case Tag::ModCode:
            return val::mod_code(t->mu, locked(0));
        case Tag::DecIso:
        case Tag::DecIsoInv:
        case Tag::Ann:
            return ev(0);
    }
    domain("unknown term former");
}

Value do_app(const ModeTheory& mt, const Value& f, const Value& a) {
    if (f->kind == VKind::Lam) return instantiate(mt, f->cl, a);
    if (f->kind == VKind::Neu && f->a->kind == VKind::Pi) {
        const auto& ty = f->a;
        auto n = ne_node(NKind::App);
        n->ne = f->ne;
        n->arg = a;
        n->dom = ty->a;
        n->mu = ty->mu;
        return reflect(instantiate(mt, ty->cl, a), n);
    }
    domain("application of a non-function");
}

Value do_fst(const ModeTheory&, const Value& p) {
    if (p->kind == VKind::Pair) return p->a;
    if (p->kind == VKind::Neu && p->a->kind == VKind::Sig) {
        auto n = ne_node(NKind::Fst);
        n->ne = p->ne;
        return reflect(p->a->a, n);
    }
    domain("first projection of a non-pair");
}

Value do_snd(const ModeTheory& mt, const Value& p) {
    if (p->kind == VKind::Pair) return p->b;
    if (p->kind == VKind::Neu && p->a->kind == VKind::Sig) {
        auto n = ne_node(NKind::Snd);
        n->ne = p->ne;
        return reflect(instantiate(mt, p->a->cl, do_fst(mt, p)), n);
    }
    domain("second projection of a non-pair");
}

Value do_if(const ModeTheory& mt, const Closure& motive, const Value& t, const Value& f, const Value& b) {
    if (b->kind == VKind::True) return t;
    if (b->kind == VKind::False) return f;
    if (b->kind == VKind::Neu && b->a->kind == VKind::Bool) {
        auto n = ne_node(NKind::If);
        n->ne = b->ne;
        n->motive = motive;
        n->t = t;
        n->f = f;
        return reflect(instantiate(mt, motive, b), n);
    }
    domain("if on a non-boolean");
}

Value do_letmod(const ModeTheory& mt, const Modality& mu, const Modality& nu, const Closure& motive,
                const Value& scrut, const Closure& branch) {
    if (scrut->kind == VKind::Box) return instantiate(mt, branch, scrut->a);
    if (scrut->kind == VKind::Neu && scrut->a->kind == VKind::Mod) {
        auto n = ne_node(NKind::LetMod);
        n->ne = scrut->ne;
        n->mu = mu;
        n->nu = nu;
        n->motive = motive;
        n->branch = branch;
        n->dom = scrut->a->a;
        return reflect(instantiate(mt, motive, scrut), n);
    }
    domain("letmod on a non-modal value");
}

TypeValue unfold(const Value& code) {
    switch (code->kind) {
        case VKind::PiCode:
            return val::pi(code->mu, val::dec(code->a), Closure{code->cl.env, tm::dec(code->cl.body), code->cl.tail});
        case VKind::SigCode:
            return val::sig(val::dec(code->a), Closure{code->cl.env, tm::dec(code->cl.body), code->cl.tail});
        case VKind::BoolCode:
            return val::boolean();
        case VKind::ModCode:
            return val::mod(code->mu, val::dec(code->a));
        default:
            return nullptr;
    }
}

Value reflect(const TypeValue& type, const Neutral& ne) {
    if (type->kind == VKind::Dec) {
        if (auto u = unfold(type->a)) {
            auto n = ne_node(NKind::DecIso);
            n->ne = ne;
            return val::neu(u, n);
        }
    }
    return val::neu(type, ne);
}

// ---------------------------------------------------------------------------
// Read-back

namespace {
Value fresh_var(const TypeValue& type, std::size_t level, const Modality& ann, std::vector<Modality> locks) {
    return reflect(type, ne_head(level, id_cell(ann), std::move(locks)));
}
}  // namespace

Nf reify(const ModeTheory& mt, std::size_t d, ModeId mode, const TypeValue& type, const Value& v) {
    switch (type->kind) {
        case VKind::Pi: {
            Value x = fresh_var(type->a, d, type->mu, {type->mu});
            return nf::lam(type->mu, reify(mt, d + 1, mode, instantiate(mt, type->cl, x), do_app(mt, v, x)));
        }
        case VKind::Sig: {
            Value a = do_fst(mt, v);
            return nf::pair(reify(mt, d, mode, type->a, a),
                            reify(mt, d, mode, instantiate(mt, type->cl, a), do_snd(mt, v)));
        }
        case VKind::Bool:
            if (v->kind == VKind::True) return nf::tt();
            if (v->kind == VKind::False) return nf::ff();
            break;
        case VKind::Mod:
            if (v->kind == VKind::Box) return nf::mkbox(type->mu, reify(mt, d, type->mu.src, type->a, v->a));
            break;
        case VKind::Uni:
            switch (v->kind) {
                case VKind::PiCode: {
                    Value x = fresh_var(val::dec(v->a), d, v->mu, {v->mu});
                    return nf::fn_code(v->mu, reify(mt, d, v->mu.src, type, v->a),
                                       reify(mt, d + 1, mode, type, instantiate(mt, v->cl, x)));
                }
                case VKind::SigCode: {
                    Value x = fresh_var(val::dec(v->a), d, Modality::identity(mode), {});
                    return nf::prod_code(reify(mt, d, mode, type, v->a),
                                         reify(mt, d + 1, mode, type, instantiate(mt, v->cl, x)));
                }
                case VKind::BoolCode:
                    return nf::bool_code();
                case VKind::ModCode:
                    return nf::modify_code(v->mu, reify(mt, d, v->mu.src, type, v->a));
                default:
                    break;
            }
            break;
        case VKind::Dec:
            if (auto u = unfold(type->a)) return nf::deciso_inv(reify(mt, d, mode, u, v));
            break;
        default:
            domain("reify at a non-type");
    }
    if (v->kind != VKind::Neu) domain("value does not inhabit its type");
    return nf::inj(reify_ne(mt, d, mode, v->ne));
}

NfTy reify_ty(const ModeTheory& mt, std::size_t d, ModeId mode, const TypeValue& type) {
    switch (type->kind) {
        case VKind::Pi: {
            Value x = fresh_var(type->a, d, type->mu, {type->mu});
            return nf::ty_fn(type->mu, reify_ty(mt, d, type->mu.src, type->a),
                             reify_ty(mt, d + 1, mode, instantiate(mt, type->cl, x)));
        }
        case VKind::Sig: {
            Value x = fresh_var(type->a, d, Modality::identity(mode), {});
            return nf::ty_prod(reify_ty(mt, d, mode, type->a), reify_ty(mt, d + 1, mode, instantiate(mt, type->cl, x)));
        }
        case VKind::Bool:
            return nf::ty_bool();
        case VKind::Uni:
            return nf::ty_uni();
        case VKind::Mod:
            return nf::ty_modify(type->mu, reify_ty(mt, d, type->mu.src, type->a));
        case VKind::Dec:
            return nf::ty_dec(reify(mt, d, mode, val::uni(), type->a));
        default:
            domain("reify_ty of a non-type");
    }
}

Ne reify_ne(const ModeTheory& mt, std::size_t d, ModeId mode, const Neutral& e) {
    switch (e->kind) {
        case NKind::Head:
            if (e->level >= d) domain("variable level out of scope");
            return nf::var(d - 1 - e->level, e->cell);
        case NKind::App:
            return nf::app(e->mu, reify_ne(mt, d, mode, e->ne), reify(mt, d, e->mu.src, e->dom, e->arg));
        case NKind::Fst:
            return nf::proj1(reify_ne(mt, d, mode, e->ne));
        case NKind::Snd:
            return nf::proj2(reify_ne(mt, d, mode, e->ne));
        case NKind::If: {
            Value x = fresh_var(val::boolean(), d, Modality::identity(mode), {});
            return nf::boolrec(reify_ty(mt, d + 1, mode, instantiate(mt, e->motive, x)), reify_ne(mt, d, mode, e->ne),
                               reify(mt, d, mode, instantiate(mt, e->motive, val::tt()), e->t),
                               reify(mt, d, mode, instantiate(mt, e->motive, val::ff()), e->f));
        }
        case NKind::LetMod: {
            Value x = fresh_var(val::mod(e->nu, e->dom), d, e->mu, {e->mu});
            Value y = fresh_var(e->dom, d, compose_mod(e->mu, e->nu), {e->mu, e->nu});
            return nf::letmod(e->mu, e->nu, reify_ty(mt, d + 1, mode, instantiate(mt, e->motive, x)),
                              reify_ne(mt, d, e->mu.src, e->ne),
                              reify(mt, d + 1, mode, instantiate(mt, e->motive, val::box(e->nu, y)),
                                    instantiate(mt, e->branch, y)));
        }
        case NKind::DecIso:
            return nf::deciso(reify_ne(mt, d, mode, e->ne));
    }
    domain("unknown neutral");
}

Atoms atoms_env(const ModeTheory& mt, const Telescope& theta) {
    Atoms out;
    std::size_t level = 0;
    for (const auto& entry : theta.entries()) {
        if (entry.is_lock) {
            out.env = env_lock(out.env, entry.mu);
            continue;
        }
        TypeValue a = eval_ty(mt, env_lock(out.env, entry.mu), entry.type);
        out.env = env_var(out.env, fresh_var(a, level, entry.mu, {entry.mu}), 1);
        out.types.push_back(a);
        ++level;
    }
    return out;
}

Nf normalize(const ModeTheory& mt, const Telescope& theta, const Term& type, const Term& t) {
    Atoms at = atoms_env(mt, theta);
    return reify(mt, theta.var_count(), theta.mode(), eval_ty(mt, at.env, type), eval(mt, at.env, t));
}

NfTy normalize_ty(const ModeTheory& mt, const Telescope& theta, const Term& type) {
    Atoms at = atoms_env(mt, theta);
    return reify_ty(mt, theta.var_count(), theta.mode(), eval_ty(mt, at.env, type));
}

}  // namespace mtt
