#include "mtt/check.hpp"

namespace mtt {

std::string error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Mismatch: return "type mismatch";
        case ErrorKind::Inaccessible: return "inaccessible variable";
        case ErrorKind::Mode: return "mode error";
        case ErrorKind::NotAType: return "not a type";
        case ErrorKind::NotInferable: return "cannot infer";
        case ErrorKind::Domain: return "evaluation error";
    }
    return "error";
}

namespace {
[[noreturn]] void fail(ErrorKind k, const std::string& msg) { throw TypeError(k, msg); }

std::string show_mode(const ModeTheory& mt, ModeId m) { return mt.mode_name(m); }

void require_modality(const CheckCtx& ctx, const Modality& mu, const char* where) {
    const auto& mt = ctx.theory();
    if (!mt.well_formed(mu)) fail(ErrorKind::Mode, std::string(where) + ": ill-formed modality");
    if (mu.tgt != ctx.mode()) {
        fail(ErrorKind::Mode, std::string(where) + ": modality " + mt.show(mu) + " ends at mode " +
                                  show_mode(mt, mu.tgt) + " but the context is at mode " + show_mode(mt, ctx.mode()));
    }
}
}  // namespace

CheckCtx::CheckCtx(const ModeTheory& mt, ModeId mode) : mt_(&mt), shape_{mode, {}} {}

CheckCtx CheckCtx::of(const ModeTheory& mt, const Telescope& theta) {
    CheckCtx ctx(mt, theta.base());
    for (const auto& e : theta.entries()) {
        if (e.is_lock) {
            ctx = ctx.lock(e.mu);
            continue;
        }
        CheckCtx locked = ctx.lock(e.mu);
        check_ty(locked, e.type);
        ctx = ctx.extend(eval_ty(mt, locked.env(), e.type), {e.mu});
    }
    return ctx;
}

CheckCtx CheckCtx::lock(const Modality& mu) const {
    require_modality(*this, mu, "lock");
    CheckCtx r = *this;
    r.shape_ = shape_.lock(mu);
    r.env_ = env_lock(env_, mu);
    return r;
}

CheckCtx CheckCtx::extend(const TypeValue& a, const std::vector<Modality>& tail_locks) const {
    Modality ann;
    try {
        ann = compose_all(tail_locks, mode());
    } catch (const ModeError& e) {
        fail(ErrorKind::Mode, e.what());
    }
    CheckCtx r = *this;
    r.shape_ = shape_.extend(ann);
    r.newest_ = reflect(a, ne_head(depth(), id_cell(ann), tail_locks));
    r.env_ = env_var(env_, r.newest_, tail_locks.size());
    r.types_.push_back(a);
    r.tails_.push_back(tail_locks.size());
    return r;
}

std::string show_type(const CheckCtx& ctx, const TypeValue& t) {
    return show_form(ctx.theory(), reify_ty(ctx.theory(), ctx.depth(), ctx.mode(), t));
}

bool convert_ty(const CheckCtx& ctx, const TypeValue& s, const TypeValue& t) {
    const auto& mt = ctx.theory();
    return eq_nfty(mt, reify_ty(mt, ctx.depth(), ctx.mode(), s), reify_ty(mt, ctx.depth(), ctx.mode(), t));
}

bool convert_tm(const CheckCtx& ctx, const TypeValue& type, const Value& v, const Value& w) {
    const auto& mt = ctx.theory();
    return eq_nf(mt, reify(mt, ctx.depth(), ctx.mode(), type, v), reify(mt, ctx.depth(), ctx.mode(), type, w));
}

TypeValue lookup_var(const CheckCtx& ctx, std::size_t k, const Cell2& alpha) {
    const auto& mt = ctx.theory();
    if (k >= ctx.depth()) fail(ErrorKind::Inaccessible, "variable index " + std::to_string(k) + " is out of scope");
    const Modality& ann = var_annotation(ctx.shape(), k);
    Modality locks = locks_of(ctx.shape(), k);
    if (!alpha.valid() || !mt.eq_mod(alpha.src(), ann) || !mt.eq_mod(alpha.tgt(), locks)) {
        std::string have = alpha.valid() ? mt.show(alpha.src()) + " => " + mt.show(alpha.tgt()) : "nothing";
        fail(ErrorKind::Inaccessible, "variable not accessible: no 2-cell " + mt.show(ann) + " => " + mt.show(locks) +
                                          " declared (given cell has boundary " + have + ")");
    }
    return rekey(mt, ctx.type_of(k), 0, ctx.tail_of(k), alpha, locks_after(ctx.shape().entries, k));
}

namespace {

Value ev(const CheckCtx& ctx, const Term& t) { return eval(ctx.theory(), ctx.env(), t); }

void expect_mod_eq(const CheckCtx& ctx, const Modality& want, const Modality& got, const char* where) {
    const auto& mt = ctx.theory();
    if (!mt.eq_mod(want, got)) {
        fail(ErrorKind::Mismatch, std::string(where) + ": expected modality " + mt.show(want) + ", got " + mt.show(got));
    }
}

void mismatch(const CheckCtx& ctx, const char* what, const TypeValue& got) {
    fail(ErrorKind::Mismatch, std::string("expected ") + what + ", got " + show_type(ctx, got));
}

TypeValue infer_impl(const CheckCtx& ctx, const Term& t);

void check_impl(const CheckCtx& ctx, const Term& t, const TypeValue& type) {
    const auto& mt = ctx.theory();
    switch (t->tag) {
        case Tag::Lam: {
            if (type->kind != VKind::Pi) mismatch(ctx, "a function type for a lambda", type);
            expect_mod_eq(ctx, type->mu, t->mu, "lambda");
            CheckCtx inner = ctx.extend(type->a, {type->mu});
            check_impl(inner, t->kids[0], instantiate(mt, type->cl, inner.newest()));
            return;
        }
        case Tag::Pair: {
            if (type->kind != VKind::Sig) mismatch(ctx, "a pair type", type);
            check_impl(ctx, t->kids[0], type->a);
            check_impl(ctx, t->kids[1], instantiate(mt, type->cl, ev(ctx, t->kids[0])));
            return;
        }
        case Tag::MkBox: {
            if (type->kind != VKind::Mod) mismatch(ctx, "a modal type for box", type);
            expect_mod_eq(ctx, type->mu, t->mu, "box");
            check_impl(ctx.lock(t->mu), t->kids[0], type->a);
            return;
        }
        case Tag::DecIsoInv: {
            TypeValue u = type->kind == VKind::Dec ? unfold(type->a) : nullptr;
            if (!u) mismatch(ctx, "Dec of a canonical code for iso-inv", type);
            check_impl(ctx, t->kids[0], u);
            return;
        }
        default: {
            TypeValue got = infer_impl(ctx, t);
            if (!convert_ty(ctx, got, type)) {
                fail(ErrorKind::Mismatch, "expected type " + show_type(ctx, type) + ", got " + show_type(ctx, got));
            }
        }
    }
}

void check_ty_impl(const CheckCtx& ctx, const Term& a) {
    const auto& mt = ctx.theory();
    switch (a->tag) {
        case Tag::Pi: {
            CheckCtx locked = ctx.lock(a->mu);
            check_ty_impl(locked, a->kids[0]);
            check_ty_impl(ctx.extend(eval_ty(mt, locked.env(), a->kids[0]), {a->mu}), a->kids[1]);
            return;
        }
        case Tag::Sig:
            check_ty_impl(ctx, a->kids[0]);
            check_ty_impl(ctx.extend(ev(ctx, a->kids[0]), {}), a->kids[1]);
            return;
        case Tag::Bool:
        case Tag::Uni:
            return;
        case Tag::Mod:
            check_ty_impl(ctx.lock(a->mu), a->kids[0]);
            return;
        case Tag::Dec:
            check_impl(ctx, a->kids[0], val::uni());
            return;
        default:
            fail(ErrorKind::NotAType, "expected a type, found the term former '" + tag_name(a->tag) + "'");
    }
}

TypeValue infer_impl(const CheckCtx& ctx, const Term& t) {
    const auto& mt = ctx.theory();
    switch (t->tag) {
        case Tag::Var:
            return lookup_var(ctx, t->index, t->cell);
        case Tag::Ann: {
            check_ty_impl(ctx, t->kids[1]);
            TypeValue type = ev(ctx, t->kids[1]);
            check_impl(ctx, t->kids[0], type);
            return type;
        }
        case Tag::App: {
            TypeValue f = infer_impl(ctx, t->kids[0]);
            if (f->kind != VKind::Pi) mismatch(ctx, "a function type in application", f);
            expect_mod_eq(ctx, f->mu, t->mu, "application");
            CheckCtx locked = ctx.lock(t->mu);
            check_impl(locked, t->kids[1], f->a);
            return instantiate(mt, f->cl, eval(mt, locked.env(), t->kids[1]));
        }
        case Tag::Fst: {
            TypeValue p = infer_impl(ctx, t->kids[0]);
            if (p->kind != VKind::Sig) mismatch(ctx, "a pair type in fst", p);
            return p->a;
        }
        case Tag::Snd: {
            TypeValue p = infer_impl(ctx, t->kids[0]);
            if (p->kind != VKind::Sig) mismatch(ctx, "a pair type in snd", p);
            return instantiate(mt, p->cl, do_fst(mt, ev(ctx, t->kids[0])));
        }
        case Tag::True:
        case Tag::False:
            return val::boolean();
        case Tag::If: {
            check_impl(ctx, t->kids[3], val::boolean());
            check_ty_impl(ctx.extend(val::boolean(), {}), t->kids[0]);
            Closure motive{ctx.env(), t->kids[0], 0};
            check_impl(ctx, t->kids[1], instantiate(mt, motive, val::tt()));
            check_impl(ctx, t->kids[2], instantiate(mt, motive, val::ff()));
            return instantiate(mt, motive, ev(ctx, t->kids[3]));
        }
        case Tag::MkBox: {
            CheckCtx locked = ctx.lock(t->mu);
            return val::mod(t->mu, infer_impl(locked, t->kids[0]));
        }
        case Tag::LetMod: {
            CheckCtx locked = ctx.lock(t->mu);
            TypeValue s = infer_impl(locked, t->kids[1]);
            if (s->kind != VKind::Mod) mismatch(ctx, "a modal type for the letbox scrutinee", s);
            expect_mod_eq(ctx, s->mu, t->nu, "letbox");
            check_ty_impl(ctx.extend(s, {t->mu}), t->kids[0]);
            Closure motive{ctx.env(), t->kids[0], 1};
            CheckCtx inner = ctx.extend(s->a, {t->mu, s->mu});
            check_impl(inner, t->kids[2], instantiate(mt, motive, val::box(s->mu, inner.newest())));
            return instantiate(mt, motive, eval(mt, locked.env(), t->kids[1]));
        }
        case Tag::DecIso: {
            TypeValue s = infer_impl(ctx, t->kids[0]);
            TypeValue u = s->kind == VKind::Dec ? unfold(s->a) : nullptr;
            if (!u) mismatch(ctx, "Dec of a canonical code for iso", s);
            return u;
        }
        case Tag::PiCode: {
            CheckCtx locked = ctx.lock(t->mu);
            check_impl(locked, t->kids[0], val::uni());
            check_impl(ctx.extend(val::dec(eval(mt, locked.env(), t->kids[0])), {t->mu}), t->kids[1], val::uni());
            return val::uni();
        }
        case Tag::SigCode:
            check_impl(ctx, t->kids[0], val::uni());
            check_impl(ctx.extend(val::dec(ev(ctx, t->kids[0])), {}), t->kids[1], val::uni());
            return val::uni();
        case Tag::BoolCode:
            return val::uni();
        case Tag::ModCode:
            check_impl(ctx.lock(t->mu), t->kids[0], val::uni());
            return val::uni();
        case Tag::Lam:
        case Tag::Pair:
        case Tag::DecIsoInv:
            fail(ErrorKind::NotInferable, "cannot infer the type of '" + tag_name(t->tag) + "'; add an annotation");
        default:
            fail(ErrorKind::NotAType, "the type former '" + tag_name(t->tag) + "' is not a term");
    }
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ModeError& e) {
        throw TypeError(ErrorKind::Mode, e.what());
    } catch (const DomainError& e) {
        throw TypeError(ErrorKind::Domain, e.what());
    }
}

}  // namespace

TypeValue infer(const CheckCtx& ctx, const Term& t) {
    return guarded([&] { return infer_impl(ctx, t); });
}

void check(const CheckCtx& ctx, const Term& t, const TypeValue& type) {
    guarded([&] { check_impl(ctx, t, type); });
}

void check_ty(const CheckCtx& ctx, const Term& a) {
    guarded([&] { check_ty_impl(ctx, a); });
}

bool ProgramReport::ok() const {
    for (const auto& d : decls) {
        if (!d.ok) return false;
    }
    return true;
}

ProgramReport check_program(const ModeTheory& mt, const std::vector<Decl>& decls, bool normalize) {
    ProgramReport report;
    for (const auto& d : decls) {
        DeclReport r;
        r.name = d.name;
        r.line = d.line;
        r.column = d.column;
        try {
            CheckCtx ctx(mt, d.mode);
            check_ty(ctx, d.type);
            TypeValue type = eval_ty(mt, ctx.env(), d.type);
            check(ctx, d.body, type);
            r.type = reify_ty(mt, 0, d.mode, type);
            if (normalize) r.normal = reify(mt, 0, d.mode, type, eval(mt, ctx.env(), d.body));
            r.ok = true;
        } catch (const TypeError& e) {
            r.kind = e.kind();
            r.message = e.what();
        } catch (const ModeError& e) {
            r.kind = ErrorKind::Mode;
            r.message = e.what();
        } catch (const DomainError& e) {
            r.kind = ErrorKind::Domain;
            r.message = e.what();
        }
        report.decls.push_back(std::move(r));
    }
    return report;
}

}  // namespace mtt
