#include "mtt/normal.hpp"

#include <stdexcept>

namespace mtt {

Sort sort_of(NfKind k) {
    switch (k) {
        case NfKind::TyBool:
        case NfKind::TyUni:
        case NfKind::TyFn:
        case NfKind::TyProd:
        case NfKind::TyModify:
        case NfKind::TyDec:
            return Sort::Type;
        case NfKind::Var:
        case NfKind::App:
        case NfKind::Proj1:
        case NfKind::Proj2:
        case NfKind::BoolRec:
        case NfKind::LetMod:
        case NfKind::DecIso:
            return Sort::Neutral;
        default:
            return Sort::Normal;
    }
}

namespace {

Form make(NfKind k, std::vector<Form> kids, Modality mu = {}, Modality nu = {}) {
    auto n = std::make_shared<NfNode>();
    n->kind = k;
    n->mu = std::move(mu);
    n->nu = std::move(nu);
    n->kids = std::move(kids);
    return n;
}

bool has_mu(NfKind k) {
    switch (k) {
        case NfKind::TyFn:
        case NfKind::TyModify:
        case NfKind::App:
        case NfKind::LetMod:
        case NfKind::Lam:
        case NfKind::MkBox:
        case NfKind::FnCode:
        case NfKind::ModifyCode:
            return true;
        default:
            return false;
    }
}

}  // namespace

namespace nf {
NfTy ty_bool() { return make(NfKind::TyBool, {}); }
NfTy ty_uni() { return make(NfKind::TyUni, {}); }
NfTy ty_fn(Modality mu, NfTy dom, NfTy cod) { return make(NfKind::TyFn, {std::move(dom), std::move(cod)}, std::move(mu)); }
NfTy ty_prod(NfTy fst, NfTy snd) { return make(NfKind::TyProd, {std::move(fst), std::move(snd)}); }
NfTy ty_modify(Modality mu, NfTy a) { return make(NfKind::TyModify, {std::move(a)}, std::move(mu)); }
NfTy ty_dec(Nf code) { return make(NfKind::TyDec, {std::move(code)}); }

Ne var(std::size_t k, Cell2 alpha) {
    auto n = std::make_shared<NfNode>();
    n->kind = NfKind::Var;
    n->index = k;
    n->cell = std::move(alpha);
    return n;
}
Ne app(Modality mu, Ne fn, Nf arg) { return make(NfKind::App, {std::move(fn), std::move(arg)}, std::move(mu)); }
Ne proj1(Ne e) { return make(NfKind::Proj1, {std::move(e)}); }
Ne proj2(Ne e) { return make(NfKind::Proj2, {std::move(e)}); }
Ne boolrec(NfTy motive, Ne scrut, Nf t, Nf f) {
    return make(NfKind::BoolRec, {std::move(motive), std::move(scrut), std::move(t), std::move(f)});
}
Ne letmod(Modality mu, Modality nu, NfTy motive, Ne scrut, Nf branch) {
    return make(NfKind::LetMod, {std::move(motive), std::move(scrut), std::move(branch)}, std::move(mu), std::move(nu));
}
Ne deciso(Ne e) { return make(NfKind::DecIso, {std::move(e)}); }

Nf lam(Modality mu, Nf body) { return make(NfKind::Lam, {std::move(body)}, std::move(mu)); }
Nf pair(Nf a, Nf b) { return make(NfKind::Pair, {std::move(a), std::move(b)}); }
Nf tt() { return make(NfKind::True, {}); }
Nf ff() { return make(NfKind::False, {}); }
Nf mkbox(Modality mu, Nf u) { return make(NfKind::MkBox, {std::move(u)}, std::move(mu)); }
Nf inj(Ne e) { return make(NfKind::Inj, {std::move(e)}); }
Nf fn_code(Modality mu, Nf a, Nf b) { return make(NfKind::FnCode, {std::move(a), std::move(b)}, std::move(mu)); }
Nf prod_code(Nf a, Nf b) { return make(NfKind::ProdCode, {std::move(a), std::move(b)}); }
Nf bool_code() { return make(NfKind::BoolCode, {}); }
Nf modify_code(Modality mu, Nf a) { return make(NfKind::ModifyCode, {std::move(a)}, std::move(mu)); }
Nf deciso_inv(Nf u) { return make(NfKind::DecIsoInv, {std::move(u)}); }
}  // namespace nf

std::vector<BinderStep> binder_steps(const NfNode& n, std::size_t i, ModeId mode) {
    auto lock = [](const Modality& m) { return std::vector<BinderStep>{{true, m}}; };
    auto bind = [](const Modality& m) { return std::vector<BinderStep>{{false, m}}; };
    switch (n.kind) {
        case NfKind::TyFn:
        case NfKind::FnCode:
            return i == 0 ? lock(n.mu) : bind(n.mu);
        case NfKind::TyProd:
        case NfKind::ProdCode:
            return i == 1 ? bind(Modality::identity(mode)) : std::vector<BinderStep>{};
        case NfKind::TyModify:
        case NfKind::MkBox:
        case NfKind::ModifyCode:
            return lock(n.mu);
        case NfKind::App:
            return i == 1 ? lock(n.mu) : std::vector<BinderStep>{};
        case NfKind::BoolRec:
            return i == 0 ? bind(Modality::identity(mode)) : std::vector<BinderStep>{};
        case NfKind::LetMod:
            if (i == 0) return bind(n.mu);
            if (i == 1) return lock(n.mu);
            return bind(compose_mod(n.mu, n.nu));
        case NfKind::Lam:
            return bind(n.mu);
        default:
            return {};
    }
}

// ---------------------------------------------------------------------------
// Telescope skeletons

ModeId TeleShape::mode() const {
    for (std::size_t i = entries.size(); i-- > 0;) {
        if (entries[i].is_lock) return entries[i].mu.src;
    }
    return base;
}

TeleShape TeleShape::lock(const Modality& mu) const {
    if (mu.tgt != mode()) throw ModeError("lock does not fit the telescope's mode");
    TeleShape r = *this;
    r.entries.push_back(ShapeEntry{true, mu});
    return r;
}

TeleShape TeleShape::extend(const Modality& mu) const {
    if (mu.tgt != mode()) throw ModeError("annotation does not fit the telescope's mode");
    TeleShape r = *this;
    r.entries.push_back(ShapeEntry{false, mu});
    return r;
}

TeleShape tele_shape(const Telescope& t) { return TeleShape{t.base(), shape_of(t)}; }

bool same_shape(const ModeTheory& mt, const TeleShape& a, const TeleShape& b) {
    if (a.base != b.base || a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].is_lock != b.entries[i].is_lock) return false;
        if (!mt.eq_mod(a.entries[i].mu, b.entries[i].mu)) return false;
    }
    return true;
}

Modality locks_of(const TeleShape& t, std::size_t k) { return locks_of(t.entries, k); }

const Modality& var_annotation(const TeleShape& t, std::size_t k) {
    std::size_t seen = 0;
    for (std::size_t i = t.entries.size(); i-- > 0;) {
        if (t.entries[i].is_lock) continue;
        if (seen++ == k) return t.entries[i].mu;
    }
    throw std::out_of_range("variable index " + std::to_string(k) + " does not resolve");
}

// ---------------------------------------------------------------------------
// Renamings

struct RenamingBuilder {
    static Renaming build(Renaming::Kind k, TeleShape src, TeleShape tgt, std::vector<Renaming> kids = {},
                          Modality mu = {}, Cell2 cell = {}, std::size_t j = 0) {
        auto n = std::make_shared<Renaming::Node>();
        n->kind = k;
        n->src = std::move(src);
        n->tgt = std::move(tgt);
        n->kids = std::move(kids);
        n->mu = std::move(mu);
        n->cell = std::move(cell);
        n->j = j;
        return Renaming(std::move(n));
    }
};

namespace ren {
using K = Renaming::Kind;

Renaming empty(const TeleShape& theta) {
    return RenamingBuilder::build(K::Empty, theta, TeleShape{theta.base, {}});
}

Renaming weaken(const TeleShape& theta, const Modality& rho) {
    return RenamingBuilder::build(K::Weaken, theta.extend(rho), theta, {}, rho);
}

Renaming identity(const TeleShape& theta) { return RenamingBuilder::build(K::Identity, theta, theta); }

Renaming compose(const ModeTheory& mt, const Renaming& r, const Renaming& s) {
    if (!same_shape(mt, r.src(), s.tgt())) throw ModeError("renaming composite: boundaries do not meet");
    return RenamingBuilder::build(K::Compose, s.src(), r.tgt(), {r, s});
}

Renaming lock(const Modality& mu, const Renaming& r) {
    return RenamingBuilder::build(K::Lock, r.src().lock(mu), r.tgt().lock(mu), {r}, mu);
}

Renaming key(const ModeTheory& mt, const TeleShape& theta, const Cell2& alpha) {
    (void)mt;
    return RenamingBuilder::build(K::Key, theta.lock(alpha.tgt()), theta.lock(alpha.src()), {}, {}, alpha);
}

Renaming ext(const ModeTheory& mt, const Renaming& r, const Modality& rho, std::size_t j, const Cell2& beta) {
    TeleShape locked = r.src().lock(rho);
    if (j >= locked.var_count()) throw ModeError("renaming extension: variable out of range");
    const Modality& ann = var_annotation(locked, j);
    if (!mt.eq_mod(beta.src(), ann) || !mt.eq_mod(beta.tgt(), locks_of(locked, j))) {
        throw ModeError("renaming extension: cell boundary does not match the variable");
    }
    return RenamingBuilder::build(K::Ext, r.src(), r.tgt().extend(rho), {r}, rho, beta, j);
}

Renaming lift(const ModeTheory& mt, const Renaming& r, const Modality& rho) {
    return ext(mt, compose(mt, r, weaken(r.src(), rho)), rho, 0, id_cell(rho));
}
}  // namespace ren

namespace {

// `extra` is the composite of the locks peeled off so far, i.e. the locks
// between r's target telescope and the variable's home.
VarRef act(const ModeTheory& mt, const Renaming& r, std::size_t k, const Cell2& g, const Modality& extra) {
    using K = Renaming::Kind;
    switch (r.kind()) {
        case K::Empty:
            throw std::logic_error("empty renaming applied to a variable");
        case K::Identity:
            return {k, g};
        case K::Weaken:
            return {k + 1, g};
        case K::Compose: {
            VarRef v = act(mt, r.first(), k, g, extra);
            return act(mt, r.second(), v.index, v.cell, extra);
        }
        case K::Lock:
            return act(mt, r.first(), k, g, compose_mod(r.mu(), extra));
        case K::Key: {
            TeleShape theta{r.tgt().base, Shape(r.tgt().entries.begin(), r.tgt().entries.end() - 1)};
            Modality l = locks_of(theta, k);
            Cell2 moved = whisker_right(whisker_left(l, r.cell()), extra);
            return {k, vcomp(mt, moved, g)};
        }
        case K::Ext: {
            if (k > 0) return act(mt, r.first(), k - 1, g, extra);
            Modality lj = locks_of(r.src(), r.var_index());
            return {r.var_index(), vcomp(mt, whisker_left(lj, g), r.cell())};
        }
    }
    throw std::logic_error("unreachable renaming kind");
}

Form rename_form(const ModeTheory& mt, const Renaming& r, const Form& f) {
    if (f->kind == NfKind::Var) {
        VarRef v = act(mt, r, f->index, f->cell, Modality::identity(r.tgt().mode()));
        return nf::var(v.index, v.cell);
    }
    if (f->kids.empty()) return f;
    ModeId mode = r.tgt().mode();
    auto n = std::make_shared<NfNode>(*f);
    for (std::size_t i = 0; i < f->kids.size(); ++i) {
        Renaming ri = r;
        for (const auto& step : binder_steps(*f, i, mode)) {
            ri = step.is_lock ? ren::lock(step.mu, ri) : ren::lift(mt, ri, step.mu);
        }
        n->kids[i] = rename_form(mt, ri, f->kids[i]);
    }
    return n;
}

}  // namespace

VarRef rename_var(const ModeTheory& mt, const Renaming& r, std::size_t k, const Cell2& alpha) {
    return act(mt, r, k, alpha, Modality::identity(r.tgt().mode()));
}

Ne rename_ne(const ModeTheory& mt, const Renaming& r, const Ne& e) { return rename_form(mt, r, e); }
Nf rename_nf(const ModeTheory& mt, const Renaming& r, const Nf& u) { return rename_form(mt, r, u); }
NfTy rename_nfty(const ModeTheory& mt, const Renaming& r, const NfTy& t) { return rename_form(mt, r, t); }

bool ren_respects_equations(const ModeTheory& mt, const Renaming& r1, const Renaming& r2, const Form& x) {
    return eq_form(mt, rename_form(mt, r1, x), rename_form(mt, r2, x));
}

// ---------------------------------------------------------------------------
// Decoding

namespace {
Term decode(const Form& f) {
    auto d = [&](std::size_t i) { return decode(f->kids[i]); };
    switch (f->kind) {
        case NfKind::TyBool: return tm::boolean();
        case NfKind::TyUni: return tm::uni();
        case NfKind::TyFn: return tm::pi(f->mu, d(0), d(1));
        case NfKind::TyProd: return tm::sig(d(0), d(1));
        case NfKind::TyModify: return tm::mod(f->mu, d(0));
        case NfKind::TyDec: return tm::dec(d(0));
        case NfKind::Var: return tm::var(f->index, f->cell);
        case NfKind::App: return tm::app(f->mu, d(0), d(1));
        case NfKind::Proj1: return tm::fst(d(0));
        case NfKind::Proj2: return tm::snd(d(0));
        case NfKind::BoolRec: return tm::ite(d(0), d(2), d(3), d(1));
        case NfKind::LetMod: return tm::letmod(f->mu, f->nu, d(0), d(1), d(2));
        case NfKind::DecIso: return tm::deciso(d(0));
        case NfKind::Lam: return tm::lam(f->mu, d(0));
        case NfKind::Pair: return tm::pair(d(0), d(1));
        case NfKind::True: return tm::tt();
        case NfKind::False: return tm::ff();
        case NfKind::MkBox: return tm::mkbox(f->mu, d(0));
        case NfKind::Inj: return d(0);
        case NfKind::FnCode: return tm::picode(f->mu, d(0), d(1));
        case NfKind::ProdCode: return tm::sigcode(d(0), d(1));
        case NfKind::BoolCode: return tm::boolcode();
        case NfKind::ModifyCode: return tm::modcode(f->mu, d(0));
        case NfKind::DecIsoInv: return tm::deciso_inv(d(0));
    }
    throw std::logic_error("unreachable form kind");
}
}  // namespace

Term decode_nf(const Nf& u) { return decode(u); }
Term decode_ne(const Ne& e) { return decode(e); }
Term decode_nfty(const NfTy& t) { return decode(t); }

// ---------------------------------------------------------------------------
// Equality, printing

bool eq_form(const ModeTheory& mt, const Form& a, const Form& b) {
    if (a->kind != b->kind || a->kids.size() != b->kids.size()) return false;
    if (a->kind == NfKind::Var) return a->index == b->index && mt.eq_cell(a->cell, b->cell);
    if (has_mu(a->kind) && !mt.eq_mod(a->mu, b->mu)) return false;
    if (a->kind == NfKind::LetMod && !mt.eq_mod(a->nu, b->nu)) return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i) {
        if (!eq_form(mt, a->kids[i], b->kids[i])) return false;
    }
    return true;
}

namespace {
std::string canon(const ModeTheory& mt, const Modality& mu) {
    return mt.show(Modality{mu.src, mu.tgt, mt.normal_word(mu)});
}

const char* head_name(NfKind k) {
    switch (k) {
        case NfKind::TyBool: return "Bool";
        case NfKind::TyUni: return "Uni";
        case NfKind::TyFn: return "Pi";
        case NfKind::TyProd: return "Sig";
        case NfKind::TyModify: return "Mod";
        case NfKind::TyDec: return "Dec";
        case NfKind::Var: return "var";
        case NfKind::App: return "app";
        case NfKind::Proj1: return "fst";
        case NfKind::Proj2: return "snd";
        case NfKind::BoolRec: return "if";
        case NfKind::LetMod: return "letbox";
        case NfKind::DecIso: return "iso";
        case NfKind::Lam: return "lam";
        case NfKind::Pair: return "pair";
        case NfKind::True: return "true";
        case NfKind::False: return "false";
        case NfKind::MkBox: return "box";
        case NfKind::Inj: return "inj";
        case NfKind::FnCode: return "code-pi";
        case NfKind::ProdCode: return "code-sig";
        case NfKind::BoolCode: return "code-bool";
        case NfKind::ModifyCode: return "code-mod";
        case NfKind::DecIsoInv: return "iso-inv";
    }
    return "?";
}
}  // namespace

std::string show_form(const ModeTheory& mt, const Form& f) {
    if (f->kind == NfKind::Inj) return show_form(mt, f->kids[0]);
    if (f->kind == NfKind::Var) {
        return "(var " + std::to_string(f->index) + " " + mt.show_canonical(f->cell) + ")";
    }
    std::string head = head_name(f->kind);
    if (f->kids.empty()) return head;
    if (f->kind == NfKind::LetMod) {
        head += "[" + canon(mt, f->mu) + "|" + canon(mt, f->nu) + "]";
    } else if (has_mu(f->kind)) {
        head += "[" + canon(mt, f->mu) + "]";
    }
    std::string out = "(" + head;
    for (const auto& k : f->kids) out += " " + show_form(mt, k);
    return out + ")";
}

std::size_t form_size(const Form& f) {
    std::size_t n = 1;
    for (const auto& k : f->kids) n += form_size(k);
    return n;
}

}  // namespace mtt
