#include "mtt/syntax.hpp"

#include <optional>
#include <stdexcept>

namespace mtt {

namespace {

Term node(Tag tag, std::vector<Term> kids, Modality mu = {}, Modality nu = {}) {
    auto n = std::make_shared<TermNode>();
    n->tag = tag;
    n->mu = std::move(mu);
    n->nu = std::move(nu);
    n->kids = std::move(kids);
    return n;
}

}  // namespace

namespace tm {
Term var(std::size_t k, Cell2 alpha) {
    auto n = std::make_shared<TermNode>();
    n->tag = Tag::Var;
    n->index = k;
    n->cell = std::move(alpha);
    return n;
}
Term pi(Modality mu, Term dom, Term cod) { return node(Tag::Pi, {std::move(dom), std::move(cod)}, std::move(mu)); }
Term sig(Term dom, Term cod) { return node(Tag::Sig, {std::move(dom), std::move(cod)}); }
Term boolean() { return node(Tag::Bool, {}); }
Term uni() { return node(Tag::Uni, {}); }
Term mod(Modality mu, Term a) { return node(Tag::Mod, {std::move(a)}, std::move(mu)); }
Term dec(Term code) { return node(Tag::Dec, {std::move(code)}); }
Term lam(Modality mu, Term body) { return node(Tag::Lam, {std::move(body)}, std::move(mu)); }
Term app(Modality mu, Term fn, Term arg) { return node(Tag::App, {std::move(fn), std::move(arg)}, std::move(mu)); }
Term pair(Term a, Term b) { return node(Tag::Pair, {std::move(a), std::move(b)}); }
Term fst(Term p) { return node(Tag::Fst, {std::move(p)}); }
Term snd(Term p) { return node(Tag::Snd, {std::move(p)}); }
Term tt() { return node(Tag::True, {}); }
Term ff() { return node(Tag::False, {}); }
Term ite(Term motive, Term t, Term f, Term scrut) {
    return node(Tag::If, {std::move(motive), std::move(t), std::move(f), std::move(scrut)});
}
Term mkbox(Modality mu, Term body) { return node(Tag::MkBox, {std::move(body)}, std::move(mu)); }
Term letmod(Modality mu, Modality nu, Term motive, Term scrut, Term branch) {
    return node(Tag::LetMod, {std::move(motive), std::move(scrut), std::move(branch)}, std::move(mu), std::move(nu));
}
Term picode(Modality mu, Term a, Term b) { return node(Tag::PiCode, {std::move(a), std::move(b)}, std::move(mu)); }
Term sigcode(Term a, Term b) { return node(Tag::SigCode, {std::move(a), std::move(b)}); }
Term boolcode() { return node(Tag::BoolCode, {}); }
Term modcode(Modality mu, Term a) { return node(Tag::ModCode, {std::move(a)}, std::move(mu)); }
Term deciso(Term t) { return node(Tag::DecIso, {std::move(t)}); }
Term deciso_inv(Term t) { return node(Tag::DecIsoInv, {std::move(t)}); }
Term ann(Term t, Term type) { return node(Tag::Ann, {std::move(t), std::move(type)}); }
}  // namespace tm

std::size_t binds(Tag t, std::size_t i) {
    switch (t) {
        case Tag::Pi:
        case Tag::Sig:
        case Tag::PiCode:
        case Tag::SigCode:
            return i == 1 ? 1 : 0;
        case Tag::Lam:
        case Tag::If:
            return i == 0 ? 1 : 0;
        case Tag::LetMod:
            return (i == 0 || i == 2) ? 1 : 0;
        default:
            return 0;
    }
}

std::size_t Context::position_of(std::size_t k) const {
    if (k >= vars_) return npos;
    std::size_t seen = 0;
    for (std::size_t i = entries_.size(); i-- > 0;) {
        if (entries_[i].is_lock) continue;
        if (seen == k) return i;
        ++seen;
    }
    return npos;
}

Context ctx_lock(const Context& ctx, const Modality& mu) {
    if (mu.tgt != ctx.mode_) {
        throw ModeError("lock: modality targets mode " + std::to_string(mu.tgt) + " but context is at mode " +
                        std::to_string(ctx.mode_));
    }
    Context r = ctx;
    r.entries_.push_back(Entry::lock(mu));
    r.mode_ = mu.src;
    return r;
}

Context ctx_extend(const Context& ctx, const Modality& mu, Term a) {
    if (mu.tgt != ctx.mode_) {
        throw ModeError("extend: annotation targets mode " + std::to_string(mu.tgt) + " but context is at mode " +
                        std::to_string(ctx.mode_));
    }
    Context r = ctx;
    r.entries_.push_back(Entry::var(mu, std::move(a)));
    ++r.vars_;
    return r;
}

Shape shape_of(const Context& ctx) {
    Shape s;
    s.reserve(ctx.entries().size());
    for (const auto& e : ctx.entries()) s.push_back(ShapeEntry{e.is_lock, e.mu});
    return s;
}

std::size_t shape_var_count(const Shape& s) {
    std::size_t n = 0;
    for (const auto& e : s) n += e.is_lock ? 0 : 1;
    return n;
}

namespace {
std::size_t shape_position(const Shape& s, std::size_t k) {
    std::size_t seen = 0;
    for (std::size_t i = s.size(); i-- > 0;) {
        if (s[i].is_lock) continue;
        if (seen == k) return i;
        ++seen;
    }
    throw std::out_of_range("variable index " + std::to_string(k) + " does not resolve");
}
}  // namespace

std::vector<Modality> locks_after(const Shape& s, std::size_t k) {
    std::vector<Modality> out;
    for (std::size_t i = shape_position(s, k) + 1; i < s.size(); ++i) {
        if (s[i].is_lock) out.push_back(s[i].mu);
    }
    return out;
}

Modality locks_of(const Shape& s, std::size_t k) {
    const auto& entry = s[shape_position(s, k)];
    return compose_all(locks_after(s, k), entry.mu.tgt);
}

std::vector<Modality> locks_after(const Context& ctx, std::size_t k) { return locks_after(shape_of(ctx), k); }
Modality locks_of(const Context& ctx, std::size_t k) { return locks_of(shape_of(ctx), k); }

bool scope_check(std::size_t vars_in_scope, const Term& t) {
    if (!t) return false;
    if (t->tag == Tag::Var) return t->index < vars_in_scope && t->cell.valid();
    for (std::size_t i = 0; i < t->kids.size(); ++i) {
        if (!scope_check(vars_in_scope + binds(t->tag, i), t->kids[i])) return false;
    }
    return true;
}

bool scope_check(const Context& ctx, const Term& t) { return scope_check(ctx.var_count(), t); }

bool term_equal(const ModeTheory& mt, const Term& a, const Term& b) {
    if (a->tag != b->tag || a->kids.size() != b->kids.size()) return false;
    switch (a->tag) {
        case Tag::Var:
            return a->index == b->index && mt.eq_cell(a->cell, b->cell);
        case Tag::Pi:
        case Tag::Mod:
        case Tag::Lam:
        case Tag::App:
        case Tag::MkBox:
        case Tag::PiCode:
        case Tag::ModCode:
            if (!mt.eq_mod(a->mu, b->mu)) return false;
            break;
        case Tag::LetMod:
            if (!mt.eq_mod(a->mu, b->mu) || !mt.eq_mod(a->nu, b->nu)) return false;
            break;
        default:
            break;
    }
    for (std::size_t i = 0; i < a->kids.size(); ++i) {
        if (!term_equal(mt, a->kids[i], b->kids[i])) return false;
    }
    return true;
}

namespace {
std::vector<Entry> canonical_entries(const ModeTheory& mt, const Context& c) {
    std::vector<Entry> out;
    std::optional<Modality> run;
    // 🔒(μ∘ν) = 🔒μ.🔒ν: the outermost generator comes first.
    auto flush = [&] {
        if (!run) return;
        auto w = mt.normal_word(*run);
        for (std::size_t i = w.size(); i-- > 0;) out.push_back(Entry::lock(mt.gen(w[i])));
        run.reset();
    };
    for (const auto& e : c.entries()) {
        if (e.is_lock) {
            run = run ? compose_mod(*run, e.mu) : e.mu;
            continue;
        }
        flush();
        out.push_back(e);
    }
    flush();
    return out;
}
}  // namespace

bool ctx_equal(const ModeTheory& mt, const Context& a, const Context& b) {
    if (a.base() != b.base()) return false;
    auto ea = canonical_entries(mt, a);
    auto eb = canonical_entries(mt, b);
    if (ea.size() != eb.size()) return false;
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (ea[i].is_lock != eb[i].is_lock || !mt.eq_mod(ea[i].mu, eb[i].mu)) return false;
        if (!ea[i].is_lock && !term_equal(mt, ea[i].type, eb[i].type)) return false;
    }
    return true;
}

Term with_kids(const Term& t, std::vector<Term> kids) {
    auto n = std::make_shared<TermNode>(*t);
    n->kids = std::move(kids);
    return n;
}

Term shift(const Term& t, std::ptrdiff_t by, std::size_t cutoff) {
    if (t->tag == Tag::Var) {
        if (t->index < cutoff) return t;
        return tm::var(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(t->index) + by), t->cell);
    }
    if (t->kids.empty()) return t;
    std::vector<Term> kids;
    kids.reserve(t->kids.size());
    for (std::size_t i = 0; i < t->kids.size(); ++i) kids.push_back(shift(t->kids[i], by, cutoff + binds(t->tag, i)));
    return with_kids(t, std::move(kids));
}

std::string tag_name(Tag t) {
    switch (t) {
        case Tag::Var: return "var";
        case Tag::Pi: return "Pi";
        case Tag::Sig: return "Sig";
        case Tag::Bool: return "Bool";
        case Tag::Uni: return "Uni";
        case Tag::Mod: return "Mod";
        case Tag::Dec: return "Dec";
        case Tag::Lam: return "lam";
        case Tag::App: return "app";
        case Tag::Pair: return "pair";
        case Tag::Fst: return "fst";
        case Tag::Snd: return "snd";
        case Tag::True: return "true";
        case Tag::False: return "false";
        case Tag::If: return "if";
        case Tag::MkBox: return "box";
        case Tag::LetMod: return "letbox";
        case Tag::PiCode: return "code-pi";
        case Tag::SigCode: return "code-sig";
        case Tag::BoolCode: return "code-bool";
        case Tag::ModCode: return "code-mod";
        case Tag::DecIso: return "iso";
        case Tag::DecIsoInv: return "iso-inv";
        case Tag::Ann: return "ann";
    }
    return "?";
}

}  // namespace mtt
