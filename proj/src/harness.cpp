#include "mtt/harness.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "mtt/surface.hpp"

namespace mtt {

// ---------------------------------------------------------------------------
// Cell search

namespace {

std::optional<Modality> word_modality(const ModeTheory& mt, ModeId src, const std::vector<GenId>& word) {
    Modality m = Modality::identity(src);
    for (GenId g : word) {
        const auto& gen = mt.modality_gen(g);
        if (gen.src != m.tgt) return std::nullopt;
        m.word.push_back(g);
        m.tgt = gen.tgt;
    }
    return m;
}

// Mode reached after the first `p` letters of `word` starting at `src`.
ModeId mode_at(const ModeTheory& mt, ModeId src, const std::vector<GenId>& word, std::size_t p) {
    ModeId m = src;
    for (std::size_t i = 0; i < p; ++i) m = mt.modality_gen(word[i]).tgt;
    return m;
}

}  // namespace

std::optional<Cell2> find_cell(const ModeTheory& mt, const Modality& from, const Modality& to, std::mt19937_64* rng,
                               std::size_t max_steps) {
    if (from.src != to.src || from.tgt != to.tgt) return std::nullopt;
    struct State {
        Modality mod;
        Cell2 cell;
        std::size_t steps;
    };
    std::vector<std::size_t> order(mt.presentation().cells.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::deque<State> queue{{from, id_cell(from), 0}};
    std::set<std::vector<GenId>> seen{mt.normal_word(from)};
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        if (mt.eq_mod(s.mod, to)) return s.cell;
        if (s.steps >= max_steps) continue;
        std::vector<GenId> w = mt.normal_word(s.mod);
        if (rng) std::shuffle(order.begin(), order.end(), *rng);
        for (std::size_t c : order) {
            const CellGen& g = mt.cell_gen(static_cast<GenId>(c));
            const auto& lhs = g.src.word;
            if (lhs.size() > w.size()) continue;
            for (std::size_t p = 0; p + lhs.size() <= w.size(); ++p) {
                if (!std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<std::ptrdiff_t>(p))) continue;
                if (mode_at(mt, from.src, w, p) != g.src.src) continue;
                std::vector<GenId> inner(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
                std::vector<GenId> outer(w.begin() + static_cast<std::ptrdiff_t>(p + lhs.size()), w.end());
                auto P = word_modality(mt, from.src, inner);
                auto Q = word_modality(mt, g.src.tgt, outer);
                if (!P || !Q) continue;
                Cell2 step = whisker_left(*Q, whisker_right(gen_cell(mt, static_cast<GenId>(c)), *P));
                Cell2 next = vcomp(mt, step, s.cell);
                if (!seen.insert(mt.normal_word(next.tgt())).second) continue;
                queue.push_back({next.tgt(), next, s.steps + 1});
            }
        }
    }
    return std::nullopt;
}

Term quote_type(const CheckCtx& ctx, const TypeValue& t) {
    return decode_nfty(reify_ty(ctx.theory(), ctx.depth(), ctx.mode(), t));
}

// ---------------------------------------------------------------------------
// Substitution (independent of the evaluator)

namespace {

Term lift_vars(const Term& t, std::ptrdiff_t by, std::size_t cutoff) {
    if (t->tag == Tag::Var) {
        if (t->index < cutoff) return t;
        return tm::var(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(t->index) + by), t->cell);
    }
    if (t->kids.empty()) return t;
    std::vector<Term> kids;
    for (std::size_t i = 0; i < t->kids.size(); ++i) kids.push_back(lift_vars(t->kids[i], by, cutoff + binds(t->tag, i)));
    return with_kids(t, std::move(kids));
}

// Replaces variable j by s (already valid at this depth); `ok` vets each occurrence.
Term replace(const Term& t, std::size_t j, const Term& s, const std::function<bool(const Cell2&)>& ok) {
    if (t->tag == Tag::Var) {
        if (t->index != j) return t;
        if (!ok(t->cell)) throw GenExhausted("occurrence through a non-identity key");
        return s;
    }
    if (t->kids.empty()) return t;
    std::vector<Term> kids;
    for (std::size_t i = 0; i < t->kids.size(); ++i) {
        std::size_t b = binds(t->tag, i);
        kids.push_back(replace(t->kids[i], j + b, b ? lift_vars(s, static_cast<std::ptrdiff_t>(b), 0) : s, ok));
    }
    return with_kids(t, std::move(kids));
}

Term substitute_top(const Term& body, const Term& arg, const std::function<bool(const Cell2&)>& ok) {
    return lift_vars(replace(body, 0, lift_vars(arg, 1, 0), ok), -1, 0);
}

}  // namespace

std::optional<Term> subst_top(const ModeTheory& mt, const Term& body, const Term& arg) {
    auto ok = [&](const Cell2& c) {
        return c.is_identity() || (mt.eq_mod(c.src(), c.tgt()) && mt.eq_cell(c, id_cell(c.src())));
    };
    try {
        return substitute_top(body, arg, ok);
    } catch (const GenExhausted&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

std::optional<Term> oracle_step(const Term& t) {
    auto any = [](const Cell2&) { return true; };
    auto in_kid = [&](std::size_t i) -> std::optional<Term> {
        auto s = oracle_step(t->kids[i]);
        if (!s) return std::nullopt;
        std::vector<Term> kids = t->kids;
        kids[i] = *s;
        return with_kids(t, std::move(kids));
    };
    switch (t->tag) {
        case Tag::Ann:
            return t->kids[0];
        case Tag::App:
            if (t->kids[0]->tag == Tag::Lam) return substitute_top(t->kids[0]->kids[0], t->kids[1], any);
            if (auto s = in_kid(0)) return s;
            return in_kid(1);
        case Tag::Fst:
        case Tag::Snd:
            if (t->kids[0]->tag == Tag::Pair) return t->kids[0]->kids[t->tag == Tag::Fst ? 0 : 1];
            return in_kid(0);
        case Tag::If:
            if (t->kids[3]->tag == Tag::True) return t->kids[1];
            if (t->kids[3]->tag == Tag::False) return t->kids[2];
            if (auto s = in_kid(3)) return s;
            if (auto s = in_kid(1)) return s;
            return in_kid(2);
        case Tag::LetMod:
            if (t->kids[1]->tag == Tag::MkBox) return substitute_top(t->kids[2], t->kids[1]->kids[0], any);
            if (auto s = in_kid(1)) return s;
            return in_kid(2);
        case Tag::Lam:
        case Tag::MkBox:
            return in_kid(0);
        case Tag::Pair:
            if (auto s = in_kid(0)) return s;
            return in_kid(1);
        default:
            return std::nullopt;
    }
}

}  // namespace

OracleResult oracle_eval_bool(const Term& t, std::size_t fuel) {
    Term cur = t;
    for (std::size_t steps = 0;; ++steps) {
        if (cur->tag == Tag::True) return {OracleVerdict::True, steps};
        if (cur->tag == Tag::False) return {OracleVerdict::False, steps};
        if (steps == fuel) return {OracleVerdict::OutOfFuel, steps};
        auto next = oracle_step(cur);
        if (!next) return {OracleVerdict::Stuck, steps};
        cur = *next;
    }
}

std::string verdict_name(OracleVerdict v) {
    switch (v) {
        case OracleVerdict::True: return "true";
        case OracleVerdict::False: return "false";
        case OracleVerdict::OutOfFuel: return "out of fuel";
        case OracleVerdict::Stuck: return "stuck";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Generator

Generator::Generator(const ModeTheory& mt, GenConfig cfg) : mt_(&mt), cfg_(std::move(cfg)), rng_(cfg_.seed) {}

std::size_t Generator::pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

bool Generator::coin(unsigned num, unsigned den) { return pick(den) < num; }

Modality Generator::modality(ModeId tgt, std::size_t max_len) {
    Modality m = Modality::identity(tgt);
    if (cfg_.weights.modal == 0 || coin(1, 2)) return m;
    std::size_t len = 1 + pick(max_len);
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<GenId> cands;
        for (std::size_t g = 0; g < mt_->presentation().modalities.size(); ++g) {
            if (mt_->modality_gen(static_cast<GenId>(g)).tgt == m.src) cands.push_back(static_cast<GenId>(g));
        }
        if (cands.empty()) break;
        m = compose_mod(m, mt_->gen(cands[pick(cands.size())]));
    }
    return m;
}

namespace {
struct Weighted {
    unsigned weight;
    std::function<void()> run;
};
void choose(Generator& g, std::vector<Weighted> opts) {
    unsigned total = 0;
    for (const auto& o : opts) total += o.weight;
    std::size_t r = g.pick(total);
    for (const auto& o : opts) {
        if (r < o.weight) {
            o.run();
            return;
        }
        r -= o.weight;
    }
}
}  // namespace

Term Generator::type(const CheckCtx& ctx, std::size_t size) {
    const auto& w = cfg_.weights;
    Term out = tm::boolean();
    bool has_modal = false;
    for (const auto& gen : mt_->presentation().modalities) has_modal |= gen.tgt == ctx.mode();
    std::vector<Weighted> opts{{3, [&] { out = tm::boolean(); }}};
    if (size > 2) {
        opts.push_back({2, [&] {
                            Modality mu = modality(ctx.mode());
                            CheckCtx locked = ctx.lock(mu);
                            Term a = type(locked, size / 2);
                            CheckCtx inner = ctx.extend(eval_ty(*mt_, locked.env(), a), {mu});
                            out = tm::pi(mu, a, type(inner, size / 2));
                        }});
        opts.push_back({1, [&] {
                            Term a = type(ctx, size / 2);
                            CheckCtx inner = ctx.extend(eval_ty(*mt_, ctx.env(), a), {});
                            out = tm::sig(a, type(inner, size / 2));
                        }});
    }
    if (size > 1 && has_modal && w.modal) {
        opts.push_back({w.modal, [&] {
                            Modality mu = modality(ctx.mode());
                            out = tm::mod(mu, type(ctx.lock(mu), size - 1));
                        }});
    }
    if (w.codes) {
        opts.push_back({w.codes, [&] { out = tm::uni(); }});
        if (size > 1) {
            opts.push_back({w.codes, [&] {
                                try {
                                    out = tm::dec(term(ctx, val::uni(), size - 1));
                                } catch (const GenExhausted&) {
                                    out = tm::boolean();
                                }
                            }});
        }
    }
    choose(*this, std::move(opts));
    return out;
}

Term Generator::term(const CheckCtx& ctx, const TypeValue& goal, std::size_t size) {
    const auto& w = cfg_.weights;
    std::vector<int> kinds;
    for (unsigned i = 0; i < w.intro; ++i) kinds.push_back(0);
    for (unsigned i = 0; i < w.elim; ++i) kinds.push_back(1);
    if (size > 3) {
        for (unsigned i = 0; i < w.redex; ++i) kinds.push_back(2);
    }
    int first = kinds[pick(kinds.size())];
    std::vector<int> order{first};
    for (int k : {1, 2, 0}) {
        if (k != first) order.push_back(k);
    }
    for (int k : order) {
        if (k == 1) {
            if (auto t = elim(ctx, goal, size)) return *t;
        } else if (k == 2) {
            if (size <= 3 || w.redex == 0) continue;
            if (auto t = redex(ctx, goal, size)) return *t;
        } else {
            try {
                return intro(ctx, goal, size);
            } catch (const GenExhausted&) {
            }
        }
    }
    throw GenExhausted("no inhabitant of " + show_type(ctx, goal));
}

Term Generator::intro(const CheckCtx& ctx, const TypeValue& goal, std::size_t size) {
    std::size_t sub = size > 1 ? size - 1 : 1;
    switch (goal->kind) {
        case VKind::Bool:
            return coin(1, 2) ? tm::tt() : tm::ff();
        case VKind::Pi: {
            CheckCtx inner = ctx.extend(goal->a, {goal->mu});
            return tm::lam(goal->mu, term(inner, instantiate(*mt_, goal->cl, inner.newest()), sub));
        }
        case VKind::Sig: {
            Term a = term(ctx, goal->a, std::max<std::size_t>(1, sub / 2));
            TypeValue bt = instantiate(*mt_, goal->cl, eval(*mt_, ctx.env(), a));
            return tm::pair(a, term(ctx, bt, std::max<std::size_t>(1, sub / 2)));
        }
        case VKind::Mod:
            return tm::mkbox(goal->mu, term(ctx.lock(goal->mu), goal->a, sub));
        case VKind::Uni: {
            Term out = tm::boolcode();
            if (size <= 2) return out;
            std::vector<Weighted> opts{{2, [&] {}}};
            opts.push_back({2, [&] {
                                Modality mu = modality(ctx.mode());
                                CheckCtx locked = ctx.lock(mu);
                                Term a = term(locked, val::uni(), sub / 2);
                                CheckCtx inner = ctx.extend(val::dec(eval(*mt_, locked.env(), a)), {mu});
                                out = tm::picode(mu, a, term(inner, val::uni(), sub / 2));
                            }});
            opts.push_back({1, [&] {
                                Term a = term(ctx, val::uni(), sub / 2);
                                CheckCtx inner = ctx.extend(val::dec(eval(*mt_, ctx.env(), a)), {});
                                out = tm::sigcode(a, term(inner, val::uni(), sub / 2));
                            }});
            if (cfg_.weights.modal) {
                opts.push_back({1, [&] {
                                    Modality mu = modality(ctx.mode());
                                    out = tm::modcode(mu, term(ctx.lock(mu), val::uni(), sub));
                                }});
            }
            choose(*this, std::move(opts));
            return out;
        }
        case VKind::Dec:
            if (TypeValue u = unfold(goal->a)) return tm::deciso_inv(term(ctx, u, sub));
            throw GenExhausted("Dec of a neutral code has no introduction form");
        default:
            throw GenExhausted("not a type");
    }
}

std::optional<Term> Generator::elim(const CheckCtx& ctx, const TypeValue& goal, std::size_t size) {
    struct Cand {
        std::size_t k;
        Cell2 cell;
    };
    std::vector<Cand> cands;
    for (std::size_t k = 0; k < ctx.depth(); ++k) {
        auto cell = find_cell(*mt_, var_annotation(ctx.shape(), k), locks_of(ctx.shape(), k), &rng_, 2);
        if (cell) cands.push_back({k, *cell});
    }
    std::shuffle(cands.begin(), cands.end(), rng_);
    if (cands.size() > 4) cands.resize(4);
    // Sub-terms shrink strictly; with no budget left only a bare variable fits.
    std::size_t small = size / 3;
    for (const auto& c : cands) {
        Term h = tm::var(c.k, c.cell);
        TypeValue t = lookup_var(ctx, c.k, c.cell);
        try {
            for (int step = 0; step < 4; ++step) {
                if (convert_ty(ctx, t, goal)) return h;
                if (small == 0 && t->kind != VKind::Sig && t->kind != VKind::Dec) break;
                if (t->kind == VKind::Pi) {
                    CheckCtx locked = ctx.lock(t->mu);
                    Term arg = term(locked, t->a, small);
                    TypeValue next = instantiate(*mt_, t->cl, eval(*mt_, locked.env(), arg));
                    h = tm::app(t->mu, h, arg);
                    t = next;
                } else if (t->kind == VKind::Sig) {
                    if (coin(1, 2)) {
                        h = tm::fst(h);
                        t = t->a;
                    } else {
                        t = instantiate(*mt_, t->cl, do_fst(*mt_, eval(*mt_, ctx.env(), h)));
                        h = tm::snd(h);
                    }
                } else if (t->kind == VKind::Dec && unfold(t->a)) {
                    h = tm::deciso(h);
                    t = unfold(t->a);
                } else if (t->kind == VKind::Bool) {
                    Term motive = quote_type(ctx.extend(val::boolean(), {}), goal);
                    return tm::ite(motive, term(ctx, goal, small), term(ctx, goal, small), h);
                } else if (t->kind == VKind::Mod) {
                    Modality id = Modality::identity(ctx.mode());
                    Term motive = quote_type(ctx.extend(t, {id}), goal);
                    CheckCtx inner = ctx.extend(t->a, {id, t->mu});
                    return tm::letmod(id, t->mu, motive, h, term(inner, goal, small));
                } else {
                    break;
                }
            }
        } catch (const GenExhausted&) {
        }
    }
    return std::nullopt;
}

std::optional<Term> Generator::redex(const CheckCtx& ctx, const TypeValue& goal, std::size_t size) {
    std::size_t part = std::max<std::size_t>(1, size / 3);
    std::optional<Term> out;
    std::vector<Weighted> opts;
    opts.push_back({3, [&] {
                        Modality mu = modality(ctx.mode());
                        CheckCtx locked = ctx.lock(mu);
                        Term a = type(locked, 3);
                        TypeValue av = eval_ty(*mt_, locked.env(), a);
                        Term arg = term(locked, av, part);
                        CheckCtx inner = ctx.extend(av, {mu});
                        Term body = term(inner, goal, part);
                        Term fn = tm::ann(tm::lam(mu, body), tm::pi(mu, a, quote_type(inner, goal)));
                        out = tm::app(mu, fn, arg);
                    }});
    opts.push_back({2, [&] {
                        Term g = quote_type(ctx, goal);
                        if (coin(1, 2)) {
                            CheckCtx inner = ctx.extend(goal, {});
                            Term b = type(inner, 2);
                            Term a = term(ctx, goal, part);
                            TypeValue bv = instantiate(*mt_, Closure{ctx.env(), b, 0}, eval(*mt_, ctx.env(), a));
                            out = tm::fst(tm::ann(tm::pair(a, term(ctx, bv, part)), tm::sig(g, b)));
                        } else {
                            Term a = type(ctx, 2);
                            TypeValue av = eval_ty(*mt_, ctx.env(), a);
                            Term first = term(ctx, av, part);
                            Term cod = quote_type(ctx.extend(av, {}), goal);
                            out = tm::snd(tm::ann(tm::pair(first, term(ctx, goal, part)), tm::sig(a, cod)));
                        }
                    }});
    opts.push_back({3, [&] {
                        Term scrut = coin(1, 2) ? (coin(1, 2) ? tm::tt() : tm::ff()) : term(ctx, val::boolean(), part);
                        Term motive = quote_type(ctx.extend(val::boolean(), {}), goal);
                        out = tm::ite(motive, term(ctx, goal, part), term(ctx, goal, part), scrut);
                    }});
    if (cfg_.weights.modal) {
        opts.push_back({2, [&] {
                            Modality mu = modality(ctx.mode());
                            Modality nu = modality(mu.src);
                            CheckCtx l2 = ctx.lock(mu).lock(nu);
                            Term a = type(l2, 3);
                            TypeValue av = eval_ty(*mt_, l2.env(), a);
                            Term scrut = tm::mkbox(nu, tm::ann(term(l2, av, part), a));
                            Term motive = quote_type(ctx.extend(val::mod(nu, av), {mu}), goal);
                            CheckCtx inner = ctx.extend(av, {mu, nu});
                            out = tm::letmod(mu, nu, motive, scrut, term(inner, goal, part));
                        }});
    }
    if (cfg_.weights.codes) {
        if (goal->kind == VKind::Bool) {
            opts.push_back({1, [&] {
                                Term t = term(ctx, goal, part);
                                out = tm::deciso(tm::ann(tm::deciso_inv(t), tm::dec(tm::boolcode())));
                            }});
        } else if (goal->kind == VKind::Dec && unfold(goal->a)) {
            opts.push_back({2, [&] {
                                Term t = term(ctx, goal, part);
                                out = tm::deciso_inv(tm::deciso(tm::ann(t, quote_type(ctx, goal))));
                            }});
        }
    }
    try {
        choose(*this, std::move(opts));
    } catch (const GenExhausted&) {
        return std::nullopt;
    }
    return out;
}

Telescope Generator::telescope(ModeId base, std::size_t vars) {
    Telescope th(base);
    CheckCtx ctx(*mt_, base);
    for (std::size_t i = 0; i < vars; ++i) {
        if (cfg_.weights.modal && coin(1, 4)) {
            Modality mu = modality(th.mode());
            if (!mu.is_identity()) {
                th = ctx_lock(th, mu);
                ctx = ctx.lock(mu);
            }
        }
        Modality mu = modality(th.mode());
        CheckCtx locked = ctx.lock(mu);
        Term a = type(locked, 5);
        th = ctx_extend(th, mu, a);
        ctx = ctx.extend(eval_ty(*mt_, locked.env(), a), {mu});
    }
    return th;
}

Term gen_type(const GenConfig& cfg, const CheckCtx& ctx) {
    Generator g(ctx.theory(), cfg);
    return g.type(ctx, cfg.max_size / 4 + 1);
}

Term gen_typed_term(const GenConfig& cfg, const CheckCtx& ctx, const TypeValue& type) {
    Generator g(ctx.theory(), cfg);
    return g.term(ctx, type, cfg.max_size);
}

// ---------------------------------------------------------------------------
// Definitional-equality tables

std::vector<Connective> all_connectives() {
    return {Connective::PiBeta,    Connective::PiEta,     Connective::SigBeta,     Connective::SigEta,
            Connective::BoolBeta, Connective::ModalBeta, Connective::DecIsoCancel};
}

std::string connective_name(Connective c) {
    switch (c) {
        case Connective::PiBeta: return "Pi beta";
        case Connective::PiEta: return "Pi eta";
        case Connective::SigBeta: return "Sigma beta";
        case Connective::SigEta: return "Sigma eta";
        case Connective::BoolBeta: return "Bool beta";
        case Connective::ModalBeta: return "modal beta";
        case Connective::DecIsoCancel: return "iso cancellation";
    }
    return "?";
}

namespace {

struct Curated {
    const char* theory;
    const char* mode;
    std::vector<std::pair<const char*, const char*>> tele;  // name, "mod | type" or "lock mod"
    const char* lhs;
    const char* rhs;
    const char* type;
};

// Builds a telescope from "name : mu | A" entries ("@lock mu" for locks).
EqPair build_curated(const Curated& c, Connective conn) {
    auto mt = shipped_theory(c.theory);
    Telescope th(*mt->find_mode(c.mode));
    std::vector<std::string> names;
    for (const auto& [name, entry] : c.tele) {
        std::string e = entry;
        if (std::string(name) == "@lock") {
            Term probe = parse_type(*mt, "Mod " + e + " Bool", th, names);
            th = ctx_lock(th, probe->mu);
            continue;
        }
        auto bar = e.find('|');
        std::string mod = e.substr(0, bar);
        std::string ty = e.substr(bar + 1);
        Term probe = parse_type(*mt, "Mod " + mod + " Bool", th, names);
        Modality mu = probe->mu;
        Term a = parse_type(*mt, ty, ctx_lock(th, mu), names);
        th = ctx_extend(th, mu, a);
        names.push_back(name);
    }
    EqPair p;
    p.theory = mt;
    p.theta = th;
    p.lhs = parse_term(*mt, c.lhs, th, names);
    p.rhs = parse_term(*mt, c.rhs, th, names);
    p.type = parse_type(*mt, c.type, th, names);
    p.label = connective_name(conn) + " [" + c.theory + "] " + c.lhs;
    return p;
}

std::vector<Curated> curated(Connective c) {
    switch (c) {
        case Connective::PiBeta:
            return {
                {"trivial", "m", {{"b", "id | Bool"}},
                 "(\\x. if x return _. Bool then false else true : Bool -> Bool) b",
                 "if b return _. Bool then false else true", "Bool"},
                {"trivial", "m", {{"A", "id | Uni"}, {"a", "id | Dec A"}},
                 "(\\x. x : Pi (x : Dec A) -> Dec A) a", "a", "Dec A"},
                {"walking", "m", {{"y", "mu | Bool"}},
                 "(\\(mu | x). box[mu] x : Pi (mu | x : Bool) -> Mod mu Bool) @[mu] y", "box[mu] y", "Mod mu Bool"},
                {"pointed", "m", {{"x", "id | Bool"}},
                 "(\\(l | z). box[l] z : Pi (l | z : Bool) -> Mod l Bool) @[l] x^{next}", "box[l] x^{next}",
                 "Mod l Bool"},
                {"adjoint", "b", {{"y", "f.g | Bool"}},
                 "(\\(f.g | x). x^{eps} : Pi (f.g | x : Bool) -> Bool) @[f.g] y", "y^{eps}", "Bool"},
            };
        case Connective::PiEta:
            return {
                {"trivial", "m", {{"f", "id | Bool -> Bool"}}, "f", "\\x. f x", "Bool -> Bool"},
                {"trivial", "m", {{"A", "id | Uni"}, {"f", "id | Pi (x : Dec A) -> Dec A"}}, "f", "\\x. f x",
                 "Pi (x : Dec A) -> Dec A"},
                {"walking", "m", {{"f", "id | Pi (mu | x : Bool) -> Bool"}}, "f", "\\(mu | x). f @[mu] x",
                 "Pi (mu | x : Bool) -> Bool"},
                {"pointed", "m", {{"f", "id | Pi (l | x : Bool) -> Bool"}}, "f", "\\(l | x). f @[l] x",
                 "Pi (l | x : Bool) -> Bool"},
                {"adjoint", "a", {{"f", "id | Pi (g | x : Bool) -> Bool"}}, "f", "\\(g | x). f @[g] x",
                 "Pi (g | x : Bool) -> Bool"},
            };
        case Connective::SigBeta:
            return {
                {"trivial", "m", {}, "fst ((true, false) : Bool * Bool)", "true", "Bool"},
                {"trivial", "m", {}, "snd ((true, false) : Bool * Bool)", "false", "Bool"},
                {"walking", "m", {{"y", "mu | Bool"}}, "fst ((box[mu] y, true) : Mod mu Bool * Bool)", "box[mu] y",
                 "Mod mu Bool"},
                {"trivial", "m", {}, "snd ((code-bool, iso-inv true) : Sig (A : Uni) * Dec A)", "iso-inv true",
                 "Dec code-bool"},
            };
        case Connective::SigEta:
            return {
                {"trivial", "m", {{"p", "id | Bool * Bool"}}, "p", "(fst p, snd p)", "Bool * Bool"},
                {"trivial", "m", {{"p", "id | Sig (A : Uni) * Dec A"}}, "p", "(fst p, snd p)",
                 "Sig (A : Uni) * Dec A"},
                {"walking", "m", {{"p", "id | Mod mu Bool * Bool"}}, "p", "(fst p, snd p)", "Mod mu Bool * Bool"},
                {"pointed", "m", {{"p", "l | Bool * Bool"}, {"@lock", "l"}}, "p", "(fst p, snd p)", "Bool * Bool"},
            };
        case Connective::BoolBeta:
            return {
                {"trivial", "m", {}, "if true return _. Bool then false else true", "false", "Bool"},
                {"trivial", "m", {}, "if false return _. Bool then false else true", "true", "Bool"},
                {"trivial", "m", {{"A", "id | Uni"}}, "if true return z. Uni then A else code-bool", "A", "Uni"},
                {"walking", "m", {{"y", "mu | Bool"}},
                 "if false return z. Mod mu Bool then box[mu] true else box[mu] y", "box[mu] y", "Mod mu Bool"},
            };
        case Connective::ModalBeta:
            return {
                {"walking", "m", {{"y", "mu | Bool"}},
                 "letbox[id|mu] x <- box[mu] y return z. Mod mu Bool in box[mu] x", "box[mu] y", "Mod mu Bool"},
                {"walking", "m", {{"y", "mu | Bool"}},
                 "letbox[mu|id@n] u <- box[id@n] y return z. Mod mu Bool in box[mu] u", "box[mu] y", "Mod mu Bool"},
                {"pointed", "m", {{"x", "id | Bool"}},
                 "letbox[id|l] u <- box[l] x^{next} return z. Mod l Bool in box[l] u", "box[l] x^{next}",
                 "Mod l Bool"},
                {"adjoint", "a", {{"y", "g | Bool"}},
                 "letbox[id|g] u <- box[g] y return z. Mod g Bool in box[g] u", "box[g] y", "Mod g Bool"},
                {"trivial", "m", {}, "letbox[id|id] x <- box[id] code-bool return z. Uni in x", "code-bool", "Uni"},
            };
        case Connective::DecIsoCancel:
            return {
                {"trivial", "m", {}, "iso (iso-inv true : Dec code-bool)", "true", "Bool"},
                {"trivial", "m", {{"a", "id | Dec code-bool"}}, "iso-inv (iso a)", "a", "Dec code-bool"},
                {"trivial", "m", {{"f", "id | Dec (code-pi (x : code-bool) -> code-bool)"}}, "iso-inv (iso f)", "f",
                 "Dec (code-pi (x : code-bool) -> code-bool)"},
                {"trivial", "m", {{"g", "id | Pi (x : Dec code-bool) -> Dec code-bool"}},
                 "iso (iso-inv g : Dec (code-pi (x : code-bool) -> code-bool))", "g",
                 "Pi (x : Dec code-bool) -> Dec code-bool"},
                {"walking", "m", {{"b", "id | Dec (code-mod mu code-bool)"}}, "iso-inv (iso b)", "b",
                 "Dec (code-mod mu code-bool)"},
                {"walking", "m", {}, "iso (iso-inv (box[mu] (iso-inv true)) : Dec (code-mod mu code-bool))",
                 "box[mu] (iso-inv true)", "Mod mu (Dec code-bool)"},
            };
    }
    return {};
}

// One generated instance, or nothing when the draw is unusable.
std::optional<EqPair> generated_pair(Connective c, Generator& g, std::shared_ptr<const ModeTheory> mt) {
    const ModeTheory& th = *mt;
    Telescope theta = g.telescope(static_cast<ModeId>(g.pick(th.mode_count())), g.pick(3));
    CheckCtx ctx = CheckCtx::of(th, theta);
    TypeValue goal = eval_ty(th, ctx.env(), g.type(ctx, 4));
    auto env = [&](const CheckCtx& k, const Term& t) { return eval(th, k.env(), t); };
    EqPair p;
    p.theory = mt;
    p.theta = theta;
    p.type = quote_type(ctx, goal);
    switch (c) {
        case Connective::PiBeta: {
            Modality mu = g.modality(ctx.mode());
            CheckCtx locked = ctx.lock(mu);
            Term a = g.type(locked, 3);
            TypeValue av = eval_ty(th, locked.env(), a);
            Term arg = tm::ann(g.term(locked, av, 4), a);
            CheckCtx inner = ctx.extend(av, {mu});
            Term body = g.term(inner, goal, 6);
            auto rhs = subst_top(th, body, arg);
            if (!rhs) return std::nullopt;
            p.lhs = tm::app(mu, tm::ann(tm::lam(mu, body), tm::pi(mu, a, quote_type(inner, goal))), arg);
            p.rhs = *rhs;
            break;
        }
        case Connective::PiEta: {
            Modality mu = g.modality(ctx.mode());
            CheckCtx locked = ctx.lock(mu);
            Term a = g.type(locked, 3);
            TypeValue av = eval_ty(th, locked.env(), a);
            CheckCtx inner = ctx.extend(av, {mu});
            Term fty = tm::pi(mu, a, quote_type(inner, goal));
            Term f = tm::ann(g.term(ctx, env(ctx, fty), 6), fty);
            p.type = fty;
            p.lhs = f;
            p.rhs = tm::lam(mu, tm::app(mu, shift(f, 1), tm::var(0, id_cell(mu))));
            break;
        }
        case Connective::SigBeta: {
            CheckCtx inner = ctx.extend(goal, {});
            Term b = g.type(inner, 2);
            Term a = g.term(ctx, goal, 5);
            TypeValue bv = instantiate(th, Closure{ctx.env(), b, 0}, env(ctx, a));
            p.lhs = tm::fst(tm::ann(tm::pair(a, g.term(ctx, bv, 4)), tm::sig(p.type, b)));
            p.rhs = a;
            break;
        }
        case Connective::SigEta: {
            CheckCtx inner = ctx.extend(goal, {});
            Term sty = tm::sig(p.type, g.type(inner, 3));
            Term q = tm::ann(g.term(ctx, env(ctx, sty), 6), sty);
            p.type = sty;
            p.lhs = q;
            p.rhs = tm::pair(tm::fst(q), tm::snd(q));
            break;
        }
        case Connective::BoolBeta: {
            bool which = g.coin(1, 2);
            Term t = g.term(ctx, goal, 5);
            Term f = g.term(ctx, goal, 5);
            Term motive = quote_type(ctx.extend(val::boolean(), {}), goal);
            p.lhs = tm::ite(motive, t, f, which ? tm::tt() : tm::ff());
            p.rhs = which ? t : f;
            break;
        }
        case Connective::ModalBeta: {
            Modality mu = g.modality(ctx.mode());
            Modality nu = g.modality(mu.src);
            CheckCtx l2 = ctx.lock(mu).lock(nu);
            Term a = g.type(l2, 3);
            TypeValue av = eval_ty(th, l2.env(), a);
            Term m = tm::ann(g.term(l2, av, 4), a);
            CheckCtx inner = ctx.extend(av, {mu, nu});
            Term body = g.term(inner, goal, 6);
            auto rhs = subst_top(th, body, m);
            if (!rhs) return std::nullopt;
            Term motive = quote_type(ctx.extend(val::mod(nu, av), {mu}), goal);
            p.lhs = tm::letmod(mu, nu, motive, tm::mkbox(nu, m), body);
            p.rhs = *rhs;
            break;
        }
        case Connective::DecIsoCancel: {
            Term code = g.term(ctx, val::uni(), 5);
            TypeValue cv = env(ctx, code);
            TypeValue u = unfold(cv);
            if (!u) return std::nullopt;
            if (g.coin(1, 2)) {
                Term t = g.term(ctx, u, 5);
                p.type = quote_type(ctx, u);
                p.lhs = tm::deciso(tm::ann(tm::deciso_inv(t), tm::dec(code)));
                p.rhs = t;
            } else {
                Term e = tm::ann(g.term(ctx, val::dec(cv), 5), tm::dec(code));
                p.type = tm::dec(code);
                p.lhs = tm::deciso_inv(tm::deciso(e));
                p.rhs = e;
            }
            break;
        }
    }
    p.label = connective_name(c) + " [" + th.name() + "] generated";
    return p;
}

}  // namespace

std::vector<EqPair> beta_eta_pairs(Connective c, std::size_t generated, std::uint64_t seed) {
    std::vector<EqPair> out;
    for (const auto& cur : curated(c)) out.push_back(build_curated(cur, c));
    auto names = shipped_theory_names();
    GenConfig cfg;
    cfg.seed = seed * 7919 + static_cast<std::uint64_t>(c);
    std::mt19937_64 pick_theory(cfg.seed);
    std::size_t made = 0;
    for (std::size_t attempt = 0; made < generated && attempt < generated * 20; ++attempt) {
        auto mt = shipped_theory(names[attempt % names.size()]);
        cfg.seed = pick_theory();
        Generator g(*mt, cfg);
        try {
            if (auto p = generated_pair(c, g, mt)) {
                out.push_back(std::move(*p));
                ++made;
            }
        } catch (const GenExhausted&) {
        }
    }
    return out;
}

std::string head_signature(const Nf& u) {
    std::string path;
    Form cur = u;
    for (;;) {
        switch (cur->kind) {
            case NfKind::Lam: path += "lam/"; cur = cur->kid(0); continue;
            case NfKind::Pair: path += "pair/"; cur = cur->kid(0); continue;
            case NfKind::MkBox: path += "box/"; cur = cur->kid(0); continue;
            case NfKind::DecIsoInv: path += "iso-inv/"; cur = cur->kid(0); continue;
            case NfKind::Inj: {
                Form e = cur->kid(0);
                path += "ne:";
                for (;;) {
                    switch (e->kind) {
                        case NfKind::Var: return path + "var" + std::to_string(e->index);
                        case NfKind::App: path += "app."; e = e->kid(0); continue;
                        case NfKind::Proj1: path += "fst."; e = e->kid(0); continue;
                        case NfKind::Proj2: path += "snd."; e = e->kid(0); continue;
                        case NfKind::BoolRec: path += "if."; e = e->kid(1); continue;
                        case NfKind::LetMod: path += "letbox."; e = e->kid(1); continue;
                        case NfKind::DecIso: path += "iso."; e = e->kid(0); continue;
                        default: return path + "?";
                    }
                }
            }
            case NfKind::True: return path + "true";
            case NfKind::False: return path + "false";
            case NfKind::FnCode: return path + "code-pi";
            case NfKind::ProdCode: return path + "code-sig";
            case NfKind::BoolCode: return path + "code-bool";
            case NfKind::ModifyCode: return path + "code-mod";
            default: return path + "?";
        }
    }
}

// ---------------------------------------------------------------------------
// η-longness audit

namespace {

TypeValue audit_ne(const CheckCtx& ctx, const Ne& e, EtaAudit& out);
void audit_ty(const CheckCtx& ctx, const NfTy& t, EtaAudit& out);

void audit_nf(const CheckCtx& ctx, const TypeValue& type, const Nf& u, EtaAudit& out) {
    const auto& mt = ctx.theory();
    switch (u->kind) {
        case NfKind::Inj: {
            ++out.injections;
            TypeValue got = audit_ne(ctx, u->kid(0), out);
            bool bad = type->kind == VKind::Pi || type->kind == VKind::Sig || got->kind == VKind::Pi ||
                       got->kind == VKind::Sig;
            if (bad) {
                ++out.violations;
                if (out.examples.size() < 5) out.examples.push_back(show_form(mt, u));
            }
            return;
        }
        case NfKind::Lam: {
            if (type->kind != VKind::Pi) throw DomainError("audit: lambda at a non-function type");
            CheckCtx inner = ctx.extend(type->a, {type->mu});
            audit_nf(inner, instantiate(mt, type->cl, inner.newest()), u->kid(0), out);
            return;
        }
        case NfKind::Pair: {
            if (type->kind != VKind::Sig) throw DomainError("audit: pair at a non-pair type");
            audit_nf(ctx, type->a, u->kid(0), out);
            Value a = eval(mt, ctx.env(), decode_nf(u->kid(0)));
            audit_nf(ctx, instantiate(mt, type->cl, a), u->kid(1), out);
            return;
        }
        case NfKind::MkBox:
            if (type->kind != VKind::Mod) throw DomainError("audit: box at a non-modal type");
            audit_nf(ctx.lock(u->mu), type->a, u->kid(0), out);
            return;
        case NfKind::DecIsoInv: {
            TypeValue v = type->kind == VKind::Dec ? unfold(type->a) : nullptr;
            if (!v) throw DomainError("audit: iso-inv at a non-canonical type");
            audit_nf(ctx, v, u->kid(0), out);
            return;
        }
        case NfKind::FnCode: {
            CheckCtx locked = ctx.lock(u->mu);
            audit_nf(locked, val::uni(), u->kid(0), out);
            Value a = eval(mt, locked.env(), decode_nf(u->kid(0)));
            audit_nf(ctx.extend(val::dec(a), {u->mu}), val::uni(), u->kid(1), out);
            return;
        }
        case NfKind::ProdCode: {
            audit_nf(ctx, val::uni(), u->kid(0), out);
            Value a = eval(mt, ctx.env(), decode_nf(u->kid(0)));
            audit_nf(ctx.extend(val::dec(a), {}), val::uni(), u->kid(1), out);
            return;
        }
        case NfKind::ModifyCode:
            audit_nf(ctx.lock(u->mu), val::uni(), u->kid(0), out);
            return;
        default:
            return;
    }
}

void audit_ty(const CheckCtx& ctx, const NfTy& t, EtaAudit& out) {
    const auto& mt = ctx.theory();
    switch (t->kind) {
        case NfKind::TyFn: {
            CheckCtx locked = ctx.lock(t->mu);
            audit_ty(locked, t->kid(0), out);
            TypeValue a = eval_ty(mt, locked.env(), decode_nfty(t->kid(0)));
            audit_ty(ctx.extend(a, {t->mu}), t->kid(1), out);
            return;
        }
        case NfKind::TyProd: {
            audit_ty(ctx, t->kid(0), out);
            TypeValue a = eval_ty(mt, ctx.env(), decode_nfty(t->kid(0)));
            audit_ty(ctx.extend(a, {}), t->kid(1), out);
            return;
        }
        case NfKind::TyModify:
            audit_ty(ctx.lock(t->mu), t->kid(0), out);
            return;
        case NfKind::TyDec:
            audit_nf(ctx, val::uni(), t->kid(0), out);
            return;
        default:
            return;
    }
}

TypeValue audit_ne(const CheckCtx& ctx, const Ne& e, EtaAudit& out) {
    const auto& mt = ctx.theory();
    switch (e->kind) {
        case NfKind::Var:
            return lookup_var(ctx, e->index, e->cell);
        case NfKind::App: {
            TypeValue f = audit_ne(ctx, e->kid(0), out);
            if (f->kind != VKind::Pi) throw DomainError("audit: application of a non-function");
            CheckCtx locked = ctx.lock(e->mu);
            audit_nf(locked, f->a, e->kid(1), out);
            return instantiate(mt, f->cl, eval(mt, locked.env(), decode_nf(e->kid(1))));
        }
        case NfKind::Proj1: {
            TypeValue p = audit_ne(ctx, e->kid(0), out);
            if (p->kind != VKind::Sig) throw DomainError("audit: projection of a non-pair");
            return p->a;
        }
        case NfKind::Proj2: {
            TypeValue p = audit_ne(ctx, e->kid(0), out);
            if (p->kind != VKind::Sig) throw DomainError("audit: projection of a non-pair");
            return instantiate(mt, p->cl, do_fst(mt, eval(mt, ctx.env(), decode_ne(e->kid(0)))));
        }
        case NfKind::BoolRec: {
            audit_ne(ctx, e->kid(1), out);
            CheckCtx inner = ctx.extend(val::boolean(), {});
            audit_ty(inner, e->kid(0), out);
            Closure motive{ctx.env(), decode_nfty(e->kid(0)), 0};
            audit_nf(ctx, instantiate(mt, motive, val::tt()), e->kid(2), out);
            audit_nf(ctx, instantiate(mt, motive, val::ff()), e->kid(3), out);
            return instantiate(mt, motive, eval(mt, ctx.env(), decode_ne(e->kid(1))));
        }
        case NfKind::LetMod: {
            CheckCtx locked = ctx.lock(e->mu);
            TypeValue s = audit_ne(locked, e->kid(1), out);
            if (s->kind != VKind::Mod) throw DomainError("audit: letbox of a non-modal value");
            audit_ty(ctx.extend(s, {e->mu}), e->kid(0), out);
            Closure motive{ctx.env(), decode_nfty(e->kid(0)), 1};
            CheckCtx inner = ctx.extend(s->a, {e->mu, s->mu});
            audit_nf(inner, instantiate(mt, motive, val::box(s->mu, inner.newest())), e->kid(2), out);
            return instantiate(mt, motive, eval(mt, locked.env(), decode_ne(e->kid(1))));
        }
        case NfKind::DecIso: {
            TypeValue s = audit_ne(ctx, e->kid(0), out);
            TypeValue u = s->kind == VKind::Dec ? unfold(s->a) : nullptr;
            if (!u) throw DomainError("audit: iso of a non-canonical code");
            return u;
        }
        default:
            throw DomainError("audit: not a neutral");
    }
}

}  // namespace

void audit_eta(const CheckCtx& ctx, const TypeValue& type, const Nf& u, EtaAudit& out) {
    ++out.forms;
    audit_nf(ctx, type, u, out);
}

}  // namespace mtt
