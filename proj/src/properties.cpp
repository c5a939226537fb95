#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mtt/harness.hpp"
#include "mtt/surface.hpp"

namespace mtt {

// ---------------------------------------------------------------------------
// Scoped neutrals and renamings

namespace {

TeleShape drop_last(const TeleShape& t) {
    TeleShape r = t;
    r.entries.pop_back();
    return r;
}

std::optional<Ne> some_var(Generator& g, const TeleShape& shape) {
    std::vector<std::size_t> ks(shape.var_count());
    for (std::size_t i = 0; i < ks.size(); ++i) ks[i] = i;
    std::shuffle(ks.begin(), ks.end(), g.rng());
    for (std::size_t k : ks) {
        auto cell = find_cell(g.theory(), var_annotation(shape, k), locks_of(shape, k), &g.rng(), 2);
        if (cell) return nf::var(k, *cell);
    }
    return std::nullopt;
}

Nf scoped_nf(Generator& g, const TeleShape& shape, std::size_t size) {
    if (size > 1 && g.coin(1, 3)) {
        Modality rho = g.modality(shape.mode());
        return nf::lam(rho, scoped_nf(g, shape.extend(rho), size - 1));
    }
    if (size > 1 && g.coin(1, 4)) {
        Modality mu = g.modality(shape.mode());
        return nf::mkbox(mu, scoped_nf(g, shape.lock(mu), size - 1));
    }
    try {
        return nf::inj(gen_scoped_ne(g, shape, size));
    } catch (const GenExhausted&) {
        return g.coin(1, 2) ? nf::tt() : nf::ff();
    }
}

// A random telescope skeleton with at least one variable.
TeleShape gen_shape(Generator& g, ModeId base, std::size_t entries) {
    TeleShape s{base, {}};
    for (std::size_t i = 0; i < entries || s.var_count() == 0; ++i) {
        Modality mu = g.modality(s.mode());
        s = g.coin(1, 3) && !mu.is_identity() ? s.lock(mu) : s.extend(mu);
    }
    return s;
}

ModeId any_mode(Generator& g) { return static_cast<ModeId>(g.pick(g.theory().mode_count())); }

// A few locks to put after a renaming's boundary.
std::vector<Modality> gen_locks(Generator& g, ModeId mode, std::size_t max) {
    std::vector<Modality> out;
    std::size_t n = g.pick(max + 1);
    for (std::size_t i = 0; i < n; ++i) {
        Modality mu = g.modality(mode);
        out.push_back(mu);
        mode = mu.src;
    }
    return out;
}

Renaming under_locks(const Renaming& r, const std::vector<Modality>& locks) {
    Renaming out = r;
    for (const auto& mu : locks) out = ren::lock(mu, out);
    return out;
}

TeleShape with_locks(TeleShape s, const std::vector<Modality>& locks) {
    for (const auto& mu : locks) s = s.lock(mu);
    return s;
}

// A variable of `shape` with an accessible cell, preferring index `want`.
std::pair<std::size_t, Cell2> var_at(Generator& g, const TeleShape& shape, std::size_t k) {
    auto cell = find_cell(g.theory(), var_annotation(shape, k), locks_of(shape, k), &g.rng(), 2);
    if (!cell) throw GenExhausted("variable not accessible");
    return {k, *cell};
}

}  // namespace

Ne gen_scoped_ne(Generator& g, const TeleShape& shape, std::size_t size) {
    const ModeTheory& mt = g.theory();
    if (size <= 1 || g.coin(1, 3)) {
        auto v = some_var(g, shape);
        if (!v) throw GenExhausted("no accessible variable");
        return *v;
    }
    switch (g.pick(6)) {
        case 0: {
            Modality mu = g.modality(shape.mode());
            Ne fn = gen_scoped_ne(g, shape, size / 2);
            return nf::app(mu, fn, scoped_nf(g, shape.lock(mu), size / 2));
        }
        case 1:
            return nf::proj1(gen_scoped_ne(g, shape, size - 1));
        case 2:
            return nf::proj2(gen_scoped_ne(g, shape, size - 1));
        case 3: {
            Ne s = gen_scoped_ne(g, shape, size / 2);
            TeleShape inner = shape.extend(Modality::identity(shape.mode()));
            NfTy motive = nf::ty_bool();
            if (auto v = some_var(g, inner)) motive = nf::ty_dec(nf::inj(*v));
            return nf::boolrec(motive, s, scoped_nf(g, shape, size / 3), scoped_nf(g, shape, size / 3));
        }
        case 4: {
            Modality mu = g.modality(shape.mode());
            Modality nu = g.modality(mu.src);
            Ne s = gen_scoped_ne(g, shape.lock(mu), size / 2);
            Modality rho = g.modality(shape.mode());
            NfTy motive = rho.is_identity() ? nf::ty_bool() : nf::ty_modify(rho, nf::ty_bool());
            (void)mt;
            return nf::letmod(mu, nu, motive, s, scoped_nf(g, shape.extend(compose_mod(mu, nu)), size / 2));
        }
        default:
            return nf::deciso(gen_scoped_ne(g, shape, size - 1));
    }
}

Renaming gen_renaming(Generator& g, const TeleShape& tgt, std::size_t depth) {
    const ModeTheory& mt = g.theory();
    std::vector<int> opts{0, 1};
    if (depth > 0) {
        opts.push_back(4);
        if (!tgt.entries.empty()) {
            opts.push_back(tgt.entries.back().is_lock ? 2 : 3);
            opts.push_back(tgt.entries.back().is_lock ? 2 : 3);
        }
    }
    switch (opts[g.pick(opts.size())]) {
        case 0:
            return ren::identity(tgt);
        case 1:
            return ren::weaken(tgt, g.modality(tgt.mode()));
        case 2: {
            const Modality nu = tgt.entries.back().mu;
            TeleShape base = drop_last(tgt);
            if (g.coin(1, 2)) return ren::lock(nu, gen_renaming(g, base, depth - 1));
            for (int tries = 0; tries < 4; ++tries) {
                Modality mu = g.modality(nu.tgt, 2);
                if (mu.src != nu.src) continue;
                if (auto a = find_cell(mt, nu, mu, &g.rng(), 2)) return ren::key(mt, base, *a);
            }
            return ren::lock(nu, gen_renaming(g, base, depth - 1));
        }
        case 3: {
            const Modality rho = tgt.entries.back().mu;
            Renaming r = gen_renaming(g, drop_last(tgt), depth - 1);
            if (g.coin(1, 2)) return ren::lift(mt, r, rho);
            TeleShape locked = r.src().lock(rho);
            std::size_t n = locked.var_count();
            for (std::size_t tries = 0; tries < n + 2 && n > 0; ++tries) {
                std::size_t j = g.pick(n);
                auto b = find_cell(mt, var_annotation(locked, j), locks_of(locked, j), &g.rng(), 2);
                if (b) return ren::ext(mt, r, rho, j, *b);
            }
            return ren::lift(mt, r, rho);
        }
        default: {
            Renaming s = gen_renaming(g, tgt, depth - 1);
            Renaming r = gen_renaming(g, s.src(), depth - 1);
            return ren::compose(mt, s, r);
        }
    }
}

std::vector<RenEquation> all_ren_equations() {
    return {RenEquation::Identity, RenEquation::WeakenLocks, RenEquation::ExtHere, RenEquation::ExtThere,
            RenEquation::Key,      RenEquation::Composite,   RenEquation::LockCompose};
}

std::string ren_equation_name(RenEquation e) {
    switch (e) {
        case RenEquation::Identity: return "identity fixes variables";
        case RenEquation::WeakenLocks: return "weakening under locks";
        case RenEquation::ExtHere: return "extension, newest variable";
        case RenEquation::ExtThere: return "extension, older variable";
        case RenEquation::Key: return "key composes cells";
        case RenEquation::Composite: return "composite acts twice";
        case RenEquation::LockCompose: return "lock preserves composites";
    }
    return "?";
}

RenInstance gen_ren_instance(Generator& g, RenEquation e) {
    const ModeTheory& mt = g.theory();
    switch (e) {
        case RenEquation::Identity: {
            TeleShape psi = gen_shape(g, any_mode(g), 1 + g.pick(4));
            auto [k, a] = var_at(g, psi, g.pick(psi.var_count()));
            Ne x = nf::var(k, a);
            return {rename_ne(mt, ren::identity(psi), x), x};
        }
        case RenEquation::WeakenLocks: {
            TeleShape theta = gen_shape(g, any_mode(g), 1 + g.pick(3));
            Modality rho = g.modality(theta.mode());
            auto locks = gen_locks(g, theta.mode(), 2);
            Renaming r = under_locks(ren::weaken(theta, rho), locks);
            TeleShape psi = with_locks(theta, locks);
            auto [k, a] = var_at(g, psi, g.pick(psi.var_count()));
            return {rename_ne(mt, r, nf::var(k, a)), nf::var(k + 1, a)};
        }
        case RenEquation::ExtHere:
        case RenEquation::ExtThere: {
            TeleShape psi = gen_shape(g, any_mode(g), g.pick(3));
            Renaming r0 = gen_renaming(g, psi, 2);
            TeleShape theta = r0.src();
            Modality rho = g.modality(theta.mode());
            TeleShape locked = theta.lock(rho);
            if (locked.var_count() == 0) throw GenExhausted("no variable to extend with");
            auto [j, beta] = var_at(g, locked, g.pick(locked.var_count()));
            Renaming r = ren::ext(mt, r0, rho, j, beta);
            auto locks = gen_locks(g, theta.mode(), 2);
            TeleShape tgt = with_locks(psi.extend(rho), locks);
            if (e == RenEquation::ExtHere) {
                auto [k, alpha] = var_at(g, tgt, 0);
                Cell2 want = vcomp(mt, whisker_left(locks_of(theta, j), alpha), beta);
                (void)k;
                return {rename_ne(mt, under_locks(r, locks), nf::var(0, alpha)), nf::var(j, want)};
            }
            if (tgt.var_count() < 2) throw GenExhausted("no older variable");
            auto [k, alpha] = var_at(g, tgt, 1 + g.pick(tgt.var_count() - 1));
            return {rename_ne(mt, under_locks(r, locks), nf::var(k, alpha)),
                    rename_ne(mt, under_locks(r0, locks), nf::var(k - 1, alpha))};
        }
        case RenEquation::Key: {
            TeleShape theta = gen_shape(g, any_mode(g), 1 + g.pick(3));
            Modality nu = g.modality(theta.mode(), 2);
            std::optional<Cell2> key;
            for (int tries = 0; tries < 6 && !key; ++tries) {
                Modality mu = g.modality(theta.mode(), 2);
                if (mu.src == nu.src) key = find_cell(mt, nu, mu, &g.rng(), 2);
            }
            if (!key) key = id_cell(nu);
            auto locks = gen_locks(g, nu.src, 2);
            Renaming r = under_locks(ren::key(mt, theta, *key), locks);
            TeleShape tgt = with_locks(theta.lock(nu), locks);
            auto [k, alpha] = var_at(g, tgt, g.pick(tgt.var_count()));
            Modality extra = compose_all(locks, nu.src);
            Cell2 want = vcomp(mt, whisker_left(locks_of(theta, k), whisker_right(*key, extra)), alpha);
            return {rename_ne(mt, r, nf::var(k, alpha)), nf::var(k, want)};
        }
        case RenEquation::Composite: {
            TeleShape psi = gen_shape(g, any_mode(g), 1 + g.pick(3));
            Renaming r = gen_renaming(g, psi, 2);
            Renaming s = gen_renaming(g, r.src(), 2);
            Ne x = gen_scoped_ne(g, psi, 6);
            return {rename_ne(mt, ren::compose(mt, r, s), x), rename_ne(mt, s, rename_ne(mt, r, x))};
        }
        case RenEquation::LockCompose: {
            TeleShape psi = gen_shape(g, any_mode(g), 1 + g.pick(3));
            Renaming r = gen_renaming(g, psi, 2);
            Renaming s = gen_renaming(g, r.src(), 2);
            Modality mu = g.modality(psi.mode());
            Ne x = gen_scoped_ne(g, psi.lock(mu), 6);
            Renaming lhs = ren::compose(mt, ren::lock(mu, r), ren::lock(mu, s));
            Renaming rhs = ren::lock(mu, ren::compose(mt, r, s));
            return {rename_ne(mt, lhs, x), rename_ne(mt, rhs, x)};
        }
    }
    throw GenExhausted("unknown equation");
}

// ---------------------------------------------------------------------------
// Acceptance criteria

namespace {

std::string fmt_rate(std::size_t num, std::size_t den) {
    std::ostringstream s;
    s.precision(2);
    s << std::fixed << (den ? 100.0 * static_cast<double>(num) / static_cast<double>(den) : 0.0) << "%";
    return s.str();
}

void note(std::vector<std::string>& samples, const std::string& s) {
    if (samples.size() < 3) samples.push_back(s);
}

std::string with_samples(std::string detail, const std::vector<std::string>& samples) {
    for (const auto& s : samples) detail += "\n      " + s;
    return detail;
}

}  // namespace

CriterionResult criterion_stability(const AcceptanceConfig& cfg, EtaAudit& audit) {
    auto names = shipped_theory_names();
    std::size_t done = 0, failures = 0, exhausted = 0;
    std::map<std::string, std::size_t> per_theory;
    std::vector<std::string> samples;
    for (std::size_t i = 0; done < cfg.stability_terms && i < cfg.stability_terms * 10; ++i) {
        auto mt = shipped_theory(names[i % names.size()]);
        GenConfig gc;
        gc.seed = cfg.seed + i;
        gc.theory = mt->name();
        Generator g(*mt, gc);
        try {
            Telescope theta = g.telescope(any_mode(g), g.pick(4));
            CheckCtx ctx = CheckCtx::of(*mt, theta);
            Term a = g.type(ctx, 6);
            TypeValue av = eval_ty(*mt, ctx.env(), a);
            Term t = g.term(ctx, av, 10 + g.pick(12));
            ++done;
            ++per_theory[mt->name()];
            try {
                check(ctx, t, av);
                Nf u = normalize(*mt, theta, a, t);
                Nf again = normalize(*mt, theta, a, decode_nf(u));
                audit_eta(ctx, av, u, audit);
                if (!eq_nf(*mt, u, again)) {
                    ++failures;
                    note(samples, mt->name() + ": " + show_form(*mt, u) + " vs " + show_form(*mt, again));
                }
            } catch (const std::exception& ex) {
                ++failures;
                note(samples, mt->name() + ": " + ex.what() + " on " + print_term(*mt, t));
            }
        } catch (const GenExhausted&) {
            ++exhausted;
        }
    }
    std::string detail = std::to_string(done) + " terms (";
    bool first = true;
    for (const auto& [n, c] : per_theory) {
        detail += (first ? "" : ", ") + n + " " + std::to_string(c);
        first = false;
    }
    detail += "), " + std::to_string(failures) + " unstable, " + std::to_string(exhausted) + " generator draws exhausted";
    return {failures == 0 && done >= cfg.stability_terms && per_theory.size() == names.size(),
            with_samples(detail, samples)};
}

CriterionResult criterion_conversion(const AcceptanceConfig& cfg, EtaAudit& audit) {
    std::size_t pairs = 0, pair_fail = 0;
    std::vector<std::string> samples;
    std::set<Connective> covered;
    for (Connective c : all_connectives()) {
        for (const auto& p : beta_eta_pairs(c, cfg.generated_pairs, cfg.seed)) {
            ++pairs;
            const ModeTheory& mt = *p.theory;
            try {
                CheckCtx ctx = CheckCtx::of(mt, p.theta);
                check_ty(ctx, p.type);
                TypeValue t = eval_ty(mt, ctx.env(), p.type);
                check(ctx, p.lhs, t);
                check(ctx, p.rhs, t);
                Value l = eval(mt, ctx.env(), p.lhs), r = eval(mt, ctx.env(), p.rhs);
                audit_eta(ctx, t, reify(mt, ctx.depth(), ctx.mode(), t, l), audit);
                audit_eta(ctx, t, reify(mt, ctx.depth(), ctx.mode(), t, r), audit);
                if (convert_tm(ctx, t, l, r)) {
                    covered.insert(c);
                } else {
                    ++pair_fail;
                    note(samples, "rejected: " + p.label);
                }
            } catch (const std::exception& ex) {
                ++pair_fail;
                note(samples, p.label + ": " + ex.what());
            }
        }
    }

    auto names = shipped_theory_names();
    std::size_t non_pairs = 0, wrongly_accepted = 0;
    for (std::size_t i = 0; non_pairs < cfg.non_pairs && i < cfg.non_pairs * 60; ++i) {
        auto mt = shipped_theory(names[i % names.size()]);
        GenConfig gc;
        gc.seed = cfg.seed * 31 + i;
        Generator g(*mt, gc);
        try {
            Telescope theta = g.telescope(any_mode(g), 1 + g.pick(3));
            CheckCtx ctx = CheckCtx::of(*mt, theta);
            Term a = g.type(ctx, 3);
            TypeValue av = eval_ty(*mt, ctx.env(), a);
            Term s = g.term(ctx, av, 8), t = g.term(ctx, av, 8);
            Value sv = eval(*mt, ctx.env(), s), tv = eval(*mt, ctx.env(), t);
            Nf su = reify(*mt, ctx.depth(), ctx.mode(), av, sv), tu = reify(*mt, ctx.depth(), ctx.mode(), av, tv);
            if (head_signature(su) == head_signature(tu)) continue;
            ++non_pairs;
            audit_eta(ctx, av, su, audit);
            audit_eta(ctx, av, tu, audit);
            if (convert_tm(ctx, av, sv, tv)) {
                ++wrongly_accepted;
                note(samples, "accepted non-pair: " + show_form(*mt, su) + " vs " + show_form(*mt, tu));
            }
        } catch (const GenExhausted&) {
        }
    }
    std::string detail = std::to_string(pairs) + " pairs over " + std::to_string(covered.size()) + "/" +
                         std::to_string(all_connectives().size()) + " connectives, " + std::to_string(pair_fail) +
                         " rejected; " + std::to_string(non_pairs) + " non-pairs, " +
                         std::to_string(wrongly_accepted) + " accepted";
    bool ok = pair_fail == 0 && covered.size() == all_connectives().size() && non_pairs >= cfg.non_pairs &&
              wrongly_accepted == 0;
    return {ok, with_samples(detail, samples)};
}

CriterionResult criterion_oracle(const AcceptanceConfig& cfg, EtaAudit& audit) {
    auto mt = shipped_theory("trivial");
    std::size_t total = 0, agree = 0, disagree = 0, fuel_out = 0, steps = 0, exhausted = 0;
    std::vector<std::string> samples;
    Telescope empty(0);
    CheckCtx ctx(*mt, 0);
    for (std::size_t i = 0; total < cfg.oracle_terms && i < cfg.oracle_terms * 5; ++i) {
        GenConfig gc;
        gc.seed = cfg.seed * 131 + i;
        gc.weights.modal = 0;
        gc.weights.codes = 0;
        gc.weights.intro = 1;
        gc.weights.redex = 6;
        Generator g(*mt, gc);
        Term t;
        try {
            t = g.term(ctx, val::boolean(), 16 + g.pick(32));
        } catch (const GenExhausted&) {
            ++exhausted;
            continue;
        }
        ++total;
        try {
            check(ctx, t, val::boolean());
            Nf u = normalize(*mt, empty, tm::boolean(), t);
            audit_eta(ctx, val::boolean(), u, audit);
            OracleResult r = oracle_eval_bool(t, cfg.oracle_fuel);
            steps += r.steps;
            if (r.verdict == OracleVerdict::OutOfFuel) {
                ++fuel_out;
                continue;
            }
            bool same = (r.verdict == OracleVerdict::True && u->kind == NfKind::True) ||
                        (r.verdict == OracleVerdict::False && u->kind == NfKind::False);
            if (same) {
                ++agree;
            } else {
                ++disagree;
                note(samples, "oracle " + verdict_name(r.verdict) + ", normalizer " + show_form(*mt, u) + " on " +
                                  print_term(*mt, t));
            }
        } catch (const std::exception& ex) {
            ++disagree;
            note(samples, std::string(ex.what()) + " on " + print_term(*mt, t));
        }
    }
    std::size_t terminating = total - fuel_out;
    std::string detail = std::to_string(total) + " closed Bool terms, agreement " + fmt_rate(agree, terminating) +
                         " of " + std::to_string(terminating) + " terminating, fuel exhaustion " +
                         fmt_rate(fuel_out, total) + ", mean oracle steps " +
                         std::to_string(total ? steps / total : 0);
    return {disagree == 0 && total >= cfg.oracle_terms, with_samples(detail, samples)};
}

CriterionResult criterion_eta(const EtaAudit& audit) {
    std::string detail = std::to_string(audit.forms) + " normal forms scanned, " +
                         std::to_string(audit.injections) + " neutral injections, " +
                         std::to_string(audit.violations) + " at a Pi or Sigma type";
    return {audit.violations == 0 && audit.forms > 0, with_samples(detail, audit.examples)};
}

CriterionResult criterion_renaming(const AcceptanceConfig& cfg) {
    auto names = shipped_theory_names();
    bool ok = true;
    std::string detail;
    std::vector<std::string> samples;
    for (RenEquation e : all_ren_equations()) {
        std::size_t done = 0, bad = 0;
        for (std::size_t i = 0; done < cfg.ren_instances && i < cfg.ren_instances * 20; ++i) {
            auto mt = shipped_theory(names[i % names.size()]);
            GenConfig gc;
            gc.seed = cfg.seed * 977 + i * 13 + static_cast<std::uint64_t>(e);
            Generator g(*mt, gc);
            try {
                RenInstance inst = gen_ren_instance(g, e);
                ++done;
                if (!eq_form(*mt, inst.actual, inst.expected)) {
                    ++bad;
                    note(samples, ren_equation_name(e) + " [" + mt->name() + "]: " + show_form(*mt, inst.actual) +
                                      " vs " + show_form(*mt, inst.expected));
                }
            } catch (const GenExhausted&) {
            } catch (const std::exception& ex) {
                ++done;
                ++bad;
                note(samples, ren_equation_name(e) + " [" + mt->name() + "]: " + ex.what());
            }
        }
        ok = ok && bad == 0 && done >= cfg.ren_instances;
        detail += (detail.empty() ? "" : "; ") + ren_equation_name(e) + " " + std::to_string(done - bad) + "/" +
                  std::to_string(done);
    }
    return {ok, with_samples(detail, samples)};
}

namespace {

// The same type with every code behind a Bool redex, so it is convertible but
// syntactically different.
Term expand_codes(const Term& a) {
    if (a->tag == Tag::Dec) {
        return tm::dec(tm::ite(tm::uni(), a->kids[0], tm::boolcode(), tm::tt()));
    }
    if (a->kids.empty()) return a;
    if (a->tag == Tag::Pi || a->tag == Tag::Sig || a->tag == Tag::Mod) {
        std::vector<Term> kids;
        for (const auto& k : a->kids) kids.push_back(expand_codes(k));
        return with_kids(a, std::move(kids));
    }
    return a;
}

}  // namespace

CriterionResult criterion_pi_injectivity(const AcceptanceConfig& cfg) {
    auto names = shipped_theory_names();
    std::size_t pairs = 0, accepted = 0, violations = 0;
    std::vector<std::string> samples;
    for (std::size_t i = 0; pairs < cfg.pi_pairs && i < cfg.pi_pairs * 10; ++i) {
        auto mt = shipped_theory(names[i % names.size()]);
        GenConfig gc;
        gc.seed = cfg.seed * 7 + i;
        Generator g(*mt, gc);
        try {
            Telescope theta = g.telescope(any_mode(g), g.pick(3));
            CheckCtx ctx = CheckCtx::of(*mt, theta);
            auto pi_type = [&] {
                Modality mu = g.modality(ctx.mode());
                CheckCtx locked = ctx.lock(mu);
                Term a = g.coin(1, 2) ? tm::dec(g.term(locked, val::uni(), 4)) : g.type(locked, 4);
                CheckCtx inner = ctx.extend(eval_ty(*mt, locked.env(), a), {mu});
                return tm::pi(mu, a, g.type(inner, 4));
            };
            Term p = pi_type();
            Term q = g.coin(2, 3) ? expand_codes(p) : pi_type();
            TypeValue pv = eval_ty(*mt, ctx.env(), p), qv = eval_ty(*mt, ctx.env(), q);
            ++pairs;
            if (!convert_ty(ctx, pv, qv)) continue;
            ++accepted;
            CheckCtx locked = ctx.lock(pv->mu);
            bool dom = mt->eq_mod(pv->mu, qv->mu) && convert_ty(locked, pv->a, qv->a);
            CheckCtx inner = ctx.extend(pv->a, {pv->mu});
            bool cod = convert_ty(inner, instantiate(*mt, pv->cl, inner.newest()),
                                  instantiate(*mt, qv->cl, inner.newest()));
            if (!dom || !cod) {
                ++violations;
                note(samples, print_type(*mt, p) + " vs " + print_type(*mt, q));
            }
        } catch (const GenExhausted&) {
        }
    }
    std::string detail = std::to_string(pairs) + " Pi pairs, " + std::to_string(accepted) + " convertible, " +
                         std::to_string(violations) + " with a non-convertible domain or codomain";
    return {violations == 0 && pairs >= cfg.pi_pairs && accepted > 0, with_samples(detail, samples)};
}

CriterionResult criterion_weak_tarski() {
    struct Case {
        const char* theory;
        const char* lhs;
        const char* rhs;
    };
    const std::vector<Case> separate{
        {"trivial", "Dec code-bool", "Bool"},
        {"trivial", "Dec (code-pi (x : code-bool) -> code-bool)", "Pi (x : Bool) -> Bool"},
        {"trivial", "Dec (code-pi (x : code-bool) -> code-bool)", "Pi (x : Dec code-bool) -> Dec code-bool"},
        {"walking", "Dec (code-mod mu code-bool)", "Mod mu Bool"},
        {"walking", "Dec (code-mod mu code-bool)", "Mod mu (Dec code-bool)"},
        {"pointed", "Dec (code-pi (l | x : code-bool) -> code-bool)", "Pi (l | x : Dec code-bool) -> Dec code-bool"},
    };
    struct Transport {
        const char* theory;
        const char* type;
        const char* term;
    };
    const std::vector<Transport> transports{
        {"trivial", "Dec code-bool -> Bool", "\\x. iso x"},
        {"trivial", "Bool -> Dec code-bool", "\\x. iso-inv x"},
        {"trivial", "Dec (code-pi (x : code-bool) -> code-bool) -> Pi (x : Dec code-bool) -> Dec code-bool",
         "\\f. iso f"},
        {"trivial", "(Pi (x : Dec code-bool) -> Dec code-bool) -> Dec (code-pi (x : code-bool) -> code-bool)",
         "\\f. iso-inv f"},
        {"walking", "Dec (code-mod mu code-bool) -> Mod mu (Dec code-bool)", "\\b. iso b"},
        {"walking", "Mod mu (Dec code-bool) -> Dec (code-mod mu code-bool)", "\\b. iso-inv b"},
    };
    std::size_t rejected = 0, checked = 0;
    std::vector<std::string> samples;
    for (const auto& c : separate) {
        auto mt = shipped_theory(c.theory);
        CheckCtx ctx(*mt, *mt->find_mode("m"));
        TypeValue l = eval_ty(*mt, ctx.env(), parse_type(*mt, c.lhs, ctx.mode()));
        TypeValue r = eval_ty(*mt, ctx.env(), parse_type(*mt, c.rhs, ctx.mode()));
        if (!convert_ty(ctx, l, r)) {
            ++rejected;
        } else {
            note(samples, std::string("identified ") + c.lhs + " with " + c.rhs);
        }
    }
    for (const auto& t : transports) {
        auto mt = shipped_theory(t.theory);
        CheckCtx ctx(*mt, *mt->find_mode("m"));
        try {
            Term ty = parse_type(*mt, t.type, ctx.mode());
            check_ty(ctx, ty);
            check(ctx, parse_term(*mt, t.term, ctx.mode()), eval_ty(*mt, ctx.env(), ty));
            ++checked;
        } catch (const std::exception& ex) {
            note(samples, std::string(t.term) + " : " + t.type + ": " + ex.what());
        }
    }
    std::string detail = std::to_string(rejected) + "/" + std::to_string(separate.size()) +
                         " decoded types kept apart, " + std::to_string(checked) + "/" +
                         std::to_string(transports.size()) + " iso transports check";
    return {rejected == separate.size() && checked == transports.size(), with_samples(detail, samples)};
}

CriterionResult criterion_corpus(const AcceptanceConfig& cfg) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    if (fs::is_directory(cfg.corpus_dir)) {
        for (const auto& e : fs::directory_iterator(cfg.corpus_dir)) {
            if (e.path().extension() == ".mtt") files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::size_t ok = 0, with_letbox = 0;
    double slowest = 0;
    std::set<std::string> theories;
    std::vector<std::string> samples;
    for (const auto& f : files) {
        std::ifstream in(f);
        std::stringstream buf;
        buf << in.rdbuf();
        auto start = std::chrono::steady_clock::now();
        try {
            SourceFile src = parse_file(buf.str());
            ProgramReport rep = check_program(*src.theory, src.decls, true);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            slowest = std::max(slowest, secs);
            theories.insert(src.theory->name());
            if (src.theory->name() == "pointed" && buf.str().find("letbox") != std::string::npos) ++with_letbox;
            if (rep.ok() && secs <= cfg.corpus_budget_seconds) {
                ++ok;
            } else {
                for (const auto& d : rep.decls) {
                    if (!d.ok) note(samples, f.filename().string() + ": " + d.name + ": " + d.message);
                }
                if (secs > cfg.corpus_budget_seconds) note(samples, f.filename().string() + ": over budget");
            }
        } catch (const std::exception& ex) {
            note(samples, f.filename().string() + ": " + ex.what());
        }
    }
    std::ostringstream detail;
    std::size_t shipped = 0;
    for (const auto& n : shipped_theory_names()) shipped += theories.count(n);
    detail << ok << "/" << files.size() << " files check, " << shipped << "/" << shipped_theory_names().size()
           << " shipped theories, " << with_letbox << " guarded letbox files, slowest " << static_cast<long>(slowest * 1000) << " ms";
    bool pass = files.size() >= 30 && ok == files.size() && shipped == shipped_theory_names().size() &&
                with_letbox > 0;
    return {pass, with_samples(detail.str(), samples)};
}

}  // namespace mtt
