#include <doctest.h>

#include "mtt/harness.hpp"
#include "mtt/surface.hpp"

using namespace mtt;

namespace {

const Modality kId = Modality::identity(0);
Term v0() { return tm::var(0, id_cell(kId)); }

}  // namespace

TEST_CASE("oracle on small terms") {
    CHECK(oracle_eval_bool(tm::tt(), 10).verdict == OracleVerdict::True);
    Term scrut = tm::app(kId, tm::lam(kId, v0()), tm::tt());
    CHECK(oracle_eval_bool(tm::ite(tm::boolean(), tm::ff(), tm::tt(), scrut), 10).verdict == OracleVerdict::False);
    Term self = tm::app(kId, tm::lam(kId, tm::app(kId, v0(), tm::tt())), tm::lam(kId, v0()));
    OracleResult r = oracle_eval_bool(self, 10);
    CHECK(r.verdict == OracleVerdict::True);
    CHECK(r.steps == 2);
    CHECK(oracle_eval_bool(self, 1).verdict == OracleVerdict::OutOfFuel);
    CHECK(oracle_eval_bool(tm::lam(kId, v0()), 10).verdict == OracleVerdict::Stuck);
}

TEST_CASE("generated terms check") {
    for (const auto& name : shipped_theory_names()) {
        auto mt = shipped_theory(name);
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            GenConfig cfg;
            cfg.seed = seed;
            cfg.theory = name;
            Generator g(*mt, cfg);
            CheckCtx ctx = CheckCtx::of(*mt, g.telescope(static_cast<ModeId>(g.pick(mt->mode_count())), 2));
            try {
                Term ty = g.type(ctx, 5);
                CHECK_NOTHROW(check_ty(ctx, ty));
                Term t = g.term(ctx, eval(*mt, ctx.env(), ty), 12);
                CHECK_NOTHROW(check(ctx, t, eval(*mt, ctx.env(), ty)));
            } catch (const GenExhausted&) {
            }
        }
    }
}

TEST_CASE("generator goals") {
    auto walking = shipped_theory("walking");
    Modality mu = walking->gen(0);
    GenConfig cfg;
    cfg.weights.redex = 0;
    cfg.weights.elim = 0;
    Generator g(*walking, cfg);
    CheckCtx m(*walking, 1);
    for (int i = 0; i < 20; ++i) {
        Term b = g.term(m, val::boolean(), 6);
        CHECK((b->tag == Tag::True || b->tag == Tag::False));
        Term box = g.term(m, val::mod(mu, val::boolean()), 6);
        CHECK(box->tag == Tag::MkBox);
        Term fn = g.term(m, eval(*walking, nullptr, tm::pi(Modality::identity(1), tm::boolean(), tm::boolean())), 6);
        CHECK(fn->tag == Tag::Lam);
    }
}

TEST_CASE("curated equations are convertible") {
    std::size_t n = 0;
    for (Connective c : all_connectives()) {
        for (const EqPair& p : beta_eta_pairs(c)) {
            CheckCtx ctx = CheckCtx::of(*p.theory, p.theta);
            TypeValue ty = eval(*p.theory, ctx.env(), p.type);
            INFO(connective_name(c) << " " << p.label);
            CHECK_NOTHROW(check(ctx, p.lhs, ty));
            CHECK_NOTHROW(check(ctx, p.rhs, ty));
            CHECK(convert_tm(ctx, ty, eval(*p.theory, ctx.env(), p.lhs), eval(*p.theory, ctx.env(), p.rhs)));
            ++n;
        }
    }
    CHECK(n >= 30);
}

TEST_CASE("distinct heads") {
    CHECK(head_signature(nf::tt()) != head_signature(nf::ff()));
    // binders are looked through
    CHECK(head_signature(nf::lam(kId, nf::tt())) != head_signature(nf::lam(kId, nf::ff())));
    CHECK(head_signature(nf::inj(nf::var(0, id_cell(kId)))) != head_signature(nf::inj(nf::var(1, id_cell(kId)))));
    CHECK(head_signature(nf::pair(nf::tt(), nf::tt())) == head_signature(nf::pair(nf::tt(), nf::ff())));
}

TEST_CASE("cell search") {
    auto pointed = shipped_theory("pointed");
    Modality l = pointed->gen(0);
    auto c = find_cell(*pointed, kId, compose_mod(l, l));
    REQUIRE(c);
    CHECK(pointed->eq_mod(c->src(), kId));
    CHECK(pointed->eq_mod(c->tgt(), compose_mod(l, l)));
    CHECK_FALSE(find_cell(*pointed, l, kId));
}
