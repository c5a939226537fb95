#include <doctest.h>

#include "mtt/syntax.hpp"

using namespace mtt;

namespace {

Modality gen(const ModeTheory& mt, const char* name) { return mt.gen(*mt.find_modality(name)); }

}  // namespace

TEST_CASE("scope checking") {
    Modality id = Modality::identity(0);
    Context empty(0);
    Context one = ctx_extend(empty, id, tm::boolean());
    CHECK(scope_check(one, tm::var(0, id_cell(id))));
    CHECK_FALSE(scope_check(empty, tm::var(0, id_cell(id))));
    CHECK_FALSE(scope_check(one, tm::var(1, id_cell(id))));

    auto pointed = shipped_theory("pointed");
    Modality l = gen(*pointed, "l");
    Context locked = ctx_lock(ctx_extend(empty, l, tm::boolean()), l);
    CHECK(scope_check(locked, tm::var(0, id_cell(l))));
    // binders extend the scope
    CHECK(scope_check(empty, tm::lam(id, tm::var(0, id_cell(id)))));
    CHECK_FALSE(scope_check(empty, tm::lam(id, tm::var(1, id_cell(id)))));
}

TEST_CASE("lock equations on contexts") {
    auto adj = shipped_theory("adjoint");
    Modality f = gen(*adj, "f"), g = gen(*adj, "g");
    Context gamma = ctx_extend(Context(1), Modality::identity(1), tm::boolean());
    CHECK(ctx_equal(*adj, ctx_lock(gamma, Modality::identity(1)), gamma));
    CHECK(ctx_equal(*adj, ctx_lock(ctx_lock(gamma, f), g), ctx_lock(gamma, compose_mod(f, g))));
    CHECK_FALSE(ctx_equal(*adj, ctx_lock(gamma, compose_mod(f, g)), gamma));
    // g.f is the identity at mode a, so the double lock there vanishes
    Context at_a = ctx_extend(Context(0), Modality::identity(0), tm::boolean());
    CHECK(ctx_equal(*adj, ctx_lock(ctx_lock(at_a, g), f), at_a));

    Context ext = ctx_extend(Context(0), Modality::identity(0), tm::boolean());
    CHECK(ext.var_count() == 1);
    CHECK(ext.mode() == 0);
    CHECK_THROWS_AS(ctx_lock(gamma, g), ModeError);
}

TEST_CASE("composite of locks after a variable") {
    auto adj = shipped_theory("adjoint");
    Modality f = gen(*adj, "f"), g = gen(*adj, "g");
    Context theta = ctx_extend(Context(1), f, tm::boolean());
    CHECK(locks_of(theta, 0).is_identity());
    Context one = ctx_lock(theta, f);
    CHECK(adj->eq_mod(locks_of(one, 0), f));
    Context two = ctx_lock(one, g);
    Modality both = locks_of(two, 0);
    CHECK(adj->eq_mod(both, compose_mod(f, g)));
    CHECK(both.src == 1);
    CHECK(both.tgt == 1);
    CHECK(locks_after(two, 0).size() == 2);
}

TEST_CASE("variable positions skip locks") {
    auto pointed = shipped_theory("pointed");
    Modality l = gen(*pointed, "l"), id = Modality::identity(0);
    Context c = ctx_extend(Context(0), id, tm::boolean());
    c = ctx_lock(c, l);
    c = ctx_extend(c, id, tm::uni());
    CHECK(c.position_of(0) == 2);
    CHECK(c.position_of(1) == 0);
    CHECK(c.position_of(2) == Context::npos);
}

TEST_CASE("shifting") {
    Modality id = Modality::identity(0);
    Term body = tm::lam(id, tm::app(id, tm::var(0, id_cell(id)), tm::var(1, id_cell(id))));
    Term up = shift(body, 2);
    auto trivial = shipped_theory("trivial");
    CHECK(term_equal(*trivial, up, tm::lam(id, tm::app(id, tm::var(0, id_cell(id)), tm::var(3, id_cell(id))))));
    CHECK(term_equal(*trivial, shift(up, -2), body));
}
