#include <doctest.h>

#include "mtt/nbe.hpp"
#include "mtt/normal.hpp"

using namespace mtt;

namespace {

Modality gen(const ModeTheory& mt, const char* name) { return mt.gen(*mt.find_modality(name)); }
Term v0(const Modality& mu) { return tm::var(0, id_cell(mu)); }

}  // namespace

TEST_CASE("evaluation computes beta") {
    auto trivial = shipped_theory("trivial");
    const ModeTheory& mt = *trivial;
    Modality id = Modality::identity(0);
    Telescope empty(0);
    Term beta = tm::app(id, tm::lam(id, v0(id)), tm::tt());
    Value v = eval(mt, nullptr, beta);
    CHECK(v->kind == VKind::True);
    CHECK(eq_nf(mt, normalize(mt, empty, tm::boolean(), beta), nf::tt()));

    Term modal = tm::letmod(id, id, tm::boolean(), tm::mkbox(id, tm::tt()), v0(id));
    CHECK(eval(mt, nullptr, modal)->kind == VKind::True);
    CHECK(eq_nf(mt, normalize(mt, empty, tm::boolean(), modal), nf::tt()));
}

TEST_CASE("closures and eliminators") {
    auto trivial = shipped_theory("trivial");
    const ModeTheory& mt = *trivial;
    Modality id = Modality::identity(0);
    Value f = eval(mt, nullptr, tm::lam(id, tm::pair(v0(id), tm::ff())));
    Value r = do_app(mt, f, val::tt());
    CHECK(do_fst(mt, r)->kind == VKind::True);
    CHECK(do_snd(mt, r)->kind == VKind::False);
    Closure motive{nullptr, tm::boolean(), 0};
    CHECK(do_if(mt, motive, val::ff(), val::tt(), val::tt())->kind == VKind::False);
    CHECK(do_if(mt, motive, val::ff(), val::tt(), val::ff())->kind == VKind::True);
    CHECK_THROWS_AS(do_fst(mt, val::tt()), DomainError);
}

TEST_CASE("reflection at Bool, Mod and Pi") {
    auto walking = shipped_theory("walking");
    const ModeTheory& mt = *walking;
    Modality mu = gen(mt, "mu"), id = Modality::identity(1);

    Telescope b = ctx_extend(Telescope(1), id, tm::boolean());
    CHECK(eq_nf(mt, normalize(mt, b, tm::boolean(), v0(id)), nf::inj(nf::var(0, id_cell(id)))));

    Term modty = tm::mod(mu, tm::boolean());
    Telescope m = ctx_extend(Telescope(1), id, modty);
    CHECK(eq_nf(mt, normalize(mt, m, modty, v0(id)), nf::inj(nf::var(0, id_cell(id)))));

    // a variable of function type is η-expanded
    Term fty = tm::pi(id, tm::boolean(), tm::boolean());
    Telescope fn = ctx_extend(Telescope(1), id, fty);
    Nf expect = nf::lam(id, nf::inj(nf::app(id, nf::var(1, id_cell(id)), nf::inj(nf::var(0, id_cell(id))))));
    CHECK(eq_nf(mt, normalize(mt, fn, fty, v0(id)), expect));

    // a variable of pair type is η-expanded
    Term pty = tm::sig(tm::boolean(), tm::boolean());
    Telescope pr = ctx_extend(Telescope(1), id, pty);
    Ne x = nf::var(0, id_cell(id));
    CHECK(eq_nf(mt, normalize(mt, pr, pty, v0(id)), nf::pair(nf::inj(nf::proj1(x)), nf::inj(nf::proj2(x)))));
}

TEST_CASE("reification of types and decoded values") {
    auto walking = shipped_theory("walking");
    const ModeTheory& mt = *walking;
    Modality mu = gen(mt, "mu");
    Telescope empty(1);
    CHECK(eq_nfty(mt, normalize_ty(mt, empty, tm::mod(mu, tm::boolean())), nf::ty_modify(mu, nf::ty_bool())));
    Term decb = tm::dec(tm::boolcode());
    CHECK(eq_nf(mt, normalize(mt, empty, decb, tm::deciso_inv(tm::tt())), nf::deciso_inv(nf::tt())));
    CHECK(eq_nfty(mt, normalize_ty(mt, empty, decb), nf::ty_dec(nf::bool_code())));
    CHECK_FALSE(eq_nfty(mt, normalize_ty(mt, empty, decb), nf::ty_bool()));
}

TEST_CASE("eta expansion at a neutral decoded domain") {
    auto trivial = shipped_theory("trivial");
    const ModeTheory& mt = *trivial;
    Modality id = Modality::identity(0);
    Telescope u = ctx_extend(Telescope(0), id, tm::uni());
    Term fty_in_u = tm::pi(id, tm::dec(tm::var(0, id_cell(id))), tm::dec(tm::var(1, id_cell(id))));
    Telescope theta = ctx_extend(u, id, fty_in_u);
    Term fty = shift(fty_in_u, 1);
    Nf expect = nf::lam(id, nf::inj(nf::app(id, nf::var(1, id_cell(id)), nf::inj(nf::var(0, id_cell(id))))));
    CHECK(eq_nf(mt, normalize(mt, theta, fty, v0(id)), expect));
}

TEST_CASE("letmod on neutral and boxed scrutinees") {
    auto walking = shipped_theory("walking");
    const ModeTheory& mt = *walking;
    Modality mu = gen(mt, "mu"), id = Modality::identity(1);
    Term modty = tm::mod(mu, tm::boolean());
    Term motive = shift(modty, 1);
    Term branch = tm::mkbox(mu, v0(mu));

    Term boxed = tm::letmod(id, mu, motive, tm::mkbox(mu, tm::tt()), branch);
    CHECK(eq_nf(mt, normalize(mt, Telescope(1), modty, boxed), nf::mkbox(mu, nf::tt())));

    Telescope theta = ctx_extend(Telescope(1), id, modty);
    Term stuck = tm::letmod(id, mu, motive, v0(id), branch);
    Nf expect = nf::inj(nf::letmod(id, mu, nf::ty_modify(mu, nf::ty_bool()), nf::var(0, id_cell(id)),
                                   nf::mkbox(mu, nf::inj(nf::var(0, id_cell(mu))))));
    CHECK(eq_nf(mt, normalize(mt, theta, modty, stuck), expect));
}

TEST_CASE("initial environment of a telescope") {
    auto trivial = shipped_theory("trivial");
    const ModeTheory& mt = *trivial;
    CHECK(env_vars(atoms_env(mt, Telescope(0)).env) == 0);
    Telescope one = ctx_extend(Telescope(0), Modality::identity(0), tm::boolean());
    Atoms a = atoms_env(mt, one);
    REQUIRE(env_vars(a.env) == 1);
    REQUIRE(a.types.size() == 1);
    CHECK(a.types[0]->kind == VKind::Bool);
    Value x = eval(mt, a.env, tm::var(0, id_cell(Modality::identity(0))));
    CHECK(x->kind == VKind::Neu);
}
