#include <doctest.h>

#include "mtt/normal.hpp"

using namespace mtt;

namespace {

Modality gen(const ModeTheory& mt, const char* name) { return mt.gen(*mt.find_modality(name)); }

}  // namespace

TEST_CASE("renaming a variable neutral") {
    auto pointed = shipped_theory("pointed");
    const ModeTheory& mt = *pointed;
    Modality id = Modality::identity(0), l = gen(mt, "l");
    Cell2 next = gen_cell(mt, *mt.find_cell("next"));
    Telescope theta = ctx_extend(Telescope(0), id, tm::boolean());
    TeleShape shape = tele_shape(theta);

    Ne x = nf::var(0, id_cell(id));
    CHECK(eq_ne(mt, rename_ne(mt, ren::identity(shape), x), x));

    // lock(weaken) shifts every index under the lock
    Renaming w = ren::lock(l, ren::weaken(shape, id));
    Ne y = nf::var(0, id_cell(l));
    Ne shifted = rename_ne(mt, w, y);
    CHECK(shifted->kind == NfKind::Var);
    CHECK(shifted->index == 1);
    CHECK(mt.eq_cell(shifted->cell, id_cell(l)));

    // key with next : id => l turns a variable under id into one under l
    Renaming k = ren::key(mt, shape, next);
    Ne keyed = rename_ne(mt, k, x);
    CHECK(keyed->index == 0);
    CHECK(mt.eq_cell(keyed->cell, vcomp(mt, next, id_cell(id))));
    CHECK(mt.eq_cell(keyed->cell, next));
}

TEST_CASE("renaming equations on a sample neutral") {
    auto pointed = shipped_theory("pointed");
    const ModeTheory& mt = *pointed;
    Modality id = Modality::identity(0), l = gen(mt, "l");
    Telescope theta = ctx_extend(ctx_extend(Telescope(0), id, tm::boolean()), l, tm::boolean());
    TeleShape shape = tele_shape(theta);
    Ne e = nf::proj1(nf::var(1, id_cell(id)));
    Ne under = nf::var(0, id_cell(l));

    Renaming s = ren::weaken(shape, id);
    Renaming t = ren::weaken(shape.extend(id), l);
    Renaming lt = ren::lock(l, t), ls = ren::lock(l, s);
    CHECK(ren_respects_equations(mt, ren::compose(mt, ls, lt), ren::lock(l, ren::compose(mt, s, t)), under));
    CHECK(ren_respects_equations(mt, ren::compose(mt, ren::identity(shape), s), s, e));
    TeleShape locked = shape.lock(l);
    CHECK(ren_respects_equations(mt, ren::key(mt, shape, id_cell(l)), ren::identity(locked), under));
}

TEST_CASE("decoding normal forms") {
    auto walking = shipped_theory("walking");
    const ModeTheory& mt = *walking;
    Modality mu = gen(mt, "mu"), id = Modality::identity(1);
    CHECK(term_equal(mt, decode_nf(nf::tt()), tm::tt()));
    CHECK(term_equal(mt, decode_nf(nf::mkbox(mu, nf::tt())), tm::mkbox(mu, tm::tt())));
    CHECK(term_equal(mt, decode_ne(nf::var(0, id_cell(id))), tm::var(0, id_cell(id))));
    CHECK(term_equal(mt, decode_nfty(nf::ty_modify(mu, nf::ty_bool())), tm::mod(mu, tm::boolean())));
    CHECK(term_equal(mt, decode_nf(nf::inj(nf::proj1(nf::var(0, id_cell(id))))),
                     tm::fst(tm::var(0, id_cell(id)))));
}

TEST_CASE("equality of normal forms") {
    auto pointed = shipped_theory("pointed");
    const ModeTheory& mt = *pointed;
    Cell2 next = gen_cell(mt, *mt.find_cell("next"));
    Nf u = nf::pair(nf::tt(), nf::inj(nf::var(0, next)));
    CHECK(eq_nf(mt, u, u));
    CHECK(eq_ne(mt, nf::var(0, vcomp(mt, next, id_cell(next.src()))), nf::var(0, next)));
    CHECK_FALSE(eq_nf(mt, nf::tt(), nf::ff()));
    CHECK_FALSE(eq_ne(mt, nf::var(0, next), nf::var(1, next)));
}

TEST_CASE("sorts of normal-form constructors") {
    CHECK(sort_of(NfKind::TyFn) == Sort::Type);
    CHECK(sort_of(NfKind::App) == Sort::Neutral);
    CHECK(sort_of(NfKind::Inj) == Sort::Normal);
}
