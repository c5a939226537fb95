#include <doctest.h>

#include <functional>

#include "mtt/check.hpp"
#include "mtt/nbe.hpp"

using namespace mtt;

namespace {

Modality gen(const ModeTheory& mt, const char* name) { return mt.gen(*mt.find_modality(name)); }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const TypeError& e) {
        return e.kind();
    }
    FAIL("no type error");
    return ErrorKind::Domain;
}

}  // namespace

TEST_CASE("variable lookup through locks") {
    auto walking = shipped_theory("walking");
    const ModeTheory& mt = *walking;
    Modality mu = gen(mt, "mu");
    CheckCtx bare(mt, 1);
    CheckCtx with_x = bare.extend(val::boolean(), {mu});
    CheckCtx locked = with_x.lock(mu);
    CHECK(lookup_var(locked, 0, id_cell(mu))->kind == VKind::Bool);
    // no cell mu => id exists in the walking theory
    CHECK(kind_of([&] { infer(with_x, tm::var(0, id_cell(mu))); }) == ErrorKind::Inaccessible);

    auto trivial = shipped_theory("trivial");
    Modality id = Modality::identity(0);
    CheckCtx t = CheckCtx(*trivial, 0).extend(val::boolean(), {id}).lock(id).lock(id);
    CHECK(lookup_var(t, 0, id_cell(id))->kind == VKind::Bool);
}

TEST_CASE("checking introduction forms") {
    auto walking = shipped_theory("walking");
    const ModeTheory& mt = *walking;
    Modality mu = gen(mt, "mu"), id = Modality::identity(1);
    CheckCtx m(mt, 1);
    Term idfn = tm::lam(id, tm::var(0, id_cell(id)));
    CHECK_NOTHROW(check(m, idfn, eval(mt, m.env(), tm::pi(id, tm::boolean(), tm::boolean()))));
    CHECK_NOTHROW(check(m, tm::mkbox(mu, tm::tt()), eval(mt, m.env(), tm::mod(mu, tm::boolean()))));
    Term boxer = tm::lam(mu, tm::mkbox(mu, tm::var(0, id_cell(mu))));
    CHECK_NOTHROW(check(m, boxer, eval(mt, m.env(), tm::pi(mu, tm::boolean(), tm::mod(mu, tm::boolean())))));
    // the variable is bound under mu, not under id
    Term leaky = tm::lam(mu, tm::var(0, id_cell(mu)));
    CHECK(kind_of([&] { check(m, leaky, eval(mt, m.env(), tm::pi(mu, tm::boolean(), tm::boolean()))); }) ==
          ErrorKind::Inaccessible);
    CHECK(kind_of([&] { infer(m, idfn); }) == ErrorKind::NotInferable);
    CHECK(kind_of([&] { check(m, tm::tt(), eval(mt, m.env(), tm::uni())); }) == ErrorKind::Mismatch);
}

TEST_CASE("inferring a letmod over a box") {
    auto walking = shipped_theory("walking");
    const ModeTheory& mt = *walking;
    Modality mu = gen(mt, "mu"), id = Modality::identity(1);
    CheckCtx m(mt, 1);
    Term modty = tm::mod(mu, tm::boolean());
    Term t = tm::letmod(id, mu, shift(modty, 1), tm::mkbox(mu, tm::tt()), tm::mkbox(mu, tm::var(0, id_cell(mu))));
    TypeValue ty = infer(m, t);
    CHECK(convert_ty(m, ty, eval(mt, m.env(), modty)));
    CHECK(convert_tm(m, ty, eval(mt, m.env(), t), eval(mt, m.env(), tm::mkbox(mu, tm::tt()))));
}

TEST_CASE("conversion") {
    auto trivial = shipped_theory("trivial");
    const ModeTheory& mt = *trivial;
    Modality id = Modality::identity(0);
    CheckCtx c(mt, 0);
    CHECK_FALSE(convert_ty(c, val::dec(val::bool_code()), val::boolean()));
    CHECK(convert_ty(c, val::dec(val::bool_code()), val::dec(val::bool_code())));
    Term body = tm::pair(tm::var(0, id_cell(id)), tm::tt());
    Term arg = tm::ff();
    Term redex = tm::app(id, tm::ann(tm::lam(id, body), tm::pi(id, tm::boolean(), tm::sig(tm::boolean(), tm::boolean()))), arg);
    TypeValue sig = eval(mt, nullptr, tm::sig(tm::boolean(), tm::boolean()));
    CHECK(convert_tm(c, sig, eval(mt, nullptr, redex), eval(mt, nullptr, tm::pair(arg, tm::tt()))));
    CHECK_FALSE(convert_tm(c, sig, eval(mt, nullptr, redex), eval(mt, nullptr, tm::pair(tm::tt(), tm::tt()))));

    TypeValue p1 = eval(mt, nullptr, tm::pi(id, tm::boolean(), tm::boolean()));
    TypeValue p2 = eval(mt, nullptr, tm::pi(id, tm::dec(tm::boolcode()), tm::boolean()));
    CHECK_FALSE(convert_ty(c, p1, p2));
}

TEST_CASE("checking programs") {
    auto trivial = shipped_theory("trivial");
    CHECK(check_program(*trivial, {}).ok());
    CHECK(check_program(*trivial, {}).decls.empty());
    Decl k{"k", 0, tm::boolean(), tm::tt()};
    ProgramReport one = check_program(*trivial, {k}, true);
    REQUIRE(one.decls.size() == 1);
    CHECK(one.ok());
    CHECK(eq_nfty(*trivial, one.decls[0].type, nf::ty_bool()));
    CHECK(eq_nf(*trivial, one.decls[0].normal, nf::tt()));
    Decl bad{"bad", 0, tm::uni(), tm::tt()};
    ProgramReport two = check_program(*trivial, {k, bad});
    CHECK_FALSE(two.ok());
    CHECK(two.decls[0].ok);
    CHECK_FALSE(two.decls[1].ok);
}
