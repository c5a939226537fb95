#include <doctest.h>

#include "mtt/harness.hpp"
#include "mtt/surface.hpp"

using namespace mtt;

namespace {

SurfaceError::Kind error_kind(const std::string& text) {
    try {
        parse_file(text);
    } catch (const SurfaceError& e) {
        return e.kind();
    }
    FAIL("no surface error");
    return SurfaceError::Kind::Syntax;
}

}  // namespace

TEST_CASE("minimal file") {
    SourceFile f = parse_file("theory trivial\ndef k @m : Bool := true\n");
    REQUIRE(f.decls.size() == 1);
    CHECK(f.decls[0].name == "k");
    CHECK(f.theory->name() == "trivial");
    CHECK(term_equal(*f.theory, f.decls[0].body, tm::tt()));
}

TEST_CASE("modal function type") {
    auto walking = shipped_theory("walking");
    Modality mu = walking->gen(*walking->find_modality("mu"));
    Term a = parse_type(*walking, "Pi (mu | x : Bool) -> Bool", *walking->find_mode("m"));
    CHECK(term_equal(*walking, a, tm::pi(mu, tm::boolean(), tm::boolean())));
}

TEST_CASE("products bind tighter than arrows") {
    auto trivial = shipped_theory("trivial");
    Modality id = Modality::identity(0);
    Term a = parse_type(*trivial, "Bool * Bool -> Bool", 0);
    CHECK(term_equal(*trivial, a, tm::pi(id, tm::sig(tm::boolean(), tm::boolean()), tm::boolean())));
}

TEST_CASE("errors carry a kind and a position") {
    try {
        parse_file("theory walking\ndef k @m : Mod nu Bool := box[nu] true\n");
        FAIL("accepted an unknown modality");
    } catch (const SurfaceError& e) {
        CHECK(e.kind() == SurfaceError::Kind::Scope);
        CHECK(e.line() == 2);
        CHECK(e.column() == 16);
        CHECK(std::string(e.what()).find("nu") != std::string::npos);
    }
    CHECK(error_kind("theory trivial\ndef k @m : Bool := (true\n") == SurfaceError::Kind::Syntax);
    CHECK(error_kind("theory walking\ndef k @m : Pi (mu | x : Bool) -> Bool := \\(mu | x). x\n") ==
          SurfaceError::Kind::Mode);
    CHECK(error_kind("mode m\nmodality a : m -> m\nrule id@m => a\ndecider rewrite\ndef k @m : Bool := true\n") ==
          SurfaceError::Kind::Theory);
    CHECK(error_kind("def k @m : Bool := true\n") == SurfaceError::Kind::Theory);
}

TEST_CASE("inline mode theory") {
    SourceFile f = parse_file(
        "mode s\nmodality k : s -> s\ncell extract : k => id\nrule k.k => k\ndecider rewrite\nthin\n"
        "def e @s : Pi (k | x : Bool) -> Bool := \\(k | x). x^{extract}\n");
    CHECK(f.theory->mode_count() == 1);
    Modality k = f.theory->gen(0);
    CHECK(f.theory->eq_mod(compose_mod(k, k), k));
    CHECK(check_program(*f.theory, f.decls).ok());
}

TEST_CASE("printing then parsing is the identity on generated terms") {
    std::size_t tried = 0;
    for (const auto& name : shipped_theory_names()) {
        auto mt = shipped_theory(name);
        for (std::uint64_t seed = 1; seed <= 60; ++seed) {
            GenConfig cfg;
            cfg.seed = seed;
            cfg.theory = name;
            Generator g(*mt, cfg);
            Telescope theta = g.telescope(static_cast<ModeId>(g.pick(mt->mode_count())), g.pick(3));
            CheckCtx ctx = CheckCtx::of(*mt, theta);
            std::vector<std::string> names;
            for (std::size_t i = 0; i < theta.var_count(); ++i) names.push_back("v" + std::to_string(i));
            Term ty, t;
            try {
                ty = g.type(ctx, 4);
                t = g.term(ctx, eval(*mt, ctx.env(), ty), 10);
            } catch (const GenExhausted&) {
                continue;
            }
            ++tried;
            std::string ts = print_term(*mt, t, names);
            std::string as = print_type(*mt, ty, names);
            INFO(name << ": " << ts);
            CHECK(term_equal(*mt, parse_term(*mt, ts, theta, names), t));
            CHECK(term_equal(*mt, parse_type(*mt, as, theta, names), ty));
        }
    }
    CHECK(tried > 150);
}
