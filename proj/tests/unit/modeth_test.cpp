#include <doctest.h>

#include <random>

#include "mtt/modeth.hpp"

using namespace mtt;

namespace {

Modality gen(const ModeTheory& mt, const char* name) { return mt.gen(*mt.find_modality(name)); }
Cell2 cell(const ModeTheory& mt, const char* name) { return gen_cell(mt, *mt.find_cell(name)); }

ModeTheory free_chain() {
    ModeTheory::Presentation p;
    p.name = "chain";
    p.modes = {"p", "q", "r"};
    p.modalities = {{"a", 0, 1}, {"b", 1, 2}};
    return ModeTheory(p);
}

ModeTheory free_loops() {
    ModeTheory::Presentation p;
    p.name = "loops";
    p.modes = {"m"};
    p.modalities = {{"a", 0, 0}, {"b", 0, 0}};
    return ModeTheory(p);
}

// Reduces an innermost-first word of the adjoint theory by cancelling every
// f immediately followed by g, as a stack machine.
std::vector<GenId> cancel_fg(const std::vector<GenId>& w, GenId f, GenId g) {
    std::vector<GenId> out;
    for (GenId x : w) {
        if (x == g && !out.empty() && out.back() == f) {
            out.pop_back();
        } else {
            out.push_back(x);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("composition of modalities") {
    auto walking = shipped_theory("walking");
    Modality mu = gen(*walking, "mu");
    CHECK(compose_mod(Modality::identity(mu.tgt), mu) == mu);
    CHECK(compose_mod(mu, Modality::identity(mu.src)) == mu);

    ModeTheory chain = free_chain();
    Modality ba = compose_mod(gen(chain, "b"), gen(chain, "a"));
    CHECK(ba.word == std::vector<GenId>{0, 1});
    CHECK(ba.src == 0);
    CHECK(ba.tgt == 2);
    CHECK_THROWS_AS(compose_mod(gen(chain, "a"), gen(chain, "b")), ModeError);
}

TEST_CASE("compose_all puts the first element outermost") {
    ModeTheory chain = free_chain();
    Modality a = gen(chain, "a"), b = gen(chain, "b");
    CHECK(compose_all({b, a}, 2) == compose_mod(b, a));
    CHECK(compose_all({}, 1) == Modality::identity(1));
}

TEST_CASE("modality equality") {
    ModeTheory loops = free_loops();
    Modality a = gen(loops, "a"), b = gen(loops, "b");
    CHECK(loops.eq_mod(a, a));
    CHECK_FALSE(loops.eq_mod(compose_mod(b, a), compose_mod(a, b)));

    auto adj = shipped_theory("adjoint");
    Modality f = gen(*adj, "f"), g = gen(*adj, "g");
    CHECK(adj->eq_mod(compose_mod(g, f), Modality::identity(0)));
    CHECK_FALSE(adj->eq_mod(compose_mod(f, g), Modality::identity(1)));
}

TEST_CASE("adjoint decider agrees with cancellation on random words") {
    auto adj = shipped_theory("adjoint");
    GenId f = *adj->find_modality("f"), g = *adj->find_modality("g");
    std::mt19937_64 rng(11);
    auto word_at = [&](ModeId start, std::size_t len) {
        Modality m = Modality::identity(start);
        for (std::size_t i = 0; i < len; ++i) m = compose_mod(adj->gen(m.tgt == 0 ? f : g), m);
        return m;
    };
    for (int i = 0; i < 300; ++i) {
        ModeId s = static_cast<ModeId>(rng() % 2);
        std::size_t la = rng() % 7, lb = rng() % 7;
        Modality x = word_at(s, la), y = word_at(s, lb);
        if (x.tgt != y.tgt) continue;
        bool oracle = cancel_fg(x.word, f, g) == cancel_fg(y.word, f, g);
        CHECK(adj->eq_mod(x, y) == oracle);
    }
}

TEST_CASE("composition is associative up to the decider") {
    auto adj = shipped_theory("adjoint");
    Modality f = gen(*adj, "f"), g = gen(*adj, "g");
    Modality gf = compose_mod(g, f), fg = compose_mod(f, g);
    CHECK(adj->eq_mod(compose_mod(compose_mod(f, gf), g), compose_mod(f, compose_mod(gf, g))));
    CHECK(adj->eq_mod(compose_mod(compose_mod(fg, fg), f), compose_mod(fg, compose_mod(fg, f))));
}

TEST_CASE("identity and unit laws on cells") {
    auto pointed = shipped_theory("pointed");
    Modality l = gen(*pointed, "l");
    Cell2 next = cell(*pointed, "next");
    Cell2 idl = id_cell(l);
    CHECK(id_cell(Modality::identity(0)).is_identity());
    CHECK(pointed->eq_cell(vcomp(*pointed, idl, idl), idl));
    CHECK(pointed->eq_cell(whisker_left(l, idl), id_cell(compose_mod(l, l))));
    CHECK(pointed->eq_cell(vcomp(*pointed, next, id_cell(next.src())), next));
    CHECK(pointed->eq_cell(vcomp(*pointed, id_cell(next.tgt()), next), next));
    CHECK(pointed->eq_cell(whisker_left(Modality::identity(0), next), next));
    CHECK(pointed->eq_cell(whisker_right(idl, l), id_cell(compose_mod(l, l))));
}

TEST_CASE("cell boundaries") {
    auto pointed = shipped_theory("pointed");
    Modality l = gen(*pointed, "l");
    Cell2 next = cell(*pointed, "next");
    Cell2 wl = whisker_left(l, next);
    CHECK(pointed->eq_mod(wl.src(), l));
    CHECK(pointed->eq_mod(wl.tgt(), compose_mod(l, l)));
    Cell2 two = vcomp(*pointed, wl, next);
    CHECK(pointed->eq_mod(two.src(), Modality::identity(0)));
    CHECK(pointed->eq_mod(two.tgt(), compose_mod(l, l)));
    CHECK_THROWS_AS(vcomp(*pointed, next, next), ModeError);
}

TEST_CASE("interchange in the free theory") {
    auto pointed = shipped_theory("pointed");
    Modality l = gen(*pointed, "l"), id = Modality::identity(0);
    Cell2 next = cell(*pointed, "next");
    Cell2 route1 = vcomp(*pointed, whisker_left(l, next), whisker_right(next, id));
    Cell2 route2 = vcomp(*pointed, whisker_right(next, l), whisker_left(id, next));
    CHECK(pointed->eq_cell(route1, route2));
    CHECK(pointed->eq_cell(route1, hcomp(*pointed, next, next)));
    // the two whiskerings l => l.l are different cells
    CHECK_FALSE(pointed->eq_cell(whisker_left(l, next), whisker_right(next, l)));
}

TEST_CASE("trivial theory has only identity cells") {
    auto trivial = shipped_theory("trivial");
    Modality id = Modality::identity(0);
    CHECK(trivial->eq_cell(id_cell(id), vcomp(*trivial, id_cell(id), id_cell(id))));
    CHECK(trivial->eq_mod(id, compose_mod(id, id)));
}

TEST_CASE("rejected presentations") {
    ModeTheory::Presentation p;
    p.name = "bad";
    p.modes = {"m"};
    p.modalities = {{"a", 0, 0}};
    p.rules = {{{}, {0}}};
    p.decider = DeciderKind::Rewrite;
    CHECK_THROWS_AS(ModeTheory{p}, ModeError);

    ModeTheory::Presentation q;
    q.name = "bad-cell";
    q.modes = {"n", "m"};
    q.modalities = {{"mu", 0, 1}};
    q.cells = {{"c", Modality{0, 1, {0}}, Modality::identity(1)}};
    CHECK_THROWS_AS(ModeTheory{q}, ModeError);
}
