#include "mtt/modeth.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace mtt {

Modality compose_mod(const Modality& outer, const Modality& inner) {
    if (inner.tgt != outer.src) {
        throw ModeError("cannot compose modalities: inner ends at mode " + std::to_string(inner.tgt) +
                        " but outer starts at mode " + std::to_string(outer.src));
    }
    Modality r{inner.src, outer.tgt, inner.word};
    r.word.insert(r.word.end(), outer.word.begin(), outer.word.end());
    return r;
}

Modality compose_all(const std::vector<Modality>& mods, ModeId mode) {
    if (mods.empty()) return Modality::identity(mode);
    Modality acc = mods.back();
    for (std::size_t i = mods.size() - 1; i-- > 0;) acc = compose_mod(mods[i], acc);
    return acc;
}

bool Cell2::is_identity() const {
    switch (kind()) {
        case Kind::Identity:
            return true;
        case Kind::Generator:
            return false;
        case Kind::Vertical:
            return first().is_identity() && second().is_identity();
        case Kind::WhiskerLeft:
        case Kind::WhiskerRight:
            return first().is_identity();
    }
    return false;
}

Cell2 id_cell(const Modality& mu) {
    auto n = std::make_shared<Cell2::Node>();
    n->kind = Cell2::Kind::Identity;
    n->src = mu;
    n->tgt = mu;
    return Cell2(std::move(n));
}

Cell2 gen_cell(const ModeTheory& mt, GenId g) {
    const auto& cg = mt.cell_gen(g);
    auto n = std::make_shared<Cell2::Node>();
    n->kind = Cell2::Kind::Generator;
    n->src = cg.src;
    n->tgt = cg.tgt;
    n->gen = g;
    return Cell2(std::move(n));
}

Cell2 vcomp(const ModeTheory& mt, const Cell2& later, const Cell2& earlier) {
    if (!mt.eq_mod(earlier.tgt(), later.src())) {
        throw ModeError("vertical composite: " + mt.show(earlier) + " ends at " + mt.show(earlier.tgt()) + " but " +
                        mt.show(later) + " starts at " + mt.show(later.src()));
    }
    auto n = std::make_shared<Cell2::Node>();
    n->kind = Cell2::Kind::Vertical;
    n->src = earlier.src();
    n->tgt = later.tgt();
    n->children = {later, earlier};
    return Cell2(std::move(n));
}

Cell2 whisker_left(const Modality& nu, const Cell2& alpha) {
    auto n = std::make_shared<Cell2::Node>();
    n->kind = Cell2::Kind::WhiskerLeft;
    n->src = compose_mod(nu, alpha.src());
    n->tgt = compose_mod(nu, alpha.tgt());
    n->whisker = nu;
    n->children = {alpha};
    return Cell2(std::move(n));
}

Cell2 whisker_right(const Cell2& alpha, const Modality& nu) {
    auto n = std::make_shared<Cell2::Node>();
    n->kind = Cell2::Kind::WhiskerRight;
    n->src = compose_mod(alpha.src(), nu);
    n->tgt = compose_mod(alpha.tgt(), nu);
    n->whisker = nu;
    n->children = {alpha};
    return Cell2(std::move(n));
}

Cell2 hcomp(const ModeTheory& mt, const Cell2& alpha, const Cell2& beta) {
    // (α ⋆ β) = (α.tgt ∘ β) · (α ∘ β.src)
    return vcomp(mt, whisker_left(alpha.tgt(), beta), whisker_right(alpha, beta.src()));
}

namespace {

bool shortlex_less(const std::vector<GenId>& a, const std::vector<GenId>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::optional<std::size_t> find_sub(const std::vector<GenId>& w, const std::vector<GenId>& pat) {
    if (pat.size() > w.size()) return std::nullopt;
    for (std::size_t i = 0; i + pat.size() <= w.size(); ++i) {
        if (std::equal(pat.begin(), pat.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) return i;
    }
    return std::nullopt;
}

}  // namespace

ModeTheory::ModeTheory(Presentation p) : p_(std::move(p)) {
    const auto nmodes = static_cast<ModeId>(p_.modes.size());
    if (nmodes == 0) throw ModeError("mode theory '" + p_.name + "' declares no modes");
    auto mode_ok = [&](ModeId m) { return m >= 0 && m < nmodes; };
    for (const auto& g : p_.modalities) {
        if (!mode_ok(g.src) || !mode_ok(g.tgt)) throw ModeError("modality '" + g.name + "' has an unknown mode");
    }
    for (const auto& c : p_.cells) {
        if (!well_formed(c.src) || !well_formed(c.tgt)) {
            throw ModeError("cell '" + c.name + "' has an ill-formed boundary");
        }
        if (c.src.src != c.tgt.src || c.src.tgt != c.tgt.tgt) {
            throw ModeError("cell '" + c.name + "' has non-parallel source and target");
        }
    }
    switch (p_.decider) {
        case DeciderKind::Free:
            if (!p_.rules.empty()) throw ModeError("free decider does not accept rewrite rules");
            break;
        case DeciderKind::Rewrite:
            check_rules();
            p_.thin = true;
            break;
        case DeciderKind::Table:
            check_rules();
            p_.thin = true;
            build_table();
            break;
    }
}

std::optional<ModeId> ModeTheory::find_mode(const std::string& name) const {
    for (std::size_t i = 0; i < p_.modes.size(); ++i) {
        if (p_.modes[i] == name) return static_cast<ModeId>(i);
    }
    return std::nullopt;
}

std::optional<GenId> ModeTheory::find_modality(const std::string& name) const {
    for (std::size_t i = 0; i < p_.modalities.size(); ++i) {
        if (p_.modalities[i].name == name) return static_cast<GenId>(i);
    }
    return std::nullopt;
}

std::optional<GenId> ModeTheory::find_cell(const std::string& name) const {
    for (std::size_t i = 0; i < p_.cells.size(); ++i) {
        if (p_.cells[i].name == name) return static_cast<GenId>(i);
    }
    return std::nullopt;
}

Modality ModeTheory::gen(GenId g) const {
    const auto& mg = p_.modalities.at(g);
    return Modality{mg.src, mg.tgt, {g}};
}

bool ModeTheory::well_formed(const Modality& mu) const {
    const auto nmodes = static_cast<ModeId>(p_.modes.size());
    if (mu.src < 0 || mu.src >= nmodes || mu.tgt < 0 || mu.tgt >= nmodes) return false;
    ModeId cur = mu.src;
    for (GenId g : mu.word) {
        if (g < 0 || g >= static_cast<GenId>(p_.modalities.size())) return false;
        if (p_.modalities[g].src != cur) return false;
        cur = p_.modalities[g].tgt;
    }
    return cur == mu.tgt;
}

std::vector<GenId> ModeTheory::rewrite(std::vector<GenId> w) const {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : p_.rules) {
            if (auto at = find_sub(w, r.lhs)) {
                auto pos = w.begin() + static_cast<std::ptrdiff_t>(*at);
                w.erase(pos, pos + static_cast<std::ptrdiff_t>(r.lhs.size()));
                w.insert(w.begin() + static_cast<std::ptrdiff_t>(*at), r.rhs.begin(), r.rhs.end());
                changed = true;
                break;
            }
        }
    }
    return w;
}

void ModeTheory::check_rules() const {
    for (const auto& r : p_.rules) {
        if (r.lhs.empty()) throw ModeError("rewrite rule with empty left-hand side");
        if (!shortlex_less(r.rhs, r.lhs)) {
            throw ModeError("rewrite rule is not shortlex-decreasing; termination cannot be guaranteed");
        }
        // Both sides must denote parallel words.
        auto ends = [&](const std::vector<GenId>& w) -> std::optional<std::pair<ModeId, ModeId>> {
            if (w.empty()) return std::nullopt;
            ModeId s = p_.modalities.at(w.front()).src;
            Modality m{s, p_.modalities.at(w.back()).tgt, w};
            if (!well_formed(m)) throw ModeError("rewrite rule side is not a composable word");
            return std::pair{m.src, m.tgt};
        };
        auto l = ends(r.lhs);
        auto rr = ends(r.rhs);
        if (rr && l != rr) throw ModeError("rewrite rule sides are not parallel");
        if (!rr && l->first != l->second) throw ModeError("rewrite rule collapses a non-endo word to identity");
    }
    // Local confluence on all critical pairs; with termination this gives confluence.
    for (const auto& a : p_.rules) {
        for (const auto& b : p_.rules) {
            // Overlaps: a proper suffix of a.lhs equals a proper prefix of b.lhs.
            for (std::size_t k = 1; k < a.lhs.size() && k < b.lhs.size(); ++k) {
                if (!std::equal(a.lhs.end() - static_cast<std::ptrdiff_t>(k), a.lhs.end(), b.lhs.begin())) continue;
                std::vector<GenId> left = a.rhs;
                left.insert(left.end(), b.lhs.begin() + static_cast<std::ptrdiff_t>(k), b.lhs.end());
                std::vector<GenId> right(a.lhs.begin(), a.lhs.end() - static_cast<std::ptrdiff_t>(k));
                right.insert(right.end(), b.rhs.begin(), b.rhs.end());
                if (rewrite(left) != rewrite(right)) throw ModeError("rewrite rules are not confluent");
            }
            // Inclusions: b.lhs occurs inside a.lhs.
            if (&a != &b && b.lhs.size() <= a.lhs.size()) {
                for (std::size_t i = 0; i + b.lhs.size() <= a.lhs.size(); ++i) {
                    if (!std::equal(b.lhs.begin(), b.lhs.end(), a.lhs.begin() + static_cast<std::ptrdiff_t>(i))) continue;
                    std::vector<GenId> other(a.lhs.begin(), a.lhs.begin() + static_cast<std::ptrdiff_t>(i));
                    other.insert(other.end(), b.rhs.begin(), b.rhs.end());
                    other.insert(other.end(), a.lhs.begin() + static_cast<std::ptrdiff_t>(i + b.lhs.size()), a.lhs.end());
                    if (rewrite(a.rhs) != rewrite(other)) throw ModeError("rewrite rules are not confluent");
                }
            }
        }
    }
}

void ModeTheory::build_table() {
    constexpr std::size_t kMaxClasses = 512;
    std::map<std::pair<ModeId, std::vector<GenId>>, int> index;
    std::vector<ModeId> src_of;
    std::queue<int> todo;
    auto intern = [&](ModeId src, ModeId tgt, std::vector<GenId> w) {
        auto key = std::pair{src, w};
        if (auto it = index.find(key); it != index.end()) return it->second;
        int id = static_cast<int>(table_words_.size());
        if (table_words_.size() >= kMaxClasses) {
            throw ModeError("table decider needs finitely many modalities; '" + p_.name + "' exceeds " +
                            std::to_string(kMaxClasses));
        }
        index.emplace(key, id);
        table_words_.push_back(std::move(w));
        table_mode_.push_back(tgt);
        src_of.push_back(src);
        table_next_.emplace_back(p_.modalities.size(), -1);
        todo.push(id);
        return id;
    };
    for (ModeId m = 0; m < static_cast<ModeId>(p_.modes.size()); ++m) table_identity_.push_back(intern(m, m, {}));
    while (!todo.empty()) {
        int c = todo.front();
        todo.pop();
        for (GenId g = 0; g < static_cast<GenId>(p_.modalities.size()); ++g) {
            if (p_.modalities[g].src != table_mode_[c]) continue;
            auto w = table_words_[c];
            w.push_back(g);
            int n = intern(src_of[c], p_.modalities[g].tgt, rewrite(std::move(w)));
            table_next_[c][g] = n;
        }
    }
}

std::size_t ModeTheory::table_class(const Modality& mu) const {
    if (p_.decider != DeciderKind::Table) throw ModeError("table_class on a non-table theory");
    int c = table_identity_.at(mu.src);
    for (GenId g : mu.word) c = table_next_.at(c).at(g);
    return static_cast<std::size_t>(c);
}

std::vector<GenId> ModeTheory::normal_word(const Modality& mu) const {
    switch (p_.decider) {
        case DeciderKind::Free:
            return mu.word;
        case DeciderKind::Rewrite:
            return rewrite(mu.word);
        case DeciderKind::Table:
            return table_words_.at(table_class(mu));
    }
    return mu.word;
}

bool ModeTheory::eq_mod(const Modality& mu, const Modality& nu) const {
    if (mu.src != nu.src || mu.tgt != nu.tgt) return false;
    switch (p_.decider) {
        case DeciderKind::Free:
            return mu.word == nu.word;
        case DeciderKind::Rewrite:
            return rewrite(mu.word) == rewrite(nu.word);
        case DeciderKind::Table:
            return table_class(mu) == table_class(nu);
    }
    return false;
}

std::vector<CellStep> ModeTheory::flatten(const Cell2& a) const {
    switch (a.kind()) {
        case Cell2::Kind::Identity:
            return {};
        case Cell2::Kind::Generator:
            return {CellStep{0, a.generator()}};
        case Cell2::Kind::Vertical: {
            auto s = flatten(a.second());
            auto t = flatten(a.first());
            s.insert(s.end(), t.begin(), t.end());
            return s;
        }
        case Cell2::Kind::WhiskerLeft:
            return flatten(a.first());
        case Cell2::Kind::WhiskerRight: {
            auto s = flatten(a.first());
            for (auto& st : s) st.offset += a.whisker().word.size();
            return s;
        }
    }
    return {};
}

std::vector<CellStep> ModeTheory::canonical_steps(const Cell2& a) const {
    auto start = flatten(a);
    if (start.size() < 2) return start;
    auto len = [&](const Modality& m) { return m.word.size(); };
    // Adjacent steps commute by interchange when their regions are disjoint.
    auto neighbours = [&](const std::vector<CellStep>& s) {
        std::vector<std::vector<CellStep>> out;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            const auto& x = s[i];
            const auto& y = s[i + 1];
            std::size_t xs = len(p_.cells[x.gen].src), xt = len(p_.cells[x.gen].tgt);
            std::size_t ys = len(p_.cells[y.gen].src), yt = len(p_.cells[y.gen].tgt);
            if (y.offset + ys <= x.offset) {
                auto t = s;
                t[i] = CellStep{y.offset, y.gen};
                t[i + 1] = CellStep{x.offset - ys + yt, x.gen};
                out.push_back(std::move(t));
            }
            if (y.offset >= x.offset + xt) {
                auto t = s;
                t[i] = CellStep{y.offset - xt + xs, y.gen};
                t[i + 1] = CellStep{x.offset, x.gen};
                out.push_back(std::move(t));
            }
        }
        return out;
    };
    constexpr std::size_t kMaxStates = 200000;
    std::set<std::vector<CellStep>> seen{start};
    std::queue<std::vector<CellStep>> todo;
    todo.push(start);
    while (!todo.empty()) {
        auto cur = std::move(todo.front());
        todo.pop();
        for (auto& n : neighbours(cur)) {
            if (seen.insert(n).second) {
                if (seen.size() > kMaxStates) throw ModeError("2-cell too large for interchange normalization");
                todo.push(std::move(n));
            }
        }
    }
    return *seen.begin();
}

bool ModeTheory::eq_cell(const Cell2& a, const Cell2& b) const {
    if (!eq_mod(a.src(), b.src()) || !eq_mod(a.tgt(), b.tgt())) return false;
    if (p_.thin) return true;
    return a.src().word == b.src().word && canonical_steps(a) == canonical_steps(b);
}

std::string ModeTheory::show(const Modality& mu) const {
    if (mu.word.empty()) return "id@" + p_.modes.at(mu.src);
    std::string s;
    for (std::size_t i = mu.word.size(); i-- > 0;) {
        s += p_.modalities.at(mu.word[i]).name;
        if (i != 0) s += ".";
    }
    return s;
}

std::string ModeTheory::show(const Cell2& a) const {
    switch (a.kind()) {
        case Cell2::Kind::Identity:
            return "1[" + show(a.src()) + "]";
        case Cell2::Kind::Generator:
            return p_.cells.at(a.generator()).name;
        case Cell2::Kind::Vertical:
            return "(" + show(a.first()) + " o " + show(a.second()) + ")";
        case Cell2::Kind::WhiskerLeft:
            return "([" + show(a.whisker()) + "] |> " + show(a.first()) + ")";
        case Cell2::Kind::WhiskerRight:
            return "(" + show(a.first()) + " <| [" + show(a.whisker()) + "])";
    }
    return "?";
}

std::string ModeTheory::show_canonical(const Cell2& a) const {
    if (p_.thin) {
        Modality s{a.src().src, a.src().tgt, normal_word(a.src())};
        Modality t{a.tgt().src, a.tgt().tgt, normal_word(a.tgt())};
        return "<" + show(s) + "=>" + show(t) + ">";
    }
    auto steps = canonical_steps(a);
    if (steps.empty()) return "1[" + show(a.src()) + "]";
    // Rebuild each step as [outer] |> (g <| [inner]) on the running word.
    std::vector<std::string> parts;
    auto word = a.src().word;
    ModeId src = a.src().src;
    for (const auto& st : steps) {
        const auto& cg = p_.cells[st.gen];
        std::vector<GenId> inner(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(st.offset));
        std::vector<GenId> outer(word.begin() + static_cast<std::ptrdiff_t>(st.offset + cg.src.word.size()), word.end());
        std::string piece = cg.name;
        if (!inner.empty()) piece = "(" + piece + " <| [" + show(Modality{src, cg.src.src, inner}) + "])";
        if (!outer.empty()) {
            ModeId otgt = p_.modalities.at(outer.back()).tgt;
            piece = "([" + show(Modality{cg.src.tgt, otgt, outer}) + "] |> " + piece + ")";
        }
        parts.push_back(piece);
        std::vector<GenId> next = inner;
        next.insert(next.end(), cg.tgt.word.begin(), cg.tgt.word.end());
        next.insert(next.end(), outer.begin(), outer.end());
        word = std::move(next);
    }
    std::string s = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) s = "(" + parts[i] + " o " + s + ")";
    return s;
}

std::shared_ptr<const ModeTheory> shipped_theory(const std::string& name) {
    ModeTheory::Presentation p;
    p.name = name;
    if (name == "trivial") {
        p.modes = {"m"};
        p.decider = DeciderKind::Table;
    } else if (name == "walking") {
        p.modes = {"n", "m"};
        p.modalities = {{"mu", 0, 1}};
    } else if (name == "adjoint") {
        // f ⊣ g with g∘f = id and counit eps : f∘g ⇒ id.
        p.modes = {"a", "b"};
        p.modalities = {{"f", 0, 1}, {"g", 1, 0}};
        p.rules = {{{0, 1}, {}}};
        p.cells = {{"eps", Modality{1, 1, {1, 0}}, Modality::identity(1)}};
        p.decider = DeciderKind::Rewrite;
    } else if (name == "pointed") {
        p.modes = {"m"};
        p.modalities = {{"l", 0, 0}};
        p.cells = {{"next", Modality::identity(0), Modality{0, 0, {0}}}};
    } else {
        return nullptr;
    }
    return std::make_shared<const ModeTheory>(std::move(p));
}

std::vector<std::string> shipped_theory_names() { return {"trivial", "walking", "adjoint", "pointed"}; }

}  // namespace mtt
