#include "mtt/surface.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>

namespace mtt {

SurfaceError::SurfaceError(Kind kind, std::size_t line, std::size_t column, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

using K = SurfaceError::Kind;

// ---------------------------------------------------------------------------
// Lexer

struct Token {
    enum class Type { Ident, Number, Symbol, End } type;
    std::string text;
    std::size_t line;
    std::size_t column;
};

const std::set<std::string> kKeywords = {
    "def",   "mode",   "modality", "cell",     "rule",      "decider",   "thin",     "theory",
    "Pi",    "Sig",    "Bool",     "Uni",      "Mod",       "Dec",       "dec",      "true",
    "false", "if",     "return",   "then",     "else",      "box",       "letbox",   "in",
    "fst",   "snd",    "iso",      "iso-inv",  "code-pi",   "code-sig",  "code-bool", "code-mod",
    "id",    "o",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& src) {
    static const std::vector<std::string> symbols = {":=", "->", "=>", "<-", "|>", "<|", "\\", ".", "(", ")", "[",
                                                     "]",  "{",  "}",  "|",  ":",  "*",  ",",  "@", "^", "="};
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        std::size_t l = line, cl = col;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() &&
                   (ident_char(src[j]) || (src[j] == '-' && j + 1 < src.size() && ident_start(src[j + 1])))) {
                ++j;
            }
            out.push_back({Token::Type::Ident, src.substr(i, j - i), l, cl});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Type::Number, src.substr(i, j - i), l, cl});
            advance(j - i);
            continue;
        }
        bool matched = false;
        for (const auto& s : symbols) {
            if (src.compare(i, s.size(), s) == 0) {
                out.push_back({Token::Type::Symbol, s, l, cl});
                advance(s.size());
                matched = true;
                break;
            }
        }
        if (!matched) throw SurfaceError(K::Syntax, l, cl, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Type::End, "", line, col});
    return out;
}

// ---------------------------------------------------------------------------
// Cell expressions, elaborated once their modes are known

struct Word {
    bool is_id = false;
    std::optional<std::string> id_mode;
    std::vector<std::pair<std::string, Token>> names;  // outermost first
    Token at;
};

struct CellExpr {
    enum class Kind { Name, Ident, Vert, WLeft, WRight } kind;
    std::string name;
    Word word;
    std::shared_ptr<CellExpr> a;
    std::shared_ptr<CellExpr> b;
    Token at;
};
using CellPtr = std::shared_ptr<CellExpr>;

// ---------------------------------------------------------------------------
// Parser

struct ScopeEntry {
    bool is_lock;
    std::string name;
    Modality mu;
};

struct DeclInfo {
    ModeId mode;
    Term type;
    Term body;
};

class Parser {
  public:
    Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    SourceFile file(std::shared_ptr<const ModeTheory> forced) {
        header();
        if (forced) {
            mt_ = std::move(forced);
        } else if (!mt_) {
            build_theory();
        }
        SourceFile out;
        out.theory = mt_;
        while (!at_end()) out.decls.push_back(decl());
        return out;
    }

    Term closed_term(const ModeTheory& mt, ModeId mode, bool type) {
        borrowed_ = &mt;
        base_ = mode;
        return finish(type);
    }

    Term open_term(const ModeTheory& mt, const Telescope& theta, const std::vector<std::string>& names, bool type) {
        borrowed_ = &mt;
        base_ = theta.base();
        std::size_t i = 0;
        for (const auto& e : theta.entries()) {
            if (e.is_lock) {
                scope_.push_back({true, "", e.mu});
            } else {
                scope_.push_back({false, i < names.size() ? names[i] : "_", e.mu});
                ++i;
            }
        }
        return finish(type);
    }

  private:
    Term finish(bool type) {
        Term t = type ? type0() : term0();
        if (!at_end()) fail(K::Syntax, peek(), "unexpected '" + peek().text + "'");
        return t;
    }

    // -- token helpers -------------------------------------------------------
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return peek().type == Token::Type::End; }
    bool is(const std::string& s, std::size_t k = 0) const {
        const Token& t = peek(k);
        return t.type != Token::Type::End && t.text == s;
    }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool accept(const std::string& s) {
        if (!is(s)) return false;
        ++pos_;
        return true;
    }
    Token expect(const std::string& s) {
        if (!is(s)) fail(K::Syntax, peek(), "expected '" + s + "', found " + describe(peek()));
        return next();
    }
    static std::string describe(const Token& t) {
        return t.type == Token::Type::End ? "end of input" : "'" + t.text + "'";
    }
    [[noreturn]] static void fail(K kind, const Token& t, const std::string& msg) {
        throw SurfaceError(kind, t.line, t.column, msg);
    }
    Token name() {
        const Token& t = peek();
        if (t.type != Token::Type::Ident || kKeywords.count(t.text)) {
            fail(K::Syntax, t, "expected a name, found " + describe(t));
        }
        return next();
    }
    const ModeTheory& mt() const { return borrowed_ ? *borrowed_ : *mt_; }

    // -- mode theory block ---------------------------------------------------
    void header() {
        while (!at_end() && !is("def")) {
            Token kw = next();
            if (kw.text == "theory") {
                Token n = name();
                auto th = shipped_theory(n.text);
                if (!th) fail(K::Scope, n, "unknown shipped mode theory '" + n.text + "'");
                mt_ = th;
                shipped_used_ = true;
            } else if (kw.text == "mode") {
                Token n = name();
                if (find_in(pres_.modes, n.text)) fail(K::Theory, n, "mode '" + n.text + "' declared twice");
                pres_.modes.push_back(n.text);
            } else if (kw.text == "modality") {
                Token n = name();
                expect(":");
                ModeId s = header_mode(name());
                expect("->");
                ModeId t = header_mode(name());
                for (const auto& g : pres_.modalities) {
                    if (g.name == n.text) fail(K::Theory, n, "modality '" + n.text + "' declared twice");
                }
                pres_.modalities.push_back({n.text, s, t});
            } else if (kw.text == "cell") {
                Token n = name();
                expect(":");
                Word a = word();
                expect("=>");
                Word b = word();
                auto [sa, sb] = header_pair(a, b);
                pres_.cells.push_back({n.text, sa, sb});
            } else if (kw.text == "rule") {
                Word a = word();
                expect("=>");
                Word b = word();
                auto [sa, sb] = header_pair(a, b);
                pres_.rules.push_back({sa.word, sb.word});
            } else if (kw.text == "decider") {
                Token d = name();
                if (d.text == "free") {
                    pres_.decider = DeciderKind::Free;
                } else if (d.text == "table") {
                    pres_.decider = DeciderKind::Table;
                } else if (d.text == "rewrite") {
                    pres_.decider = DeciderKind::Rewrite;
                } else {
                    fail(K::Syntax, d, "unknown decider '" + d.text + "' (expected free, table or rewrite)");
                }
            } else if (kw.text == "thin") {
                pres_.thin = true;
            } else {
                fail(K::Syntax, kw, "expected a mode theory declaration or 'def', found " + describe(kw));
            }
            header_seen_ = true;
            last_header_ = kw;
        }
    }

    static bool find_in(const std::vector<std::string>& v, const std::string& s) {
        for (const auto& x : v) {
            if (x == s) return true;
        }
        return false;
    }

    ModeId header_mode(const Token& t) {
        for (std::size_t i = 0; i < pres_.modes.size(); ++i) {
            if (pres_.modes[i] == t.text) return static_cast<ModeId>(i);
        }
        fail(K::Scope, t, "unknown mode '" + t.text + "'");
    }

    // Resolves a header word against the presentation built so far.
    std::optional<Modality> header_word(const Word& w) {
        if (w.is_id) {
            if (!w.id_mode) return std::nullopt;
            Token t = w.at;
            t.text = *w.id_mode;
            return Modality::identity(header_mode(t));
        }
        Modality m;
        bool first = true;
        for (std::size_t i = w.names.size(); i-- > 0;) {
            const auto& [n, tok] = w.names[i];
            std::optional<GenId> g;
            for (std::size_t k = 0; k < pres_.modalities.size(); ++k) {
                if (pres_.modalities[k].name == n) g = static_cast<GenId>(k);
            }
            if (!g) fail(K::Scope, tok, "unknown modality '" + n + "'");
            const auto& gen = pres_.modalities[*g];
            if (first) {
                m = Modality{gen.src, gen.tgt, {*g}};
                first = false;
            } else {
                if (gen.src != m.tgt) fail(K::Theory, tok, "modality '" + n + "' does not compose here");
                m.word.push_back(*g);
                m.tgt = gen.tgt;
            }
        }
        return m;
    }

    std::pair<Modality, Modality> header_pair(const Word& a, const Word& b) {
        auto ma = header_word(a);
        auto mb = header_word(b);
        if (!ma && !mb) fail(K::Theory, a.at, "identity on both sides needs a mode: write id@mode");
        if (!ma) ma = Modality::identity(mb->tgt);
        if (!mb) mb = Modality::identity(ma->tgt);
        if (ma->src != mb->src || ma->tgt != mb->tgt) fail(K::Theory, a.at, "the two sides have different modes");
        return {*ma, *mb};
    }

    void build_theory() {
        if (!header_seen_) {
            fail(K::Theory, peek(), "no mode theory: declare one or pass --mode-theory");
        }
        if (pres_.modes.empty()) fail(K::Theory, last_header_, "the mode theory declares no modes");
        try {
            pres_.name = "file";
            mt_ = std::make_shared<const ModeTheory>(pres_);
        } catch (const ModeError& e) {
            fail(K::Theory, last_header_, std::string("mode theory rejected: ") + e.what());
        }
    }

    // -- words and modalities ------------------------------------------------
    Word word() {
        Word w;
        w.at = peek();
        if (accept("id")) {
            w.is_id = true;
            if (accept("@")) w.id_mode = name().text;
            return w;
        }
        do {
            Token n = name();
            w.names.push_back({n.text, n});
        } while (is(".") && peek(1).type == Token::Type::Ident && !kKeywords.count(peek(1).text) && accept("."));
        return w;
    }

    ModeId term_mode(const Token& t, const std::string& n) const {
        if (auto m = mt().find_mode(n)) return *m;
        fail(K::Scope, t, "unknown mode '" + n + "'");
    }

    // Word to modality. `tgt` resolves a bare `id`; when given, the result must end there.
    Modality resolve(const Word& w, std::optional<ModeId> tgt) {
        if (w.is_id) {
            if (w.id_mode) {
                ModeId m = term_mode(w.at, *w.id_mode);
                if (tgt && *tgt != m) mode_mismatch(w.at, Modality::identity(m), *tgt);
                return Modality::identity(m);
            }
            if (!tgt) fail(K::Mode, w.at, "cannot tell the mode of 'id' here: write id@mode");
            return Modality::identity(*tgt);
        }
        Modality m;
        bool first = true;
        for (std::size_t i = w.names.size(); i-- > 0;) {
            const auto& [n, tok] = w.names[i];
            auto g = mt().find_modality(n);
            if (!g) fail(K::Scope, tok, "unknown modality '" + n + "'");
            Modality gm = mt().gen(*g);
            if (first) {
                m = gm;
                first = false;
            } else {
                if (gm.src != m.tgt) fail(K::Mode, tok, "modality '" + n + "' does not compose with what follows it");
                m = compose_mod(gm, m);
            }
        }
        if (tgt && m.tgt != *tgt) mode_mismatch(w.at, m, *tgt);
        return m;
    }

    [[noreturn]] void mode_mismatch(const Token& at, const Modality& m, ModeId want) const {
        fail(K::Mode, at, "modality " + mt().show(m) + " ends at mode " + mt().mode_name(m.tgt) +
                              " but is used at mode " + mt().mode_name(want));
    }

    Modality modality(std::optional<ModeId> tgt) { return resolve(word(), tgt); }

    // -- cells ---------------------------------------------------------------
    CellPtr cell_expr() {
        CellPtr c = cell_atom();
        while (is("o") || is("<|")) {
            Token op = next();
            auto n = std::make_shared<CellExpr>();
            n->at = op;
            if (op.text == "o") {
                n->kind = CellExpr::Kind::Vert;
                n->a = c;
                n->b = cell_atom();
            } else {
                n->kind = CellExpr::Kind::WRight;
                n->a = c;
                expect("[");
                n->word = word();
                expect("]");
            }
            c = n;
        }
        return c;
    }

    CellPtr cell_atom() {
        auto n = std::make_shared<CellExpr>();
        n->at = peek();
        if (peek().type == Token::Type::Number && peek().text == "1") {
            next();
            expect("[");
            n->kind = CellExpr::Kind::Ident;
            n->word = word();
            expect("]");
            return n;
        }
        if (accept("(")) {
            CellPtr c = cell_expr();
            expect(")");
            return c;
        }
        if (accept("[")) {
            n->kind = CellExpr::Kind::WLeft;
            n->word = word();
            expect("]");
            expect("|>");
            n->a = cell_atom();
            return n;
        }
        n->kind = CellExpr::Kind::Name;
        n->name = name().text;
        return n;
    }

    // Elaborates a cell whose boundary modalities run from mode `a` to mode `b`.
    Cell2 elab_cell(const CellExpr& c, ModeId a, ModeId b) {
        switch (c.kind) {
            case CellExpr::Kind::Name: {
                auto g = mt().find_cell(c.name);
                if (!g) fail(K::Scope, c.at, "unknown 2-cell '" + c.name + "'");
                Cell2 r = gen_cell(mt(), *g);
                if (r.src().src != a || r.src().tgt != b) fail(K::Mode, c.at, "2-cell '" + c.name + "' has the wrong modes here");
                return r;
            }
            case CellExpr::Kind::Ident: {
                Modality m = resolve(c.word, b);
                if (m.src != a) fail(K::Mode, c.at, "identity cell has the wrong modes here");
                return id_cell(m);
            }
            case CellExpr::Kind::Vert: {
                Cell2 later = elab_cell(*c.a, a, b);
                Cell2 earlier = elab_cell(*c.b, a, b);
                try {
                    return vcomp(mt(), later, earlier);
                } catch (const ModeError& e) {
                    fail(K::Mode, c.at, e.what());
                }
            }
            case CellExpr::Kind::WLeft: {
                Modality w = resolve(c.word, b);
                return whisker_left(w, elab_cell(*c.a, a, w.src));
            }
            case CellExpr::Kind::WRight: {
                Modality w = c.word.is_id && !c.word.id_mode ? Modality::identity(a) : resolve(c.word, std::nullopt);
                if (w.src != a) fail(K::Mode, c.at, "whiskering modality has the wrong modes here");
                return whisker_right(elab_cell(*c.a, w.tgt, b), w);
            }
        }
        fail(K::Syntax, c.at, "malformed cell");
    }

    // -- scope ---------------------------------------------------------------
    ModeId mode() const {
        for (std::size_t i = scope_.size(); i-- > 0;) {
            if (scope_[i].is_lock) return scope_[i].mu.src;
        }
        return base_;
    }

    struct Pushed {
        Parser& p;
        std::size_t n;
        ~Pushed() { p.scope_.resize(n); }
    };
    Pushed push_lock(const Modality& mu) {
        Pushed guard{*this, scope_.size()};
        scope_.push_back({true, "", mu});
        return guard;
    }
    Pushed push_var(const std::string& n, const Modality& mu) {
        Pushed guard{*this, scope_.size()};
        scope_.push_back({false, n, mu});
        return guard;
    }

    Term variable(const Token& t) {
        std::size_t k = 0;
        std::vector<Modality> locks;
        for (std::size_t i = scope_.size(); i-- > 0;) {
            const auto& e = scope_[i];
            if (e.is_lock) {
                locks.insert(locks.begin(), e.mu);
                continue;
            }
            if (e.name == t.text) {
                ModeId var_mode = e.mu.tgt;
                Modality composite = compose_all(locks, var_mode);
                Cell2 cell;
                if (accept("^")) {
                    expect("{");
                    CellPtr c = cell_expr();
                    expect("}");
                    cell = elab_cell(*c, mode(), var_mode);
                } else {
                    if (!mt().eq_mod(e.mu, composite)) {
                        fail(K::Mode, t, "variable '" + t.text + "' is annotated " + mt().show(e.mu) +
                                             " but sits behind locks " + mt().show(composite) +
                                             "; supply a key with " + t.text + "^{...}");
                    }
                    cell = id_cell(e.mu);
                }
                return tm::var(k, cell);
            }
            ++k;
        }
        auto d = decls_.find(t.text);
        if (d != decls_.end()) return tm::ann(d->second.body, d->second.type);
        fail(K::Scope, t, "unknown variable '" + t.text + "'");
    }

    // -- declarations --------------------------------------------------------
    Decl decl() {
        Token kw = expect("def");
        Token n = name();
        expect("@");
        Token m = name();
        Decl d;
        d.name = n.text;
        d.line = kw.line;
        d.column = kw.column;
        d.mode = term_mode(m, m.text);
        base_ = d.mode;
        scope_.clear();
        expect(":");
        d.type = type0();
        expect(":=");
        d.body = term0();
        if (decls_.count(d.name)) fail(K::Scope, n, "'" + d.name + "' is defined twice");
        decls_[d.name] = DeclInfo{d.mode, d.type, d.body};
        return d;
    }

    // -- types ---------------------------------------------------------------
    // `(mu | x : A)` or `(x : A)`; A is parsed under the lock.
    struct Binder {
        Modality mu;
        std::string name;
        Term type;
    };
    Binder pi_binder(bool type_dom) {
        expect("(");
        Modality mu = Modality::identity(mode());
        bool plain = peek().type == Token::Type::Ident && is(":", 1);
        if (!plain) {
            mu = modality(mode());
            expect("|");
        }
        std::string x = name().text;
        expect(":");
        Term a;
        {
            auto g = push_lock(mu);
            a = type_dom ? type0() : term0();
        }
        expect(")");
        return {mu, x, a};
    }

    Term type0() {
        if (accept("Pi")) {
            Binder b = pi_binder(true);
            expect("->");
            auto g = push_var(b.name, b.mu);
            return tm::pi(b.mu, b.type, type0());
        }
        if (accept("Sig")) {
            expect("(");
            std::string x = name().text;
            expect(":");
            Term a = type0();
            expect(")");
            expect("*");
            auto g = push_var(x, Modality::identity(mode()));
            return tm::sig(a, type0());
        }
        Term a = type_prod();
        if (accept("->")) {
            auto g = push_var("_", Modality::identity(mode()));
            return tm::pi(Modality::identity(mode()), a, type0());
        }
        return a;
    }

    // `*` binds tighter than `->`.
    Term type_prod() {
        Term a = type1();
        if (accept("*")) {
            auto g = push_var("_", Modality::identity(mode()));
            return tm::sig(a, type_prod());
        }
        return a;
    }

    Term type1() {
        if (accept("Mod")) {
            Modality mu = modality(mode());
            auto g = push_lock(mu);
            return tm::mod(mu, type_atom());
        }
        if (accept("Dec") || accept("dec")) return tm::dec(atom());
        return type_atom();
    }

    Term type_atom() {
        if (accept("Bool")) return tm::boolean();
        if (accept("Uni")) return tm::uni();
        if (accept("(")) {
            Term a = type0();
            expect(")");
            return a;
        }
        fail(K::Syntax, peek(), "expected a type, found " + describe(peek()));
    }

    // -- terms ---------------------------------------------------------------
    Term term0() {
        if (accept("\\")) return lambda();
        if (accept("if")) {
            Term s = term0();
            expect("return");
            std::string x = name().text;
            expect(".");
            Term motive;
            {
                auto g = push_var(x, Modality::identity(mode()));
                motive = type0();
            }
            expect("then");
            Term t = term0();
            expect("else");
            Term f = term0();
            return tm::ite(motive, t, f, s);
        }
        if (accept("letbox")) {
            expect("[");
            Modality mu = modality(mode());
            expect("|");
            Modality nu = modality(mu.src);
            expect("]");
            std::string x = name().text;
            expect("<-");
            Term s;
            {
                auto g = push_lock(mu);
                s = term0();
            }
            expect("return");
            std::string y = name().text;
            expect(".");
            Term motive;
            {
                auto g = push_var(y, mu);
                motive = type0();
            }
            expect("in");
            auto g = push_var(x, compose_mod(mu, nu));
            return tm::letmod(mu, nu, motive, s, term0());
        }
        if (accept("code-pi")) {
            Binder b = pi_binder(false);
            expect("->");
            auto g = push_var(b.name, b.mu);
            return tm::picode(b.mu, b.type, term0());
        }
        if (accept("code-sig")) {
            expect("(");
            std::string x = name().text;
            expect(":");
            Term a = term0();
            expect(")");
            expect("*");
            auto g = push_var(x, Modality::identity(mode()));
            return tm::sigcode(a, term0());
        }
        return term1();
    }

    Term lambda() {
        Modality mu = Modality::identity(mode());
        std::string x;
        if (accept("(")) {
            mu = modality(mode());
            expect("|");
            x = name().text;
            expect(")");
        } else {
            x = name().text;
        }
        auto g = push_var(x, mu);
        Term body = accept(".") ? term0() : lambda();
        return tm::lam(mu, body);
    }

    bool atom_start() const {
        const Token& t = peek();
        if (t.type == Token::Type::Symbol) return t.text == "(";
        if (t.type != Token::Type::Ident) return false;
        if (!kKeywords.count(t.text)) return true;
        return t.text == "true" || t.text == "false" || t.text == "code-bool";
    }

    Term term1() {
        Term head = prefix();
        for (;;) {
            if (accept("@")) {
                expect("[");
                Modality mu = modality(mode());
                expect("]");
                auto g = push_lock(mu);
                head = tm::app(mu, head, atom());
            } else if (atom_start()) {
                Modality mu = Modality::identity(mode());
                auto g = push_lock(mu);
                head = tm::app(mu, head, atom());
            } else {
                return head;
            }
        }
    }

    Term prefix() {
        if (accept("box")) {
            expect("[");
            Modality mu = modality(mode());
            expect("]");
            auto g = push_lock(mu);
            return tm::mkbox(mu, atom());
        }
        if (accept("code-mod")) {
            Modality mu = modality(mode());
            auto g = push_lock(mu);
            return tm::modcode(mu, atom());
        }
        if (accept("fst")) return tm::fst(atom());
        if (accept("snd")) return tm::snd(atom());
        if (accept("iso")) return tm::deciso(atom());
        if (accept("iso-inv")) return tm::deciso_inv(atom());
        return atom();
    }

    Term atom() {
        const Token& t = peek();
        if (accept("true")) return tm::tt();
        if (accept("false")) return tm::ff();
        if (accept("code-bool")) return tm::boolcode();
        if (accept("(")) {
            Term a = term0();
            if (accept(",")) {
                Term b = term0();
                expect(")");
                return tm::pair(a, b);
            }
            if (accept(":")) {
                Term ty = type0();
                expect(")");
                return tm::ann(a, ty);
            }
            expect(")");
            return a;
        }
        if (t.type == Token::Type::Ident && !kKeywords.count(t.text)) {
            Token n = next();
            return variable(n);
        }
        fail(K::Syntax, t, "expected a term, found " + describe(t));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ModeTheory::Presentation pres_;
    std::shared_ptr<const ModeTheory> mt_;
    const ModeTheory* borrowed_ = nullptr;
    bool header_seen_ = false;
    bool shipped_used_ = false;
    Token last_header_{Token::Type::End, "", 1, 1};
    ModeId base_ = 0;
    std::vector<ScopeEntry> scope_;
    std::map<std::string, DeclInfo> decls_;
};

// ---------------------------------------------------------------------------
// Printer

class Printer {
  public:
    Printer(const ModeTheory& mt, std::vector<std::string> names) : mt_(mt), names_(std::move(names)) {}

    // prec 0: anything; 1: application level; 2: atom.
    std::string term(const Term& t, int prec) {
        switch (t->tag) {
            case Tag::Var: {
                std::size_t n = names_.size();
                std::string x = t->index < n ? names_[n - 1 - t->index] : "?" + std::to_string(t->index);
                return x + "^{" + mt_.show(t->cell) + "}";
            }
            case Tag::True: return "true";
            case Tag::False: return "false";
            case Tag::BoolCode: return "code-bool";
            case Tag::Pair: return "(" + term(t->kids[0], 0) + ", " + term(t->kids[1], 0) + ")";
            case Tag::Ann: return "(" + term(t->kids[0], 0) + " : " + type(t->kids[1], 0) + ")";
            case Tag::Lam: {
                std::string x = bind();
                std::string s = "\\(" + mod(t->mu) + " | " + x + "). " + term(t->kids[0], 0);
                unbind();
                return wrap(s, prec, 0);
            }
            case Tag::App:
                return wrap(term(t->kids[0], 1) + " @[" + mod(t->mu) + "] " + term(t->kids[1], 2), prec, 1);
            case Tag::Fst: return wrap("fst " + term(t->kids[0], 2), prec, 1);
            case Tag::Snd: return wrap("snd " + term(t->kids[0], 2), prec, 1);
            case Tag::DecIso: return wrap("iso " + term(t->kids[0], 2), prec, 1);
            case Tag::DecIsoInv: return wrap("iso-inv " + term(t->kids[0], 2), prec, 1);
            case Tag::MkBox: return wrap("box[" + mod(t->mu) + "] " + term(t->kids[0], 2), prec, 1);
            case Tag::ModCode: return wrap("code-mod " + mod(t->mu) + " " + term(t->kids[0], 2), prec, 1);
            case Tag::If: {
                std::string s = "if " + term(t->kids[3], 0) + " return ";
                std::string x = bind();
                s += x + ". " + type(t->kids[0], 0);
                unbind();
                s += " then " + term(t->kids[1], 0) + " else " + term(t->kids[2], 0);
                return wrap(s, prec, 0);
            }
            case Tag::LetMod: {
                std::string s = "letbox[" + mod(t->mu) + "|" + mod(t->nu) + "] ";
                std::string scrut = term(t->kids[1], 0);
                std::string y = bind();
                std::string motive = type(t->kids[0], 0);
                unbind();
                std::string x = bind();
                std::string body = term(t->kids[2], 0);
                unbind();
                s += x + " <- " + scrut + " return " + y + ". " + motive + " in " + body;
                return wrap(s, prec, 0);
            }
            case Tag::PiCode: {
                std::string a = term(t->kids[0], 0);
                std::string x = bind();
                std::string s = "code-pi (" + mod(t->mu) + " | " + x + " : " + a + ") -> " + term(t->kids[1], 0);
                unbind();
                return wrap(s, prec, 0);
            }
            case Tag::SigCode: {
                std::string a = term(t->kids[0], 0);
                std::string x = bind();
                std::string s = "code-sig (" + x + " : " + a + ") * " + term(t->kids[1], 0);
                unbind();
                return wrap(s, prec, 0);
            }
            default:
                return "(" + type(t, 0) + " : Uni)";
        }
    }

    std::string type(const Term& a, int prec) {
        switch (a->tag) {
            case Tag::Bool: return "Bool";
            case Tag::Uni: return "Uni";
            case Tag::Pi: {
                std::string dom = type(a->kids[0], 0);
                std::string x = bind();
                std::string s = "Pi (" + mod(a->mu) + " | " + x + " : " + dom + ") -> " + type(a->kids[1], 0);
                unbind();
                return wrap(s, prec, 0);
            }
            case Tag::Sig: {
                std::string dom = type(a->kids[0], 0);
                std::string x = bind();
                std::string s = "Sig (" + x + " : " + dom + ") * " + type(a->kids[1], 0);
                unbind();
                return wrap(s, prec, 0);
            }
            case Tag::Mod: return wrap("Mod " + mod(a->mu) + " " + type(a->kids[0], 2), prec, 1);
            case Tag::Dec: return wrap("Dec " + term(a->kids[0], 2), prec, 1);
            default:
                return "(" + term(a, 0) + ")";
        }
    }

  private:
    static std::string wrap(const std::string& s, int prec, int own) { return prec > own ? "(" + s + ")" : s; }
    std::string mod(const Modality& mu) const { return mt_.show(mu); }
    std::string bind() {
        std::string x = "x" + std::to_string(names_.size());
        names_.push_back(x);
        return x;
    }
    void unbind() { names_.pop_back(); }

    const ModeTheory& mt_;
    std::vector<std::string> names_;
};

}  // namespace

SourceFile parse_file(const std::string& text, std::shared_ptr<const ModeTheory> theory) {
    Parser p(lex(text));
    return p.file(std::move(theory));
}

Term parse_term(const ModeTheory& mt, const std::string& text, ModeId mode) {
    Parser p(lex(text));
    return p.closed_term(mt, mode, false);
}

Term parse_type(const ModeTheory& mt, const std::string& text, ModeId mode) {
    Parser p(lex(text));
    return p.closed_term(mt, mode, true);
}

Term parse_term(const ModeTheory& mt, const std::string& text, const Telescope& theta,
                const std::vector<std::string>& names) {
    Parser p(lex(text));
    return p.open_term(mt, theta, names, false);
}

Term parse_type(const ModeTheory& mt, const std::string& text, const Telescope& theta,
                const std::vector<std::string>& names) {
    Parser p(lex(text));
    return p.open_term(mt, theta, names, true);
}

std::string print_term(const ModeTheory& mt, const Term& t, const std::vector<std::string>& free_names) {
    return Printer(mt, free_names).term(t, 0);
}

std::string print_type(const ModeTheory& mt, const Term& a, const std::vector<std::string>& free_names) {
    return Printer(mt, free_names).type(a, 0);
}

}  // namespace mtt
