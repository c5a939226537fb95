#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mtt/check.hpp"
#include "mtt/normal.hpp"
#include "mtt/surface.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kTypeError = 1;
constexpr int kParseError = 2;

struct Options {
    std::string file;
    std::string only;
    std::string theory;
    bool print_core = false;
};

int exit_code(mtt::SurfaceError::Kind k) {
    return k == mtt::SurfaceError::Kind::Mode ? kTypeError : kParseError;
}

int run(const Options& opt, bool normalize) {
    std::ifstream in(opt.file);
    if (!in) {
        std::cerr << opt.file << ": cannot open file\n";
        return kParseError;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    std::shared_ptr<const mtt::ModeTheory> forced;
    if (!opt.theory.empty()) {
        forced = mtt::shipped_theory(opt.theory);
        if (!forced) {
            std::cerr << "unknown mode theory '" << opt.theory << "'; shipped theories:";
            for (const auto& n : mtt::shipped_theory_names()) std::cerr << ' ' << n;
            std::cerr << '\n';
            return kParseError;
        }
    }

    mtt::SourceFile src;
    try {
        src = mtt::parse_file(buf.str(), forced);
    } catch (const mtt::SurfaceError& e) {
        std::cerr << opt.file << ':' << e.what() << '\n';
        return exit_code(e.kind());
    }
    const mtt::ModeTheory& mt = *src.theory;

    std::vector<mtt::Decl> decls;
    for (const auto& d : src.decls) {
        if (opt.only.empty() || d.name == opt.only) decls.push_back(d);
    }
    if (!opt.only.empty() && decls.empty()) {
        std::cerr << opt.file << ": no declaration named '" << opt.only << "'\n";
        return kParseError;
    }

    if (opt.print_core) {
        for (const auto& d : decls) {
            std::cout << "def " << d.name << " @" << mt.mode_name(d.mode) << " : " << mtt::print_type(mt, d.type)
                      << "\n  := " << mtt::print_term(mt, d.body) << '\n';
        }
    }

    mtt::ProgramReport report = mtt::check_program(mt, decls, normalize);
    for (const auto& r : report.decls) {
        if (!r.ok) {
            std::cerr << opt.file << ':' << r.line << ':' << r.column << ": " << mtt::error_kind_name(r.kind)
                      << " in '" << r.name << "': " << r.message << '\n';
            continue;
        }
        if (normalize) {
            std::cout << r.name << " : " << mtt::show_form(mt, r.type) << '\n';
            std::cout << r.name << " = " << mtt::show_form(mt, r.normal) << '\n';
        } else {
            std::cout << r.name << " ok\n";
        }
    }
    return report.ok() ? kOk : kTypeError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Type checker and normalizer for multimodal type theory"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--mode-theory", opt.theory, "Use a shipped mode theory instead of the file's block");
    app.add_flag("--print-core", opt.print_core, "Print the elaborated core terms before checking");

    auto* check = app.add_subcommand("check", "Type-check every declaration");
    check->add_option("file", opt.file, "Source file")->required();

    auto* norm = app.add_subcommand("normalize", "Print the normal form of each declaration's type and body");
    norm->add_option("file", opt.file, "Source file")->required();
    norm->add_option("name", opt.only, "Only this declaration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kParseError;
    }
    return run(opt, norm->parsed());
}
