#ifndef MTT_SURFACE_HPP
#define MTT_SURFACE_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtt/check.hpp"
#include "mtt/modeth.hpp"
#include "mtt/normal.hpp"
#include "mtt/syntax.hpp"

namespace mtt {

/// Syntax: malformed input. Scope: unknown name. Mode: the input is
/// well-formed but ill-moded (a modality at the wrong mode, or a bare variable
/// that needs an explicit key). Theory: the mode theory block is rejected.
class SurfaceError : public std::runtime_error {
  public:
    enum class Kind { Syntax, Scope, Mode, Theory };
    SurfaceError(Kind kind, std::size_t line, std::size_t column, const std::string& msg);
    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    Kind kind_;
    std::size_t line_;
    std::size_t column_;
};

struct SourceFile {
    std::shared_ptr<const ModeTheory> theory;
    std::vector<Decl> decls;
};

/// Parses a `.mtt` file. A non-null `theory` replaces the file's own mode
/// theory block (which is still parsed for well-formedness).
SourceFile parse_file(const std::string& text, std::shared_ptr<const ModeTheory> theory = nullptr);

/// Parses a closed term or type at `mode`; earlier declarations are not visible.
Term parse_term(const ModeTheory& mt, const std::string& text, ModeId mode);
Term parse_type(const ModeTheory& mt, const std::string& text, ModeId mode);
/// Parses over a telescope whose variables are named `names` (oldest first).
Term parse_term(const ModeTheory& mt, const std::string& text, const Telescope& theta,
                const std::vector<std::string>& names);
Term parse_type(const ModeTheory& mt, const std::string& text, const Telescope& theta,
                const std::vector<std::string>& names);

/// Renders a core term or type in surface syntax that parses back to the same
/// term. Free variables are printed with the given names (innermost last);
/// bound variables are named x0, x1, ... by depth.
std::string print_term(const ModeTheory& mt, const Term& t, const std::vector<std::string>& free_names = {});
std::string print_type(const ModeTheory& mt, const Term& a, const std::vector<std::string>& free_names = {});

}  // namespace mtt

#endif  // MTT_SURFACE_HPP
