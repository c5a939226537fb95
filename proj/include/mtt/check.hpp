#ifndef MTT_CHECK_HPP
#define MTT_CHECK_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtt/modeth.hpp"
#include "mtt/nbe.hpp"
#include "mtt/normal.hpp"
#include "mtt/syntax.hpp"

namespace mtt {

enum class ErrorKind { Mismatch, Inaccessible, Mode, NotAType, NotInferable, Domain };

class TypeError : public std::runtime_error {
  public:
    TypeError(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

std::string error_kind_name(ErrorKind k);

/// A typing context paired with its semantic data: the environment of
/// reflected variables and each variable's type value with the number of
/// trailing lock entries it carries.
class CheckCtx {
  public:
    CheckCtx(const ModeTheory& mt, ModeId mode);
    /// The context of a telescope, with every type evaluated.
    static CheckCtx of(const ModeTheory& mt, const Telescope& theta);

    const ModeTheory& theory() const { return *mt_; }
    ModeId mode() const { return shape_.mode(); }
    std::size_t depth() const { return types_.size(); }
    const TeleShape& shape() const { return shape_; }
    const Env& env() const { return env_; }

    /// Γ.🔒μ. Throws TypeError if μ does not end at the current mode.
    CheckCtx lock(const Modality& mu) const;
    /// Γ.(μ | A) where A lives under `tail_locks` (whose composite is μ).
    CheckCtx extend(const TypeValue& a, const std::vector<Modality>& tail_locks) const;
    /// The value standing for the newest variable.
    const Value& newest() const { return newest_; }

    const TypeValue& type_of(std::size_t k) const { return types_.at(types_.size() - 1 - k); }
    std::size_t tail_of(std::size_t k) const { return tails_.at(tails_.size() - 1 - k); }

  private:
    const ModeTheory* mt_;
    TeleShape shape_;
    Env env_;
    std::vector<TypeValue> types_;
    std::vector<std::size_t> tails_;
    Value newest_;
};

/// Type of variable k accessed through α, transported to the current position.
TypeValue lookup_var(const CheckCtx& ctx, std::size_t k, const Cell2& alpha);

TypeValue infer(const CheckCtx& ctx, const Term& t);
void check(const CheckCtx& ctx, const Term& t, const TypeValue& type);
void check_ty(const CheckCtx& ctx, const Term& a);

bool convert_ty(const CheckCtx& ctx, const TypeValue& s, const TypeValue& t);
bool convert_tm(const CheckCtx& ctx, const TypeValue& type, const Value& v, const Value& w);

/// Printed normal form of a type value in the context.
std::string show_type(const CheckCtx& ctx, const TypeValue& t);

struct Decl {
    std::string name;
    ModeId mode = 0;
    Term type;
    Term body;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct DeclReport {
    std::string name;
    bool ok = false;
    std::size_t line = 0;
    std::size_t column = 0;
    ErrorKind kind = ErrorKind::Mismatch;
    std::string message;
    NfTy type;
    Nf normal;
};

struct ProgramReport {
    std::vector<DeclReport> decls;
    bool ok() const;
};

/// Checks each declaration in a closed context at its mode; when `normalize`
/// is set the body's normal form is recorded too.
ProgramReport check_program(const ModeTheory& mt, const std::vector<Decl>& decls, bool normalize = false);

}  // namespace mtt

#endif  // MTT_CHECK_HPP
