#ifndef JETVAR_COMMANDS_HPP
#define JETVAR_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <jetvar/forms.hpp>
#include <jetvar/varcalc.hpp>

namespace jetvar
{

enum class Format { text, json, latex };

Format parse_format(std::string_view name);

namespace exit_code
{
constexpr int ok = 0;
constexpr int usage = 1;
constexpr int parse = 2;
constexpr int precondition = 3;
constexpr int invariant = 4;
} // namespace exit_code

struct InverseReport {
    Lagrangian lagrangian;
    std::uint32_t volterra_vainberg_order;
};

struct MomentumReport {
    SourceForm source;
    Momentum momentum;
    Gauge gauge;
};

struct PrimitiveReport {
    bool trivial;
    SourceForm source; // Euler-Lagrange form, zero when trivial
    Form primitive;    // meaningful only when trivial
};

struct CheckReport {
    std::vector<std::pair<std::string, bool>> results;
    bool passed() const;
};

// Each rendering ends with a newline.
std::string serialize(const SourceForm &e, Format format);
std::string serialize(const HelmholtzTensor &h, Format format);
std::string serialize(const InverseReport &r, Format format);
std::string serialize(const MomentumReport &r, Format format);
std::string serialize(const PrimitiveReport &r, Format format);
std::string serialize(const CheckReport &r, Format format);

struct RunOptions {
    Format format = Format::text;
    Gauge gauge = Gauge::lex_peel;
    std::optional<std::uint32_t> order_cap;
};

inline constexpr std::string_view command_names[] = {"el", "helmholtz", "momentum", "inverse", "trivial", "check"};

// Runs one command on problem-file text. Reports go to `out`, diagnostics to
// `err`; the return value is one of exit_code.
int run_command(std::string_view command, const RunOptions &options, std::string_view problem_text, std::ostream &out,
                std::ostream &err);

} // namespace jetvar

#endif
