#ifndef JETVAR_ERRORS_HPP
#define JETVAR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jetvar
{

// Direction or fiber index outside the chart.
struct index_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Mismatched lengths or chart dimensions.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A form does not have the contact/horizontal shape an operator requires.
struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation hit a coordinate with no assigned value.
struct unbound_variable_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Degenerate integration domain for the numeric oracle.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An operator's mathematical precondition failed. The offending symbolic
// components are carried as printable (label, expression) pairs.
class precondition_error : public std::runtime_error
{
public:
    using component = std::pair<std::string, std::string>;

    precondition_error(const std::string &what, std::vector<component> components)
        : std::runtime_error(what), components_(std::move(components))
    {
    }

    const std::vector<component> &components() const noexcept { return components_; }

private:
    std::vector<component> components_;
};

// Syntax or name-resolution failure while reading problem text. Lines are
// 1-based, columns are 0-based character offsets into the line.
class parse_error : public std::runtime_error
{
public:
    parse_error(const std::string &message, std::size_t line, std::size_t column)
        : std::runtime_error(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace jetvar

#endif
