#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <jetvar/commands.hpp>

int main(int argc, char **argv)
{
    CLI::App app{"jetvar: variational calculus on jet spaces"};
    app.footer("Commands: el, helmholtz, momentum, inverse, trivial, check\n"
               "Exit codes: 0 ok, 1 usage or I/O, 2 parse, 3 precondition, 4 invariant");

    const std::vector<std::string> commands(std::begin(jetvar::command_names), std::end(jetvar::command_names));
    std::string command;
    std::string path;
    std::string format = "text";
    std::string gauge = "lex";
    std::optional<std::uint32_t> order_cap;

    app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(commands));
    app.add_option("file", path, "Problem file, '-' for standard input")->required();
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "latex"}));
    app.add_option("--gauge", gauge, "Momentum gauge: natural, quasisym or lex");
    app.add_option("--order-cap", order_cap, "Largest Lagrangian order searched by inverse");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : jetvar::exit_code::usage;
    }

    jetvar::RunOptions options;
    try {
        options.format = jetvar::parse_format(format);
        options.gauge = jetvar::parse_gauge(gauge);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return jetvar::exit_code::usage;
    }
    options.order_cap = order_cap;

    std::ostringstream text;
    if (path == "-") {
        text << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "error: cannot read '" << path << "'\n";
            return jetvar::exit_code::usage;
        }
        text << in.rdbuf();
    }
    return jetvar::run_command(command, options, text.str(), std::cout, std::cerr);
}
