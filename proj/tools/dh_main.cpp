#include "dh/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Derived p-adic heights: exact checks on finite models"};
    app.fallthrough();
    app.require_subcommand(1, 1);

    dh::CommandOptions opt;
    std::string input, format = "text";
    int ord = -1, level = -1, s_plus = -1, s_minus = -1;
    app.add_option("--input", input, "Instance file (JSON)");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", opt.seed, "Seed for synthetic instances");
    app.add_option("--max-size", opt.max_size, "Largest module order the oracles may enumerate");
    app.add_option("--max-r", opt.max_r, "Largest derived index r")->check(CLI::Range(0, 64));
    app.add_option("--ord", ord, "Target order of vanishing for synthetic instances")->check(CLI::Range(0, 64));
    app.add_option("--level", level, "Level N of synthetic instances")->check(CLI::Range(0, 6));
    app.add_option("--s-plus", s_plus, "Dimension of the + eigencomponent")->check(CLI::Range(0, 100000));
    app.add_option("--s-minus", s_minus, "Dimension of the - eigencomponent")->check(CLI::Range(0, 100000));

    app.add_subcommand("invariants", "Filtration dimensions and Iwasawa invariants of a shape or module");
    app.add_subcommand("heights", "Derived height matrices, kernels and sign laws of a pairing");
    app.add_subcommand("lfun-check", "Order of vanishing and the main identity on an lfun instance");
    app.add_subcommand("scenario", "Anticyclotomic prediction from eigencomponent dimensions");
    app.add_subcommand("generate", "Write a synthetic lfun instance file");
    app.add_subcommand("oracle", "Compare fast paths with enumeration oracles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : dh::kExitInvalid;
    }

    if (!input.empty())
        opt.input = input;
    opt.format = format == "json" ? dh::OutputFormat::Json : dh::OutputFormat::Text;
    if (ord >= 0)
        opt.ord = ord;
    if (level >= 0)
        opt.level = level;
    if (s_plus >= 0)
        opt.s_plus = s_plus;
    if (s_minus >= 0)
        opt.s_minus = s_minus;
    return dh::run_command(app.get_subcommands().front()->get_name(), opt, std::cout, std::cerr);
}
