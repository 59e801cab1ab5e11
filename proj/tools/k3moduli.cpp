#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "k3moduli/k3moduli.hpp"
#include "k3moduli/report.hpp"

namespace {

constexpr int exit_input_error = 2;
constexpr int exit_precision_error = 3;

k3moduli::Gram to_gram(const std::vector<k3moduli::Int>& v)
{
    return {{{v[0], v[1]}, {v[2], v[3]}}};
}

} // namespace

int main(int argc, char** argv)
{
    using namespace k3moduli;

    CLI::App app{"Class groups, Galois orbits and fields of moduli of singular K3 surfaces"};
    app.require_subcommand(1);

    std::string format = "json";
    std::optional<int> digits;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--digits", digits, "Starting working precision in decimal digits")->check(CLI::Range(10, 1000000));

    std::vector<Int> gram;
    Int disc = 0;
    Int max_disc = 0;
    Int max_h = std::numeric_limits<Int>::max();
    bool primitive_only = false;

    auto* analyze = app.add_subcommand("analyze", "Full field-of-moduli report for a Gram matrix (4 integers, row-major)");
    analyze->add_option("gram", gram, "Gram matrix entries")->required()->expected(4);

    auto* classgroup = app.add_subcommand("classgroup", "Class group, structure and genera of a discriminant (pass after --)");
    classgroup->add_option("disc", disc, "Negative discriminant")->required();

    auto* orbit = app.add_subcommand("orbit", "Galois-conjugate orbit of a Gram matrix");
    orbit->add_option("gram", gram, "Gram matrix entries")->required()->expected(4);

    auto* classpoly = app.add_subcommand("classpoly", "Class polynomial of a discriminant (pass after --)");
    classpoly->add_option("disc", disc, "Negative discriminant")->required();

    auto* enumerate_cmd = app.add_subcommand("enumerate", "Discriminants bounded by |D| and class number");
    enumerate_cmd->add_option("--max-disc", max_disc, "Largest |D|")->required();
    enumerate_cmd->add_option("--max-h", max_h, "Largest class number");
    enumerate_cmd->add_flag("--primitive-only", primitive_only, "Omit imprimitive lattices");

    for (auto* sub : {analyze, classgroup, orbit, classpoly, enumerate_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input_error;
    }

    try {
        report::Json out;
        if (analyze->parsed())
            out = report::cmd_analyze(to_gram(gram), digits);
        else if (classgroup->parsed())
            out = report::cmd_classgroup(disc);
        else if (orbit->parsed())
            out = report::cmd_orbit(to_gram(gram));
        else if (classpoly->parsed())
            out = report::cmd_classpoly(disc, digits);
        else
            out = report::cmd_enumerate(max_disc, max_h, primitive_only);

        if (format == "json")
            std::cout << out.dump(2) << "\n";
        else
            std::cout << report::render_text(out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_precision_failure() ? exit_precision_error : exit_input_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    return EXIT_SUCCESS;
}
