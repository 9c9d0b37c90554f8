#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oddanom/cli.hpp"

namespace
{

using namespace oddanom;

int run(int argc, char **argv)
{
    CLI::App app{"Exact derivation and checking of cancellation identities in dimension 4r-1"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string e_model = "odd";

    cli::RunConfig cfg;
    long n_value = 0;
    int q_order = 0;
    auto *derive = app.add_subcommand("derive", "solve for h_l and verify the cancellation identities");
    derive->add_option("--r", cfg.r, "dimension parameter, manifold dimension 4r-1")->required();
    auto *n_opt = derive->add_option("--N", n_value, "concrete even rank of E (symbolic when omitted)");
    derive->add_flag("--twisted", cfg.twisted, "include the spin^c twist xi");
    auto *q_opt = derive->add_option("--q-order", q_order, "q order in half-units (default r + 4)");
    derive->add_option("--identity", cfg.identities, "restrict to these identity ids");
    derive->add_option("--e-model", e_model, "E side model: odd, even or none");
    derive->add_option("--format", format, "stdout format: text, json or latex");
    derive->add_option("--json", cfg.json_path, "also write the JSON report to this path");
    derive->add_option("--latex", cfg.latex_path, "also write the LaTeX report to this path");
    derive->add_flag("--require-printed", cfg.require_printed, "fail when a published form differs");

    std::string cc_id = "all";
    int cc_r = 2;
    bool cc_printed = false;
    std::string cc_model = "even";
    auto *cross = app.add_subcommand("crosscheck", "compare lambda-ring expansions with theta builds");
    cross->add_option("--id", cc_id, "crosscheck id or 'all'");
    cross->add_option("--r", cc_r, "dimension parameter");
    cross->add_option("--e-model", cc_model, "E side model: even or odd");
    cross->add_option("--format", format, "text or json");
    cross->add_flag("--require-printed", cc_printed, "fail when a published form differs");

    std::string form;
    int order = 4;
    int ex_r = 0;
    auto *expand = app.add_subcommand("expand", "print a q-expansion");
    expand->add_option("--form", form, "delta1, eps1, delta2, eps2, theta1..3, theta-prime, basis or a log block")
        ->required();
    expand->add_option("--order", order, "order in half-units of q");
    auto *ex_r_opt = expand->add_option("--r", ex_r, "r for basis and log blocks");
    expand->add_option("--format", format, "text or json");

    cli::NumericOptions num;
    auto *numeric = app.add_subcommand("numeric-check", "floating-point checks of the transformation laws");
    numeric->add_option("--law", num.law, "law id, all, s-relation or agreement");
    numeric->add_option("--grid", num.grid, "sample grid");
    numeric->add_option("--tol", num.tol, "residual tolerance for the laws");
    numeric->add_option("--format", format, "text or json");

    int max_r = 5;
    bool cat_twisted = false;
    auto *catalog = app.add_subcommand("catalog", "sweep r = 1..R");
    catalog->add_option("--max-r", max_r, "largest r");
    catalog->add_flag("--twisted", cat_twisted, "twisted sweep");
    catalog->add_option("--e-model", e_model, "E side model");
    catalog->add_option("--format", format, "text or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return static_cast<int>(exit_code::configuration);
    }

    try {
        const cli::Format fmt = cli::parse_format(format);
        if (*derive) {
            if (*n_opt) {
                cfg.concrete_n = n_value;
            }
            if (*q_opt) {
                cfg.q_order = q_order;
            }
            cfg.e_model = parse_emodel(e_model);
            cfg.format = fmt;
            return cli::cmd_derive(cfg, std::cout);
        }
        if (*cross) {
            return cli::cmd_crosscheck(cc_id, cc_r, parse_emodel(cc_model), fmt, cc_printed, std::cout);
        }
        if (*expand) {
            return cli::cmd_expand(form, order, *ex_r_opt ? std::optional<int>(ex_r) : std::nullopt, fmt, std::cout);
        }
        if (*numeric) {
            return cli::cmd_numeric(num, fmt, std::cout);
        }
        if (*catalog) {
            return cli::cmd_catalog(max_r, cat_twisted, parse_emodel(e_model), fmt, std::cout);
        }
    } catch (const oddanom::error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    }
    return static_cast<int>(exit_code::configuration);
}

} // namespace

int main(int argc, char **argv) { return run(argc, argv); }
