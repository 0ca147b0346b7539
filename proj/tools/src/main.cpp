#include <CLI11.hpp>

#include <iostream>

#include "implab/cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace implab::cli;
    CLI::App app{"implab: parabolic implosion experiments for a family of maps of C^2"};
    app.require_subcommand(1);

    CommandOptions opt;
    std::vector<double> eps;
    std::optional<unsigned> threads;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "INI config (default: built-in scene)");
        sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
        sub->add_option("--threads", threads, "worker threads (default: IMPLAB_THREADS or all cores)");
    };
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    auto* render = app.add_subcommand("render", "render a K-slice and its boundary");
    auto* implode = app.add_subcommand("implode", "discontinuity report along the alpha-sequence");
    for (auto* s : {verify, render, implode}) common(s);
    render->add_option("--eps", eps, "perturbation eps as 're im'")->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }
    opt.threads = resolve_threads(threads);
    if (eps.size() == 2) opt.eps = implab::Complex(eps[0], eps[1]);

    if (*verify) return cmd_verify(opt, std::cout);
    if (*render) return cmd_render(opt, std::cout);
    return cmd_implode(opt, std::cout);
}
