// Command-line experiment runner: deterministic CSV tables over the radial
// log-kernel energy toolkit.
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logtm/cli.hpp"

namespace {

std::vector<long> parse_n_list(const std::string& text) {
    std::vector<long> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        if (!item.empty()) out.push_back(std::stol(item));
        pos = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial log-kernel energy experiments"};
    app.require_subcommand(1);

    logtm::cli::RunConfig cfg;
    std::string n_text, domain_text = "ball";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n-dim", cfg.n_dim, "space dimension (>= 2)")
            ->check(CLI::Range(2, 64));
        sub->add_option("--beta", cfg.beta, "growth exponent beta");
        sub->add_option("--c", cfg.c, "growth constant c")->check(CLI::PositiveNumber);
        sub->add_option("--grid", cfg.grid, "radial grid size")->check(CLI::Range(8, 100000));
        sub->add_option("--n", n_text, "comma-separated n list");
        sub->add_option("--radius", cfg.radius, "truncation radius for the space domain")
            ->check(CLI::PositiveNumber);
        sub->add_option("--angular", cfg.angular, "angular quadrature nodes")
            ->check(CLI::Range(8, 1000000));
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", cfg.out, "output CSV path (default stdout)");
        sub->add_option("--domain", domain_text, "ball|space")
            ->check(CLI::IsMember({"ball", "space"}));
        sub->add_option("--profiles", cfg.profiles, "number of random profiles");
        sub->add_option("--threads", cfg.threads, "worker threads (sweep)")
            ->check(CLI::Range(1, 256));
        return sub;
    };

    for (const char* name :
         {"dims", "verify-kernel", "rearrange-check", "moser", "sweep", "maximize", "el-check"})
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.domain = (domain_text == "space") ? logtm::Domain::space : logtm::Domain::ball;
    try {
        cfg.n_list = parse_n_list(n_text);
    } catch (const std::exception&) {
        std::fprintf(stderr, "error: --n expects a comma-separated integer list\n");
        return 2;
    }
    return logtm::cli::run(cfg);
}
