// grasslab: enumerate Grassmannians, run verification suites, construct reguli.
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage or resource error.

#include "grasslab/grasslab.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace grasslab;

int enumerate_command(int p, int n, const std::string& cache)
{
    if (cache.empty()) {
        auto index = build_index(p, n);
        std::cout << format_subspaces(index.field(), index.ambient(), index.elements());
        return 0;
    }
    const auto path = cache_path(cache, p, n);
    const bool existed = std::filesystem::exists(path);
    auto index = cached_index(cache, p, n);
    std::cout << (existed ? "loaded " : "wrote ") << path.string() << " (" << index.size() << " subspaces)\n";
    return 0;
}

std::vector<Handle> parse_handles(const std::string& text)
{
    std::vector<Handle> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) fail(ErrorKind::BadArgument, "bad handle '" + item + "'");
        out.push_back(Handle(v));
    }
    if (out.size() != 3) fail(ErrorKind::BadArgument, "--through needs exactly three handles");
    return out;
}

int regulus_command(int p, int n, const std::string& through)
{
    auto index = build_index(p, n);
    auto hs = parse_handles(through);
    for (auto h : hs)
        if (h >= index.size())
            fail(ErrorKind::BadArgument, "handle " + std::to_string(h) + " out of range (|G| = " +
                                             std::to_string(index.size()) + ")");
    auto r = regulus_through(index.element(hs[0]), index.element(hs[1]), index.element(hs[2]));
    std::cout << "members\n";
    for (const auto& m : r.members) std::cout << "  #" << index.handle_of(m) << ' ' << m.to_string() << '\n';
    std::cout << "directrices\n";
    for (const auto& d : r.directrices) std::cout << "  " << d.to_string() << '\n';
    return 0;
}

int verify_command(const SuiteConfig& cfg, const std::string& out, const std::string& format)
{
    auto report = run_suite(cfg);
    const std::string text = format == "json" ? to_json(report).dump(2) + "\n" : to_text(report);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        f << text;
        if (!f) fail(ErrorKind::BadArgument, "cannot write " + out);
        std::cout << (report.passed() ? "pass" : "FAIL") << ": " << report.check_count() << " checks, "
                  << report.failed_count() << " failed; report written to " << out << '\n';
    }
    return report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Grassmannians of a 2n-space over GF(p): graphs, ring line model, reguli"};
    app.require_subcommand(1);

    int p = 0, n = 0;
    std::string cache;
    auto* enumerate = app.add_subcommand("enumerate", "list G(p, n) in canonical order, or cache it");
    enumerate->add_option("--p", p, "prime field size")->required();
    enumerate->add_option("--n", n, "half the ambient dimension")->required();
    enumerate->add_option("--cache", cache, "cache directory");

    SuiteConfig cfg;
    std::string out, format = "text";
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", cfg.suite, "suite name or 'all'")
        ->check(CLI::IsMember([] {
            auto names = suite_names();
            names.push_back("all");
            return names;
        }()));
    verify->add_option("--p", cfg.p, "prime field size (optional for 'all')");
    verify->add_option("--n", cfg.n, "half the ambient dimension (optional for 'all')");
    verify->add_option("--seed", cfg.seed, "random seed");
    verify->add_option("--sample", cfg.sample, "sample size for every randomized check");
    verify->add_option("--out", out, "write the report here instead of stdout");
    verify->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--cache", cache, "cache directory for indices");
    verify->add_flag("--timings", cfg.timings, "include elapsed times (reports are then not reproducible)");

    std::string through;
    auto* regulus = app.add_subcommand("regulus", "the regulus through three mutually distant elements");
    regulus->add_option("--through", through, "three handles H0,H1,H2")->required();
    regulus->add_option("--p", p, "prime field size")->required();
    regulus->add_option("--n", n, "half the ambient dimension")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*enumerate) return enumerate_command(p, n, cache);
        if (*regulus) return regulus_command(p, n, through);
        if (!cache.empty()) cfg.cache_dir = cache;
        return verify_command(cfg, out, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
