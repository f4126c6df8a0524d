#include "hopfcyc/groupoid.hpp"
#include "hopfcyc/weil.hpp"
#include "hopfcyc/workbench.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace hopfcyc;

namespace {

struct Flags {
    std::optional<int> window;
    std::optional<int> levels;
    std::optional<int> truncate;
    std::string out;
    std::string format = "text";
    std::string section = "all";
    std::string cert_dir;
    bool sequential = false;
};

void write_output(const Flags& f, const std::string& text)
{
    if (f.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(f.out, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot write " + f.out);
    file << text;
}

int run(const Flags& f, const std::string& path, std::vector<std::string> verbs)
{
    const Scenario s = load_scenario(path);
    RunOptions o;
    o.window = f.window;
    o.levels = f.levels;
    o.truncate = f.truncate;
    o.verbs = std::move(verbs);
    o.concurrent = !f.sequential;
    const RunReport report = run_scenario(s, o);

    const ReportSection section = f.section == "comparable" ? ReportSection::kComparable : ReportSection::kAll;
    if (f.format == "json")
        write_output(f, report_json(report, section).dump(2) + "\n");
    else if (f.format == "tabular")
        write_output(f, report_tabular(report));
    else
        write_output(f, report_text(report, section));

    if (!f.cert_dir.empty()) {
        std::filesystem::create_directories(f.cert_dir);
        for (const auto& t : report.tasks)
            if (t.certificate) {
                const auto file = std::filesystem::path(f.cert_dir) /
                                  ((s.name.empty() ? "scenario" : s.name) + "-task" + std::to_string(t.index) + ".json");
                std::ofstream(file, std::ios::binary) << t.certificate->dump(2) << "\n";
            }
    }
    return report.passed() ? 0 : 1;
}

int verify(const std::string& scenario, const std::string& certificate)
{
    const Scenario s = load_scenario(scenario);
    std::ifstream in(certificate, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + certificate);
    const Json cert = Json::parse(in);
    const VerifyOutcome v = verify_certificate_json(s, cert);
    switch (v.kind) {
    case VerifyOutcome::Kind::kPass:
        std::cout << "pass: " << v.message << "\n";
        return 0;
    case VerifyOutcome::Kind::kFail:
        std::cout << "fail: " << v.message << "\n";
        return 1;
    case VerifyOutcome::Kind::kReferenceError:
        std::cout << "reference error: " << v.message << "\n";
        return 2;
    }
    return 2;
}

void list_builtins()
{
    auto print = [](const char* title, const std::vector<std::string>& names) {
        std::cout << title << ":";
        for (const auto& n : names)
            std::cout << " " << n;
        std::cout << "\n";
    };
    print("algebras", builtin_algebra_names());
    print("hopf", builtin_hopf_names());
    print("groupoids", builtin_groupoid_names());
    print("lie-algebras", builtin_lie_algebra_names());
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact cyclic cohomology workbench"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--window", f.window, "Max level of every complex window")->check(CLI::NonNegativeNumber);
    app.add_option("--levels", f.levels, "Level bound for axiom and map checks, top k for psi")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--truncate", f.truncate, "Hopf tensor weight truncation")->check(CLI::NonNegativeNumber);
    app.add_option("--out", f.out, "Write the report to a file");
    app.add_option("--format", f.format, "Report format")->check(CLI::IsMember({"text", "tabular", "json"}));
    app.add_option("--section", f.section, "Report sections")->check(CLI::IsMember({"comparable", "all"}));
    app.add_option("--cert-dir", f.cert_dir, "Write certificates to this directory");
    app.add_flag("--sequential", f.sequential, "Run tasks one at a time");

    std::string scenario;
    std::string certificate;
    int code = 0;

    auto* run_all = app.add_subcommand("run", "Run every task of a scenario");
    run_all->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    run_all->callback([&] { code = run(f, scenario, {}); });

    for (const char* verb : {"check", "compute", "chi", "twist-compare", "psi", "weil"}) {
        auto* sub = app.add_subcommand(verb, std::string("Run the scenario's ") + verb + " tasks");
        sub->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
        sub->callback([&, verb] { code = run(f, scenario, {verb}); });
    }

    auto* ver = app.add_subcommand("verify", "Re-check a certificate against its scenario");
    ver->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    ver->add_option("certificate", certificate, "Certificate JSON")->required()->check(CLI::ExistingFile);
    ver->callback([&] { code = verify(scenario, certificate); });

    auto* fmt = app.add_subcommand("format", "Print a scenario in canonical form");
    fmt->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    fmt->callback([&] { write_output(f, format_scenario(load_scenario(scenario))); });

    app.add_subcommand("list", "List built-in models")->callback(list_builtins);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}
