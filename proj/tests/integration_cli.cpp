// End-to-end exercises of the command-line pipeline: determinism of
// generate/run/analyze, resume behavior, exit codes, format selection and
// the out_dir environment override.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

int failures = 0;

void expect(bool condition, const std::string& what) {
    if (condition) {
        std::cout << "[ok] " << what << "\n";
    } else {
        std::cout << "[FAILED] " << what << "\n";
        ++failures;
    }
    std::cout.flush();  // keep buffers empty across the forks below
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::multiset<std::string> line_set(const std::string& path) {
    std::multiset<std::string> lines;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.insert(line);
    }
    return lines;
}

int run_cli(const std::string& cli, const std::vector<std::string>& args,
            const std::map<std::string, std::string>& env = {},
            const std::string& workdir = {}) {
    const pid_t pid = ::fork();
    if (pid == 0) {
        for (const auto& [key, value] : env) ::setenv(key.c_str(), value.c_str(), 1);
        if (!workdir.empty() && ::chdir(workdir.c_str()) != 0) _exit(125);
        std::vector<char*> argv;
        argv.push_back(const_cast<char*>(cli.c_str()));
        for (const auto& arg : args) argv.push_back(const_cast<char*>(arg.c_str()));
        argv.push_back(nullptr);
        if (::freopen("/dev/null", "w", stdout) == nullptr) _exit(126);
        if (::freopen("/dev/null", "w", stderr) == nullptr) _exit(126);
        ::execv(cli.c_str(), argv.data());
        _exit(127);
    }
    int status = 0;
    ::waitpid(pid, &status, 0);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: integration_cli <path-to-qaoabench>\n";
        return 2;
    }
    // Children may chdir before exec, so resolve the binary path first.
    const std::string cli = fs::absolute(argv[1]).string();

    const fs::path dir =
        fs::temp_directory_path() / ("qaoabench_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    const std::string manifest = (dir / "manifest.json").string();
    const std::string journal = (dir / "journal.jsonl").string();
    const std::string out_dir = (dir / "out").string();
    const std::string config = (dir / "config.json").string();
    {
        std::ofstream out(config);
        out << "{\n"
            << "  \"manifest\": \"" << manifest << "\",\n"
            << "  \"journal\": \"" << journal << "\",\n"
            << "  \"out_dir\": \"" << out_dir << "\",\n"
            << "  \"n\": 6, \"e_p_values\": [0.4, 0.6], \"per_class\": 2,\n"
            << "  \"depths\": [1, 2], \"budgets\": {\"1\": 800, \"2\": 800},\n"
            << "  \"master_seed\": 99, \"workers\": 1\n"
            << "}\n";
    }

    // run before generate: missing manifest is an I/O failure.
    expect(run_cli(cli, {"--config", config, "run"}) == 3, "run without a manifest exits 3");

    expect(run_cli(cli, {"--config", config, "generate"}) == 0, "generate exits 0");
    const std::string manifest_once = read_file(manifest);
    expect(run_cli(cli, {"--config", config, "generate"}) == 0, "generate reruns cleanly");
    expect(read_file(manifest) == manifest_once, "generate is byte-deterministic");

    // analyze before run: empty journal is a failure.
    expect(run_cli(cli, {"--config", config, "analyze"}) != 0, "analyze without records fails");

    expect(run_cli(cli, {"--config", config, "run"}) == 0, "run exits 0");
    const auto journal_once = line_set(journal);
    expect(journal_once.size() == 8, "journal holds one record per (graph, p)");

    expect(run_cli(cli, {"--config", config, "run"}) == 0, "resumed run exits 0");
    expect(line_set(journal) == journal_once, "resume adds nothing to a complete journal");

    expect(run_cli(cli, {"--config", config, "check"}) == 0, "check passes on a fresh journal");
    expect(run_cli(cli, {"--config", config, "run", "--check"}) == 0, "run --check passes");

    // A record that does not re-simulate is reported as a mismatch.
    {
        const std::string saved = read_file(journal);
        std::string tampered = saved;
        const std::string key = "\"best_f\":";
        const std::size_t at = tampered.find(key);
        if (at != std::string::npos) {
            tampered.insert(at + key.size(), "9");  // prepend a digit: wrong value
        }
        std::ofstream out(journal, std::ios::binary | std::ios::trunc);
        out << tampered;
        out.close();
        expect(run_cli(cli, {"--config", config, "check"}) == 1, "check flags a tampered record");
        std::ofstream restore(journal, std::ios::binary | std::ios::trunc);
        restore << saved;
    }

    expect(run_cli(cli, {"--config", config, "analyze"}) == 0, "analyze exits 0");
    expect(fs::exists(out_dir + "/boxplot_p.svg"), "analyze writes boxplot_p.svg");
    expect(fs::exists(out_dir + "/boxplot_p.csv"), "analyze writes boxplot_p.csv");
    expect(fs::exists(out_dir + "/boxplot_ep.svg"), "analyze writes boxplot_ep.svg");
    expect(fs::exists(out_dir + "/scatter_ged.svg"), "analyze writes scatter_ged.svg");
    expect(fs::exists(out_dir + "/concentration_p1.svg"), "analyze writes concentration_p1.svg");
    expect(fs::exists(out_dir + "/concentration_p2.csv"), "analyze writes concentration_p2.csv");

    // Determinism: a fresh pipeline under another root produces the same
    // journal (as a record set) and byte-identical artifacts.
    const fs::path dir2 = dir / "again";
    fs::create_directories(dir2);
    const std::string config2 = (dir2 / "config.json").string();
    const std::string journal2 = (dir2 / "journal.jsonl").string();
    const std::string out_dir2 = (dir2 / "out").string();
    {
        std::ofstream out(config2);
        out << "{\n"
            << "  \"manifest\": \"" << (dir2 / "manifest.json").string() << "\",\n"
            << "  \"journal\": \"" << journal2 << "\",\n"
            << "  \"out_dir\": \"" << out_dir2 << "\",\n"
            << "  \"n\": 6, \"e_p_values\": [0.4, 0.6], \"per_class\": 2,\n"
            << "  \"depths\": [1, 2], \"budgets\": {\"1\": 800, \"2\": 800},\n"
            << "  \"master_seed\": 99, \"workers\": 2\n"
            << "}\n";
    }
    expect(run_cli(cli, {"--config", config2, "generate"}) == 0, "second generate exits 0");
    expect(read_file((dir2 / "manifest.json").string()) == manifest_once,
           "manifests agree across roots");
    expect(run_cli(cli, {"--config", config2, "run"}) == 0, "second run exits 0");
    expect(line_set(journal2) == journal_once,
           "journals agree as record sets across roots and worker counts");
    expect(run_cli(cli, {"--config", config2, "analyze"}) == 0, "second analyze exits 0");
    for (const std::string name :
         {"boxplot_p.svg", "boxplot_p.csv", "boxplot_ep.csv", "scatter_ged.csv",
          "concentration_p1.csv", "concentration_p2.svg"}) {
        expect(read_file(out_dir + "/" + name) == read_file(out_dir2 + "/" + name),
               "artifact " + name + " is byte-identical across runs");
    }

    // --fresh discards the journal and recomputes it.
    expect(run_cli(cli, {"--config", config, "run", "--fresh"}) == 0, "run --fresh exits 0");
    expect(line_set(journal) == journal_once, "--fresh reproduces the same records");

    // Format selection.
    fs::remove_all(out_dir);
    expect(run_cli(cli, {"--config", config, "analyze", "--format", "csv"}) == 0,
           "csv-only analyze exits 0");
    expect(fs::exists(out_dir + "/boxplot_p.csv"), "csv-only analyze writes CSVs");
    expect(!fs::exists(out_dir + "/boxplot_p.svg"), "csv-only analyze writes no SVGs");

    // QAOABENCH_OUT_DIR overrides out_dir only.
    const std::string env_out = (dir / "env_out").string();
    expect(run_cli(cli, {"--config", config, "analyze"}, {{"QAOABENCH_OUT_DIR", env_out}}) == 0,
           "analyze with QAOABENCH_OUT_DIR exits 0");
    expect(fs::exists(env_out + "/boxplot_p.svg"), "QAOABENCH_OUT_DIR redirects artifacts");

    // Without --config the built-in defaults apply: a 50-graph manifest in
    // the working directory.
    {
        const fs::path default_dir = dir / "defaults";
        fs::create_directories(default_dir);
        expect(run_cli(cli, {"generate"}, {}, default_dir.string()) == 0,
               "generate without a config exits 0");
        std::ifstream in((default_dir / "manifest.json").string());
        std::string manifest_text((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
        std::size_t ids = 0;
        for (std::size_t at = manifest_text.find("\"id\""); at != std::string::npos;
             at = manifest_text.find("\"id\"", at + 1)) {
            ++ids;
        }
        expect(ids == 50, "default manifest holds 50 graphs");
    }

    // Config errors carry their own exit code and name the field.
    const std::string bad_config = (dir / "bad.json").string();
    {
        std::ofstream out(bad_config);
        out << R"({"e_p_values": [1.5]})";
    }
    expect(run_cli(cli, {"--config", bad_config, "generate"}) == 2, "invalid e_p exits 2");
    {
        std::ofstream out(bad_config);
        out << R"({"stray_field": 1})";
    }
    expect(run_cli(cli, {"--config", bad_config, "generate"}) == 2, "unknown field exits 2");
    expect(run_cli(cli, {"--config", (dir / "missing.json").string(), "generate"}) == 3,
           "missing config file exits 3");

    fs::remove_all(dir);
    if (failures == 0) {
        std::cout << "integration_cli: all checks passed\n";
        return 0;
    }
    std::cout << "integration_cli: " << failures << " checks failed\n";
    return 1;
}
