// End-to-end checks of the command-line surface: exit codes, file
// formats, config precedence, and the documented fitting scenarios.
// Invoked by ctest with the CLI binary path as the only argument.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAILED", what.c_str());
    if (!ok) ++g_failures;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& cmd) {
    const std::string full = cmd + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::map<std::string, std::string> read_report(const fs::path& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line == "name,value") continue;
        const auto comma = line.find(',');
        if (comma != std::string::npos) kv[line.substr(0, comma)] = line.substr(comma + 1);
    }
    return kv;
}

double fit_estimate(const std::string& csv_text, const std::string& param) {
    std::stringstream ss(csv_text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string piece;
        while (std::getline(ls, piece, ',')) f.push_back(piece);
        if (f.size() >= 4 && f[2] == param) return std::stod(f[3]);
    }
    return std::nan("");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <convsim-binary>\n");
        return 2;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";
    const fs::path dir = fs::temp_directory_path() / "convsim_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // --- parameter errors exit with code 2, naming the invariant
    {
        RunResult r = run(cli + " simulate --out " + (dir / "bad").string() +
                          " --seed 1 --c 2.5 --c0 0");
        expect(r.exit_code == 2, "non-growing regime exits 2");
        expect(r.output.find("non-growing") != std::string::npos,
               "error message names the violated invariant");

        r = run(cli + " simulate --out " + (dir / "bad2").string() + " --exposure what:1");
        expect(r.exit_code == 2, "bad exposure spec exits 2");
    }

    // --- data errors exit with code 3
    {
        std::ofstream empty(dir / "empty.jsonl");
        empty.close();
        RunResult r = run(cli + " fit --input " + (dir / "empty.jsonl").string() +
                          " --target exposure");
        expect(r.exit_code == 3, "fit on an empty corpus exits 3");
    }

    // --- simulate writes both files, prints the seed, and analyze
    //     recovers the growth relation from them
    {
        RunResult r = run(cli + " simulate --out " + (dir / "bundle").string() +
                          " --seed 7 --topics 400 --gamma 0.05 --c0 0.5 --c 1.2 --M 200" +
                          " --exposure exp:0.003 --wait-a 0.001 --wait-b 1e6");
        expect(r.exit_code == 0, "simulate succeeds");
        expect(r.output.find("seed: 7") != std::string::npos, "simulate prints the seed");
        expect(fs::exists(dir / "bundle" / "events.jsonl"), "events.jsonl written");
        expect(fs::exists(dir / "bundle" / "summary.csv"), "summary.csv written");

        std::ifstream ev(dir / "bundle" / "events.jsonl");
        std::string first;
        std::getline(ev, first);
        expect(first.rfind("# convsim simulate", 0) == 0,
               "events file carries the invocation header");

        r = run(cli + " analyze --input " + (dir / "bundle" / "events.jsonl").string() +
                " --out " + (dir / "bundle_report").string());
        expect(r.exit_code == 0, "analyze succeeds");
        const auto report = read_report(dir / "bundle_report" / "report.csv");
        expect(report.count("slope_diff") == 1, "report contains the slope pair");
        if (report.count("slope_diff")) {
            const double diff = std::stod(report.at("slope_diff"));
            expect(diff > 0.9 && diff < 1.1, "slope(N) - slope(dN/dt) within [0.9, 1.1], got " +
                                                 report.at("slope_diff"));
        }
        expect(report.count("before_after_all_one") &&
                   report.at("before_after_all_one") == "yes",
               "no comments after the removal stamp");
    }

    // --- fit size on analytic-sampler output recovers the inverse shape
    {
        RunResult r = run(cli + " simulate --out " + (dir / "sizes").string() +
                          " --mode analytic --seed 9 --topics 20000 --gamma 0.05 --c0 0.895" +
                          " --c 1.2 --M 200 --exposure exp:0.001");
        expect(r.exit_code == 0, "analytic simulate succeeds");
        r = run(cli + " fit --input " + (dir / "sizes" / "summary.csv").string() +
                " --target size");
        expect(r.exit_code == 0, "fit size succeeds");
        const double shape = fit_estimate(r.output, "shape");
        // growth exponent 0.695: Weibull shape should come out near 1/0.695
        expect(shape > 1.41 && shape < 1.47,
               "size fit shape in [1.41, 1.47], got " + std::to_string(shape));
    }

    // --- fit waiting on a users-mode corpus recovers the exponent
    {
        RunResult r = run(cli + " simulate --out " + (dir / "users").string() +
                          " --mode users --seed 5 --users 100 --horizon 300 --c 1.5" +
                          " --wait-a 1 --wait-b 10000");
        expect(r.exit_code == 0, "users-mode simulate succeeds");
        r = run(cli + " fit --input " + (dir / "users" / "events.jsonl").string() +
                " --target waiting");
        expect(r.exit_code == 0, "fit waiting succeeds");
        const double c_hat = fit_estimate(r.output, "c");
        expect(c_hat > 1.45 && c_hat < 1.55,
               "waiting fit c in [1.45, 1.55], got " + std::to_string(c_hat));
    }

    // --- analyze verdicts: light tail for exponential exposure at
    //     growth exponent 0.5, heavy for pareto exposure (growth
    //     exponent 0.5 via c = 0.5 and c0 = 0, so accept probabilities
    //     never saturate)
    {
        RunResult r = run(cli + " simulate --out " + (dir / "light").string() +
                          " --seed 21 --topics 1000 --gamma 0.25 --c0 0 --c 0.5 --M 2000" +
                          " --exposure exp:0.001 --wait-a 0.01 --wait-b 1e6");
        expect(r.exit_code == 0, "light-tail bundle simulates");
        r = run(cli + " analyze --input " + (dir / "light" / "events.jsonl").string() +
                " --out " + (dir / "light_report").string());
        expect(r.exit_code == 0, "light-tail analyze succeeds");
        auto report = read_report(dir / "light_report" / "report.csv");
        expect(report.count("size_tail_verdict") &&
                   report.at("size_tail_verdict") == "light",
               "exponential exposure at growth exponent 0.5 -> light tail");

        r = run(cli + " simulate --out " + (dir / "heavy").string() +
                " --seed 22 --topics 5000 --gamma 0.94 --c0 0 --c 0.5 --M 3000" +
                " --exposure pareto:50:1.05 --wait-a 0.01 --wait-b 1e6");
        expect(r.exit_code == 0, "heavy-tail bundle simulates");
        r = run(cli + " analyze --input " + (dir / "heavy" / "events.jsonl").string() +
                " --out " + (dir / "heavy_report").string());
        expect(r.exit_code == 0, "heavy-tail analyze succeeds");
        report = read_report(dir / "heavy_report" / "report.csv");
        expect(report.count("size_tail_verdict") &&
                   report.at("size_tail_verdict") == "heavy",
               "pareto exposure -> heavy tail");
        expect(report.count("exposure_family") && report.at("exposure_family") == "pareto",
               "pareto exposure family recovered");
    }

    // --- config file provides defaults, flags override
    {
        std::ofstream cfg(dir / "sim.json");
        cfg << "{\"topics\": 5, \"seed\": 33, \"gamma\": 0.05}\n";
        cfg.close();
        RunResult r = run(cli + " simulate --out " + (dir / "cfg_a").string() + " --config " +
                          (dir / "sim.json").string());
        expect(r.exit_code == 0, "config-file run succeeds");
        expect(r.output.find("seed: 33") != std::string::npos, "config file sets the seed");
        expect(r.output.find("5 topics") != std::string::npos, "config file sets topics");

        r = run(cli + " simulate --out " + (dir / "cfg_b").string() + " --config " +
                (dir / "sim.json").string() + " --topics 9");
        expect(r.output.find("9 topics") != std::string::npos, "flag overrides config file");
    }

    // --- csv event format round-trips through analyze
    {
        RunResult r = run(cli + " simulate --out " + (dir / "csvfmt").string() +
                          " --seed 3 --topics 50 --format csv");
        expect(r.exit_code == 0 && fs::exists(dir / "csvfmt" / "events.csv"),
               "csv event output written");
        r = run(cli + " fit --input " + (dir / "csvfmt" / "events.csv").string() +
                " --target exposure");
        expect(r.exit_code == 0 && r.output.find("exponential") != std::string::npos,
               "csv events parse and fit");
    }

    // --- validate at tiny scale: per-check lines, and the one check
    //     that is red by construction drives a nonzero exit
    {
        RunResult r = run(cli + " validate --scale tiny --seed 7 --out " +
                          (dir / "validate_scratch").string());
        expect(r.exit_code == 1, "validate exits nonzero while a check fails");
        expect(r.output.find("scale: tiny") != std::string::npos, "validate echoes the scale");
        std::size_t fails = 0, pos = 0;
        while ((pos = r.output.find("[FAIL]", pos)) != std::string::npos) {
            ++fails;
            ++pos;
        }
        expect(fails == 1, "exactly one failing check");
        expect(r.output.find("[FAIL] indegree/ccdf-sup-distance") != std::string::npos,
               "the failing check is the structural sup-distance one");
        expect(r.output.find("checks passed") != std::string::npos,
               "validate prints the summary line");
    }

    fs::remove_all(dir);
    std::printf("%s: %d failure(s)\n", g_failures == 0 ? "SUCCESS" : "FAILURE", g_failures);
    return g_failures == 0 ? 0 : 1;
}
