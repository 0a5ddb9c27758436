#include "svtan/classify.hpp"
#include "svtan/report.hpp"
#include "svtan/toric_ideal.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace svtan;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// --out wins; a relative --out goes under SVTAN_OUTPUT_DIR when that is set.
// Without --out, SVTAN_OUTPUT_DIR/<fallback> is used, else stdout.
void emit(const std::string& text, const std::string& out, const std::string& fallback) {
    const char* env = std::getenv("SVTAN_OUTPUT_DIR");
    fs::path target;
    if (!out.empty()) {
        target = out;
        if (target.is_relative() && env && *env) target = fs::path(env) / target;
    } else if (env && *env) {
        target = fs::path(env) / fallback;
    }
    if (target.empty()) {
        std::cout << text;
        return;
    }
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    std::ofstream f(target);
    if (!f) throw std::runtime_error("cannot write " + target.string());
    f << text;
    std::cerr << "wrote " << target.string() << "\n";
}

std::string slug(const SVParams& p) {
    return "k" + std::to_string(p.k()) + "_a" + join_ints(p.original_a(), "-") + "_b" + join_ints(p.original_b(), "-");
}

SVParams params_from(int k, const std::string& a, const std::string& b) {
    auto av = parse_int_list(a);
    auto bv = parse_int_list(b);
    if (static_cast<int>(av.size()) != k || static_cast<int>(bv.size()) != k)
        throw UsageError("--a and --b need exactly k = " + std::to_string(k) + " entries");
    return SVParams(av, bv);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tangential varieties of Segre-Veronese varieties: normality, Cohen-Macaulayness and Gorensteinness"};
    app.require_subcommand(1);

    int k = 0;
    std::string a_text, b_text, out;
    std::string classify_format, sweep_format, examples_format, ideal_format;
    std::int64_t window = 0, bound = 0;
    std::size_t subset_cap = 14;
    bool full_evidence = false;

    auto* classify_cmd = app.add_subcommand("classify", "Classify one parameter triple");
    classify_cmd->add_option("--k", k, "Number of blocks")->required()->check(CLI::PositiveNumber);
    classify_cmd->add_option("--a", a_text, "Degrees a_1,...,a_k")->required();
    classify_cmd->add_option("--b", b_text, "Dimensions b_1,...,b_k")->required();
    classify_cmd->add_option("--window", window, "Window radius M (default 2(max a + 2))");
    classify_cmd->add_option("--bound", bound, "Witness search bound B (default 6 max(a) M)");
    classify_cmd->add_option("--subset-cap", subset_cap, "Largest facet count for the subset scan")
        ->capture_default_str();
    classify_cmd->add_flag("--full-evidence", full_evidence, "Record pi_J for every subset J");
    classify_cmd->add_option("--format", classify_format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->default_val("json");
    classify_cmd->add_option("--out", out, "Output file");

    int max_k = 3, max_a = 3, max_b = 3;
    unsigned threads = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Classify every normalized triple within bounds");
    sweep_cmd->add_option("--max-k", max_k, "Largest k")->required()->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--max-a", max_a, "Largest a_i")->required()->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--max-b", max_b, "Largest b_i")->required()->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    sweep_cmd->add_option("--subset-cap", subset_cap, "Largest facet count for the subset scan")
        ->capture_default_str();
    sweep_cmd->add_option("--format", sweep_format, "csv, json or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->default_val("csv");
    sweep_cmd->add_option("--out", out, "Output file");

    auto* examples_cmd = app.add_subcommand("examples", "Check the seven worked examples");
    examples_cmd->add_option("--format", examples_format, "text or json")
        ->check(CLI::IsMember({"json", "text"}))
        ->default_val("text");
    examples_cmd->add_option("--out", out, "Output file");

    std::string complex_file;
    int max_degree = 0;
    auto* ideal_cmd = app.add_subcommand("ideal", "Enumerate binomial relations of a labeled complex");
    auto* ik = ideal_cmd->add_option("--k", k, "Number of blocks")->check(CLI::PositiveNumber);
    auto* ia = ideal_cmd->add_option("--a", a_text, "Degrees a_1,...,a_k");
    auto* ib = ideal_cmd->add_option("--b", b_text, "Dimensions b_1,...,b_k");
    auto* ic = ideal_cmd->add_option("--complex", complex_file, "Complex file (one face per line)")
                   ->check(CLI::ExistingFile);
    ic->excludes(ik)->excludes(ia)->excludes(ib);
    ik->needs(ia)->needs(ib);
    ideal_cmd->add_option("--max-degree", max_degree, "Largest number of coordinate factors per side")
        ->required()
        ->check(CLI::Range(2, 64));
    ideal_cmd->add_option("--format", ideal_format, "text or json")
        ->check(CLI::IsMember({"json", "text"}))
        ->default_val("text");
    ideal_cmd->add_option("--out", out, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*classify_cmd) {
            const auto& format = classify_format;
            const SVParams p = params_from(k, a_text, b_text);
            ClassifyOptions opts;
            if (classify_cmd->count("--window")) opts.window = window;
            if (classify_cmd->count("--bound")) opts.bound = bound;
            opts.subset_cap = subset_cap;
            opts.full_evidence = full_evidence;
            const auto r = classify(p, opts);
            std::string text;
            if (format == "json")
                text = report_to_json(r) + "\n";
            else if (format == "csv")
                text = csv_header() + "\n" + csv_row(r) + "\n";
            else
                text = report_to_text(r);
            emit(text, out, slug(p) + "." + (format == "text" ? "txt" : format));
            return exit_code({r});
        }
        if (*sweep_cmd) {
            const auto& format = sweep_format;
            ClassifyOptions opts;
            opts.subset_cap = subset_cap;
            const auto res = sweep(sweep_params(max_k, max_a, max_b), opts, threads);
            std::string text;
            if (format == "json") {
                text = sweep_to_json(res) + "\n";
            } else if (format == "csv") {
                text = csv_header() + "\n";
                for (const auto& r : res.reports) text += csv_row(r) + "\n";
            } else {
                for (const auto& r : res.reports) text += report_to_text(r) + "\n";
            }
            const std::string name = "sweep_k" + std::to_string(max_k) + "_a" + std::to_string(max_a) + "_b" +
                                     std::to_string(max_b) + "." + (format == "text" ? "txt" : format);
            emit(text, out, name);
            std::cerr << summary_to_text(res.summary) << "\n";
            return exit_code(res.reports);
        }
        if (*examples_cmd) {
            const auto& format = examples_format;
            const auto suite = run_paper_examples();
            emit(format == "json" ? examples_to_json(suite) + "\n" : examples_to_text(suite), out,
                 std::string("examples.") + (format == "json" ? "json" : "txt"));
            return suite.passed() ? 0 : 2;
        }
        if (*ideal_cmd) {
            const auto& format = ideal_format;
            LabeledComplex c = [&] {
                if (!complex_file.empty()) return parse_complex(read_file(complex_file));
                if (!*ik) throw UsageError("ideal needs --complex FILE or --k/--a/--b");
                return build_sv_complex(params_from(k, a_text, b_text));
            }();
            const auto rel = enumerate_binomials(c, max_degree);
            std::string text;
            if (format == "json") {
                text = relations_to_json(c, rel) + "\n";
            } else if (rel.empty()) {
                text = "no relations\n";
            } else {
                for (const auto& r : rel) text += format_relation(c, r) + "\n";
            }
            emit(text, out, std::string("ideal.") + (format == "json" ? "json" : "txt"));
            return 0;
        }
    } catch (const ComplexParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        // UsageError, ParameterError, FormatError and window checks
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::length_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 1;
}
