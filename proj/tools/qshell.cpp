#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qshell/compare.hpp"
#include "qshell/datasets.hpp"
#include "qshell/format.hpp"
#include "qshell/scan.hpp"
#include "qshell/shells.hpp"
#include "qshell/spectrum.hpp"

namespace {

using namespace qshell;

Range parse_range(const std::string& text) {
    // lo:hi:steps, or a bare value for a single grid point
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);

    auto to_double = [&](const std::string& s) {
        double v = 0;
        const char* end = s.data() + s.size();
        auto [p, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc() || p != end)
            throw CLI::ValidationError("range", "bad number '" + s + "' in range '" + text + "'");
        return v;
    };
    auto to_steps = [&](const std::string& s) {
        int v = 0;
        const char* end = s.data() + s.size();
        auto [p, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc() || p != end)
            throw CLI::ValidationError("range", "bad step count '" + s + "' in range '" + text + "'");
        return v;
    };

    if (parts.size() == 1) {
        const double v = to_double(parts[0]);
        return Range{v, v, 1};
    }
    if (parts.size() == 3) return Range{to_double(parts[0]), to_double(parts[1]), to_steps(parts[2])};
    throw CLI::ValidationError("range", "expected lo:hi:steps, got '" + text + "'");
}

const std::string kRangeHelp = "single value or lo:hi:steps";

// embedded registry first, then $QSHELL_DATA_DIR/<id>.json
ReferenceDataset resolve_dataset(const std::string& id) {
    try {
        return lookup(id);
    } catch (const std::out_of_range&) {
    }
    if (const char* dir = std::getenv("QSHELL_DATA_DIR")) {
        const std::filesystem::path path = std::filesystem::path(dir) / (id + ".json");
        if (std::filesystem::exists(path)) return load_dataset_file(path.string());
    }
    throw std::out_of_range("unknown dataset id: " + id);
}

std::vector<ReferenceDataset> resolve_refs(const std::vector<std::string>& ids) {
    std::vector<ReferenceDataset> refs;
    if (ids.empty()) {
        for (const ReferenceDataset& ds : registry())
            if (ds.kind == DatasetKind::Experiment) refs.push_back(ds);
        return refs;
    }
    refs.reserve(ids.size());
    for (const std::string& id : ids) refs.push_back(resolve_dataset(id));
    return refs;
}

ModelId parse_model(const std::string& name) {
    if (name == "q") return ModelId::Q_EXACT;
    if (name == "taylor") return ModelId::Q_TAYLOR2;
    if (name == "nilsson") return ModelId::NILSSON;
    if (name == "ho") return ModelId::PLAIN_HO;
    if (name == "3nl") return ModelId::PSEUDO_3NL;
    throw std::invalid_argument("unknown model: " + name);
}

std::string render_levels(const std::vector<Level>& levels, OutputFormat format) {
    switch (format) {
        case OutputFormat::Markdown: {
            std::ostringstream out;
            out << "| n | l | E(n,l) | 2(2l+1) |\n|--:|--:|-------:|--------:|\n";
            for (const Level& level : levels)
                out << "| " << level.n << " | " << level.l << " | " << fmt3(level.energy) << " | "
                    << level.degeneracy << " |\n";
            return out.str();
        }
        case OutputFormat::Csv: {
            std::ostringstream out;
            out << "n,l,energy,degeneracy\n";
            for (const Level& level : levels)
                out << level.n << ',' << level.l << ',' << fmt3(level.energy) << ','
                    << level.degeneracy << '\n';
            return out.str();
        }
        case OutputFormat::Json: {
            nlohmann::json arr = nlohmann::json::array();
            for (const Level& level : levels)
                arr.push_back({{"n", level.n},
                               {"l", level.l},
                               {"energy", level.energy},
                               {"degeneracy", level.degeneracy}});
            return arr.dump(2) + "\n";
        }
    }
    throw std::invalid_argument("render_levels: unknown format");
}

std::string render_magic(const MagicSet& magic, OutputFormat format) {
    switch (format) {
        case OutputFormat::Markdown: {
            std::ostringstream out;
            for (std::size_t i = 0; i < magic.values.size(); ++i) {
                if (i) out << ' ';
                out << magic.values[i];
            }
            out << '\n';
            return out.str();
        }
        case OutputFormat::Csv: {
            std::ostringstream out;
            out << "magic\n";
            for (int v : magic.values) out << v << '\n';
            return out.str();
        }
        case OutputFormat::Json:
            return nlohmann::json{{"magic", magic.values}}.dump(2) + "\n";
    }
    throw std::invalid_argument("render_magic: unknown format");
}

// canonical parameter point; the "paper" stability target
MagicSet canonical_magic() {
    ModelParams params;
    params.tau = 0.038;
    return build_shell_table(enumerate_levels(ModelId::Q_EXACT, params, 22.8), 0.39).magic;
}

MagicSet parse_stability_target(const std::string& text) {
    if (text == "paper") return canonical_magic();
    if (text.find(',') != std::string::npos ||
        (!text.empty() && std::isdigit(static_cast<unsigned char>(text[0])))) {
        std::vector<int> values;
        std::string cur;
        std::istringstream in(text);
        while (std::getline(in, cur, ',')) values.push_back(std::stoi(cur));
        return MagicSet::from_values(std::move(values));
    }
    return resolve_dataset(text).magic;
}

struct SpectrumArgs {
    std::string model = "q";
    double tau = 0.038;
    double mu_prime = 0.0;
    bool has_mu_prime = false;
    double e_cut = 22.8;
    std::string format = "markdown";
};

struct TableArgs {
    double tau = 0.038;
    double threshold = 0.39;
    double e_cut = 22.8;
    std::string format = "markdown";
};

struct MagicArgs : TableArgs {
    std::string model = "q";
    double mu_prime = 0.0;
    bool has_mu_prime = false;
};

struct CompareArgs : TableArgs {
    std::vector<std::string> refs;
    std::string mode = "row";
    double slack = 0.0;
};

struct ScanArgs {
    std::string tau = "0.038";
    std::string threshold = "0.39";
    double e_cut = 22.8;
    double weight = 1.0;
    int min_cumulative = 1516;
    std::string mode = "row";
    std::vector<std::string> refs;
    std::string stability;
    std::string format = "csv";
};

int run_spectrum(const SpectrumArgs& args) {
    ModelParams params;
    params.tau = args.tau;
    params.mu_prime = args.mu_prime;
    params.has_mu_prime = args.has_mu_prime;
    const ModelId model = parse_model(args.model);
    if (model == ModelId::NILSSON && !args.has_mu_prime) {
        std::cerr << "spectrum: --mu-prime is required with --model nilsson\n";
        return 1;
    }
    std::cout << render_levels(enumerate_levels(model, params, args.e_cut),
                               parse_format(args.format));
    return 0;
}

int run_table(const TableArgs& args) {
    ModelParams params;
    params.tau = args.tau;
    const ShellTable table =
        build_shell_table(enumerate_levels(ModelId::Q_EXACT, params, args.e_cut), args.threshold);
    std::cout << render_table(table, parse_format(args.format));
    return 0;
}

int run_magic(const MagicArgs& args) {
    ModelParams params;
    params.tau = args.tau;
    params.mu_prime = args.mu_prime;
    params.has_mu_prime = args.has_mu_prime;
    const ModelId model = parse_model(args.model);
    if (model == ModelId::NILSSON && !args.has_mu_prime) {
        std::cerr << "magic: --mu-prime is required with --model nilsson\n";
        return 1;
    }
    const ShellTable table =
        build_shell_table(enumerate_levels(model, params, args.e_cut), args.threshold);
    std::cout << render_magic(table.magic, parse_format(args.format));
    return 0;
}

int run_compare(const CompareArgs& args) {
    const std::vector<ReferenceDataset> refs = resolve_refs(args.refs);
    ModelParams params;
    params.tau = args.tau;
    const ShellTable table =
        build_shell_table(enumerate_levels(ModelId::Q_EXACT, params, args.e_cut), args.threshold);
    const MatchMode mode = args.mode == "strict" ? MatchMode::Strict : MatchMode::RowAlign;
    const ComparisonReport report = compare(table.magic, refs, mode, args.slack);
    std::cout << render_report(report, refs, parse_format(args.format));
    return report.spurious.empty() ? 0 : 2;
}

int run_scan(const ScanArgs& args) {
    ScanGrid grid;
    grid.tau_range = parse_range(args.tau);
    grid.threshold_range = parse_range(args.threshold);
    grid.e_cut = args.e_cut;
    grid.spurious_weight = args.weight;
    grid.min_cumulative = args.min_cumulative;
    grid.mode = args.mode == "strict" ? MatchMode::Strict : MatchMode::RowAlign;
    const std::vector<ReferenceDataset> refs = resolve_refs(args.refs);
    const OutputFormat format = parse_format(args.format);

    const ScanResult result = qshell::run_scan(grid, refs);
    std::cout << render_scan(result, format);
    if (!args.stability.empty()) {
        const StabilityReport report = stability_report(result, parse_stability_target(args.stability));
        std::cout << '\n' << render_stability(result, report, format);
    }
    return 0;
}

int run_datasets(const std::string& id, const std::string& format_name) {
    const OutputFormat format = parse_format(format_name);
    if (!id.empty()) {
        const ReferenceDataset ds = resolve_dataset(id);
        switch (format) {
            case OutputFormat::Markdown: {
                std::cout << "| n | sigma | weak |\n|--:|------:|:-----|\n";
                for (std::size_t i = 0; i < ds.magic.values.size(); ++i)
                    std::cout << "| " << ds.magic.values[i] << " | " << ds.magic.sigma[i] << " | "
                              << (ds.magic.weak[i] ? "yes" : "") << " |\n";
                return 0;
            }
            case OutputFormat::Csv: {
                std::cout << "n,sigma,weak\n";
                for (std::size_t i = 0; i < ds.magic.values.size(); ++i)
                    std::cout << ds.magic.values[i] << ',' << ds.magic.sigma[i] << ','
                              << (ds.magic.weak[i] ? "true" : "false") << '\n';
                return 0;
            }
            case OutputFormat::Json: std::cout << dataset_to_json(ds); return 0;
        }
    }

    std::vector<ReferenceDataset> all = registry();
    if (const char* dir = std::getenv("QSHELL_DATA_DIR")) {
        std::vector<std::filesystem::path> files;
        if (std::filesystem::is_directory(dir))
            for (const auto& entry : std::filesystem::directory_iterator(dir))
                if (entry.path().extension() == ".json") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& path : files) all.push_back(load_dataset_file(path.string()));
    }
    switch (format) {
        case OutputFormat::Markdown: {
            std::cout << "| id | kind | entries | source |\n|:---|:-----|--------:|:-------|\n";
            for (const ReferenceDataset& ds : all)
                std::cout << "| " << ds.id << " | " << kind_name(ds.kind) << " | "
                          << ds.magic.values.size() << " | " << ds.source << " |\n";
            return 0;
        }
        case OutputFormat::Csv: {
            std::cout << "id,kind,entries,source\n";
            for (const ReferenceDataset& ds : all)
                std::cout << ds.id << ',' << kind_name(ds.kind) << ',' << ds.magic.values.size()
                          << ",\"" << ds.source << "\"\n";
            return 0;
        }
        case OutputFormat::Json: {
            nlohmann::json arr = nlohmann::json::array();
            for (const ReferenceDataset& ds : all)
                arr.push_back({{"id", ds.id},
                               {"kind", kind_name(ds.kind)},
                               {"entries", ds.magic.values.size()},
                               {"source", ds.source}});
            std::cout << arr.dump(2) << "\n";
            return 0;
        }
    }
    return 0;
}

void add_format_option(CLI::App* cmd, std::string& target) {
    cmd->add_option("--format", target, "output format")
        ->check(CLI::IsMember({"markdown", "csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-d q-deformed harmonic oscillator shell structure and magic numbers"};
    app.set_version_flag("--version", "qshell 1.0.0");
    app.require_subcommand(1);

    SpectrumArgs spectrum_args;
    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "enumerate raw levels for a model");
    spectrum_cmd->add_option("--model", spectrum_args.model, "q|taylor|nilsson|ho|3nl")
        ->check(CLI::IsMember({"q", "taylor", "nilsson", "ho", "3nl"}));
    spectrum_cmd->add_option("--tau", spectrum_args.tau, "deformation parameter")
        ->check(CLI::NonNegativeNumber);
    CLI::Option* spectrum_mu =
        spectrum_cmd->add_option("--mu-prime", spectrum_args.mu_prime, "Nilsson l(l+1) strength")
            ->check(CLI::NonNegativeNumber);
    spectrum_cmd->add_option("--e-cut", spectrum_args.e_cut, "energy cutoff")
        ->check(CLI::PositiveNumber);
    add_format_option(spectrum_cmd, spectrum_args.format);

    TableArgs table_args;
    CLI::App* table_cmd = app.add_subcommand("table", "energy-sorted shell table with gaps and magic numbers");
    table_cmd->add_option("--tau", table_args.tau, "deformation parameter")
        ->check(CLI::NonNegativeNumber);
    table_cmd->add_option("--threshold", table_args.threshold, "shell gap threshold")
        ->check(CLI::PositiveNumber);
    table_cmd->add_option("--e-cut", table_args.e_cut, "energy cutoff")->check(CLI::PositiveNumber);
    add_format_option(table_cmd, table_args.format);

    MagicArgs magic_args;
    CLI::App* magic_cmd = app.add_subcommand("magic", "predicted magic numbers only");
    magic_cmd->add_option("--model", magic_args.model, "q|taylor|nilsson|ho|3nl")
        ->check(CLI::IsMember({"q", "taylor", "nilsson", "ho", "3nl"}));
    magic_cmd->add_option("--tau", magic_args.tau, "deformation parameter")
        ->check(CLI::NonNegativeNumber);
    CLI::Option* magic_mu =
        magic_cmd->add_option("--mu-prime", magic_args.mu_prime, "Nilsson l(l+1) strength")
            ->check(CLI::NonNegativeNumber);
    magic_cmd->add_option("--threshold", magic_args.threshold, "shell gap threshold")
        ->check(CLI::PositiveNumber);
    magic_cmd->add_option("--e-cut", magic_args.e_cut, "energy cutoff")->check(CLI::PositiveNumber);
    add_format_option(magic_cmd, magic_args.format);

    CompareArgs compare_args;
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "score predictions against reference datasets");
    compare_cmd->add_option("--tau", compare_args.tau, "deformation parameter")
        ->check(CLI::NonNegativeNumber);
    compare_cmd->add_option("--threshold", compare_args.threshold, "shell gap threshold")
        ->check(CLI::PositiveNumber);
    compare_cmd->add_option("--e-cut", compare_args.e_cut, "energy cutoff")
        ->check(CLI::PositiveNumber);
    compare_cmd
        ->add_option("--refs", compare_args.refs,
                     "dataset ids (default: all embedded experiments)")
        ->delimiter(',');
    compare_cmd->add_option("--mode", compare_args.mode, "matching rule")
        ->check(CLI::IsMember({"strict", "row"}));
    compare_cmd->add_option("--slack", compare_args.slack, "extra tolerance in strict mode")
        ->check(CLI::NonNegativeNumber);
    add_format_option(compare_cmd, compare_args.format);

    ScanArgs scan_args;
    CLI::App* scan_cmd = app.add_subcommand("scan", "sweep tau and threshold, score each point");
    scan_cmd->add_option("--tau", scan_args.tau, "tau range, " + kRangeHelp);
    scan_cmd->add_option("--threshold", scan_args.threshold, "threshold range, " + kRangeHelp);
    scan_cmd->add_option("--e-cut", scan_args.e_cut, "base energy cutoff")
        ->check(CLI::PositiveNumber);
    scan_cmd->add_option("--weight", scan_args.weight, "spurious penalty weight")
        ->check(CLI::NonNegativeNumber);
    scan_cmd->add_option("--min-cumulative", scan_args.min_cumulative,
                         "auto-raise e_cut until this many particles are in range (0 disables)");
    scan_cmd->add_option("--mode", scan_args.mode, "matching rule")
        ->check(CLI::IsMember({"strict", "row"}));
    scan_cmd->add_option("--refs", scan_args.refs, "dataset ids (default: all embedded experiments)")
        ->delimiter(',');
    scan_cmd->add_option("--stability", scan_args.stability,
                         "report the stable region for this target: 'paper', a dataset id, or v1,v2,...");
    add_format_option(scan_cmd, scan_args.format);

    std::string datasets_id;
    std::string datasets_format = "markdown";
    CLI::App* datasets_cmd = app.add_subcommand("datasets", "list embedded reference datasets");
    datasets_cmd->add_option("id", datasets_id, "show one dataset in full");
    add_format_option(datasets_cmd, datasets_format);

    CLI11_PARSE(app, argc, argv);

    spectrum_args.has_mu_prime = spectrum_mu->count() > 0;
    magic_args.has_mu_prime = magic_mu->count() > 0;

    try {
        if (spectrum_cmd->parsed()) return run_spectrum(spectrum_args);
        if (table_cmd->parsed()) return run_table(table_args);
        if (magic_cmd->parsed()) return run_magic(magic_args);
        if (compare_cmd->parsed()) return run_compare(compare_args);
        if (scan_cmd->parsed()) return run_scan(scan_args);
        if (datasets_cmd->parsed()) return run_datasets(datasets_id, datasets_format);
    } catch (const std::out_of_range& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
