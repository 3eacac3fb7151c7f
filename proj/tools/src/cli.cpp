#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "pkp/baseline.hpp"
#include "pkp/error.hpp"
#include "pkp/estimator.hpp"
#include "pkp/filtered.hpp"
#include "pkp/instance.hpp"
#include "pkp/stage_log.hpp"

namespace pkp::cli {
namespace {

using ParamMap = std::map<std::string, std::size_t>;

std::size_t parse_count(const std::string& text, const std::string& what) {
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw InvalidParameters("cannot parse " + what + " from '" + text + "'");
    }
    return value;
}

ParamMap parse_params(const std::string& text) {
    ParamMap out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidParameters("parameter '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq);
        if (out.count(key)) throw InvalidParameters("parameter '" + key + "' given twice");
        out[key] = parse_count(item.substr(eq + 1), "parameter " + key);
    }
    return out;
}

void reject_unknown(const ParamMap& params, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : params) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
            throw InvalidParameters("unknown parameter '" + key + "'");
        }
    }
}

std::size_t require(const ParamMap& params, const char* key) {
    const auto it = params.find(key);
    if (it == params.end()) throw InvalidParameters(std::string("missing parameter '") + key + "'");
    return it->second;
}

BaselineParams baseline_params(const ParamMap& params, std::size_t n, std::size_t r) {
    reject_unknown(params, {"l", "l1", "l2"});
    BaselineParams p{};
    p.l1 = require(params, "l1");
    p.l2 = require(params, "l2");
    if (params.count("l")) {
        p.l = params.at("l");
    } else {
        if (p.l1 + p.l2 + r < n) throw InvalidParameters("l1 + l2 must be at least n - r");
        p.l = p.l1 + p.l2 + r - n;
    }
    p.validate(n, r);
    return p;
}

FilteredParams filtered_params(const ParamMap& params, std::size_t n, std::size_t r) {
    reject_unknown(params, {"d", "w", "w1", "w2", "l"});
    FilteredParams p{};
    p.d = require(params, "d");
    p.l = require(params, "l");
    p.w1 = require(params, "w1");
    if (params.count("w2")) {
        p.w2 = params.at("w2");
        p.w = params.count("w") ? params.at("w") : p.w1 + p.w2;
    } else {
        p.w = require(params, "w");
        if (p.w < p.w1) throw InvalidParameters("w1 exceeds w");
        p.w2 = p.w - p.w1;
    }
    p.validate(n, r);
    return p;
}

std::string describe(const BaselineParams& p) {
    return "l=" + std::to_string(p.l) + ",l1=" + std::to_string(p.l1) + ",l2=" + std::to_string(p.l2);
}

std::string describe(const FilteredParams& p) {
    return "d=" + std::to_string(p.d) + ",w=" + std::to_string(p.w) + ",w1=" + std::to_string(p.w1) +
           ",w2=" + std::to_string(p.w2) + ",l=" + std::to_string(p.l);
}

std::string one_based(const Permutation& pi) {
    std::string out;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(pi[i] + 1);
    }
    return out;
}

Permutation parse_one_based(const std::string& text) {
    std::string cleaned = text;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream in(cleaned);
    std::vector<std::size_t> mapping;
    std::string token;
    while (in >> token) {
        const std::size_t v = parse_count(token, "permutation entry");
        if (v == 0) throw InvalidParameters("permutation entries are 1-based");
        mapping.push_back(v - 1);
    }
    return Permutation(std::move(mapping));
}

PkpInstance load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameters("cannot open '" + path + "'");
    return read_instance(in);
}

/// Writes to --out when given, otherwise to the primary stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InvalidParameters("cannot write '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::vector<std::size_t> parse_m_values(const std::string& over_n, const std::string& range, std::size_t n) {
    auto split = [](const std::string& text) {
        std::vector<std::string> parts;
        std::stringstream in(text);
        std::string part;
        while (std::getline(in, part, ':')) parts.push_back(part);
        return parts;
    };
    std::vector<std::size_t> ms;
    if (!over_n.empty()) {
        const auto parts = split(over_n);
        if (parts.size() != 3) throw InvalidParameters("--m-over-n expects start:stop:step");
        double v[3];
        for (int i = 0; i < 3; ++i) {
            try {
                v[i] = std::stod(parts[static_cast<std::size_t>(i)]);
            } catch (const std::exception&) {
                throw InvalidParameters("cannot parse --m-over-n value '" + parts[static_cast<std::size_t>(i)] + "'");
            }
        }
        if (!(v[2] > 0.0) || v[1] < v[0]) throw InvalidParameters("--m-over-n needs start <= stop and step > 0");
        const auto steps = static_cast<long>(std::floor((v[1] - v[0]) / v[2] + 1e-9));
        for (long i = 0; i <= steps; ++i) {
            const double ratio = v[0] + static_cast<double>(i) * v[2];
            ms.push_back(static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n))));
        }
    } else {
        const auto parts = split(range);
        if (parts.size() != 2 && parts.size() != 3) throw InvalidParameters("--m-range expects start:stop[:step]");
        const std::size_t lo = parse_count(parts[0], "--m-range start");
        const std::size_t hi = parse_count(parts[1], "--m-range stop");
        const std::size_t step = parts.size() == 3 ? parse_count(parts[2], "--m-range step") : 1;
        if (step == 0 || hi < lo) throw InvalidParameters("--m-range needs start <= stop and step > 0");
        for (std::size_t m = lo; m <= hi; m += step) ms.push_back(m);
    }
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    for (std::size_t m : ms) {
        if (m < 1 || m >= n) throw InvalidParameters("m = " + std::to_string(m) + " outside [1, n - 1]");
    }
    return ms;
}

struct Options {
    std::uint32_t q = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 1;
    std::string out;
    bool strict = false;
    std::string solver;
    std::string params;
    bool exhaustive = false;
    std::size_t max_list_entries = std::size_t{1} << 28;
    unsigned threads = 1;
    bool verbose = false;
    std::size_t isd_iterations = 0;
    std::string file;
    std::string perm;
    std::string m_over_n;
    std::string m_range;
    std::size_t d_max = 0;
};

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

int cmd_gen(const Options& o, Streams io) {
    bool warned = false;
    const WarningSink warn = [&](std::string_view message) {
        warned = true;
        io.err << (o.strict ? "error: " : "warning: ") << message << '\n';
    };
    RandomStream root(o.seed);
    constexpr std::uint64_t kMaxAttempts = 64;
    for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
        RandomStream rng = root.split("gen").split(attempt);
        PkpInstance instance = generate_instance(o.q, o.n, o.m, rng, attempt == 0 ? warn : WarningSink{});
        if (warned && o.strict) return kEscalatedWarning;
        try {
            (void)extend(instance);
        } catch (const InvalidParameters&) {
            continue;
        }
        Sink sink(o.out, io.out);
        write_instance(*sink, instance);
        return kSuccess;
    }
    throw SearchExhausted("no instance with a full-rank extended system in 64 attempts");
}

void print_solutions(const PkpInstance& instance, const std::vector<Permutation>& solutions, Streams io) {
    for (const auto& pi : solutions) {
        if (!verify(instance, pi)) throw std::logic_error("solver returned a permutation that fails verify");
        io.out << one_based(pi) << '\n';
    }
}

int cmd_solve(const Options& o, Streams io) {
    const PkpInstance instance = load(o.file);
    const std::string solver = o.solver.empty() ? "filtered" : o.solver;
    const ParamMap params = parse_params(o.params);

    if (solver == "brute") {
        if (!params.empty()) throw InvalidParameters("brute solver takes no parameters");
        auto solutions = brute_force_solve(instance);
        if (!o.exhaustive && solutions.size() > 1) solutions.resize(1);
        io.err << "stage=brute measured=" << solutions.size() << '\n';
        if (solutions.empty()) return kNothingFound;
        print_solutions(instance, solutions, io);
        return kSuccess;
    }

    const ExtendedSystem system = extend(instance);
    const std::size_t n = system.n();
    const std::size_t r = system.r();
    const ProblemShape shape{n, instance.m, instance.field.modulus()};
    bool warned = false;
    StageLog log;
    SolveOptions options;
    options.exhaustive = o.exhaustive;
    options.max_list_entries = o.max_list_entries;
    options.log = &log;
    RandomStream rng = RandomStream(o.seed).split("solve");

    SolveResult result;
    if (solver == "baseline") {
        BaselineParams p{};
        if (params.empty()) {
            const auto best = optimize(shape, SolverKind::Baseline);
            if (!best) throw InvalidParameters("no feasible baseline parameters for this shape");
            p = std::get<BaselineParams>(best->params);
            io.err << "auto params (baseline): " << describe(p) << " log2_total=" << best->cost.total << '\n';
        } else {
            p = baseline_params(params, n, r);
            if (o.verbose) io.err << "params (baseline): " << describe(p) << '\n';
        }
        result = solve_baseline(system, instance.c, p, rng, options);
    } else if (solver == "filtered") {
        FilteredParams p{};
        if (params.empty()) {
            const auto best = optimize(shape, SolverKind::Filtered);
            if (!best) throw InvalidParameters("no feasible filtered parameters for this shape");
            p = std::get<FilteredParams>(best->params);
            io.err << "auto params (filtered): " << describe(p) << " log2_total=" << best->cost.total << '\n';
        } else {
            p = filtered_params(params, n, r);
            if (o.verbose) io.err << "params (filtered): " << describe(p) << '\n';
        }
        FindSubcodeOptions isd;
        isd.max_iterations = o.isd_iterations;
        isd.warn = [&](std::string_view message) {
            warned = true;
            io.err << (o.strict ? "error: " : "warning: ") << message << '\n';
        };
        try {
            result = solve_filtered(system, instance.c, p, rng, options, isd);
        } catch (const SearchExhausted&) {
            log.write(io.err);
            throw;
        }
    } else {
        throw InvalidParameters("unknown solver '" + solver + "'");
    }

    log.write(io.err);
    if (o.verbose) io.err << "candidates=" << result.candidates << '\n';
    if (warned && o.strict) return kEscalatedWarning;
    if (result.solutions.empty()) return kNothingFound;
    print_solutions(instance, result.solutions, io);
    return kSuccess;
}

SolverKind parse_kind(const std::string& solver) {
    if (solver == "baseline") return SolverKind::Baseline;
    if (solver == "filtered") return SolverKind::Filtered;
    throw InvalidParameters("unknown solver '" + solver + "' (expected baseline or filtered)");
}

int cmd_estimate(const Options& o, Streams io) {
    const ProblemShape shape{o.n, o.m, o.q};
    const SolverKind kind = parse_kind(o.solver.empty() ? "filtered" : o.solver);
    const ParamMap params = parse_params(o.params);
    std::optional<SweepPoint> point;
    if (params.empty()) {
        point = optimize(shape, kind, OptimizeOptions{o.d_max});
        if (!point) throw InvalidParameters("no feasible parameters for this shape");
    } else if (kind == SolverKind::Baseline) {
        const auto p = baseline_params(params, shape.n, shape.r());
        const double total = cost_baseline(shape, p.l1, p.l2);
        const double nan = std::nan("");
        point = SweepPoint{shape, kind, p, CostBreakdown{nan, nan, nan, nan, total}};
    } else {
        const auto p = filtered_params(params, shape.n, shape.r());
        point = SweepPoint{shape, kind, p, cost_filtered(shape, p)};
    }
    Sink sink(o.out, io.out);
    *sink << kCsvHeader << '\n' << csv_row(*point) << '\n';
    return kSuccess;
}

int cmd_sweep(const Options& o, Streams io) {
    if (o.m_over_n.empty() == o.m_range.empty()) {
        throw InvalidParameters("sweep needs exactly one of --m-over-n and --m-range");
    }
    const auto ms = parse_m_values(o.m_over_n, o.m_range, o.n);
    std::vector<SolverKind> kinds;
    const std::string solver = o.solver.empty() ? "both" : o.solver;
    if (solver == "both") kinds = {SolverKind::Baseline, SolverKind::Filtered};
    else kinds = {parse_kind(solver)};
    if (!is_prime(o.q)) throw InvalidParameters("q = " + std::to_string(o.q) + " is not prime");

    const auto rows = sweep(o.n, o.q, ms, kinds, OptimizeOptions{o.d_max}, o.threads);
    Sink sink(o.out, io.out);
    *sink << kCsvHeader << '\n';
    for (const auto& row : rows) *sink << csv_row(row) << '\n';
    return kSuccess;
}

int cmd_verify(const Options& o, Streams io) {
    const PkpInstance instance = load(o.file);
    Permutation pi;
    if (!o.perm.empty()) {
        pi = parse_one_based(o.perm);
    } else if (instance.planted) {
        pi = *instance.planted;
    } else {
        throw InvalidParameters("no --perm given and the file carries no SOLUTION line");
    }
    if (pi.size() != instance.n) throw InvalidParameters("permutation length does not match n");
    const bool ok = verify(instance, pi);
    io.out << (ok ? "ok" : "fail") << '\n';
    return ok ? kSuccess : kNothingFound;
}

int exit_code(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::InvalidParameters:
        case ErrorKind::Format: return kInvalidParameters;
        case ErrorKind::ResourceCap: return kResourceCap;
        case ErrorKind::NotFound: return kNothingFound;
    }
    return kInvalidParameters;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Permuted kernel problem toolkit: instance generation, solvers, cost estimation."};
    app.name("pkp");
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("gen", "Generate a random instance with a planted solution");
    gen->add_option("--q", o.q, "Field size (prime)")->required();
    gen->add_option("--n", o.n, "Vector length")->required();
    gen->add_option("--m", o.m, "Rows of A")->required();
    gen->add_option("--seed", o.seed, "Root seed");
    gen->add_option("--out", o.out, "Output file (default: stdout)");
    gen->add_flag("--strict", o.strict, "Treat constraint warnings as errors");

    auto* solve = app.add_subcommand("solve", "Solve an instance file");
    solve->add_option("file", o.file, "Instance file")->required();
    solve->add_option("--solver", o.solver, "brute, baseline or filtered (default: filtered)");
    solve->add_option("--params", o.params, "Comma separated key=value list (default: optimizer choice)");
    solve->add_option("--seed", o.seed, "Root seed");
    solve->add_flag("--exhaustive", o.exhaustive, "Return every solution instead of the first");
    solve->add_option("--max-list-entries", o.max_list_entries, "Cap on any intermediate list");
    solve->add_option("--isd-iterations", o.isd_iterations, "ISD iteration budget (default: automatic)");
    solve->add_option("--threads", o.threads, "Worker cap; solvers run single-worker");
    solve->add_flag("--verbose", o.verbose, "Extra diagnostics on stderr");
    solve->add_flag("--strict", o.strict, "Treat constraint warnings as errors");

    auto* estimate = app.add_subcommand("estimate", "Cost breakdown for one parameter set");
    estimate->add_option("--q", o.q, "Field size")->required();
    estimate->add_option("--n", o.n, "Vector length")->required();
    estimate->add_option("--m", o.m, "Rows of A")->required();
    estimate->add_option("--solver", o.solver, "baseline or filtered (default: filtered)");
    estimate->add_option("--params", o.params, "Comma separated key=value list (default: optimizer choice)");
    estimate->add_option("--d-max", o.d_max, "Cap on d when optimizing (0: none)");
    estimate->add_option("--out", o.out, "Output file (default: stdout)");

    auto* sweep_cmd = app.add_subcommand("sweep", "Optimized cost over a range of m");
    sweep_cmd->add_option("--q", o.q, "Field size")->required();
    sweep_cmd->add_option("--n", o.n, "Vector length")->required();
    sweep_cmd->add_option("--m-over-n", o.m_over_n, "start:stop:step on m/n");
    sweep_cmd->add_option("--m-range", o.m_range, "start:stop[:step] on m");
    sweep_cmd->add_option("--solver", o.solver, "baseline, filtered or both (default: both)");
    sweep_cmd->add_option("--d-max", o.d_max, "Cap on d (0: none)");
    sweep_cmd->add_option("--threads", o.threads, "Worker threads across rows");
    sweep_cmd->add_option("--out", o.out, "Output file (default: stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "Check a permutation against an instance file");
    verify_cmd->add_option("file", o.file, "Instance file")->required();
    verify_cmd->add_option("--perm", o.perm, "1-based permutation (default: the file's SOLUTION line)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInvalidParameters;
    }

    const Streams io{out, err};
    try {
        if (gen->parsed()) return cmd_gen(o, io);
        if (solve->parsed()) return cmd_solve(o, io);
        if (estimate->parsed()) return cmd_estimate(o, io);
        if (sweep_cmd->parsed()) return cmd_sweep(o, io);
        return cmd_verify(o, io);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e);
    }
}

}  // namespace pkp::cli
