#include "cli.hpp"

#include "suites.hpp"

#include <cantor/construction.hpp>
#include <cantor/dot.hpp>
#include <cantor/json_io.hpp>
#include <cantor/random.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#ifndef CANTOR_VERSION
#define CANTOR_VERSION "0.0.0"
#endif

namespace cantor::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::size_t depth = 4;
    std::size_t k_bound = 2;
    std::optional<std::size_t> lookahead;
    std::size_t budget = 64;
    std::uint64_t seed = 1;
    std::string format = "json";

    std::size_t effective_lookahead() const { return lookahead.value_or(2 * depth); }

    Json to_json() const {
        return Json{{"depth", depth},           {"k_bound", k_bound}, {"lookahead", effective_lookahead()},
                    {"budget", budget},         {"seed", seed},       {"format", format}};
    }
};

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::budget_exceeded: return kExitBudget;
        case ErrorKind::invariant_violation:
        case ErrorKind::metric_axiom_violation: return kExitInvariant;
        default: return kExitInput;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::malformed_input, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json read_json_file(const std::string& path) { return parse_json_text(read_file(path), path); }

/// FULL, EMPTY, cyl:w1,w2,… or a path to a JSON complex.
CylinderComplex parse_initial(const std::string& text) {
    if (text == "FULL") return CylinderComplex::full();
    if (text == "EMPTY") return CylinderComplex::empty();
    if (text.rfind("cyl:", 0) == 0) {
        std::vector<CylinderWord> words;
        std::stringstream list(text.substr(4));
        for (std::string w; std::getline(list, w, ',');) words.push_back(BitWord::parse(w));
        if (words.empty()) words.emplace_back();
        return CylinderComplex::from_cylinders(words);
    }
    return complex_from_json(read_json_file(text));
}

std::vector<Point> parse_points(const std::vector<std::string>& texts) {
    std::vector<Point> out;
    for (const auto& t : texts) out.push_back(Point::parse(t));
    return out;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

Json envelope(const std::string& command, const RunConfig& cfg, Json result) {
    return Json{{"tool", "cantor"},  {"version", CANTOR_VERSION}, {"command", command},
                {"config", cfg.to_json()}, {"seed", cfg.seed},     {"result", std::move(result)}};
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

void emit(std::ostream& out, const RunConfig& cfg, const std::string& command, Json result,
          const std::optional<std::string>& dot = std::nullopt) {
    if (cfg.format == "dot") {
        if (!dot) throw UsageError("command '" + command + "' has no dot output");
        out << *dot;
    } else if (cfg.format == "text") {
        flatten(envelope(command, cfg, std::move(result)), "", out);
    } else {
        out << envelope(command, cfg, std::move(result)).dump(2) << "\n";
    }
}

Limits limits_of(const RunConfig& cfg) { return Limits{cfg.budget}; }

// ---------------------------------------------------------------------------
// construct

Json construction_report(const CylinderComplex& initial, const DeletionSchedule& schedule, const RunConfig& cfg) {
    const auto state = run_construction(initial, schedule, limits_of(cfg));
    check_invariants(state);
    Json r = state_to_json(state);
    r["initial"] = complex_to_json(initial);
    r["checks"] = Json{{"schedule_dense_at_depth", schedule_dense_at_depth(initial, schedule, cfg.depth)},
                       {"remainder_nonempty", !state.current.is_empty()},
                       {"remainder_nowhere_dense",
                        nowhere_dense_at_depth(state.current, cfg.depth, cfg.effective_lookahead())}};
    return r;
}

Json sweep(const CylinderComplex& initial, std::size_t count, const RunConfig& cfg) {
    // Schedules come from one generator in order; only the runs fan out.
    Rng rng(cfg.seed);
    std::vector<DeletionSchedule> schedules;
    for (std::size_t i = 0; i < count; ++i) schedules.push_back(random_dense_schedule(rng, initial, cfg.depth, 2));

    std::vector<Json> runs(count);
    std::vector<std::optional<Error>> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < count;) {
            try {
                const Json sched = schedule_to_json(schedules[i]);
                const auto state = run_construction(initial, schedules[i], limits_of(cfg));
                check_invariants(state);
                Json measures = Json::array();
                for (const auto& s : state.stages) measures.push_back(to_string(s.measure()));
                runs[i] = Json{{"schedule_hash", hex64(fnv1a(sched.dump()))},
                               {"schedule", sched},
                               {"measures", measures},
                               {"remainder_nonempty", !state.current.is_empty()},
                               {"remainder_nowhere_dense",
                                nowhere_dense_at_depth(state.current, cfg.depth, cfg.effective_lookahead())}};
            } catch (const Error& e) {
                errors[i] = e;
            }
        }
    };
    const std::size_t n_threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) throw *e;
    }

    std::sort(runs.begin(), runs.end(), [](const Json& a, const Json& b) {
        return std::pair(a["schedule_hash"].get<std::string>(), a["schedule"].dump()) <
               std::pair(b["schedule_hash"].get<std::string>(), b["schedule"].dump());
    });
    std::size_t nonempty = 0, thin = 0;
    for (const auto& r : runs) {
        nonempty += r["remainder_nonempty"].get<bool>();
        thin += r["remainder_nowhere_dense"].get<bool>();
    }
    return Json{{"initial", complex_to_json(initial)},
                {"schedules", count},
                {"remainder_nonempty", nonempty},
                {"remainder_nowhere_dense", thin},
                {"runs", runs}};
}

// ---------------------------------------------------------------------------
// export

std::vector<BisectionStep> trace_from_json(const Json& j) {
    if (!j.is_array()) fail(ErrorKind::malformed_input, "bisection trace must be a list");
    std::vector<BisectionStep> out;
    for (const auto& s : j) {
        if (!s.is_object() || !s.contains("a") || !s.contains("b") || !s.contains("mid") || !s.contains("branch")) {
            fail(ErrorKind::malformed_input, "bisection step needs a, b, mid and branch: " + s.dump());
        }
        const std::string b = s.at("branch").get<std::string>();
        Branch br = Branch::hit;
        if (b == "L") {
            br = Branch::left;
        } else if (b == "R") {
            br = Branch::right;
        } else if (b != "HIT") {
            fail(ErrorKind::malformed_input, "unknown branch \"" + b + "\"");
        }
        out.push_back({point_from_json(s.at("a")), point_from_json(s.at("b")), point_from_json(s.at("mid")), br});
    }
    return out;
}

bool looks_like_trace(const Json& j) { return j.is_array() && !j.empty() && j.front().is_object() && j.front().contains("mid"); }

int cmd_export(const std::string& input, const RunConfig& cfg, std::ostream& out) {
    Json j = read_json_file(input);
    if (j.is_object() && j.contains("result")) j = j.at("result");
    if (j.is_object() && j.contains("trace")) j = j.at("trace");

    if (looks_like_trace(j)) {
        const auto trace = trace_from_json(j);
        if (cfg.format == "dot") {
            out << trace_to_dot(trace);
        } else if (cfg.format == "json") {
            out << trace_to_json(trace).dump(2) << "\n";
        } else {
            throw UsageError("export supports --format dot or json");
        }
        return kExitOk;
    }
    if (j.is_object() && j.contains("final")) j = j.at("final");
    if (j.is_object() && j.contains("body")) j = j.at("body");
    const auto c = complex_from_json(j);
    if (cfg.format == "dot") {
        out << complex_to_dot(c);
    } else if (cfg.format == "json") {
        out << complex_to_json(c).dump(2) << "\n";
    } else {
        throw UsageError("export supports --format dot or json");
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto report_error = [&](const std::string& kind, const std::string& message, Json extra = Json::object()) {
        Json e{{"error", kind}, {"message", message}};
        for (auto& [k, v] : extra.items()) e[k] = v;
        err << e.dump() << "\n";
    };

    RunConfig cfg;
    CLI::App app{"Finite experiments on binary sequence spaces: clopen tries, deletion schedules and kernels",
                 "cantor"};
    app.set_version_flag("--version", CANTOR_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--depth", cfg.depth, "Resolution depth")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--k-bound", cfg.k_bound, "Largest number of limit stages")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--lookahead", cfg.lookahead, "Extra depth for nowhere density checks (default 2*depth)");
    app.add_option("--budget", cfg.budget,
                   "Work bound: stem depth for deletions, steps for bisection, cylinders for verify baire")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for every random draw")->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "dot", "text"}));

    std::string initial = "FULL";
    auto* construct = app.add_subcommand("construct", "Run a deletion schedule");
    std::string schedule_file;
    std::size_t random_schedules = 0;
    construct->add_option("--initial", initial, "FULL, EMPTY, cyl:w1,w2 or a JSON complex file")->capture_default_str();
    auto* sched_opt = construct->add_option("--schedule", schedule_file, "JSON schedule file");
    construct->add_option("--random-schedules", random_schedules, "Sweep this many random dense schedules")
        ->excludes(sched_opt);

    auto* preserve = app.add_subcommand("preserve", "Delete around targets while keeping witnesses");
    std::vector<std::string> avoid;
    std::string keep;
    std::optional<std::size_t> steps;
    preserve->add_option("--initial", initial, "Initial complex")->capture_default_str();
    preserve->add_option("--avoid", avoid, "Points to delete")->delimiter(',')->required();
    preserve->add_option("--keep", keep, "Seed witness to keep")->required();
    preserve->add_option("--steps", steps, "Number of steps (default: one per avoid point)");

    auto* transfinite = app.add_subcommand("transfinite", "Preserving deletions across limit stages");
    std::vector<std::string> segments;
    transfinite->add_option("--initial", initial, "Initial complex")->capture_default_str();
    transfinite->add_option("--segment", segments, "Comma separated avoid points of one segment (repeatable)")
        ->required();
    transfinite->add_option("--keep", keep, "Seed witness to keep")->required();

    auto* bisect = app.add_subcommand("bisect", "Locate a point by repeated midpoint division");
    std::string point_text, set_file;
    bisect->add_option("--point", point_text, "Point as pre:period")->required();
    bisect->add_option("--set", set_file, "JSON pointed set (default FULL)");

    auto* verify = app.add_subcommand("verify", "Run a property suite");
    std::string suite;
    SuiteConfig scfg;
    verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--samples", scfg.samples, "Random samples per property")->capture_default_str();
    verify->add_option("--resolution", scfg.resolution, "Largest point resolution for the metric suite")
        ->capture_default_str();

    auto* classify = app.add_subcommand("classify", "Cardinality class of a pointed set");
    std::optional<std::size_t> horizon;
    classify->add_option("--set", set_file, "JSON pointed set")->required();
    classify->add_option("--horizon", horizon, "Isolation horizon (default depth)");

    auto* naturals = app.add_subcommand("naturals", "Delete initial segments of the naturals");
    std::size_t bound = 0;
    std::vector<std::size_t> deleted;
    naturals->add_option("--bound", bound, "Size of the segment")->required()->check(CLI::PositiveNumber);
    naturals->add_option("--delete", deleted, "Indices n of the deleted sets {m < n}")->delimiter(',');

    auto* exporter = app.add_subcommand("export", "Render a complex, run report or trace");
    std::string input;
    exporter->add_option("--input", input, "JSON file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << CANTOR_VERSION << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report_error("usage", e.what());
        return kExitUsage;
    }

    try {
        if (construct->parsed()) {
            const auto init = parse_initial(initial);
            if (random_schedules > 0) {
                emit(out, cfg, "construct", sweep(init, random_schedules, cfg));
                return kExitOk;
            }
            if (schedule_file.empty()) throw UsageError("construct needs --schedule or --random-schedules");
            const auto schedule = schedule_from_json(read_json_file(schedule_file));
            Json r = construction_report(init, schedule, cfg);
            const std::string dot = complex_to_dot(complex_from_json(r["final"]), "remainder");
            emit(out, cfg, "construct", std::move(r), dot);
        } else if (preserve->parsed()) {
            const auto init = parse_initial(initial);
            const auto targets = parse_points(avoid);
            const auto res = preserve_run(init, targets, Point::parse(keep), steps.value_or(targets.size()),
                                          limits_of(cfg));
            check_invariants(res.state);
            Json r = state_to_json(res.state);
            Json intervals = Json::array();
            for (const auto& w : res.intervals) intervals.push_back(w.str());
            r["intervals"] = intervals;
            const bool kept = std::all_of(res.witnesses.begin(), res.witnesses.end(),
                                          [&](const Point& p) { return res.state.current.contains(p); });
            if (!kept) fail(ErrorKind::invariant_violation, "a witness left the remainder");
            r["witnesses_in_remainder"] = kept;
            const std::string dot = complex_to_dot(res.state.current, "remainder");
            emit(out, cfg, "preserve", std::move(r), dot);
        } else if (transfinite->parsed()) {
            const auto init = parse_initial(initial);
            std::vector<std::vector<Point>> segs;
            for (const auto& s : segments) {
                std::vector<std::string> parts;
                std::stringstream list(s);
                for (std::string p; std::getline(list, p, ',');) {
                    if (!p.empty()) parts.push_back(p);
                }
                segs.push_back(parse_points(parts));
            }
            const auto st = run_transfinite(init, segs, Point::parse(keep), segs.size(), cfg.k_bound, limits_of(cfg));
            const std::string dot = complex_to_dot(st.current, "remainder");
            emit(out, cfg, "transfinite", state_to_json(st), dot);
        } else if (bisect->parsed()) {
            const PointedSet space =
                set_file.empty() ? PointedSet(CylinderComplex::full()) : pointed_set_from_json(read_json_file(set_file));
            const Point x = Point::parse(point_text);
            try {
                const auto r = bisection_locate(space, x, cfg.budget);
                Json j{{"point", x.str()}, {"member", r.member}, {"steps", r.steps}, {"trace", trace_to_json(r.trace)}};
                emit(out, cfg, "bisect", std::move(j), trace_to_dot(r.trace));
            } catch (const BisectionBudgetExceeded& e) {
                report_error(std::string(to_string(e.kind())), e.what(), Json{{"trace", trace_to_json(e.trace())}});
                return kExitBudget;
            }
        } else if (verify->parsed()) {
            scfg.depth = cfg.depth;
            scfg.lookahead = cfg.effective_lookahead();
            scfg.budget = cfg.budget;
            scfg.seed = cfg.seed;
            const auto res = run_suite(suite, scfg);
            emit(out, cfg, "verify", res.report);
            return res.ok ? kExitOk : kExitInvariant;
        } else if (classify->parsed()) {
            const auto s = pointed_set_from_json(read_json_file(set_file));
            const std::size_t h = horizon.value_or(cfg.depth);
            Json j{{"class", classify_cardinality(s, h).str()},
                   {"horizon", h},
                   {"kernel", pointed_set_to_json(cb_kernel(s, h))}};
            emit(out, cfg, "classify", std::move(j));
        } else if (naturals->parsed()) {
            const auto r = naturals_demo(bound, deleted);
            Json j{{"bound", bound},
                   {"deleted", deleted},
                   {"remainder_size", r.remainder_size},
                   {"rerun_remainder", r.rerun_remainder},
                   {"empties_in_limit", r.empties_in_limit}};
            emit(out, cfg, "naturals", std::move(j));
        } else if (exporter->parsed()) {
            return cmd_export(input, cfg, out);
        }
    } catch (const UsageError& e) {
        report_error("usage", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        report_error(std::string(to_string(e.kind())), e.what());
        return exit_code(e.kind());
    } catch (const Json::exception& e) {
        report_error("malformed-input", e.what());
        return kExitInput;
    }
    return kExitOk;
}

}  // namespace cantor::cli
