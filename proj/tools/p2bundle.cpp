// Command-line interface: scheme generation and ingestion, cohomology
// tables, resolution classification, Riemann-Roch evaluation, and seeded
// verification runs. Data goes to stdout, diagnostics to stderr.
// Exit codes: 0 success / no verification failure, 1 verification failure,
// 2 usage error, 3 input validation error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "p2bundle/bundle.hpp"
#include "p2bundle/field.hpp"
#include "p2bundle/ideal.hpp"
#include "p2bundle/io.hpp"
#include "p2bundle/rng.hpp"
#include "p2bundle/scheme.hpp"
#include "p2bundle/verify.hpp"

namespace {

constexpr std::uint64_t kTenCasesStream = 0xFFFF0001ULL;
constexpr std::uint64_t kRemarksStream = 0xFFFF0002ULL;

struct Options {
    std::string scheme_path;
    std::string format = "text";
    std::string field = "fp";
    std::string suite = "all";
    std::string mix = "mixed";
    std::string constraint = "generic";
    std::string range;
    std::string out_path;
    std::uint64_t prime = p2b::kDefaultPrime;
    std::uint64_t seed = p2b::kDefaultSeed;
    int c1 = 0;
    int c2 = 0;
    int r = 0;
    int k = 0;
    int u = 0;
    int trials = 100;
    int u_min = 1;
    int u_max = 5;
    std::string space = "p2";
};

void emit(const p2b::json& doc, const std::string& format) {
    std::cout << (format == "json" ? doc.dump() : doc.dump(2)) << "\n";
}

p2b::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw p2b::SchemeError("cannot open scheme file: " + path);
    return p2b::json::parse(in);
}

p2b::FieldSpec field_spec_from_flags(const Options& opt) {
    if (opt.field == "q") return p2b::FieldSpec::rationals();
    if (opt.field == "fp") {
        auto spec = p2b::FieldSpec::fp(opt.prime);
        spec.validate();
        return spec;
    }
    throw p2b::FieldError("unknown field \"" + opt.field + "\" (use fp or q)");
}

p2b::SchemeSpec parse_constraint(int u, const std::string& text) {
    std::string name = text;
    std::optional<int> arg;
    const auto open = text.find_first_of("(:");
    if (open != std::string::npos) {
        name = text.substr(0, open);
        std::string rest = text.substr(open + 1);
        if (!rest.empty() && rest.back() == ')') rest.pop_back();
        arg = std::stoi(rest);
    }
    if (name == "generic") return p2b::SchemeSpec::generic(u);
    if (name == "on_conic") return p2b::SchemeSpec::on_conic(u);
    if (name == "collinear_subset") {
        if (!arg) throw p2b::SchemeError("collinear_subset needs a size, e.g. collinear_subset(3)");
        return p2b::SchemeSpec::collinear_subset(u, *arg);
    }
    if (name == "with_arc") {
        if (!arg) throw p2b::SchemeError("with_arc needs a length, e.g. with_arc(2)");
        return p2b::SchemeSpec::with_arc(u, *arg);
    }
    throw p2b::SchemeError("unknown constraint \"" + text + "\"");
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos)
        throw p2b::WindowTooSmall("range must look like a..b");
    return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 2))};
}

int run_rr(const Options& opt) {
    if (opt.space == "p2") {
        std::cout << p2b::rr_chi_p2(opt.c1, opt.c2, opt.k) << "\n";
    } else {
        std::cout << p2b::rr_chi_p3(opt.c1, opt.c2, opt.k).get_str() << "\n";
    }
    return 0;
}

int run_random(const Options& opt) {
    const auto spec = field_spec_from_flags(opt);
    const auto scheme_spec = parse_constraint(opt.u, opt.constraint);
    const auto doc = p2b::with_field(spec, [&](auto f) {
        p2b::Rng rng(opt.seed);
        return p2b::scheme_to_json(p2b::random_scheme(f, scheme_spec, rng));
    });
    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path);
        if (!out) throw p2b::SchemeError("cannot write " + opt.out_path);
        out << doc.dump(2) << "\n";
    } else {
        emit(doc, opt.format);
    }
    return 0;
}

int run_classify(const Options& opt) {
    const auto doc = load_json_file(opt.scheme_path);
    const auto spec = p2b::field_spec_from_json(doc.at("field"));
    const auto out = p2b::with_field(spec, [&](auto f) {
        return p2b::classification_json(p2b::scheme_from_json(f, doc));
    });
    if (opt.format == "json")
        emit(out, opt.format);
    else
        std::cout << p2b::classification_text(out);
    return 0;
}

int run_cohomology(const Options& opt) {
    const auto doc = load_json_file(opt.scheme_path);
    const auto spec = p2b::field_spec_from_json(doc.at("field"));
    std::optional<std::pair<int, int>> window;
    if (!opt.range.empty()) window = parse_range(opt.range);
    return p2b::with_field(spec, [&](auto f) {
        auto e = p2b::make_bundle(p2b::scheme_from_json(f, doc), opt.c1, opt.r);
        const auto table = p2b::cohomology_table(e, window);
        if (opt.format == "json")
            emit(p2b::table_json(e, table), opt.format);
        else
            std::cout << p2b::table_text(table);
        return 0;
    });
}

int run_verify(const Options& opt) {
    p2b::EnsembleConfig cfg;
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.u_min = opt.u_min;
    cfg.u_max = opt.u_max;
    cfg.field = field_spec_from_flags(opt);
    if (opt.mix == "nonstable") cfg.mix = p2b::StabilityMix::NonStable;
    else if (opt.mix == "stable") cfg.mix = p2b::StabilityMix::Stable;
    else if (opt.mix == "split") cfg.mix = p2b::StabilityMix::Split;
    else cfg.mix = p2b::StabilityMix::Mixed;

    p2b::EnsembleSummary summary;
    summary.config = cfg;

    if (opt.suite == "all" || opt.suite == "tcv2")
        summary = p2b::verify_ensemble(cfg);

    if (opt.suite == "all" || opt.suite == "resolutions") {
        p2b::with_field(cfg.field, [&](auto f) {
            p2b::Rng rng = p2b::Rng(cfg.seed).child(kTenCasesStream);
            try {
                const auto witnesses = p2b::realize_ten_cases(f, rng);
                for (const auto& [label, scheme] : witnesses) {
                    p2b::CheckReport r;
                    r.check_id = "resolution_case";
                    r.instance_digest = "seed=" + std::to_string(cfg.seed) +
                                        ";label=" + label.label();
                    r.status = p2b::CheckReport::Status::Pass;
                    summary.add(r);
                }
            } catch (const p2b::Error& err) {
                p2b::CheckReport r;
                r.check_id = "resolution_case";
                r.instance_digest = "seed=" + std::to_string(cfg.seed);
                r.status = p2b::CheckReport::Status::Fail;
                r.details = {{"error", err.what()}};
                summary.add(r);
            }
            return 0;
        });
    }

    if (opt.suite == "all" || opt.suite == "remarks") {
        p2b::with_field(cfg.field, [&](auto f) {
            p2b::Rng rng = p2b::Rng(cfg.seed).child(kRemarksStream);
            for (const auto& r : p2b::verify_remarks(f, rng)) summary.add(r);
            return 0;
        });
    }

    emit(p2b::summary_json(summary), opt.format);
    return summary.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t default_prime = p2b::kDefaultPrime;
    if (const char* env = std::getenv("P2BUNDLE_PRIME")) {
        try {
            default_prime = std::stoull(env);
            p2b::FieldSpec::fp(default_prime).validate();
        } catch (const std::exception& e) {
            std::cerr << "P2BUNDLE_PRIME is not a usable prime: " << e.what() << "\n";
            return 2;
        }
    }

    Options opt;
    opt.prime = default_prime;

    CLI::App app{"exact cohomology of rank-two bundles on the projective plane"};
    app.require_subcommand(1);

    auto* rr = app.add_subcommand("rr", "evaluate the Euler characteristic chi(E(k))");
    rr->add_option("--space", opt.space, "p2 or p3")
        ->check(CLI::IsMember({"p2", "p3"}))
        ->capture_default_str();
    rr->add_option("--c1", opt.c1, "first Chern class (-1 or 0)")->required();
    rr->add_option("--c2", opt.c2, "second Chern class")->required();
    rr->add_option("--k", opt.k, "twist")->required();

    auto* random = app.add_subcommand("random", "sample a random scheme and emit its JSON file");
    random->add_option("--u", opt.u, "degree of the scheme")->required();
    random->add_option("--constraint", opt.constraint,
                       "generic | collinear_subset(k) | on_conic | with_arc(l)")
        ->capture_default_str();
    random->add_option("--seed", opt.seed, "rng seed")->capture_default_str();
    random->add_option("--field", opt.field, "fp or q")
        ->check(CLI::IsMember({"fp", "q"}))
        ->capture_default_str();
    random->add_option("--prime", opt.prime, "modulus for fp");
    random->add_option("--out", opt.out_path, "write to a file instead of stdout");
    random->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    auto* classify = app.add_subcommand("classify", "Betti numbers and resolution class of a scheme");
    classify->add_option("--scheme", opt.scheme_path, "scheme JSON file")->required();
    classify->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    auto* cohomology = app.add_subcommand("cohomology", "cohomology table of the bundle built from a scheme");
    cohomology->add_option("--scheme", opt.scheme_path, "scheme JSON file")->required();
    cohomology->add_option("--c1", opt.c1, "first Chern class (-1 or 0)")->required();
    cohomology->add_option("--r", opt.r, "minimal section twist")->required();
    cohomology->add_option("--range", opt.range, "twist window a..b (default: computed)");
    cohomology->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the theorem suite on seeded random ensembles");
    verify->add_option("--trials", opt.trials, "ensemble size")->capture_default_str();
    verify->add_option("--seed", opt.seed, "rng seed")->capture_default_str();
    verify->add_option("--suite", opt.suite, "all | tcv2 | resolutions | remarks")
        ->check(CLI::IsMember({"all", "tcv2", "resolutions", "remarks"}))
        ->capture_default_str();
    verify->add_option("--mix", opt.mix, "nonstable | stable | split | mixed")
        ->check(CLI::IsMember({"nonstable", "stable", "split", "mixed"}))
        ->capture_default_str();
    verify->add_option("--u-min", opt.u_min, "least scheme degree")->capture_default_str();
    verify->add_option("--u-max", opt.u_max, "largest scheme degree")->capture_default_str();
    verify->add_option("--field", opt.field, "fp or q")
        ->check(CLI::IsMember({"fp", "q"}))
        ->capture_default_str();
    verify->add_option("--prime", opt.prime, "modulus for fp");
    verify->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(rr)) return run_rr(opt);
        if (app.got_subcommand(random)) return run_random(opt);
        if (app.got_subcommand(classify)) return run_classify(opt);
        if (app.got_subcommand(cohomology)) return run_cohomology(opt);
        if (app.got_subcommand(verify)) return run_verify(opt);
    } catch (const p2b::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
