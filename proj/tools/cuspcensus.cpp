// Command-line front end: every subcommand prints a JSON report (or text
// with --text) and maps library errors to distinct exit codes.

#include "cuspcensus/bounds.hpp"
#include "cuspcensus/cusps.hpp"
#include "cuspcensus/error.hpp"
#include "cuspcensus/genus.hpp"
#include "cuspcensus/qforms.hpp"
#include "cuspcensus/serialize.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace cuspcensus;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit : int {
    kOk = 0,
    kNotProven = 2,
    kInput = 3,
    kResource = 4,
    kCocompact = 5,
    kSearchExhausted = 6,
};

int exit_code(const Error& e)
{
    switch (e.kind()) {
    case Error::Kind::Input:
        return kInput;
    case Error::Kind::Resource:
        return kResource;
    case Error::Kind::Cocompact:
        return kCocompact;
    case Error::Kind::SearchExhausted:
        return kSearchExhausted;
    }
    return kInput;
}

const char* error_label(const Error& e)
{
    switch (e.kind()) {
    case Error::Kind::Input:
        return "input";
    case Error::Kind::Resource:
        return "resource";
    case Error::Kind::Cocompact:
        return "cocompact";
    case Error::Kind::SearchExhausted:
        return "search_exhausted";
    }
    return "input";
}

std::string fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

unsigned precision_bits()
{
    const char* env = std::getenv("CUSPCENSUS_PRECISION_BITS");
    if (env == nullptr || *env == '\0') {
        return kDefaultPrecisionBits;
    }
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v < 8 || v > kPrecisionCapBits) {
        throw InputError("CUSPCENSUS_PRECISION_BITS must be an integer in [8, " +
                         std::to_string(kPrecisionCapBits) + "]");
    }
    return static_cast<unsigned>(v);
}

// What a subcommand hands back: the JSON payload, its text rendering and the
// exit code it asks for.
struct Outcome {
    Json result;
    std::string text;
    int code = kOk;
};

struct Context {
    std::vector<std::string> argv;
    bool text = false;
    std::string out_dir;
};

void write_atomically(const fs::path& target, const std::string& content)
{
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ResourceError("cannot write " + tmp.string());
        }
        out << content;
        if (!out.flush()) {
            throw ResourceError("cannot write " + tmp.string());
        }
    }
    fs::rename(tmp, target);
}

// Runs one unit of work and emits its report. Returns the exit code.
int run_one(const Context& ctx,
            const std::string& input_name,
            const std::string& input_bytes,
            const std::function<Outcome()>& work)
{
    const auto start = std::chrono::steady_clock::now();
    Json report;
    report["tool"] = "cuspcensus";
    report["version"] = kVersion;
    report["command"] = ctx.argv;
    if (!input_name.empty()) {
        report["input"] = input_name;
        report["input_digest"] = fnv1a64(input_bytes);
    }
    int code = kOk;
    std::string text;
    try {
        Outcome o = work();
        report["status"] = "ok";
        report["result"] = std::move(o.result);
        text = std::move(o.text);
        code = o.code;
    } catch (const Error& e) {
        code = exit_code(e);
        report["status"] = "error";
        report["error"] = Json{{"kind", error_label(e)}, {"message", e.what()}};
        text = std::string("error (") + error_label(e) + "): " + e.what() + "\n";
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    report["exit_code"] = code;
    report["elapsed_ms"] = static_cast<std::int64_t>(elapsed);

    std::string rendered = ctx.text ? text : report.dump(2) + "\n";
    if (ctx.out_dir.empty()) {
        std::cout << rendered << std::flush;
        if (!ctx.text && code != kOk && code != kNotProven) {
            std::cerr << text;
        }
    } else {
        const std::string stem = input_name.empty() ? "report" : fs::path(input_name).stem().string();
        const fs::path target = fs::path(ctx.out_dir) / (stem + (ctx.text ? ".txt" : ".json"));
        write_atomically(target, rendered);
    }
    return code;
}

std::vector<std::string> read_batch_list(const std::string& path)
{
    std::istringstream in(read_file(path));
    std::vector<std::string> files;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            continue;
        }
        const auto e = line.find_last_not_of(" \t\r");
        files.push_back(line.substr(b, e - b + 1));
    }
    return files;
}

// Applies `per_file` to a single file or to every file of a batch list.
// The worst exit code wins in batch mode.
int run_files(const Context& ctx,
              const std::string& file,
              const std::string& batch,
              const std::function<Outcome(const std::string& bytes)>& per_file)
{
    std::vector<std::string> files;
    if (!batch.empty()) {
        if (ctx.out_dir.empty()) {
            throw InputError("--batch requires --out");
        }
        files = read_batch_list(batch);
    } else if (!file.empty()) {
        files.push_back(file);
    } else {
        throw InputError("a form file or --batch is required");
    }
    int worst = kOk;
    for (const auto& f : files) {
        std::string bytes;
        int code = kOk;
        try {
            bytes = read_file(f);
            code = run_one(ctx, f, bytes, [&] { return per_file(bytes); });
        } catch (const Error& e) {
            code = run_one(ctx, f, bytes, [&]() -> Outcome { throw e; });
        }
        worst = std::max(worst, code);
    }
    return worst;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cusp counts and finiteness certificates for arithmetic hyperbolic lattices"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Context ctx;
    for (int i = 0; i < argc; ++i) {
        ctx.argv.emplace_back(i == 0 ? "cuspcensus" : argv[i]);
    }
    app.add_flag("--text", ctx.text, "Human-readable output instead of JSON");
    app.add_option("--out", ctx.out_dir, "Write reports into this directory")->check(CLI::ExistingDirectory);

    unsigned dim = 0;
    auto* onecusp = app.add_subcommand("onecusp", "Volume bound against one-cusped lattices in dimension n");
    onecusp->add_option("--dim", dim, "Dimension n of hyperbolic space (n >= 4)")->required();

    std::int64_t disc = 0;
    auto* classnumber = app.add_subcommand("classnumber", "Class number of a negative discriminant");
    classnumber->add_option("--disc", disc, "Discriminant d < 0, d = 0 or 1 mod 4")->required();

    std::string form_file;
    std::string batch_file;
    unsigned long prime = 0;
    std::size_t budget = genus::kDefaultBudget;

    std::int64_t height = cusps::kDefaultSearchHeight;
    std::int64_t max_height = cusps::kMaxSearchHeight;
    std::string galois_bound;
    bool no_iwasawa = false;
    auto* cusps_cmd = app.add_subcommand("cusps", "Principal cusp count of a signature (n,1) form");
    cusps_cmd->add_option("file", form_file, "Gram matrix file");
    cusps_cmd->add_option("--batch", batch_file, "File listing one form file per line");
    cusps_cmd->add_option("--prime", prime, "Neighbor prime (default: smallest admissible)");
    cusps_cmd->add_option("--height", height, "Initial isotropic search height");
    cusps_cmd->add_option("--max-height", max_height, "Isotropic search gives up beyond this height");
    cusps_cmd->add_option("--galois-bound", galois_bound, "Bound on the Galois-cohomology index (rational)");
    cusps_cmd->add_option("--budget", budget, "Maximum number of classes before giving up");
    cusps_cmd->add_flag("--no-iwasawa", no_iwasawa, "Report the count as a lower bound only");

    auto* census_cmd = app.add_subcommand("census", "Classes in the spinor genus of a definite lattice");
    census_cmd->add_option("file", form_file, "Gram matrix file");
    census_cmd->add_option("--batch", batch_file, "File listing one form file per line");
    census_cmd->add_option("--prime", prime, "Neighbor prime (default: smallest admissible)");
    census_cmd->add_option("--budget", budget, "Maximum number of classes before giving up");

    app.add_subcommand("delta0", "Derivation of the uniform lower bound on the Euler factors");

    std::string max_cusps = "1";
    std::string delta0_text = "3/200";
    unsigned rank_cap = bounds::kDefaultRankCap;
    auto* enumerate = app.add_subcommand("enumerate", "Lie types not excluded by the volume bound");
    enumerate->add_option("--max-cusps", max_cusps, "Cusp bound x (rational)");
    enumerate->add_option("--delta0", delta0_text, "Lower bound delta0 for the Euler factors (rational)");
    enumerate->add_option("--rank-cap", rank_cap, "Give up if no tail is certified below this rank");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        if (onecusp->parsed()) {
            return run_one(ctx, "", "", [&] {
                const auto report = bounds::one_cusp_certificate(dim, precision_bits());
                return Outcome{to_json(report), render_text(report),
                               report.verdict == bounds::Verdict::Proven ? kOk : kNotProven};
            });
        }
        if (classnumber->parsed()) {
            return run_one(ctx, "", "", [&] {
                const auto h = qforms::class_number(disc);
                Json forms = Json::array();
                std::ostringstream text;
                text << "h(" << disc << ") = " << h << '\n';
                for (const auto& f : qforms::reduced_forms(disc)) {
                    forms.push_back(Json{{"a", f.a}, {"b", f.b}, {"c", f.c}});
                    text << "  (" << f.a << ", " << f.b << ", " << f.c << ")\n";
                }
                return Outcome{Json{{"discriminant", disc}, {"class_number", h}, {"reduced_forms", forms}},
                               text.str()};
            });
        }
        if (cusps_cmd->parsed()) {
            std::optional<Rational> g;
            if (!galois_bound.empty()) {
                g = parse_rational(galois_bound);
            }
            return run_files(ctx, form_file, batch_file, [&](const std::string& bytes) {
                const qforms::RationalForm q(qforms::parse_gram_text(bytes));
                const auto split = cusps::split_hyperbolic(q, height, max_height);
                cusps::CountOptions opts;
                if (prime != 0) {
                    opts.prime = prime;
                }
                opts.budget = budget;
                opts.assume_iwasawa = !no_iwasawa;
                auto cert = cusps::principal_cusp_count(split, opts);
                if (g) {
                    cert = cusps::maximal_lower_bound(std::move(cert), *g, "user supplied");
                } else {
                    const unsigned n = static_cast<unsigned>(q.dim() - 1);
                    cert = cusps::maximal_lower_bound(std::move(cert), bounds::default_galois_bound(n),
                                                      "default: 2 * (center order bound)^2, trivial h, D, T, Xi");
                }
                const int code = cert.complete ? kOk : kResource;
                return Outcome{to_json(cert), render_text(cert), code};
            });
        }
        if (census_cmd->parsed()) {
            return run_files(ctx, form_file, batch_file, [&](const std::string& bytes) {
                const auto lattice = qforms::to_lattice(qforms::parse_gram_text(bytes));
                const unsigned long p = prime != 0 ? prime : genus::default_prime(lattice);
                genus::CensusOptions opts;
                opts.budget = budget;
                const auto census = genus::spinor_genus_classes(lattice, p, opts);
                return Outcome{to_json(census), render_text(census), census.exhausted ? kOk : kResource};
            });
        }
        if (app.got_subcommand("delta0")) {
            return run_one(ctx, "", "", [&] {
                const auto d = bounds::delta0_derivation();
                return Outcome{to_json(d), render_text(d)};
            });
        }
        if (enumerate->parsed()) {
            return run_one(ctx, "", "", [&] {
                const auto f = bounds::finiteness_enumerate(parse_rational(max_cusps), parse_rational(delta0_text),
                                                            precision_bits(), rank_cap);
                return Outcome{to_json(f), render_text(f)};
            });
        }
    } catch (const Error& e) {
        std::cerr << "error (" << error_label(e) << "): " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResource;
    }
    return kInput;
}
