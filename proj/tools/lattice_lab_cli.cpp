// lattice-lab: command-line front end.
//
//   lattice-lab gen --family uniform --n 10 --seed 1 | lattice-lab reduce --algo lll | lattice-lab svp
//
// Exit codes: 0 success (a solver timeout is a result, not a failure),
// 1 domain error, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lattice_lab/basis.hpp"
#include "lattice_lab/benchmark.hpp"
#include "lattice_lab/enumeration.hpp"
#include "lattice_lab/error.hpp"
#include "lattice_lab/lwe.hpp"
#include "lattice_lab/lwe_json.hpp"
#include "lattice_lab/profiles.hpp"
#include "lattice_lab/reduction.hpp"

namespace ll = lattice_lab;
using nlohmann::json;

namespace {

std::string read_input(const std::string& path)
{
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ll::IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path)
{
    const std::string text = read_input(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ll::ParseError(path + ": " + e.what(), 0);
    }
}

json vector_json(const ll::IntVector& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(x.get_str());
    return out;
}

std::size_t worker_count()
{
    if (const char* env = std::getenv("LATTICE_LAB_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return v;
        throw ll::ParameterError("LATTICE_LAB_WORKERS must be a positive integer");
    }
    return 0;
}

ll::LweParams parse_lwe_params(const std::vector<std::uint64_t>& v)
{
    ll::LweParams p;
    p.n = v.at(0);
    p.q = v.at(1);
    p.m = v.at(2);
    p.eta = v.at(3);
    p.validate();
    return p;
}

struct Options {
    // gen
    std::string family = "uniform";
    std::size_t n = 0;
    std::uint64_t seed = 0;
    unsigned bits = 30;
    std::uint64_t q = 12289;
    // reduce
    std::string algo;
    std::string delta = "99/100";
    std::size_t beta = 0;
    std::size_t max_rounds = 64;
    std::string in;
    // svp / bench / validate
    double budget = 3600.0;
    std::uint64_t node_cap = 0;
    std::vector<std::string> families{"uniform"};
    std::vector<std::size_t> dims;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> algos{"lll", "ekz"};
    std::string out;
    bool json_mirror = false;
    // lwe
    std::vector<std::uint64_t> lwe_params;
    std::string key;
    std::string ct;
    int bit = 0;
    // profile
    std::string scheme;
};

ll::LatticeFamily make_family(const std::string& name, const Options& o)
{
    ll::LatticeFamily f;
    f.kind = ll::family_kind_from_string(name);
    f.bits = o.bits;
    f.q = o.q;
    f.validate();
    return f;
}

int cmd_gen(const Options& o)
{
    std::cout << ll::format_basis(ll::gen_basis(make_family(o.family, o), o.n, o.seed));
    return 0;
}

int cmd_reduce(const Options& o)
{
    const ll::Basis basis = ll::parse_basis(read_input(o.in));
    ll::ReductionParams params;
    params.delta = ll::parse_delta(o.delta);
    params.beta = o.beta ? o.beta : std::min<std::size_t>(10, basis.rows());
    params.max_rounds = o.max_rounds;
    const auto report = o.algo == "lll" ? ll::lll(basis, params) : ll::bkz(basis, params);
    std::cout << ll::format_basis(report.basis);
    json j{{"algorithm", o.algo},
           {"status", std::string(ll::to_string(report.status))},
           {"swaps", report.swaps},
           {"rounds", report.rounds},
           {"wall_time_s", report.wall_time_s},
           {"delta", params.delta.get_num().get_str() + "/" + params.delta.get_den().get_str()}};
    if (o.algo == "bkz")
        j["beta"] = params.beta;
    std::cerr << j.dump() << '\n';
    return 0;
}

int cmd_svp(const Options& o)
{
    const ll::Basis basis = ll::parse_basis(read_input(o.in));
    ll::Budget budget;
    budget.wall_time_s = o.budget;
    if (o.node_cap)
        budget.node_cap = o.node_cap;
    const auto r = ll::enumerate_svp(basis, budget);
    json j{{"status", std::string(ll::to_string(r.status))},
           {"norm_sq", r.norm_sq.get_str()},
           {"vector", vector_json(r.vector)},
           {"nodes", r.nodes}};
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_lwe_keygen(const Options& o)
{
    if (o.lwe_params.empty())
        throw ll::ParameterError("keygen needs --params n,q,m,eta");
    const auto kp = ll::lwe_keygen(parse_lwe_params(o.lwe_params), o.seed);
    std::cout << ll::to_json(kp).dump() << '\n';
    return 0;
}

ll::LwePublicKey load_public(const Options& o)
{
    auto pub = ll::lwe_public_from_json(read_json(o.key));
    if (!o.lwe_params.empty() && !(parse_lwe_params(o.lwe_params) == pub.params))
        throw ll::ParameterError("--params does not match the key file");
    return pub;
}

int cmd_lwe_encrypt(const Options& o)
{
    const auto pub = load_public(o);
    const auto ct = ll::lwe_encrypt(pub, o.bit, o.seed);
    std::cout << ll::to_json(ct, pub.params).dump() << '\n';
    return 0;
}

int cmd_lwe_decrypt(const Options& o)
{
    const auto kp = ll::lwe_keypair_from_json(read_json(o.key));
    if (!o.lwe_params.empty() && !(parse_lwe_params(o.lwe_params) == kp.pub.params))
        throw ll::ParameterError("--params does not match the key file");
    const auto ct = ll::lwe_ciphertext_from_json(read_json(o.ct));
    std::cout << json{{"bit", ll::lwe_decrypt(kp.pub.params, kp.secret, ct)}}.dump() << '\n';
    return 0;
}

int cmd_lwe_attack(const Options& o)
{
    const auto pub = load_public(o);
    ll::Budget budget;
    budget.wall_time_s = o.budget;
    std::cout << ll::to_json(ll::lwe_embedding_attack(pub, budget)).dump() << '\n';
    return 0;
}

int cmd_bench(const Options& o)
{
    ll::SuiteConfig config;
    for (const auto& f : o.families)
        config.families.push_back(make_family(f, o));
    config.dimensions = o.dims;
    config.seeds = o.seeds;
    for (const auto& a : o.algos)
        config.algorithms.push_back(ll::algorithm_from_string(a));
    config.params.delta = ll::parse_delta(o.delta);
    if (o.beta)
        config.params.beta = o.beta;
    config.params.max_rounds = o.max_rounds;
    config.budget.wall_time_s = o.budget;
    config.workers = worker_count();

    std::optional<std::filesystem::path> json_out;
    if (o.json_mirror)
        json_out = std::filesystem::path(o.out).replace_extension(".json");
    const auto records = ll::run_suite(config, o.out, json_out);
    std::cout << ll::to_csv(records);
    return 0;
}

int cmd_validate(const Options& o)
{
    ll::Budget budget;
    budget.wall_time_s = o.budget;
    const auto report = ll::find_threshold(make_family(o.family, o), o.dims, o.seeds, budget, worker_count());
    if (!o.out.empty()) {
        std::ofstream csv(o.out, std::ios::binary | std::ios::trunc);
        if (!(csv << ll::to_csv(report.records)))
            throw ll::IoError("cannot write '" + o.out + "'");
    }
    std::cout << ll::to_json(report).dump(2) << '\n';
    return 0;
}

int cmd_profile_show(const Options& o)
{
    const auto registry = ll::ProfileRegistry::builtin();
    std::cout << ll::to_json(registry.profile_of(o.scheme)).dump(2) << '\n';
    return 0;
}

int cmd_profile_export(const Options&)
{
    std::cout << ll::export_profiles(ll::ProfileRegistry::builtin()) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"lattice-lab: lattice reduction, exact SVP, toy LWE and solver benchmarks"};
    app.require_subcommand(1);
    Options o;
    std::function<int(const Options&)> action;

    auto* gen = app.add_subcommand("gen", "Generate a basis; prints the basis text");
    gen->add_option("--family", o.family, "uniform | qary | circulant")
        ->check(CLI::IsMember({"uniform", "qary", "circulant"}));
    gen->add_option("--n", o.n, "Dimension")->required();
    gen->add_option("--seed", o.seed, "PRNG seed")->required();
    gen->add_option("--bits", o.bits, "Entry bit size (uniform, circulant)");
    gen->add_option("--q", o.q, "Modulus (qary)");
    gen->callback([&] { action = cmd_gen; });

    auto* reduce = app.add_subcommand("reduce", "Reduce a basis; basis on stdout, report JSON on stderr");
    reduce->add_option("--algo", o.algo, "lll | bkz")->required()->check(CLI::IsMember({"lll", "bkz"}));
    reduce->add_option("--delta", o.delta, "Lovasz parameter as p/q (default 99/100)");
    reduce->add_option("--beta", o.beta, "BKZ block size (default min(10, n))");
    reduce->add_option("--max-rounds", o.max_rounds, "BKZ pass cap");
    reduce->add_option("--in", o.in, "Input basis file (default stdin)");
    reduce->callback([&] { action = cmd_reduce; });

    auto* svp = app.add_subcommand("svp", "Exact shortest vector; prints SvpResult JSON");
    svp->add_option("--budget", o.budget, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
    svp->add_option("--node-cap", o.node_cap, "Stop after this many enumeration nodes");
    svp->add_option("--in", o.in, "Input basis file (default stdin)");
    svp->callback([&] { action = cmd_svp; });

    auto* lwe = app.add_subcommand("lwe", "Toy LWE encryption and embedding attack");
    lwe->require_subcommand(1);
    auto add_lwe_common = [&](CLI::App* sub) {
        sub->add_option("--params", o.lwe_params, "n,q,m,eta")->delimiter(',')->expected(4);
    };
    auto* keygen = lwe->add_subcommand("keygen", "Generate a key pair");
    add_lwe_common(keygen);
    keygen->add_option("--seed", o.seed)->required();
    keygen->callback([&] { action = cmd_lwe_keygen; });
    auto* encrypt = lwe->add_subcommand("encrypt", "Encrypt one bit");
    add_lwe_common(encrypt);
    encrypt->add_option("--key", o.key, "Key JSON file")->required();
    encrypt->add_option("--bit", o.bit, "Plaintext bit")->required();
    encrypt->add_option("--seed", o.seed)->required();
    encrypt->callback([&] { action = cmd_lwe_encrypt; });
    auto* decrypt = lwe->add_subcommand("decrypt", "Decrypt a ciphertext");
    add_lwe_common(decrypt);
    decrypt->add_option("--key", o.key, "Key JSON file with secret")->required();
    decrypt->add_option("--ct", o.ct, "Ciphertext JSON file")->required();
    decrypt->add_option("--seed", o.seed);
    decrypt->callback([&] { action = cmd_lwe_decrypt; });
    auto* attack = lwe->add_subcommand("attack", "Embedding attack on the public key");
    add_lwe_common(attack);
    attack->add_option("--key", o.key, "Key JSON file")->required();
    attack->add_option("--budget", o.budget)->check(CLI::PositiveNumber);
    attack->add_option("--seed", o.seed);
    attack->callback([&] { action = cmd_lwe_attack; });

    auto* bench = app.add_subcommand("bench", "Run a benchmark grid; writes CSV");
    bench->add_option("--families", o.families)->delimiter(',');
    bench->add_option("--dims", o.dims)->delimiter(',')->required();
    bench->add_option("--seeds", o.seeds)->delimiter(',')->required();
    bench->add_option("--algos", o.algos)->delimiter(',');
    bench->add_option("--budget", o.budget)->check(CLI::PositiveNumber);
    bench->add_option("--out", o.out, "CSV output path")->required();
    bench->add_flag("--json", o.json_mirror, "Also write a JSON mirror next to the CSV");
    bench->add_option("--bits", o.bits);
    bench->add_option("--q", o.q);
    bench->add_option("--delta", o.delta);
    bench->add_option("--beta", o.beta);
    bench->add_option("--max-rounds", o.max_rounds);
    bench->callback([&] { action = cmd_bench; });

    auto* validate = app.add_subcommand("validate", "Find the dimension where exact SVP stops completing");
    validate->add_option("--family", o.family)->check(CLI::IsMember({"uniform", "qary", "circulant"}));
    validate->add_option("--dims", o.dims)->delimiter(',')->required();
    validate->add_option("--seeds", o.seeds)->delimiter(',')->required();
    validate->add_option("--budget", o.budget)->check(CLI::PositiveNumber);
    validate->add_option("--bits", o.bits);
    validate->add_option("--q", o.q);
    validate->add_option("--out", o.out, "Optional CSV of the underlying records");
    validate->callback([&] { action = cmd_validate; });

    auto* profile = app.add_subcommand("profile", "Interpretive security profiles");
    profile->require_subcommand(1);
    auto* show = profile->add_subcommand("show", "Show one profile");
    show->add_option("name", o.scheme)->required();
    show->callback([&] { action = cmd_profile_show; });
    auto* exp = profile->add_subcommand("export", "Export the registry");
    exp->callback([&] { action = cmd_profile_export; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return action(o);
    } catch (const ll::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
