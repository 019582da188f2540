#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "carlitz/errors.hpp"
#include "carlitz/json_io.hpp"
#include "carlitz/motive.hpp"
#include "carlitz/relations.hpp"
#include "carlitz/special.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using carlitz::Json;

int exit_code(carlitz::ErrorKind kind) {
    switch (kind) {
        case carlitz::ErrorKind::Math: return 1;
        case carlitz::ErrorKind::Inconclusive: return 3;
        default: return 2;
    }
}

// ---------------------------------------------------------------- config

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

/// key=value lines; '#' starts a comment; flags always win over the file.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw carlitz::fail_config("cannot open config file: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw carlitz::fail_config("config line is not key=value: " + line);
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> scan_config(int argc, char** argv) {
    std::string path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
    }
    if (path.empty()) {
        if (const char* env = std::getenv("CARLITZ_CONFIG")) path = env;
    }
    if (path.empty()) return {};
    return load_config_file(path);
}

std::int64_t cfg_int(const std::map<std::string, std::string>& cfg, const std::string& key,
                     std::int64_t fallback) {
    auto it = cfg.find(key);
    if (it == cfg.end()) return fallback;
    try {
        return std::stoll(it->second);
    } catch (const std::exception&) {
        throw carlitz::fail_config("config key '" + key + "' is not an integer: " + it->second);
    }
}

std::string cfg_str(const std::map<std::string, std::string>& cfg, const std::string& key,
                    const std::string& fallback) {
    auto it = cfg.find(key);
    return it == cfg.end() ? fallback : it->second;
}

// ---------------------------------------------------------------- options

struct Opts {
    std::int64_t q = 0;
    std::int64_t prec = 60;  // in theta^(-1) units; w-precision is prec*(q-1)
    std::int64_t tdeg = 16;
    std::int64_t deg = 6;
    std::int64_t caps = 4096;
    std::int64_t i = 1;
    std::int64_t n = 1;
    std::int64_t twist = 0;
    std::string format = "text";
    std::string tuple;
    std::string alphas;
    std::string targets;
    std::string variant = "general";
    std::string check_name;
    std::string config_path; // consumed by scan_config; registered so CLI11 accepts it
    bool use_at = false;
};

carlitz::IndexTuple parse_tuple(const std::string& text) {
    carlitz::IndexTuple out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw carlitz::fail_config("bad index tuple entry: '" + item + "'");
        const long long v = std::stoll(item);
        if (v <= 0 || v > 1'000'000) throw carlitz::fail_config("index out of range: " + item);
        out.push_back(static_cast<unsigned>(v));
    }
    if (out.empty()) throw carlitz::fail_config("empty index tuple");
    return out;
}

std::vector<carlitz::BiPoly> parse_alphas(const carlitz::FqPtr& f, const std::string& text) {
    std::vector<carlitz::BiPoly> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) throw carlitz::fail_config("empty alpha entry");
        out.push_back(carlitz::BiPoly::parse(f, item));
    }
    return out;
}

struct Output {
    Json echo;
    Json result;
    std::string text;
    int code = 0;
};

void emit(const std::string& command, const Opts& o, const Output& out) {
    if (o.format == "json") {
        Json doc;
        doc["version"] = kVersion;
        doc["command"] = command;
        doc["config"] = out.echo;
        doc["result"] = out.result;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "carlitz " << kVersion << "\n# ";
        bool first = true;
        for (const auto& [k, v] : out.echo.items()) {
            if (!first) std::cout << " ";
            first = false;
            std::cout << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
        }
        std::cout << "\n" << out.text << "\n";
    }
}

// ---------------------------------------------------------------- runners

carlitz::FqPtr field_for(const Opts& o) {
    if (o.q < 2) throw carlitz::fail_config("--q is required (a prime power between 2 and 64)");
    return carlitz::Fq::make(static_cast<unsigned>(o.q));
}

std::int64_t wprec(const Opts& o) {
    if (o.prec <= 0) throw carlitz::fail_config("--prec must be positive");
    return o.prec * (o.q - 1);
}

Json base_echo(const Opts& o) {
    Json e;
    e["q"] = o.q;
    e["prec"] = o.prec;
    e["caps"] = o.caps;
    e["format"] = o.format;
    return e;
}

Output run_zeta(const Opts& o) {
    const auto f = field_for(o);
    const carlitz::IndexTuple idx = parse_tuple(o.tuple);
    const carlitz::LaurentSeries z = carlitz::mzv(f, idx, wprec(o), o.caps);
    Output out;
    out.echo = base_echo(o);
    out.echo["tuple"] = o.tuple;
    out.result = carlitz::series_json(z);
    out.text = "zeta(" + o.tuple + ") = " + carlitz::series_text(z);
    return out;
}

Output run_pi(const Opts& o) {
    const auto f = field_for(o);
    const carlitz::LaurentSeries s = carlitz::pi_carlitz(f, wprec(o));
    Output out;
    out.echo = base_echo(o);
    out.result = carlitz::series_json(s);
    out.text = "pi = " + carlitz::series_text(s);
    return out;
}

Output run_omega(const Opts& o) {
    const auto f = field_for(o);
    const carlitz::TateElem w = carlitz::omega(f, o.tdeg, wprec(o));
    Output out;
    out.echo = base_echo(o);
    out.echo["tdeg"] = o.tdeg;
    out.result = carlitz::tate_json(w);
    out.text = carlitz::tate_text(w);
    return out;
}

Output run_powersum(const Opts& o) {
    const auto f = field_for(o);
    if (o.i < 0 || o.n <= 0) throw carlitz::fail_config("powersum needs --i >= 0 and --n >= 1");
    const carlitz::LaurentSeries s = carlitz::power_sum(
        f, static_cast<unsigned>(o.i), static_cast<unsigned>(o.n), wprec(o), o.caps);
    Output out;
    out.echo = base_echo(o);
    out.echo["i"] = o.i;
    out.echo["n"] = o.n;
    out.result = carlitz::series_json(s);
    out.text = "S_" + std::to_string(o.i) + "(" + std::to_string(o.n) +
               ") = " + carlitz::series_text(s);
    return out;
}

Output run_gamma(const Opts& o) {
    const auto f = field_for(o);
    if (o.n <= 0) throw carlitz::fail_config("gamma needs --n >= 1");
    const carlitz::FqPoly g = carlitz::carlitz_factorial(f, static_cast<unsigned>(o.n));
    Output out;
    out.echo = base_echo(o);
    out.echo["n"] = o.n;
    Json res;
    res["n"] = o.n;
    res["gamma"] = g.to_string();
    out.result = std::move(res);
    out.text = "Gamma_" + std::to_string(o.n) + " = " + g.to_string();
    return out;
}

Output run_atpoly(const Opts& o) {
    const auto f = field_for(o);
    if (o.n <= 0) throw carlitz::fail_config("atpoly needs --n >= 1");
    const carlitz::ATPoly a = carlitz::anderson_thakur(f, static_cast<unsigned>(o.n), o.caps);
    Output out;
    out.echo = base_echo(o);
    out.echo["n"] = o.n;
    out.result = carlitz::atpoly_json(a);
    out.text = "H(n=" + std::to_string(o.n) + ") = " + a.h.to_string() +
               (a.unique ? "  [unique" : "  [non-unique") +
               ", fitted i<=" + std::to_string(a.fitted_to) +
               ", verified i<=" + std::to_string(a.verified_to) + "]";
    return out;
}

Output run_mcpl(const Opts& o) {
    const auto f = field_for(o);
    const carlitz::IndexTuple idx = parse_tuple(o.tuple);
    std::vector<carlitz::BiPoly> alphas;
    if (o.alphas.empty()) {
        alphas.assign(idx.size(), carlitz::BiPoly::constant(f, f->one()));
    } else {
        alphas = parse_alphas(f, o.alphas);
    }
    if (alphas.size() != idx.size())
        throw carlitz::fail_config("need one alpha per index entry");
    const carlitz::TateElem s = carlitz::mcpl(f, alphas, idx, o.tdeg, wprec(o));
    Output out;
    out.echo = base_echo(o);
    out.echo["tuple"] = o.tuple;
    out.echo["alphas"] = o.alphas.empty() ? std::string("1") : o.alphas;
    out.echo["tdeg"] = o.tdeg;
    out.result = carlitz::tate_json(s);
    out.text = carlitz::tate_text(s);
    return out;
}

Output run_motive_verify(const Opts& o) {
    const auto f = field_for(o);
    std::optional<carlitz::MotiveSystem> sys;
    Json echo = base_echo(o);
    echo["tdeg"] = o.tdeg;
    echo["variant"] = o.variant;
    if (o.variant == "multi") {
        if (o.n <= 0) throw carlitz::fail_config("multi variant needs --n >= 1");
        std::vector<carlitz::BiPoly> alphas =
            o.alphas.empty() ? std::vector<carlitz::BiPoly>{} : parse_alphas(f, o.alphas);
        echo["n"] = o.n;
        echo["alphas"] = o.alphas;
        sys = carlitz::MotiveSystem::depth_one(f, alphas, static_cast<unsigned>(o.n), o.tdeg,
                                               wprec(o));
    } else if (o.variant == "general") {
        const carlitz::IndexTuple idx = parse_tuple(o.tuple);
        std::vector<carlitz::BiPoly> alphas;
        if (o.use_at) {
            for (unsigned n : idx)
                alphas.push_back(carlitz::anderson_thakur(f, n, o.caps).h);
        } else if (o.alphas.empty()) {
            alphas.assign(idx.size(), carlitz::BiPoly::constant(f, f->one()));
        } else {
            alphas = parse_alphas(f, o.alphas);
        }
        echo["tuple"] = o.tuple;
        echo["alphas"] = o.use_at ? std::string("<interpolation>") : o.alphas;
        sys = carlitz::MotiveSystem::general(f, idx, alphas, o.tdeg, wprec(o));
    } else {
        throw carlitz::fail_config("--variant must be 'general' or 'multi'");
    }
    const carlitz::VerificationReport rep = sys->verify();
    Output out;
    out.echo = std::move(echo);
    out.result = carlitz::motive_report_json(rep);
    std::ostringstream text;
    text << "status: " << carlitz::to_string(rep.status) << "\n";
    text << "window: t-degrees [0," << rep.tdeg_checked << "], w-precision "
         << rep.prec_checked << "\n";
    text << "det: " << (rep.det.ok ? "ok" : "FAILED") << ", (t-th)^" << rep.det.exponent
         << " * " << static_cast<int>(rep.det.unit) << "\n";
    for (const carlitz::EntryReport& e : rep.entries) {
        text << "entry (" << e.i << "," << e.j << "): " << carlitz::to_string(e.status);
        if (e.mismatch)
            text << " (mismatch at w-exponent " << *e.mismatch << ", t-degree "
                 << *e.mismatch_tdeg << ")";
        text << "\n";
    }
    out.text = text.str();
    out.text.pop_back();
    out.code = rep.status == carlitz::CheckStatus::Pass ? 0
               : rep.status == carlitz::CheckStatus::Fail ? 1
                                                          : 3;
    return out;
}

Output run_mine(const Opts& o) {
    const auto f = field_for(o);
    if (o.targets.empty()) throw carlitz::fail_config("--targets is required");
    const std::vector<std::string> labels = carlitz::split_targets(o.targets);
    const std::int64_t q = o.q;
    const std::int64_t N = wprec(o);
    const std::int64_t D = o.deg;

    carlitz::MiningProblem prob;
    prob.labels = labels;
    prob.degree_bound = D;
    prob.prec = N;
    for (const std::string& expr : labels)
        prob.targets.push_back(carlitz::eval_target(f, expr, N + D * (q - 1), o.caps));
    carlitz::RelationCertificate cert = carlitz::mine(prob);

    bool refuted = false;
    if (!cert.kernel.empty()) {
        std::vector<carlitz::LaurentSeries> high;
        for (const std::string& expr : labels)
            high.push_back(carlitz::eval_target(f, expr, 2 * N + D * (q - 1), o.caps));
        carlitz::confirm(cert, high);
        for (const carlitz::Confirmation& c : cert.confirmations)
            refuted = refuted || c.residual_val < 2 * N;
    }

    Output out;
    out.echo = base_echo(o);
    out.echo["targets"] = o.targets;
    out.echo["deg"] = D;
    out.result = carlitz::certificate_json(cert);
    std::ostringstream text;
    text << "kind: " << cert.kind << " (D=" << D << ", N=" << N << ")\n";
    for (std::size_t k = 0; k < cert.kernel.size(); ++k) {
        text << "kernel[" << k << "]:";
        for (std::size_t j = 0; j < cert.kernel[k].size(); ++j)
            text << " (" << cert.kernel[k][j].to_string() << ") * " << labels[j]
                 << (j + 1 < cert.kernel[k].size() ? " +" : "");
        text << "\n  confirmed to w-exponent " << cert.confirmations[k].residual_val
             << " (needs >= " << 2 * N << ")\n";
    }
    if (cert.kernel.empty())
        text << "no coefficient vector of degree <= " << D << " annihilates the targets\n";
    out.text = text.str();
    out.text.pop_back();
    out.code = refuted ? 1 : 0;
    return out;
}

Output run_check(const Opts& o) {
    const auto f = field_for(o);
    if (o.check_name.empty()) throw carlitz::fail_config("check needs a name argument");
    carlitz::NamedCheckParams params;
    if (!o.tuple.empty())
        params.idx = parse_tuple(o.tuple);
    else if (o.n > 0)
        params.idx = carlitz::IndexTuple{static_cast<unsigned>(o.n)};
    params.prec = wprec(o);
    params.tdeg = o.tdeg;
    params.degree_bound = o.deg;
    params.cap = o.caps;
    const carlitz::CheckOutcome res = carlitz::named_check(f, o.check_name, params);
    Output out;
    out.echo = base_echo(o);
    out.echo["name"] = o.check_name;
    out.echo["tuple"] = o.tuple.empty() ? std::to_string(o.n) : o.tuple;
    out.echo["tdeg"] = o.tdeg;
    out.echo["deg"] = o.deg;
    out.result = carlitz::check_json(res);
    out.text = res.name + ": " + res.status + " (" + res.detail + ") [checked_to=" +
               std::to_string(res.checked_to) + "]";
    out.code = res.status == "fail" ? 1 : 0;
    return out;
}

Output run_chang_eval(const Opts& o) {
    const auto f = field_for(o);
    const carlitz::IndexTuple idx = parse_tuple(o.tuple);
    if (o.twist < 0 || o.twist > 8) throw carlitz::fail_config("--twist must be in [0, 8]");
    const carlitz::ChangReport rep =
        carlitz::chang_eval(f, idx, static_cast<unsigned>(o.twist), wprec(o), o.caps);
    Output out;
    out.echo = base_echo(o);
    out.echo["tuple"] = o.tuple;
    out.echo["twist"] = o.twist;
    out.result = carlitz::chang_json(rep);
    std::ostringstream text;
    text << "match: " << (rep.match ? "yes" : "NO") << " (checked to w-exponent "
         << rep.checked_to << ")\n";
    text << "lhs = " << carlitz::series_text(rep.lhs) << "\n";
    text << "rhs = " << carlitz::series_text(rep.rhs);
    out.text = text.str();
    out.code = rep.match ? 0 : 1;
    return out;
}

void add_common(CLI::App* sub, Opts& o) {
    sub->add_option("--q", o.q, "field size q = p^m (2..64)");
    sub->add_option("--prec", o.prec, "precision in theta^(-1) units");
    sub->add_option("--caps", o.caps, "resource cap for enumerations");
    sub->add_option("--format", o.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--config", o.config_path, "config file (key=value); flags win");
}

} // namespace

int main(int argc, char** argv) {
    Opts o;
    CLI::App app{"exact arithmetic for characteristic-p multizeta values"};
    app.set_version_flag("--version", std::string("carlitz ") + kVersion);
    app.require_subcommand(1);

    try {
        const auto cfg = scan_config(argc, argv);
        o.q = cfg_int(cfg, "q", o.q);
        o.prec = cfg_int(cfg, "prec", o.prec);
        o.tdeg = cfg_int(cfg, "tdeg", o.tdeg);
        o.deg = cfg_int(cfg, "deg", o.deg);
        o.caps = cfg_int(cfg, "caps", o.caps);
        o.format = cfg_str(cfg, "format", o.format);

        Output (*runner)(const Opts&) = nullptr;
        std::string command;
        auto hook = [&](const std::string& name, Output (*fn)(const Opts&),
                        const std::string& desc) {
            CLI::App* sub = app.add_subcommand(name, desc);
            add_common(sub, o);
            sub->callback([&runner, &command, name, fn] {
                runner = fn;
                command = name;
            });
            return sub;
        };

        CLI::App* zeta = hook("zeta", run_zeta, "multizeta value as a w-series");
        zeta->add_option("--tuple", o.tuple, "index tuple n1,...,nd")->required();

        hook("pi", run_pi, "Carlitz period as a w-series");

        CLI::App* omega = hook("omega", run_omega, "Omega as a truncated Tate element");
        omega->add_option("--tdeg", o.tdeg, "t-truncation degree");

        CLI::App* powersum = hook("powersum", run_powersum, "degree-i monic power sum S_i(n)");
        powersum->add_option("--i", o.i, "degree of the monic polynomials");
        powersum->add_option("--n", o.n, "inverse power");

        CLI::App* gamma = hook("gamma", run_gamma, "Carlitz factorial Gamma_n");
        gamma->add_option("--n", o.n, "index n >= 1");

        CLI::App* atpoly = hook("atpoly", run_atpoly, "interpolation polynomial H_{n-1}");
        atpoly->add_option("--n", o.n, "weight n >= 1");

        CLI::App* mcpl = hook("mcpl", run_mcpl, "nested polylogarithm series");
        mcpl->add_option("--tuple", o.tuple, "index tuple n1,...,nd")->required();
        mcpl->add_option("--alphas", o.alphas, "semicolon-separated polynomials in th,t");
        mcpl->add_option("--tdeg", o.tdeg, "t-truncation degree");

        CLI::App* motive = hook("motive-verify", run_motive_verify,
                                "build the period matrices and verify the twist equation");
        motive->add_option("--tuple", o.tuple, "index tuple n1,...,nd (general variant)");
        motive->add_option("--alphas", o.alphas, "semicolon-separated polynomials");
        motive->add_option("--n", o.n, "weight (multi variant)");
        motive->add_option("--variant", o.variant, "general|multi");
        motive->add_option("--tdeg", o.tdeg, "t-truncation degree");
        motive->add_flag("--at", o.use_at, "use interpolation polynomials as alphas");

        CLI::App* mine = hook("mine", run_mine, "search for F_q[theta]-linear relations");
        mine->add_option("--targets", o.targets, "comma-separated target expressions")
            ->required();
        mine->add_option("--deg", o.deg, "max coefficient degree D");

        CLI::App* check = hook("check", run_check, "named identity checks");
        check->add_option("name", o.check_name,
                          "euler-like|carlitz-even|q2-identity|frobenius-p|shuffle|chang")
            ->required();
        check->add_option("--tuple", o.tuple, "index tuple argument");
        check->add_option("--n", o.n, "single index argument");
        check->add_option("--tdeg", o.tdeg, "t-truncation for series-level identities");
        check->add_option("--deg", o.deg, "mining degree bound");

        CLI::App* chang = hook("chang-eval", run_chang_eval,
                               "evaluate the deformation identity at t = theta^(q^N)");
        chang->add_option("--tuple", o.tuple, "index tuple n1,...,nd")->required();
        chang->add_option("--twist", o.twist, "twist level N >= 0");

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int rc = app.exit(e);
            return rc == 0 ? 0 : 2;
        }

        const Output out = runner(o);
        emit(command, o, out);
        return out.code;
    } catch (const carlitz::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
