#include "dualrep/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dualrep/duality.hpp"
#include "dualrep/error.hpp"

namespace dualrep::cli {

namespace {

using nlohmann::json;

// Keys that never enter the config echo: they choose where and how fast a
// report is produced, not what it contains.
const char* const kUnechoed[] = {"jobs", "output", "config"};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::invalid_parameter, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::invalid_parameter, "'" + path + "' is not valid JSON: " + e.what());
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& whole) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        fail(ErrorKind::invalid_parameter, "cannot parse '" + whole + "' as a number");
    }
    require(pos == text.size() && std::isfinite(v), ErrorKind::invalid_parameter,
            "cannot parse '" + whole + "' as a number");
    return v;
}

// 1.5, -2, 3i, 1-2i, 0.5+0.5i
cplx parse_scalar(const std::string& raw) {
    const std::string s = trim(raw);
    require(!s.empty(), ErrorKind::invalid_parameter, "empty vector entry");
    if (s.back() != 'i' && s.back() != 'j') return {parse_double(s, raw), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    const std::string re = split == std::string::npos ? "" : body.substr(0, split);
    std::string im = split == std::string::npos ? body : body.substr(split);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {re.empty() ? 0.0 : parse_double(re, raw), parse_double(im, raw)};
}

// Inline comma list, inline JSON array, or @file holding a JSON array.
json vector_text_to_json(const std::string& text) {
    if (!text.empty() && text[0] == '@') return read_json_file(text.substr(1));
    if (!text.empty() && text[0] == '[') {
        try {
            return json::parse(text);
        } catch (const json::parse_error&) {
            fail(ErrorKind::invalid_parameter, "cannot parse vector '" + text + "'");
        }
    }
    std::vector<cplx> entries;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) entries.push_back(parse_scalar(part));
    require(!entries.empty(), ErrorKind::invalid_parameter, "empty vector");
    ComplexVector v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
    return vector_to_json(v);
}

bool names_file(const std::string& s) {
    std::error_code ec;
    return (!s.empty() && s[0] == '@') || std::filesystem::is_regular_file(s, ec);
}

json load_file_ref(const std::string& s) { return read_json_file(s[0] == '@' ? s.substr(1) : s); }

struct Context {
    json cfg;
    Tolerances tol;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string format = "json";
};

std::optional<FiniteGroup> resolve_group(const json& cfg) {
    if (!cfg.contains("group")) return std::nullopt;
    const json& g = cfg["group"];
    if (g.is_string()) {
        const std::string s = g.get<std::string>();
        return names_file(s) ? group_from_json(load_file_ref(s)) : group_from_label(s);
    }
    return group_from_json(g);
}

std::optional<std::size_t> config_n(const json& cfg) {
    if (!cfg.contains("N")) return std::nullopt;
    return cfg["N"].get<std::size_t>();
}

Multiplier resolve_multiplier(const json& cfg) {
    std::optional<FiniteGroup> group = resolve_group(cfg);
    const json m = cfg.value("multiplier", json("trivial"));
    if (m.is_string() && m.get<std::string>() == "heisenberg") {
        std::optional<std::size_t> n = config_n(cfg);
        if (!n) {
            require(group.has_value(), ErrorKind::invalid_parameter, "heisenberg multiplier needs --N or --group");
            n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(group->order()))));
        }
        Multiplier mu = heisenberg_multiplier(*n);
        require(!group || *group == mu.group(), ErrorKind::invalid_parameter,
                "heisenberg multiplier needs the group Z_N x Z_N");
        return mu;
    }
    if (!group) {
        const std::optional<std::size_t> n = config_n(cfg);
        require(n.has_value(), ErrorKind::invalid_parameter, "a group is required (--group or --N)");
        group = cyclic_group(*n);
    }
    if (m.is_string()) {
        const std::string s = m.get<std::string>();
        if (s == "trivial") return trivial_multiplier(*group);
        require(names_file(s), ErrorKind::invalid_parameter, "unknown multiplier '" + s + "'");
        return multiplier_from_json(*group, load_file_ref(s));
    }
    return multiplier_from_json(*group, m);
}

GaborLattice resolve_lattice(const json& cfg) {
    require(cfg.contains("lattice"), ErrorKind::invalid_parameter, "--lattice N,a,b is required");
    const json& l = cfg["lattice"];
    if (l.is_string()) return lattice_from_string(l.get<std::string>());
    require(l.is_array() && l.size() == 3, ErrorKind::invalid_parameter, "lattice must be [N, a, b]");
    GaborLattice lattice{l[0].get<std::size_t>(), l[1].get<std::size_t>(), l[2].get<std::size_t>()};
    require(lattice.valid(), ErrorKind::invalid_parameter, "invalid Gabor lattice: a and b must divide N");
    return lattice;
}

ProjectiveRep resolve_rep(const json& cfg) {
    const json r = cfg.value("rep", json("left-regular"));
    if (r.is_object()) return rep_from_json(r);
    const std::string s = r.get<std::string>();
    if (s == "gabor") return gabor_rep(resolve_lattice(cfg));
    if (s == "gabor-adjoint") return gabor_rep(adjoint_lattice(resolve_lattice(cfg)));
    if (s == "left-regular" || s == "regular" || s == "lambda") return left_regular(resolve_multiplier(cfg));
    if (s == "right-regular" || s == "rho") return right_regular(resolve_multiplier(cfg));
    require(names_file(s), ErrorKind::invalid_parameter, "unknown representation '" + s + "'");
    return rep_from_json(load_file_ref(s));
}

json pair_spec(const json& cfg) {
    const json p = cfg.value("pair", json("regular"));
    if (p.is_object()) return p;
    const std::string s = p.get<std::string>();
    if (s == "regular") {
        json spec = {{"kind", "regular"}};
        const Multiplier mu = resolve_multiplier(cfg);
        spec["group"] = group_to_json(mu.group());
        spec["multiplier"] = multiplier_to_json(mu);
        return spec;
    }
    if (s == "gabor") {
        const GaborLattice l = resolve_lattice(cfg);
        return {{"kind", "gabor"}, {"lattice", {l.n, l.a, l.b}}};
    }
    require(names_file(s), ErrorKind::invalid_parameter, "unknown pair '" + s + "'");
    return load_file_ref(s);
}

std::string pair_label(const json& cfg) {
    const json p = cfg.value("pair", json("regular"));
    if (p.is_string() && p.get<std::string>() == "regular") {
        const Multiplier mu = resolve_multiplier(cfg);
        const json m = cfg.value("multiplier", json("trivial"));
        return "regular " + mu.group().label() + " " + (m.is_string() ? m.get<std::string>() : "custom");
    }
    if (p.is_string() && p.get<std::string>() == "gabor") {
        const GaborLattice l = resolve_lattice(cfg);
        return "gabor " + std::to_string(l.n) + "," + std::to_string(l.a) + "," + std::to_string(l.b);
    }
    return p.is_string() ? p.get<std::string>() : std::string("custom");
}

ComplexVector resolve_vector(const json& cfg, Eigen::Index dim) {
    const char* key = cfg.contains("vector") ? "vector" : "window";
    require(cfg.contains(key), ErrorKind::invalid_parameter, "--vector (or --window) is required");
    const ComplexVector v = vector_from_json(cfg[key]);
    require(v.size() == dim, ErrorKind::invalid_parameter,
            "vector has length " + std::to_string(v.size()) + ", representation has dim " + std::to_string(dim));
    return v;
}

json rep_summary(const ProjectiveRep& pi) {
    return {{"group", pi.group().label()}, {"order", pi.order()}, {"dim", pi.dim()}};
}

json tolerances_json(const Tolerances& t) {
    return {{"eps_rank", t.rank}, {"eps_eq", t.eq}, {"eps_rep", t.rep}, {"eps_eig", t.eig},
            {"eps_orth", t.orth}, {"eps_route", t.route}};
}

struct Outcome {
    json result;
    int code = kPass;
    std::string csv;  ///< sweep only
};

Outcome cmd_classify(const Context& c) {
    const ProjectiveRep pi = resolve_rep(c.cfg);
    const ComplexVector x = resolve_vector(c.cfg, pi.dim());
    return {{{"representation", rep_summary(pi)}, {"classification", to_json(classify(pi, x, c.tol))}}, kPass, {}};
}

Outcome cmd_commutant(const Context& c) {
    if (c.cfg.contains("pair")) {
        const auto [pi, sigma] = resolve_pair(pair_spec(c.cfg));
        const CommutingPairResult r = is_commuting_pair(pi, sigma, c.tol);
        return {{{"pi", rep_summary(pi)}, {"sigma", rep_summary(sigma)}, {"commuting_pair", to_json(r)}},
                r.commuting ? kPass : kInconsistent,
                {}};
    }
    const ProjectiveRep pi = resolve_rep(c.cfg);
    const OperatorSubspace comm = commutant(pi.matrices(), pi.dim(), c.tol.rank);
    const OperatorSubspace bicomm = commutant(comm, c.tol.rank);
    const OperatorSubspace z = intersect(comm, bicomm, c.tol.rank);
    return {{{"representation", rep_summary(pi)},
             {"commutant_dim", comm.dim()},
             {"bicommutant_dim", bicomm.dim()},
             {"center_dim", z.dim()},
             {"is_factor", z.dim() == 1},
             {"commutant", to_json(comm)}},
            kPass,
            {}};
}

Outcome cmd_verify_duality(const Context& c) {
    auto [pi, sigma] = resolve_pair(pair_spec(c.cfg));
    const ComplexVector x = resolve_vector(c.cfg, pi.dim());
    const CertifiedPair pair(std::move(pi), std::move(sigma), c.seed, c.tol);
    const DualityVerdict v = verify_duality(pair, x);
    return {{{"pair", pair_label(c.cfg)}, {"certification", to_json(pair.report())}, {"verdict", to_json(v)}},
            v.theorem_consistent ? kPass : kInconsistent,
            {}};
}

Outcome cmd_certify_pair(const Context& c) {
    const auto [pi, sigma] = resolve_pair(pair_spec(c.cfg));
    const int samples = c.cfg.value("n", 50);
    const DualPairReport r = certify_dual_pair(pi, sigma, c.seed, samples, c.tol);
    return {{{"pair", pair_label(c.cfg)}, {"pi", rep_summary(pi)}, {"sigma", rep_summary(sigma)}, {"report", to_json(r)}},
            r.feasible ? kPass : kInconsistent,
            {}};
}

Outcome cmd_gabor(const Context& c) {
    const GaborLattice l = resolve_lattice(c.cfg);
    const GaborLattice adj = adjoint_lattice(l);
    auto [pi, sigma] = make_gabor_pair(l);
    json result = {{"lattice", {l.n, l.a, l.b}},
                   {"adjoint_lattice", {adj.n, adj.a, adj.b}},
                   {"involution", adjoint_lattice(adj) == l},
                   {"pi", rep_summary(pi)},
                   {"sigma", rep_summary(sigma)}};
    const CertifiedPair pair(std::move(pi), std::move(sigma), c.seed, c.tol);
    result["certification"] = to_json(pair.report());
    int code = pair.is_commuting() ? kPass : kInconsistent;
    if (c.cfg.contains("window") || c.cfg.contains("vector")) {
        const ComplexVector g = resolve_vector(c.cfg, pair.pi().dim());
        const DualityVerdict v = verify_duality(pair, g);
        result["zak"] = matrix_to_json(zak_transform(g, l.a));
        result["verdict"] = to_json(v);
        if (!v.theorem_consistent) code = kInconsistent;
    }
    return {result, code, {}};
}

Outcome cmd_dilate(const Context& c) {
    const RepContext ctx(resolve_rep(c.cfg), c.tol);
    const ComplexVector eta = resolve_vector(c.cfg, ctx.rep().dim());
    const std::string mode = c.cfg.value("mode", std::string("frame"));
    require(mode == "frame" || mode == "parseval", ErrorKind::invalid_parameter, "--mode must be frame or parseval");
    const int tries = c.cfg.value("tries", 5);
    const DilationResult d =
        dilate_to_complete(ctx, eta, mode == "parseval" ? DilationMode::parseval : DilationMode::frame, c.seed, tries);
    return {{{"representation", rep_summary(ctx.rep())},
             {"mode", mode},
             {"construction", "randomized draw, certified before return"},
             {"seed", c.seed},
             {"eta", vector_to_json(d.eta)},
             {"h", vector_to_json(d.h)},
             {"tries", d.tries},
             {"combined", to_json(d.combined)},
             {"parseval_error", d.parseval_error}},
            kPass,
            {}};
}

Outcome cmd_sweep(const Context& c) {
    auto [pi, sigma] = resolve_pair(pair_spec(c.cfg));
    const CertifiedPair pair(std::move(pi), std::move(sigma), c.seed, c.tol);
    SweepOptions opt;
    opt.n_vectors = c.cfg.value("n", std::size_t{200});
    opt.seed = c.seed;
    opt.jobs = c.jobs;
    opt.tol = c.tol;
    const SweepReport r = duality_sweep(pair, pair_label(c.cfg), opt);
    json result = to_json(r);
    result["certification"] = to_json(pair.report());
    return {result, r.pass() ? kPass : kInconsistent, to_csv(r)};
}

Outcome cmd_validate(const Context& c) {
    json result = json::object();
    bool ok = true;
    bool checked = false;
    auto guarded = [&](const char* key, auto&& body) {
        checked = true;
        try {
            body();
        } catch (const Error& e) {
            result[key] = {{"pass", false}, {"failure", e.what()}};
            ok = false;
        }
    };
    if (c.cfg.contains("group"))
        guarded("group", [&] {
            const FiniteGroup g = *resolve_group(c.cfg);
            result["group"] = {{"pass", true}, {"label", g.label()}, {"order", g.order()}, {"abelian", g.is_abelian()}};
        });
    if (c.cfg.contains("multiplier") || c.cfg.contains("N"))
        guarded("multiplier", [&] {
            const MultiplierReport r = validate_multiplier(resolve_multiplier(c.cfg));
            result["multiplier"] = to_json(r);
            ok = ok && r.pass;
        });
    if (c.cfg.contains("rep"))
        guarded("representation", [&] {
            const ProjectiveRep pi = resolve_rep(c.cfg);
            const RepReport r = verify_rep(pi, c.tol.rep);
            result["representation"] = to_json(r);
            ok = ok && r.pass;
        });
    require(checked, ErrorKind::invalid_parameter, "validate needs --group, --multiplier or --rep");
    result["pass"] = ok;
    return {result, ok ? kPass : kInconsistent, {}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorKind::invalid_parameter, "cannot write '" + path + "'");
    out << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();

    CLI::App app{"Frame and duality computations for finite projective representations", "dualrep"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::optional<std::string> rep, group, multiplier, lattice, vector, window, pair, output, config, mode;
    std::optional<std::size_t> big_n, n;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> jobs;
    std::optional<int> tries;
    std::optional<double> eps_rank, eps_eq, eps_rep;
    std::string format = "json";

    app.add_option("--rep", rep, "left-regular | right-regular | gabor | gabor-adjoint | rep JSON file");
    app.add_option("--group", group, "group label such as Z12 or Z2xZ4, or a Cayley-table JSON file");
    app.add_option("--multiplier", multiplier, "trivial | heisenberg | multiplier JSON file");
    app.add_option("--N", big_n, "N for the heisenberg multiplier (group Z_N x Z_N)");
    app.add_option("--lattice", lattice, "Gabor lattice N,a,b");
    app.add_option("--vector", vector, "comma list (1,0,0.5-1i), JSON array, or @file");
    app.add_option("--window", window, "alias of --vector for Gabor windows");
    app.add_option("--pair", pair, "regular | gabor | pair-spec JSON file");
    app.add_option("--n", n, "number of random draws");
    app.add_option("--seed", seed, "64-bit seed");
    app.add_option("--jobs", jobs, "worker threads for sweep")->check(CLI::PositiveNumber);
    app.add_option("--mode", mode, "dilation mode: frame | parseval");
    app.add_option("--tries", tries, "dilation attempts");
    app.add_option("--output", output, "report path (stdout if absent)");
    app.add_option("--format", format, "json | csv (csv for sweep only)")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", config, "JSON config; its values override flags");
    app.add_option("--eps-rank", eps_rank, "relative rank cut");
    app.add_option("--eps-eq", eps_eq, "equality gate");
    app.add_option("--eps-rep", eps_rep, "representation identity gate");

    const char* const commands[][2] = {
        {"classify", "classify the orbit of a vector"},
        {"commutant", "commutant and bicommutant of a representation, or the commuting-pair check for --pair"},
        {"verify-duality", "check the duality clauses for one vector"},
        {"certify-pair", "search for dual-pair witnesses"},
        {"gabor", "Gabor pair for a lattice and its adjoint"},
        {"dilate", "dilate a frame-sequence vector to a complete frame vector"},
        {"sweep", "randomized duality sweep"},
        {"validate", "validate a group, multiplier or representation"},
    };
    for (const auto& c : commands) app.add_subcommand(c[0], c[1])->fallthrough();

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.push_back("dualrep");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kInvalidInput;
    }

    std::string command;
    for (const auto* sub : app.get_subcommands()) command = sub->get_name();

    try {
        Context c;
        json& cfg = c.cfg;
        auto put = [&](const char* key, const auto& value) {
            if (value) cfg[key] = *value;
        };
        put("rep", rep);
        put("group", group);
        put("multiplier", multiplier);
        put("N", big_n);
        put("lattice", lattice);
        put("pair", pair);
        put("n", n);
        put("seed", seed);
        put("jobs", jobs);
        put("mode", mode);
        put("tries", tries);
        put("output", output);
        put("eps_rank", eps_rank);
        put("eps_eq", eps_eq);
        put("eps_rep", eps_rep);
        cfg["format"] = format;
        if (vector) cfg["vector"] = vector_text_to_json(*vector);
        if (window) cfg["window"] = vector_text_to_json(*window);
        if (config) {
            const json file = read_json_file(*config);
            require(file.is_object(), ErrorKind::invalid_parameter, "config must be a JSON object");
            for (const auto& [key, value] : file.items()) {
                if ((key == "vector" || key == "window") && value.is_string())
                    cfg[key] = vector_text_to_json(value.get<std::string>());
                else
                    cfg[key] = value;
            }
            if (file.contains("command")) {
                require(file["command"] == command, ErrorKind::invalid_parameter,
                        "config command '" + file["command"].dump() + "' does not match '" + command + "'");
                cfg.erase("command");
            }
        }

        c.tol.rank = cfg.value("eps_rank", c.tol.rank);
        c.tol.eq = cfg.value("eps_eq", c.tol.eq);
        c.tol.rep = cfg.value("eps_rep", c.tol.rep);
        require(c.tol.rank > 0 && c.tol.eq > 0 && c.tol.rep > 0, ErrorKind::invalid_parameter,
                "tolerances must be positive");
        c.seed = cfg.value("seed", std::uint64_t{0});
        c.jobs = cfg.value("jobs", 1u);
        require(c.jobs >= 1, ErrorKind::invalid_parameter, "--jobs must be positive");
        c.format = cfg.value("format", std::string("json"));
        require(c.format == "json" || c.format == "csv", ErrorKind::invalid_parameter, "--format must be json or csv");
        require(c.format == "json" || command == "sweep", ErrorKind::invalid_parameter,
                "csv output is only available for sweep");

        Outcome o;
        if (command == "classify") o = cmd_classify(c);
        else if (command == "commutant") o = cmd_commutant(c);
        else if (command == "verify-duality") o = cmd_verify_duality(c);
        else if (command == "certify-pair") o = cmd_certify_pair(c);
        else if (command == "gabor") o = cmd_gabor(c);
        else if (command == "dilate") o = cmd_dilate(c);
        else if (command == "sweep") o = cmd_sweep(c);
        else o = cmd_validate(c);

        json echo = cfg;
        for (const char* k : kUnechoed) echo.erase(k);
        const json report = {{"tool", "dualrep"},
                             {"version", kVersion},
                             {"command", command},
                             {"config", echo},
                             {"seed", c.seed},
                             {"tolerances", tolerances_json(c.tol)},
                             {"exit_code", o.code},
                             {"result", o.result}};
        const std::string text = c.format == "csv" ? o.csv : report.dump(2) + "\n";

        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (output) {
            write_text(*output, text);
            write_text(*output + ".timing.json", json({{"wall_time_s", wall}, {"jobs", c.jobs}}).dump() + "\n");
        } else {
            out << text;
        }
        err << "wall_time_s " << wall << "\n";
        return o.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::internal_consistency:
            case ErrorKind::construction_failure:
            case ErrorKind::parameterization_failure:
            case ErrorKind::no_witness:
                return kInconsistent;
            default:
                return kInvalidInput;
        }
    } catch (const json::exception& e) {
        err << "error: malformed JSON input: " << e.what() << "\n";
        return kInvalidInput;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace dualrep::cli
