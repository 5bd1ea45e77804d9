#include "toricq/cli.hpp"

#include "toricq/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

namespace toricq {

namespace {

struct Options {
    std::string format = "text";
    std::size_t cap = default_cap;
    unsigned jobs = 1;
    std::string out_path;
    std::string map_name;
    bool slice = false;
    std::string file, cert_file;
};

std::string cone_text(const Cone& c) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.rays().size(); ++i) s += (i ? ", " : "") + to_string(c.rays()[i]);
    s += "]";
    if (!c.lineality().empty()) {
        s += " + span{";
        for (std::size_t i = 0; i < c.lineality().size(); ++i) s += (i ? ", " : "") + to_string(c.lineality()[i]);
        s += "}";
    }
    return s;
}

std::string fan_text(const Quasifan& q, const std::string& indent) {
    std::string s;
    for (const auto& c : q.maximal_cones()) s += indent + "cone " + cone_text(c) + "\n";
    return s;
}

std::string matrix_text(const IntMatrix& m, const std::string& indent) {
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) s += indent + to_string(m.row(i)) + "\n";
    if (m.rows() == 0) s += indent + "(zero lattice)\n";
    return s;
}

// Shared report: text goes to out in text mode, the JSON object in json mode.
struct Report {
    const Options& opt;
    std::ostream& out;
    std::string command;
    std::string text;
    Json result = Json::object();

    Report(const Options& o, std::ostream& os, std::string cmd) : opt(o), out(os), command(std::move(cmd)) {}

    int finish(bool positive, const Json* certificate = nullptr) {
        if (!opt.out_path.empty()) {
            std::ofstream f(opt.out_path);
            if (!f) throw InputError("cannot write " + opt.out_path);
            f << (certificate ? *certificate : result).dump(2) << "\n";
        }
        if (opt.format == "json") {
            Json j;
            j["command"] = command;
            j["verdict"] = positive ? "positive" : "negative";
            j["result"] = result;
            out << j.dump(2) << "\n";
        } else {
            out << text;
        }
        return positive ? exit_positive : exit_negative;
    }
};

int cmd_validate(const Options& opt, std::ostream& out) {
    const FanFile f = read_fan_file(opt.file);
    Report r{opt, out, "validate"};
    const ValidationReport rep = validate(f.rank, f.cones);
    r.result["valid"] = rep.valid;
    if (!rep.valid) {
        r.result["message"] = rep.message;
        r.text = "not a quasifan: " + rep.message + "\n";
        return r.finish(false);
    }
    const Quasifan q = Quasifan::from_cones(f.rank, f.cones);
    r.result["fan"] = to_json(q);
    r.result["pointed"] = q.is_fan();
    r.text = std::string("valid ") + (q.is_fan() ? "fan" : "quasifan") + " in Z^" + std::to_string(q.rank()) + ": " +
             std::to_string(q.maximal_cones().size()) + " maximal cones, " + std::to_string(q.rays().size()) + " rays\n";
    return r.finish(true);
}

int cmd_faces(const Options& opt, std::ostream& out) {
    const Quasifan q = read_fan_file(opt.file).fan();
    Report r{opt, out, "faces"};
    r.result["cones"] = Json::array();
    std::size_t last_dim = SIZE_MAX;
    std::vector<Cone> sorted = q.cones();
    std::stable_sort(sorted.begin(), sorted.end(), [](const Cone& a, const Cone& b) { return a.dim() < b.dim(); });
    for (const auto& c : sorted) {
        if (c.dim() != last_dim) {
            last_dim = c.dim();
            r.text += "dimension " + std::to_string(last_dim) + ":\n";
        }
        r.text += "  " + cone_text(c) + "\n";
        Json e = to_json(c);
        e["dim"] = c.dim();
        r.result["cones"].push_back(std::move(e));
    }
    if (opt.slice) {
        // cut at last coordinate = 1; rays with last coordinate <= 0 do not meet the slice
        const std::size_t n = q.rank();
        r.text += "slice at x" + std::to_string(n) + " = 1:\n";
        r.result["slice"] = Json::array();
        for (const auto& c : q.maximal_cones()) {
            Json pts = Json::array();
            std::string line = "  cone";
            for (const auto& ray : c.rays()) {
                if (ray[n - 1] <= 0) continue;
                Json p = Json::array();
                std::string t = "(";
                for (std::size_t i = 0; i + 1 < n; ++i) {
                    Rational x(ray[i], ray[n - 1]);
                    x.canonicalize();
                    p.push_back(rational_to_json(x));
                    t += (i ? "," : "") + x.get_str();
                }
                pts.push_back(std::move(p));
                line += " " + t + ")";
            }
            r.text += line + "\n";
            r.result["slice"].push_back(std::move(pts));
        }
    }
    return r.finish(true);
}

int cmd_convex(const Options& opt, std::ostream& out, bool strict) {
    const FanFile f = read_fan_file(opt.file);
    const SupportMap h = f.map(opt.map_name);
    const auto a = analyze(h);
    Report r{opt, out, strict ? "strictly-convex" : "convex"};
    r.result["graph_cone"] = to_json(a.graph_cone);
    r.result["filled_graph"] = to_json(a.filled_graph);
    r.result["convex"] = a.convex;
    r.result["strictly_convex"] = a.strictly_convex;
    if (a.associated) r.result["associated_quasifan"] = to_json(*a.associated);
    if (!a.convex) r.result["obstruction"] = a.obstruction;
    r.text = std::string("convex: ") + (a.convex ? "yes" : "no") + "\n";
    if (!a.convex) r.text += "  " + a.obstruction + "\n";
    if (a.associated) r.text += "associated quasifan:\n" + fan_text(*a.associated, "  ");
    if (strict) r.text += std::string("strictly convex: ") + (a.strictly_convex ? "yes" : "no") + "\n";
    return r.finish(strict ? a.strictly_convex : a.convex);
}

int cmd_divisorial(const Options& opt, std::ostream& out) {
    const Quasifan q = read_fan_file(opt.file).fan();
    const auto cert = is_divisorial(q, opt.jobs);
    Report r{opt, out, "divisorial"};
    const Json c = certificate_to_json(q, cert);
    r.result = c;
    if (cert.divisorial) {
        r.text = "divisorial: yes\n  strictly convex support map into Q^" + std::to_string(cert.map->k()) + "\n";
    } else {
        r.text = "divisorial: no\n";
        for (const auto& ref : cert.refutations)
            r.text += "  Farkas certificate: no support map vanishes exactly on cone " + std::to_string(ref.cone) + " " +
                      cone_text(q.maximal_cones()[ref.cone]) + "\n";
    }
    return r.finish(cert.divisorial, &c);
}

int cmd_tdr(const Options& opt, std::ostream& out) {
    const Quasifan q = read_fan_file(opt.file).fan();
    const auto red = tdr(q, opt.cap, opt.jobs);
    Report r{opt, out, "tdr"};
    r.result = to_json(red);
    r.text = "toric divisorial reduction (" + std::to_string(red.coarsenings.size()) + " realizable coarsenings)\n";
    r.text += "matrix:\n" + matrix_text(red.map.matrix, "  ");
    r.text += "target:\n" + fan_text(red.map.target, "  ");
    r.text += std::string("surjective: ") + (red.surjective ? "yes" : "no") + "\n";
    if (red.obstruction) r.text += "  no orbit maps onto cone " + cone_text(*red.obstruction) + "\n";
    for (const auto& w : red.warnings) r.text += "warning: " + w + "\n";
    return r.finish(red.surjective);
}

std::vector<IntVector> subtorus_of(const FanFile& f) {
    if (!f.subtorus) throw InputError("the file defines no subtorus");
    return *f.subtorus;
}

int cmd_quotient(const Options& opt, std::ostream& out) {
    const FanFile f = read_fan_file(opt.file);
    const auto tq = toric_quotient(f.fan(), subtorus_of(f), nullptr, opt.cap);
    Report r{opt, out, "toric-quotient"};
    r.result = to_json(tq);
    r.text = "toric quotient map:\n" + matrix_text(tq.map.matrix, "  ") + "target fan:\n" + fan_text(tq.map.target, "  ");
    return r.finish(true);
}

int cmd_decide(const Options& opt, std::ostream& out) {
    const FanFile f = read_fan_file(opt.file);
    const auto d = decide_categorical_quotient(f.fan(), subtorus_of(f), opt.cap, opt.jobs);
    Report r{opt, out, "decide"};
    r.result = to_json(d);
    const std::string what = d.source_divisorial ? "categorical quotient" : "invariant divisorial reduction";
    if (d.exists) {
        r.text = what + " exists; composed map:\n" + matrix_text(d.composed.matrix, "  ") + "target fan:\n" +
                 fan_text(d.composed.target, "  ");
    } else {
        r.text = "no " + what + "; obstruction cone " + cone_text(*d.obstruction) + "\n";
    }
    return r.finish(d.exists);
}

int cmd_verify(const Options& opt, std::ostream& out) {
    const Quasifan q = read_fan_file(opt.file).fan();
    std::ifstream in(opt.cert_file);
    if (!in) throw InputError("cannot open " + opt.cert_file);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Report r{opt, out, "verify-certificate"};
    std::optional<std::string> failure;
    try {
        failure = check_certificate(q, certificate_from_json(parse_json(text, opt.cert_file), q));
    } catch (const FormatError&) {
        throw;
    } catch (const InputError& e) {
        // a certificate that does not even describe a valid object fails verification
        failure = e.what();
    }
    r.result["verified"] = !failure;
    if (failure) r.result["failure"] = *failure;
    r.text = failure ? "certificate rejected: " + *failure + "\n" : "certificate verifies\n";
    return r.finish(!failure);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Exact decisions for rational polyhedral fans", "toricq"};
    app.require_subcommand(1);
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--cap", opt.cap, "Maximum number of candidate families in the coarsening and quotient searches")->check(CLI::PositiveNumber);
    app.add_option("--jobs", opt.jobs, "Worker threads for independent checks")->check(CLI::PositiveNumber);
    app.add_option("--out", opt.out_path, "Also write the JSON certificate/result to this file");

    auto with_file = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("file", opt.file, "Fan file")->required();
        return s;
    };
    auto* validate_cmd = with_file("validate", "Check the quasifan axioms");
    auto* faces_cmd = with_file("faces", "List all cones by dimension");
    faces_cmd->add_flag("--slice", opt.slice, "Also print the cross-section at last coordinate 1");
    auto* convex_cmd = with_file("convex", "Decide convexity of a support map and print its associated quasifan");
    auto* strict_cmd = with_file("strictly-convex", "Decide strict convexity of a support map");
    for (auto* s : {convex_cmd, strict_cmd}) s->add_option("--map", opt.map_name, "Name of the support map in the file");
    auto* div_cmd = with_file("divisorial", "Decide divisoriality with a certificate");
    auto* tdr_cmd = with_file("tdr", "Compute the toric divisorial reduction");
    auto* quot_cmd = with_file("toric-quotient", "Toric quotient by the file's subtorus");
    auto* decide_cmd = with_file("decide", "Decide existence of a categorical quotient in the divisorial category");
    auto* verify_cmd = app.add_subcommand("verify-certificate", "Re-check a divisoriality certificate against a fan");
    verify_cmd->add_option("certificate", opt.cert_file, "Certificate JSON")->required();
    verify_cmd->add_option("file", opt.file, "Fan file")->required();
    for (auto* s : app.get_subcommands({})) s->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_positive;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }

    try {
        if (*validate_cmd) return cmd_validate(opt, out);
        if (*faces_cmd) return cmd_faces(opt, out);
        if (*convex_cmd) return cmd_convex(opt, out, false);
        if (*strict_cmd) return cmd_convex(opt, out, true);
        if (*div_cmd) return cmd_divisorial(opt, out);
        if (*tdr_cmd) return cmd_tdr(opt, out);
        if (*quot_cmd) return cmd_quotient(opt, out);
        if (*decide_cmd) return cmd_decide(opt, out);
        if (*verify_cmd) return cmd_verify(opt, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return exit_internal_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal_error;
    }
    return exit_input_error;
}

}  // namespace toricq
