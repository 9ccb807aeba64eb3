#include "common.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

namespace pacf::cli {

Field field_from(const Node& top, const Node* b) {
    std::string spec;
    if (b) spec = b->str_or("over", b->str_or("field", ""));
    if (spec.empty()) spec = top.str_or("field", "");
    if (spec.empty()) fail("no field given (use `field: \"GF(p,k)\"` or `over:`)");
    return make_field(spec);
}

Scalar scalar(const Field& K, const std::string& text) {
    Ring R = make_ring(K, {});
    RationalExpr e = parse_rational(R, text);
    if (e.den.is_zero()) fail("division by zero in '" + text + "'");
    return e.num.constant_term() / e.den.constant_term();
}

std::vector<Scalar> scalars(const Field& K, const std::vector<std::string>& texts) {
    std::vector<Scalar> out;
    for (const auto& t : texts) out.push_back(scalar(K, t));
    return out;
}

Json strings_of(const std::vector<Scalar>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(x.to_string());
    return a;
}

Json strings_of(const std::vector<MultiPoly>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(p.to_string());
    return a;
}

const Node& block(const Node& top, const std::string& kind, const std::string& label) {
    const Node* b = top.block_of(kind, label);
    if (!b) fail("missing block `" + kind + (label.empty() ? "" : " " + label) + " { ... }`");
    return *b;
}

AffineVariety variety_from(const Node& top, const Node& b) {
    Field K = field_from(top, &b);
    Ring R = make_ring(K, b.strings("vars"));
    std::vector<MultiPoly> gens;
    for (const auto& g : b.strings("gens")) gens.push_back(parse_poly(R, g));
    return AffineVariety(R, gens);
}

AffineVariety variety_block(const Node& top, const std::string& label) {
    return variety_from(top, block(top, "variety", label));
}

DerivationContext derivation_from(const Node& top, const Field& K) {
    const Node* b = top.block_of("derivation");
    if (!b) return K->is_finite() ? DerivationContext(K) : DerivationContext::standard(K);
    if (b->find("over") && make_field(b->str("over"))->spec() != K->spec())
        fail("derivation is over " + b->str("over") + " but the instance field is " + K->spec());
    std::vector<Scalar> images(K->transcendentals().size(), Scalar::zero(K));
    if (const Node* im = b->find("images")) {
        if (!im->is_map()) fail("derivation images must be a map {t: ...}");
        for (const auto& [name, v] : im->entries) {
            const auto& ts = K->transcendentals();
            auto it = std::find(ts.begin(), ts.end(), name);
            if (it == ts.end()) fail("derivation image for unknown transcendental " + name);
            if (!v.is_text()) fail("derivation image of " + name + " must be a single value");
            images[std::size_t(it - ts.begin())] = scalar(K, v.text);
        }
    }
    return DerivationContext(K, images);
}

Json verdict_json(const Verdict& v) {
    Json j;
    j["verdict"] = v.value;
    j["certificate"] = v.certificate;
    return j;
}

Json report_json(const CheckReport& r) {
    Json j;
    j["status"] = to_string(r.status);
    if (!r.failed_bullet.empty()) j["failed_bullet"] = r.failed_bullet;
    Json bs = Json::array();
    for (const auto& b : r.bullets) {
        Json e;
        e["id"] = b.id;
        e["title"] = b.title;
        e["pass"] = b.pass;
        e["certificate"] = b.certificate;
        bs.push_back(e);
    }
    j["bullets"] = bs;
    if (!r.point.empty() || r.status == ReportStatus::witness_found) {
        Json p;
        for (std::size_t i = 0; i < r.point.size(); ++i)
            p[i < r.vars.size() ? r.vars[i] : "x" + std::to_string(i + 1)] = r.point[i].to_string();
        j["point"] = p;
    }
    if (r.bound) j["bound"] = r.bound;
    if (r.candidates) j["candidates"] = r.candidates;
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

namespace {

std::string scalar_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "none";
    return j.dump();
}

bool all_scalar(const Json& a) {
    for (const auto& x : a)
        if (x.is_structured()) return false;
    return true;
}

void render(const Json& j, const std::string& indent, std::ostringstream& os) {
    for (const auto& [key, v] : j.items()) {
        if (!v.is_structured()) {
            os << indent << key << ": " << scalar_text(v) << "\n";
        } else if (v.is_array() && all_scalar(v)) {
            std::string line;
            for (const auto& x : v) line += (line.empty() ? "" : ", ") + scalar_text(x);
            if (line.size() + key.size() + indent.size() < 78) {
                os << indent << key << ": [" << line << "]\n";
            } else {
                os << indent << key << ":\n";
                for (const auto& x : v) os << indent << "  - " << scalar_text(x) << "\n";
            }
        } else if (v.is_array()) {
            os << indent << key << ":\n";
            for (const auto& x : v) {
                if (x.is_object()) {
                    std::ostringstream inner;
                    render(x, indent + "    ", inner);
                    std::string s = inner.str();
                    s.replace(indent.size(), 4, "  - ");
                    os << s;
                } else if (x.is_array()) {
                    std::string line;
                    for (const auto& y : x) line += (line.empty() ? "" : ", ") + scalar_text(y);
                    os << indent << "  - [" << line << "]\n";
                } else {
                    os << indent << "  - " << scalar_text(x) << "\n";
                }
            }
        } else {
            os << indent << key << ":\n";
            render(v, indent + "  ", os);
        }
    }
}

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_argument: return "error";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::resource_exhausted: return "resource-exhausted";
    }
    return "error";
}

const CommandTable& commands() {
    static const CommandTable table = [] {
        CommandTable t;
        add_core_commands(t);
        add_logic_commands(t);
        return t;
    }();
    return table;
}

}  // namespace

std::string render_text(const Json& report) {
    std::ostringstream os;
    render(report, "", os);
    return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Differential and Galois-theoretic field axioms at desk scale", "pacf"};
    app.require_subcommand(1);
    bool json = false;
    std::string path;
    app.add_flag("--json", json, "machine-readable report");

    std::map<std::string, CLI::App*> groups;
    std::map<CLI::App*, std::string> leaves;
    for (const auto& [name, cmd] : commands()) {
        const auto space = name.find(' ');
        CLI::App* parent = &app;
        std::string leaf = name;
        if (space != std::string::npos) {
            const std::string g = name.substr(0, space);
            if (!groups.count(g)) {
                groups[g] = app.add_subcommand(g, g + " commands");
                groups[g]->require_subcommand(1);
                groups[g]->fallthrough();
            }
            parent = groups[g];
            leaf = name.substr(space + 1);
        }
        CLI::App* sub = parent->add_subcommand(leaf, name);
        sub->fallthrough();
        sub->add_option("instance", path, "instance file")->required();
        leaves[sub] = name;
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    std::string chosen;
    for (const auto& [sub, name] : leaves)
        if (sub->parsed()) chosen = name;

    Outcome res;
    try {
        Node inst = load_instance(path);
        res = commands().at(chosen)(inst);
    } catch (const Error& e) {
        res.code = 2;
        res.report = Json();
        res.report["status"] = kind_name(e.kind());
        res.report["message"] = e.what();
    }
    Json full;
    full["command"] = chosen;
    for (const auto& [k, v] : res.report.items()) full[k] = v;
    if (json) out << full.dump(2) << "\n";
    else out << render_text(full);
    return res.code;
}

}  // namespace pacf::cli
