#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "instance.hpp"
#include "pacf/axiom.hpp"
#include "pacf/error.hpp"

namespace pacf::cli {

using Json = nlohmann::ordered_json;

/// Exit code and report of one subcommand.
struct Outcome {
    int code = 0;
    Json report;
};
using Command = std::function<Outcome(const Node&)>;
using CommandTable = std::map<std::string, Command>;

inline int verdict_code(bool v) { return v ? 0 : 1; }

Field field_from(const Node& top, const Node* block = nullptr);
Scalar scalar(const Field& K, const std::string& text);
std::vector<Scalar> scalars(const Field& K, const std::vector<std::string>& texts);
Json strings_of(const std::vector<Scalar>& xs);
Json strings_of(const std::vector<MultiPoly>& ps);

const Node& block(const Node& top, const std::string& kind, const std::string& label = "");
/// `vars` and `gens`; the field comes from the block's `over` or the top-level `field`.
AffineVariety variety_from(const Node& top, const Node& b);
AffineVariety variety_block(const Node& top, const std::string& label = "");
/// From a `derivation { images: {t: ..} }` block; d/dt_1 (or 0 on finite fields) when absent.
DerivationContext derivation_from(const Node& top, const Field& K);
struct ActionData {
    Field K;
    FieldAction act;
};
/// `action { group: cyclic(n); field: ..; generator_image: frobenius }`
ActionData action_from(const Node& top);

Json verdict_json(const Verdict& v);
Json report_json(const CheckReport& r);

void add_core_commands(CommandTable& table);
void add_logic_commands(CommandTable& table);

std::string render_text(const Json& report);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pacf::cli
