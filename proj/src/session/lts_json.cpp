#include "vip/session/lts_json.hpp"

#include <fmt/format.h>

#include <fstream>
#include <map>
#include <set>

namespace vip::session {

using nlohmann::json;

json to_json(const Label& label) {
    json j = {
        {"action", std::string(1, action_symbol(label.action))},
        {"message", label.message},
        {"kind", std::string(to_string(label.payload.kind))},
        {"width", label.width()},
    };
    if (label.payload.kind == PayloadKind::FixedArray) {
        j["element"] = std::string(to_string(label.payload.element));
        j["length"] = label.payload.length;
    } else if (label.payload.kind == PayloadKind::FixedString) {
        j["length"] = label.payload.length;
    }
    return j;
}

Label label_from_json(const json& j) {
    Label label;
    auto action = parse_action(j.at("action").get<std::string>());
    if (!action) throw LtsError("unknown action symbol " + j.at("action").dump());
    label.action = *action;
    label.message = j.at("message").get<std::string>();
    if (label.message.empty()) throw LtsError("empty message identifier");

    std::uint32_t width = j.value("width", 0u);
    auto kind = parse_payload_kind(j.value("kind", std::string("integer")));
    if (!kind) throw LtsError("unknown payload kind " + j.at("kind").dump());
    switch (*kind) {
    case PayloadKind::Integer: label.payload = PayloadType::integer(width); break;
    case PayloadKind::Boolean: label.payload = PayloadType::boolean(width); break;
    case PayloadKind::FixedString:
        label.payload = PayloadType::fixed_string(j.value("length", width / 8), width);
        break;
    case PayloadKind::FixedArray: {
        auto element = parse_payload_kind(j.value("element", std::string("boolean")));
        if (!element || *element == PayloadKind::FixedArray) {
            throw LtsError("invalid array element kind");
        }
        label.payload.kind = PayloadKind::FixedArray;
        label.payload.element = *element;
        label.payload.length = j.value("length", width);
        label.payload.width = width;
        break;
    }
    }
    return label;
}

json to_json(const SessionLts& session) {
    json states = json::array();
    for (StateId s = 0; s < session.state_count(); ++s) states.push_back(fmt::format("s{}", s));
    json terminals = json::array();
    for (StateId s : session.terminals()) terminals.push_back(fmt::format("s{}", s));
    json transitions = json::array();
    for (const auto& t : session.transitions()) {
        json j = to_json(t.label);
        j["from"] = fmt::format("s{}", t.source);
        j["to"] = fmt::format("s{}", t.target);
        transitions.push_back(std::move(j));
    }
    return json{{"states", states},
                {"initial", fmt::format("s{}", session.initial())},
                {"terminals", terminals},
                {"transitions", transitions}};
}

SessionLts lts_from_json(const json& doc) {
    if (!doc.is_object()) throw LtsError("LTS document must be a JSON object");
    SessionLts lts;
    std::map<std::string, StateId> ids;
    bool first = true;
    for (const auto& name : doc.at("states")) {
        auto key = name.get<std::string>();
        if (ids.contains(key)) throw LtsError("duplicate state " + key);
        ids.emplace(key, first ? lts.initial() : lts.add_state());
        first = false;
    }
    if (ids.empty()) throw LtsError("LTS document has no states");

    auto resolve = [&](const json& ref) {
        auto key = ref.get<std::string>();
        auto it = ids.find(key);
        if (it == ids.end()) throw LtsError("reference to undeclared state " + key);
        return it->second;
    };

    lts.set_initial(resolve(doc.at("initial")));
    for (const auto& t : doc.value("transitions", json::array())) {
        lts.add_transition(resolve(t.at("from")), label_from_json(t), resolve(t.at("to")));
    }
    if (doc.contains("terminals")) {
        std::set<StateId> declared;
        for (const auto& ref : doc.at("terminals")) declared.insert(resolve(ref));
        for (StateId s = 0; s < lts.state_count(); ++s) {
            if (declared.contains(s) && !lts.is_terminal(s)) {
                throw LtsError(fmt::format("terminal state s{} has outgoing transitions", s), s);
            }
        }
    }
    lts.validate();
    return lts;
}

SessionLts load_lts(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LtsError("cannot open " + path.string());
    return lts_from_json(json::parse(in));
}

}  // namespace vip::session
