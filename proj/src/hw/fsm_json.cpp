#include "vip/hw/fsm_json.hpp"

#include "vip/hw/toy_hdl.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace vip::hw {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw FsmError(fmt::format("schema: {} lacks '{}'", where, key));
    return *it;
}

std::string text(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    if (!v.is_string()) throw FsmError(fmt::format("schema: {}.{} must be a string", where, key));
    return v.get<std::string>();
}

std::vector<std::string> names(const json& obj, const char* key, const std::string& where) {
    std::vector<std::string> out;
    auto it = obj.find(key);
    if (it == obj.end()) return out;
    if (!it->is_array()) throw FsmError(fmt::format("schema: {}.{} must be an array", where, key));
    for (const auto& v : *it) {
        if (!v.is_string()) throw FsmError(fmt::format("schema: {}.{} holds a non-string", where, key));
        out.push_back(v.get<std::string>());
    }
    return out;
}

}  // namespace

HwFsm fsm_from_json(const json& doc) {
    if (!doc.is_object()) throw FsmError("schema: document must be an object");
    HwFsm fsm;
    fsm.ip = text(doc, "ip", "document");
    fsm.reset = text(doc, "reset", "document");

    const json& ports = field(doc, "ports", "document");
    if (!ports.is_array()) throw FsmError("schema: ports must be an array");
    for (const auto& p : ports) {
        Port port;
        port.name = text(p, "name", "port");
        std::string where = fmt::format("port '{}'", port.name);
        std::string dir = text(p, "dir", where);
        if (dir == "in") {
            port.dir = PortDir::In;
        } else if (dir == "out") {
            port.dir = PortDir::Out;
        } else {
            throw FsmError(fmt::format("schema: {} has direction '{}'", where, dir));
        }
        const json& w = field(p, "width", where);
        if (!w.is_number_integer() || w.get<std::int64_t>() < 1) {
            throw FsmError(fmt::format("{} has width < 1", where));
        }
        port.width = w.get<std::uint32_t>();
        fsm.ports.push_back(std::move(port));
    }

    const json& states = field(doc, "states", "document");
    if (!states.is_array()) throw FsmError("schema: states must be an array");
    for (const auto& s : states) {
        FsmState st;
        st.id = text(s, "id", "state");
        std::string where = fmt::format("state '{}'", st.id);
        st.asserts = names(s, "assert", where);
        st.guards = names(s, "guard_valid", where);
        std::string branch = s.contains("branch") ? text(s, "branch", where) : "none";
        if (branch == "none") {
            st.branch = BranchKind::None;
        } else if (branch == "internal") {
            st.branch = BranchKind::Internal;
        } else if (branch == "input-data") {
            st.branch = BranchKind::InputData;
        } else {
            throw FsmError(fmt::format("schema: {} has branch kind '{}'", where, branch));
        }
        if (s.contains("port")) st.branch_port = text(s, "port", where);
        if (s.contains("message")) st.message = text(s, "message", where);
        if (s.contains("next") && !s.at("next").is_null()) st.next = text(s, "next", where);
        if (s.contains("arms")) {
            if (!s.at("arms").is_array()) throw FsmError(fmt::format("schema: {}.arms must be an array", where));
            for (const auto& a : s.at("arms")) {
                st.arms.push_back({text(a, "cond_label", where), text(a, "next", where)});
            }
        }
        fsm.states.push_back(std::move(st));
    }
    validate(fsm);
    return fsm;
}

HwFsm parse_fsm(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw FsmError(fmt::format("schema: {}", e.what()));
    }
    return fsm_from_json(doc);
}

json to_json(const HwFsm& fsm) {
    json ports = json::array();
    for (const auto& p : fsm.ports) {
        ports.push_back({{"name", p.name}, {"dir", p.dir == PortDir::In ? "in" : "out"}, {"width", p.width}});
    }
    json states = json::array();
    for (const auto& s : fsm.states) {
        json st = {{"id", s.id},
                   {"assert", s.asserts},
                   {"guard_valid", s.guards},
                   {"branch", std::string(to_string(s.branch))}};
        if (!s.branch_port.empty()) st["port"] = s.branch_port;
        if (!s.message.empty()) st["message"] = s.message;
        json arms = json::array();
        for (const auto& a : s.arms) arms.push_back({{"cond_label", a.cond_label}, {"next", a.next}});
        st["arms"] = arms;
        if (!s.next.empty()) st["next"] = s.next;
        states.push_back(std::move(st));
    }
    return {{"ip", fsm.ip}, {"reset", fsm.reset}, {"ports", ports}, {"states", states}};
}

HwFsm load_fsm(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FsmError(fmt::format("cannot read '{}'", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.extension() == ".fsm") return parse_toy_hdl(buf.str());
    return parse_fsm(buf.str());
}

}  // namespace vip::hw
