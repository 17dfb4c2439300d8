#include "slz/certificate_json.hpp"

#include <ostream>
#include <stdexcept>

namespace slz {

using nlohmann::json;

namespace {

const char* schema_name(MacroMove::Schema s) {
    switch (s) {
    case MacroMove::Schema::Add: return "add";
    case MacroMove::Schema::Mul: return "mul";
    case MacroMove::Schema::Commute: return "commute";
    case MacroMove::Schema::SwapConj: return "swap_conj";
    case MacroMove::Schema::DiagConj: return "diag_conj";
    case MacroMove::Schema::UnipotentRewrite: return "unipotent_rewrite";
    case MacroMove::Schema::ConjRebase: return "conj_rebase";
    }
    return "?";
}

MacroMove::Schema schema_of(const std::string& s) {
    if (s == "add") return MacroMove::Schema::Add;
    if (s == "mul") return MacroMove::Schema::Mul;
    if (s == "commute") return MacroMove::Schema::Commute;
    if (s == "swap_conj") return MacroMove::Schema::SwapConj;
    if (s == "diag_conj") return MacroMove::Schema::DiagConj;
    if (s == "unipotent_rewrite") return MacroMove::Schema::UnipotentRewrite;
    if (s == "conj_rebase") return MacroMove::Schema::ConjRebase;
    throw std::invalid_argument("unknown macro schema: " + s);
}

const char* form_name(MacroMove::MulForm f) {
    switch (f) {
    case MacroMove::MulForm::Comm: return "comm";
    case MacroMove::MulForm::Pass: return "pass";
    case MacroMove::MulForm::PassBack: return "pass_back";
    }
    return "?";
}

MacroMove::MulForm form_of(const std::string& s) {
    if (s == "comm") return MacroMove::MulForm::Comm;
    if (s == "pass") return MacroMove::MulForm::Pass;
    if (s == "pass_back") return MacroMove::MulForm::PassBack;
    throw std::invalid_argument("unknown mul form: " + s);
}

}  // namespace

json step_to_json(const Step& s) {
    json j;
    j["pos"] = s.pos;
    switch (s.kind) {
    case Step::Kind::FreeInsert:
        j["op"] = "free_insert";
        j["word"] = format_word(s.word);
        break;
    case Step::Kind::FreeDelete:
        j["op"] = "free_delete";
        j["len"] = s.len;
        break;
    case Step::Kind::ApplyRelator:
        j["op"] = "relator";
        j["relator"] = s.relator.str();
        j["rotation"] = s.rotation;
        j["inverted"] = s.inverted;
        j["split"] = s.split;
        break;
    case Step::Kind::AtomicFill:
        j["op"] = "atomic_fill";
        j["len"] = s.len;
        break;
    case Step::Kind::Macro: {
        const MacroMove& m = s.macro;
        j["op"] = "macro";
        j["schema"] = schema_name(m.schema);
        j["i"] = m.i;
        j["j"] = m.j;
        if (m.k) j["k"] = m.k;
        if (m.l) j["l"] = m.l;
        j["x"] = m.x.str();
        if (!m.y.is_zero()) j["y"] = m.y.str();
        if (m.schema == MacroMove::Schema::Mul) j["form"] = form_name(m.form);
        if (!m.signs.empty()) j["signs"] = m.signs;
        if (m.schema == MacroMove::Schema::ConjRebase) j["gamma"] = format_word(m.gamma);
        if (m.reverse) j["reverse"] = true;
        break;
    }
    }
    return j;
}

Step step_from_json(const json& j) {
    const std::string op = j.at("op").get<std::string>();
    size_t pos = j.at("pos").get<size_t>();
    if (op == "free_insert") return Step::free_insert(pos, parse_word(j.at("word").get<std::string>()));
    if (op == "free_delete") return Step::free_delete(pos, j.at("len").get<size_t>());
    if (op == "atomic_fill") return Step::atomic_fill(pos, j.at("len").get<size_t>());
    if (op == "relator")
        return Step::apply_relator(pos, Relator::parse(j.at("relator").get<std::string>()),
                                   j.at("rotation").get<int>(), j.at("inverted").get<bool>(),
                                   j.at("split").get<int>());
    if (op == "macro") {
        MacroMove m;
        m.schema = schema_of(j.at("schema").get<std::string>());
        m.i = j.at("i").get<int>();
        m.j = j.at("j").get<int>();
        m.k = j.value("k", 0);
        m.l = j.value("l", 0);
        m.x = Int(j.at("x").get<std::string>());
        m.y = Int(j.value("y", std::string("0")));
        if (j.contains("form")) m.form = form_of(j.at("form").get<std::string>());
        if (j.contains("signs")) m.signs = j.at("signs").get<std::vector<int>>();
        if (j.contains("gamma")) m.gamma = parse_word(j.at("gamma").get<std::string>());
        m.reverse = j.value("reverse", false);
        return Step::macro_move(pos, m);
    }
    throw std::invalid_argument("unknown step op: " + op);
}

json certificate_to_json(const Certificate& c) {
    json j;
    j["n"] = c.n;
    j["initial"] = format_word(c.initial);
    json steps = json::array();
    for (const auto& s : c.steps) steps.push_back(step_to_json(s));
    j["steps"] = std::move(steps);
    j["cost_model"] = {{"c_mm", c.cost_model.c_mm}, {"L0", c.cost_model.L0}};
    j["total_cost"] = c.total_cost;
    return j;
}

Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.n = j.at("n").get<int>();
    c.initial = parse_word(j.at("initial").get<std::string>());
    for (const auto& s : j.at("steps")) c.steps.push_back(step_from_json(s));
    if (j.contains("cost_model")) {
        c.cost_model.c_mm = j["cost_model"].value("c_mm", 1.0);
        c.cost_model.L0 = j["cost_model"].value("L0", 24);
    }
    c.total_cost = j.value("total_cost", uint64_t(0));
    return c;
}

CertificateWriter::CertificateWriter(std::ostream& os, int n, const Word& initial, const CostModel& cm) : os_(os) {
    json cmj = {{"c_mm", cm.c_mm}, {"L0", cm.L0}};
    os_ << "{\"n\":" << n << ",\"initial\":" << json(format_word(initial)).dump()
        << ",\"cost_model\":" << cmj.dump() << ",\"steps\":[";
}

void CertificateWriter::add(const Step& s) {
    if (!first_) os_ << ",";
    os_ << "\n" << step_to_json(s).dump();
    first_ = false;
}

void CertificateWriter::finish(uint64_t total_cost) { os_ << "\n],\"total_cost\":" << total_cost << "}\n"; }

}  // namespace slz
